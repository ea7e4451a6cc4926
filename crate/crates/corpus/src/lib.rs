//! Corpus handling: BUCC-format ingestion, balanced positive/negative pair
//! construction, stratified splits, and a synthetic multilingual corpus
//! generator for desk-scale experiments.

mod balance;
mod bucc;
mod error;
mod split;
mod synth;

pub use balance::{build_balanced, shuffle_unrelated, LabeledPair};
pub use bucc::{read_bucc, GoldPairs, MonoCorpus};
pub use error::{Error, Result};
pub use split::split_three_way;
pub use synth::{SemrelPair, SynthCorpus, SynthLanguage, SynthSpec};
