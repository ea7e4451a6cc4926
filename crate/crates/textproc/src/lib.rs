//! Text preprocessing for the multilingual translation pipeline:
//! punctuation-splitting tokenization, surface normalization for the
//! similarity features, BPE subword segmentation, and a vocabulary with
//! reserved ids and one `<2Lx>` target-language tag per language.

mod bpe;
mod error;
mod normalize;
mod tokenize;
mod vocab;

pub use bpe::{desegment_stream, desegment_token, BpeModel, CONTINUATION_MARKER};
pub use error::{Error, Result};
pub use normalize::normalize_for_surface;
pub use tokenize::tokenize;
pub use vocab::{Vocabulary, EOS, PAD, UNK};

/// Default cap on sentence length in tokens; longer sentences are dropped
/// during training and truncated at inference.
pub const DEFAULT_MAX_LEN: usize = 50;

/// A tokenized sentence with its language and, optionally, the target
/// language its encoding should be tagged with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSeq {
    pub tokens: Vec<String>,
    pub language: String,
    pub target_tag: Option<String>,
}

impl TokenSeq {
    pub fn new(tokens: Vec<String>, language: &str) -> Self {
        TokenSeq {
            tokens,
            language: language.to_string(),
            target_tag: None,
        }
    }

    pub fn from_text(text: &str, language: &str) -> Self {
        TokenSeq::new(tokenize(text), language)
    }

    pub fn with_tag(mut self, target_lang: &str) -> Self {
        self.target_tag = Some(target_lang.to_string());
        self
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Keeps at most `max` tokens (inference-side policy).
    pub fn truncate(&mut self, max: usize) {
        self.tokens.truncate(max);
    }
}
