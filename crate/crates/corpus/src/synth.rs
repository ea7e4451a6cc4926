//! Synthetic multilingual corpus generator.
//!
//! A "sentence" is a sequence of concept ids. Each language renders a
//! concept as a fixed 4-letter word over its own 5-letter alphabet, so
//! languages share zero characters and surface overlap cannot solve the
//! task. A translation is the same concept sequence with local reordering
//! inside fixed-size windows; a semrel sentence shares a configured
//! fraction of concepts with its source.

use crate::{Error, GoldPairs, MonoCorpus, Result};
use numkit::Rng;
use serde::{Deserialize, Serialize};

const LETTERS_PER_LANG: usize = 5;
const WORD_LEN: usize = 4;
const MAX_CONCEPTS: usize = 625; // 5^4

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthSpec {
    pub languages: Vec<String>,
    pub concepts: usize,
    pub len_min: usize,
    pub len_max: usize,
    pub reorder_window: usize,
    pub semrel_overlap: f64,
    pub pairs_per_language_pair: usize,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            languages: vec!["aa".into(), "bb".into(), "cc".into(), "dd".into()],
            concepts: 200,
            len_min: 4,
            len_max: 12,
            reorder_window: 2,
            semrel_overlap: 0.5,
            pairs_per_language_pair: 2000,
            seed: 1,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        let max_langs = 26 / LETTERS_PER_LANG;
        if self.languages.len() < 2 || self.languages.len() > max_langs {
            return Err(Error::Config(format!(
                "need 2..={max_langs} languages, got {}",
                self.languages.len()
            )));
        }
        let mut sorted = self.languages.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.languages.len() {
            return Err(Error::Config("duplicate language codes".into()));
        }
        if self.concepts < 2 || self.concepts > MAX_CONCEPTS {
            return Err(Error::Config(format!(
                "concept vocabulary must be in 2..={MAX_CONCEPTS}, got {}",
                self.concepts
            )));
        }
        if self.len_min == 0 || self.len_min > self.len_max {
            return Err(Error::Config(format!(
                "bad sentence length range {}..={}",
                self.len_min, self.len_max
            )));
        }
        if self.reorder_window == 0 {
            return Err(Error::Config("reorder window must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.semrel_overlap) {
            return Err(Error::Config(format!(
                "semrel overlap must be in [0,1], got {}",
                self.semrel_overlap
            )));
        }
        if self.pairs_per_language_pair == 0 {
            return Err(Error::Config("pairs_per_language_pair must be >= 1".into()));
        }
        Ok(())
    }
}

/// Renders concepts as words for one synthetic language.
#[derive(Debug, Clone)]
pub struct SynthLanguage {
    pub code: String,
    alphabet: [char; LETTERS_PER_LANG],
}

impl SynthLanguage {
    fn new(code: &str, lang_index: usize) -> Self {
        let base = b'a' + (lang_index * LETTERS_PER_LANG) as u8;
        let mut alphabet = ['a'; LETTERS_PER_LANG];
        for (i, slot) in alphabet.iter_mut().enumerate() {
            *slot = (base + i as u8) as char;
        }
        SynthLanguage {
            code: code.to_string(),
            alphabet,
        }
    }

    pub fn word(&self, concept: usize) -> String {
        debug_assert!(concept < MAX_CONCEPTS);
        let mut digits = [0usize; WORD_LEN];
        let mut k = concept;
        for d in digits.iter_mut().rev() {
            *d = k % LETTERS_PER_LANG;
            k /= LETTERS_PER_LANG;
        }
        digits.iter().map(|&d| self.alphabet[d]).collect()
    }

    pub fn concept_of(&self, word: &str) -> Option<usize> {
        if word.chars().count() != WORD_LEN {
            return None;
        }
        let mut concept = 0;
        for c in word.chars() {
            let d = self.alphabet.iter().position(|&a| a == c)?;
            concept = concept * LETTERS_PER_LANG + d;
        }
        Some(concept)
    }

    pub fn render(&self, concepts: &[usize]) -> String {
        concepts
            .iter()
            .map(|&c| self.word(c))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(&self, text: &str) -> Option<Vec<usize>> {
        text.split_whitespace().map(|w| self.concept_of(w)).collect()
    }
}

/// A semantically related (non-translation) counterpart of a source
/// sentence, sharing `overlap` of its concepts.
#[derive(Debug, Clone, PartialEq)]
pub struct SemrelPair {
    pub src_id: String,
    pub rel_id: String,
    pub overlap: f64,
}

#[derive(Debug, Clone)]
pub struct SynthCorpus {
    pub corpora: Vec<MonoCorpus>,
    pub gold: GoldPairs,
    pub semrel: Vec<SemrelPair>,
    pub languages: Vec<SynthLanguage>,
}

impl SynthCorpus {
    pub fn corpus_for(&self, lang: &str) -> Option<&MonoCorpus> {
        self.corpora.iter().find(|c| c.language == lang)
    }

    pub fn language(&self, code: &str) -> Option<&SynthLanguage> {
        self.languages.iter().find(|l| l.code == code)
    }
}

/// Generates per-language corpora, gold translation pairs for every
/// unordered language pair, and one semrel counterpart per gold pair.
pub fn generate_synthetic(spec: &SynthSpec) -> Result<SynthCorpus> {
    spec.validate()?;
    let mut rng = Rng::new(spec.seed);
    let languages: Vec<SynthLanguage> = spec
        .languages
        .iter()
        .enumerate()
        .map(|(i, code)| SynthLanguage::new(code, i))
        .collect();
    let mut corpora: Vec<MonoCorpus> = spec
        .languages
        .iter()
        .map(|code| MonoCorpus::new(code))
        .collect();
    let mut gold = GoldPairs::new();
    let mut semrel = Vec::new();

    for i in 0..languages.len() {
        for j in (i + 1)..languages.len() {
            for _ in 0..spec.pairs_per_language_pair {
                let len = spec.len_min + rng.index(spec.len_max - spec.len_min + 1);
                let concepts: Vec<usize> =
                    (0..len).map(|_| rng.index(spec.concepts)).collect();

                let src_text = languages[i].render(&concepts);
                let tgt_concepts = reorder_windows(&concepts, spec.reorder_window, &mut rng);
                let tgt_text = languages[j].render(&tgt_concepts);

                let src_id = corpora[i].push_auto(src_text);
                let tgt_id = corpora[j].push_auto(tgt_text);
                gold.push(src_id.clone(), tgt_id)?;

                let rel_concepts =
                    related_concepts(&concepts, spec.semrel_overlap, spec.concepts, &mut rng);
                let rel_concepts =
                    reorder_windows(&rel_concepts, spec.reorder_window, &mut rng);
                let rel_id = corpora[j].push_auto(languages[j].render(&rel_concepts));
                semrel.push(SemrelPair {
                    src_id,
                    rel_id,
                    overlap: spec.semrel_overlap,
                });
            }
        }
    }

    Ok(SynthCorpus {
        corpora,
        gold,
        semrel,
        languages,
    })
}

/// Shuffles concepts within consecutive windows of size `window`.
fn reorder_windows(concepts: &[usize], window: usize, rng: &mut Rng) -> Vec<usize> {
    let mut out = concepts.to_vec();
    for chunk in out.chunks_mut(window) {
        rng.shuffle(chunk);
    }
    out
}

/// Keeps `round(overlap * len)` concepts (at seeded positions) and redraws
/// the rest, each guaranteed to differ from the concept it replaces.
fn related_concepts(
    concepts: &[usize],
    overlap: f64,
    vocab: usize,
    rng: &mut Rng,
) -> Vec<usize> {
    let n = concepts.len();
    let keep = ((overlap * n as f64).round() as usize).min(n);
    let keep_positions: std::collections::HashSet<usize> =
        rng.sample_indices(n, keep).into_iter().collect();
    concepts
        .iter()
        .enumerate()
        .map(|(pos, &c)| {
            if keep_positions.contains(&pos) {
                c
            } else {
                loop {
                    let fresh = rng.index(vocab);
                    if fresh != c {
                        break fresh;
                    }
                }
            }
        })
        .collect()
}
