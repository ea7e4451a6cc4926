//! Token/id vocabulary with reserved ids and target-language tags.
//!
//! Id layout: `<unk>`=0, `<eos>`=1, `<pad>`=2, then one `<2Lx>` tag per
//! language (sorted by code), then regular tokens by descending frequency.

use crate::{Error, Result, TokenSeq};
use std::collections::HashMap;
use std::fs;
use std::path::Path;

pub const UNK: &str = "<unk>";
pub const EOS: &str = "<eos>";
pub const PAD: &str = "<pad>";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    tokens: Vec<String>,
    index: HashMap<String, u32>,
    languages: Vec<String>,
}

fn tag_token(lang: &str) -> String {
    format!("<2{lang}>")
}

impl Vocabulary {
    /// Builds a vocabulary from a segmented corpus: reserved ids, one tag
    /// per `languages` entry, then the most frequent tokens up to
    /// `max_size` total entries (ties break lexicographically).
    pub fn build<'a, I>(corpus: I, languages: &[String], max_size: usize) -> Vocabulary
    where
        I: IntoIterator<Item = &'a TokenSeq>,
    {
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for seq in corpus {
            for t in &seq.tokens {
                *counts.entry(t.as_str()).or_insert(0) += 1;
            }
        }
        let mut langs: Vec<String> = languages.to_vec();
        langs.sort();
        langs.dedup();

        let mut tokens: Vec<String> = vec![UNK.into(), EOS.into(), PAD.into()];
        tokens.extend(langs.iter().map(|l| tag_token(l)));
        let reserved = tokens.len();

        let mut by_freq: Vec<(&str, usize)> = counts.into_iter().collect();
        by_freq.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        for (tok, _) in by_freq {
            if tokens.len() >= max_size.max(reserved) {
                break;
            }
            tokens.push(tok.to_string());
        }

        Vocabulary::from_tokens(tokens, langs)
    }

    fn from_tokens(tokens: Vec<String>, languages: Vec<String>) -> Vocabulary {
        let index = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        Vocabulary {
            tokens,
            index,
            languages,
        }
    }

    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    pub fn num_reserved(&self) -> usize {
        3 + self.languages.len()
    }

    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    pub fn unk_id(&self) -> u32 {
        0
    }

    pub fn eos_id(&self) -> u32 {
        1
    }

    pub fn pad_id(&self) -> u32 {
        2
    }

    pub fn tag_id(&self, lang: &str) -> Result<u32> {
        self.index
            .get(&tag_token(lang))
            .copied()
            .ok_or_else(|| Error::UnknownLanguage(lang.to_string()))
    }

    pub fn is_tag(&self, id: u32) -> bool {
        (3..3 + self.languages.len()).contains(&(id as usize))
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.index.get(token).copied()
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(|s| s.as_str())
    }

    /// Encodes a segmented sequence: tag id first when `target_lang` is
    /// given, then token ids (`<unk>` for OOV), then `<eos>`.
    pub fn encode(&self, seq: &TokenSeq, target_lang: Option<&str>) -> Result<Vec<u32>> {
        let mut ids = Vec::with_capacity(seq.tokens.len() + 2);
        if let Some(lang) = target_lang {
            ids.push(self.tag_id(lang)?);
        }
        for t in &seq.tokens {
            ids.push(self.id(t).unwrap_or(self.unk_id()));
        }
        ids.push(self.eos_id());
        Ok(ids)
    }

    /// Maps ids back to tokens, stripping a leading tag and the trailing
    /// `<eos>`/`<pad>` padding.
    pub fn decode(&self, ids: &[u32]) -> Result<Vec<String>> {
        let mut out = Vec::with_capacity(ids.len());
        for (pos, &id) in ids.iter().enumerate() {
            let token = self
                .token(id)
                .ok_or(Error::IdOutOfRange(id))?;
            if pos == 0 && self.is_tag(id) {
                continue;
            }
            if id == self.eos_id() || id == self.pad_id() {
                continue;
            }
            out.push(token.to_string());
        }
        Ok(out)
    }

    /// One token per line, id = line number (0-based).
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for t in &self.tokens {
            out.push_str(t);
            out.push('\n');
        }
        fs::write(path, out)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Vocabulary> {
        let text = fs::read_to_string(path)?;
        let tokens: Vec<String> = text.lines().map(|l| l.to_string()).collect();
        if tokens.len() < 3 || tokens[0] != UNK || tokens[1] != EOS || tokens[2] != PAD {
            return Err(Error::VocabFormat(
                "reserved tokens <unk>, <eos>, <pad> must occupy ids 0..3".into(),
            ));
        }
        let mut languages = Vec::new();
        for t in tokens.iter().skip(3) {
            match t.strip_prefix("<2").and_then(|s| s.strip_suffix('>')) {
                Some(lang) => languages.push(lang.to_string()),
                None => break,
            }
        }
        let mut seen = HashMap::new();
        for (i, t) in tokens.iter().enumerate() {
            if let Some(prev) = seen.insert(t.clone(), i) {
                return Err(Error::VocabFormat(format!(
                    "duplicate token `{t}` at lines {prev} and {i}"
                )));
            }
        }
        Ok(Vocabulary::from_tokens(tokens, languages))
    }
}
