//! BUCC-format monolingual corpora and gold alignments.
//!
//! Mono files: `id<TAB>sentence`, one per line. Gold files:
//! `src_id<TAB>tgt_id`. Both UTF-8, single trailing newline.

use crate::{Error, Result};
use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

/// Ordered monolingual corpus with unique, language-prefixed ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoCorpus {
    pub language: String,
    records: Vec<(String, String)>,
    index: HashMap<String, usize>,
}

impl MonoCorpus {
    pub fn new(language: &str) -> Self {
        MonoCorpus {
            language: language.to_string(),
            records: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn push(&mut self, id: String, text: String) -> Result<()> {
        if !id.starts_with(&format!("{}-", self.language)) {
            return Err(Error::IdPrefix {
                id,
                language: self.language.clone(),
            });
        }
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateId(id));
        }
        self.index.insert(id.clone(), self.records.len());
        self.records.push((id, text));
        Ok(())
    }

    /// Appends with an auto-assigned `lang-NNNNNN` id and returns it.
    pub fn push_auto(&mut self, text: String) -> String {
        let id = format!("{}-{:06}", self.language, self.records.len());
        self.push(id.clone(), text).expect("auto id collision");
        id
    }

    pub fn get(&self, id: &str) -> Option<&str> {
        self.index.get(id).map(|&i| self.records[i].1.as_str())
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[(String, String)] {
        &self.records
    }

    pub fn id_at(&self, i: usize) -> &str {
        &self.records[i].0
    }

    pub fn read(path: &Path, language: &str) -> Result<MonoCorpus> {
        let text = fs::read_to_string(path)?;
        let file = path.display().to_string();
        let mut corpus = MonoCorpus::new(language);
        for (i, line) in text.lines().enumerate() {
            let (id, sentence) = line.split_once('\t').ok_or_else(|| Error::Parse {
                file: file.clone(),
                line: i + 1,
                msg: "expected `id<TAB>sentence`".into(),
            })?;
            if id.is_empty() {
                return Err(Error::Parse {
                    file: file.clone(),
                    line: i + 1,
                    msg: "empty sentence id".into(),
                });
            }
            corpus.push(id.to_string(), sentence.to_string())?;
        }
        Ok(corpus)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for (id, text) in &self.records {
            out.push_str(id);
            out.push('\t');
            out.push_str(text);
            out.push('\n');
        }
        fs::write(path, out)?;
        Ok(())
    }
}

/// Set of gold-aligned (src_id, tgt_id) pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldPairs {
    pairs: Vec<(String, String)>,
    set: HashSet<(String, String)>,
}

impl GoldPairs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, src_id: String, tgt_id: String) -> Result<()> {
        let key = (src_id, tgt_id);
        if self.set.contains(&key) {
            return Err(Error::DuplicateId(format!("{}\t{}", key.0, key.1)));
        }
        self.set.insert(key.clone());
        self.pairs.push(key);
        Ok(())
    }

    pub fn contains(&self, src_id: &str, tgt_id: &str) -> bool {
        // set lookup without cloning
        self.set
            .contains(&(src_id.to_string(), tgt_id.to_string()))
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn read(path: &Path) -> Result<GoldPairs> {
        let text = fs::read_to_string(path)?;
        let file = path.display().to_string();
        let mut gold = GoldPairs::new();
        for (i, line) in text.lines().enumerate() {
            let (src, tgt) = line.split_once('\t').ok_or_else(|| Error::Parse {
                file: file.clone(),
                line: i + 1,
                msg: "expected `src_id<TAB>tgt_id`".into(),
            })?;
            gold.push(src.to_string(), tgt.to_string())?;
        }
        Ok(gold)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for (s, t) in &self.pairs {
            out.push_str(s);
            out.push('\t');
            out.push_str(t);
            out.push('\n');
        }
        fs::write(path, out)?;
        Ok(())
    }

    /// Rejects pairs whose ids do not resolve in the given corpora.
    pub fn validate(&self, src: &MonoCorpus, tgt: &MonoCorpus) -> Result<()> {
        for (s, t) in &self.pairs {
            if !src.contains(s) {
                return Err(Error::DanglingId(s.clone()));
            }
            if !tgt.contains(t) {
                return Err(Error::DanglingId(t.clone()));
            }
        }
        Ok(())
    }
}

/// Reads a source corpus, a target corpus, and their gold alignment,
/// rejecting dangling gold ids.
pub fn read_bucc(
    src_path: &Path,
    src_lang: &str,
    tgt_path: &Path,
    tgt_lang: &str,
    gold_path: &Path,
) -> Result<(MonoCorpus, MonoCorpus, GoldPairs)> {
    let src = MonoCorpus::read(src_path, src_lang)?;
    let tgt = MonoCorpus::read(tgt_path, tgt_lang)?;
    let gold = GoldPairs::read(gold_path)?;
    gold.validate(&src, &tgt)?;
    Ok((src, tgt, gold))
}
