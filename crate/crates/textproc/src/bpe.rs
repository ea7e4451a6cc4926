//! Byte-pair encoding over word-internal character sequences.
//!
//! Merges never cross a word boundary; word ends are expressed in the
//! rendered output through the `@@` continuation marker on non-final
//! subwords, so de-segmentation is a plain suffix strip + join.

use crate::{Error, Result, TokenSeq};
use std::collections::HashMap;
use std::fs;
use std::path::Path;

pub const CONTINUATION_MARKER: &str = "@@";

/// An ordered list of learned merge pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpeModel {
    merges: Vec<(String, String)>,
    rank: HashMap<(String, String), usize>,
}

impl BpeModel {
    pub fn from_merges(merges: Vec<(String, String)>) -> Self {
        let rank = merges
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        BpeModel { merges, rank }
    }

    pub fn num_merges(&self) -> usize {
        self.merges.len()
    }

    pub fn merges(&self) -> &[(String, String)] {
        &self.merges
    }

    /// Learns up to `num_merges` merges by repeatedly joining the most
    /// frequent adjacent symbol pair; ties break to the lexicographically
    /// smallest pair, and learning stops once no pair occurs twice.
    pub fn learn<'a, I>(corpus: I, num_merges: usize) -> BpeModel
    where
        I: IntoIterator<Item = &'a TokenSeq>,
    {
        let mut word_counts: HashMap<Vec<String>, usize> = HashMap::new();
        for seq in corpus {
            for token in &seq.tokens {
                let symbols: Vec<String> = token.chars().map(|c| c.to_string()).collect();
                if !symbols.is_empty() {
                    *word_counts.entry(symbols).or_insert(0) += 1;
                }
            }
        }

        let mut merges = Vec::with_capacity(num_merges);
        let mut words: Vec<(Vec<String>, usize)> = word_counts.into_iter().collect();
        for _ in 0..num_merges {
            let mut pair_counts: HashMap<(String, String), usize> = HashMap::new();
            for (symbols, count) in &words {
                for pair in symbols.windows(2) {
                    *pair_counts
                        .entry((pair[0].clone(), pair[1].clone()))
                        .or_insert(0) += count;
                }
            }
            let best = pair_counts
                .into_iter()
                .max_by(|(pa, ca), (pb, cb)| ca.cmp(cb).then_with(|| pb.cmp(pa)));
            let (pair, count) = match best {
                Some(bc) => bc,
                None => break,
            };
            if count < 2 {
                break;
            }
            for (symbols, _) in &mut words {
                merge_in_place(symbols, &pair);
            }
            merges.push(pair);
        }
        BpeModel::from_merges(merges)
    }

    /// Splits a token into subword units by replaying the learned merges,
    /// rendered with the `@@` continuation marker on non-final units.
    pub fn segment_token(&self, token: &str) -> Vec<String> {
        let mut symbols: Vec<String> = token.chars().map(|c| c.to_string()).collect();
        if symbols.is_empty() {
            return Vec::new();
        }
        loop {
            let mut best: Option<(usize, (String, String))> = None;
            for pair in symbols.windows(2) {
                let key = (pair[0].clone(), pair[1].clone());
                if let Some(&r) = self.rank.get(&key) {
                    if best.as_ref().map_or(true, |(br, _)| r < *br) {
                        best = Some((r, key));
                    }
                }
            }
            match best {
                Some((_, pair)) => merge_in_place(&mut symbols, &pair),
                None => break,
            }
        }
        let last = symbols.len() - 1;
        symbols
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if i < last {
                    format!("{s}{CONTINUATION_MARKER}")
                } else {
                    s.clone()
                }
            })
            .collect()
    }

    /// Segments every token of a sequence, preserving language and tag.
    pub fn segment_seq(&self, seq: &TokenSeq) -> TokenSeq {
        let tokens = seq
            .tokens
            .iter()
            .flat_map(|t| self.segment_token(t))
            .collect();
        TokenSeq {
            tokens,
            language: seq.language.clone(),
            target_tag: seq.target_tag.clone(),
        }
    }

    /// One merge pair per line, space-separated, in learning order.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for (l, r) in &self.merges {
            out.push_str(l);
            out.push(' ');
            out.push_str(r);
            out.push('\n');
        }
        fs::write(path, out)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<BpeModel> {
        let text = fs::read_to_string(path)?;
        let mut merges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let mut parts = line.splitn(2, ' ');
            match (parts.next(), parts.next()) {
                (Some(l), Some(r)) if !l.is_empty() && !r.is_empty() => {
                    merges.push((l.to_string(), r.to_string()));
                }
                _ => {
                    return Err(Error::BpeFormat {
                        line: i + 1,
                        msg: format!("expected `left right`, got `{line}`"),
                    })
                }
            }
        }
        Ok(BpeModel::from_merges(merges))
    }
}

fn merge_in_place(symbols: &mut Vec<String>, pair: &(String, String)) {
    let mut i = 0;
    while i + 1 < symbols.len() {
        if symbols[i] == pair.0 && symbols[i + 1] == pair.1 {
            let right = symbols.remove(i + 1);
            symbols[i].push_str(&right);
        }
        i += 1;
    }
}

/// Joins the subword pieces of a single token back together (inverse of
/// [`BpeModel::segment_token`]).
pub fn desegment_token(pieces: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in pieces.iter().enumerate() {
        if i + 1 < pieces.len() {
            out.push_str(p.strip_suffix(CONTINUATION_MARKER).unwrap_or(p));
        } else {
            out.push_str(p);
        }
    }
    out
}

/// Joins a stream of segmented tokens: a piece ending in the continuation
/// marker glues to its successor.
pub fn desegment_stream(pieces: &[String]) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for p in pieces {
        match p.strip_suffix(CONTINUATION_MARKER) {
            Some(head) => current.push_str(head),
            None => {
                current.push_str(p);
                tokens.push(std::mem::take(&mut current));
            }
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn corpus(words: &[(&str, usize)]) -> Vec<TokenSeq> {
        let mut seqs = Vec::new();
        for &(w, n) in words {
            for _ in 0..n {
                seqs.push(TokenSeq::new(vec![w.to_string()], "xx"));
            }
        }
        seqs
    }

    #[test]
    fn most_frequent_pair_merges_first() {
        // pair counts: (a,b)=2 beats (a,c)=1
        let c = corpus(&[("ab", 2), ("ac", 1)]);
        let model = BpeModel::learn(&c, 1);
        assert_eq!(model.merges(), &[("a".to_string(), "b".to_string())]);
    }

    #[test]
    fn zero_merges_gives_empty_model() {
        let c = corpus(&[("abc", 5)]);
        assert_eq!(BpeModel::learn(&c, 0).num_merges(), 0);
    }

    #[test]
    fn single_character_word_has_no_pairs() {
        let c = corpus(&[("a", 3)]);
        assert_eq!(BpeModel::learn(&c, 10).num_merges(), 0);
    }

    #[test]
    fn apply_replays_merges() {
        let model = BpeModel::from_merges(vec![("a".into(), "b".into())]);
        assert_eq!(model.segment_token("abc"), vec!["ab@@", "c"]);
    }

    #[test]
    fn empty_model_splits_to_characters() {
        let model = BpeModel::from_merges(vec![]);
        assert_eq!(model.segment_token("ab"), vec!["a@@", "b"]);
    }

    #[test]
    fn fully_merged_token_is_one_unit() {
        let c = corpus(&[("ab", 4)]);
        let model = BpeModel::learn(&c, 4);
        assert_eq!(model.segment_token("ab"), vec!["ab"]);
    }

    #[test]
    fn learning_is_deterministic() {
        let c = corpus(&[("abab", 3), ("abba", 3), ("baba", 2), ("cc", 2)]);
        let a = BpeModel::learn(&c, 16);
        let b = BpeModel::learn(&c, 16);
        assert_eq!(a.merges(), b.merges());
    }

    #[test]
    fn tie_breaks_lexicographically() {
        // (a,b) and (c,d) both occur twice; (a,b) sorts first.
        let c = corpus(&[("ab", 2), ("cd", 2)]);
        let model = BpeModel::learn(&c, 1);
        assert_eq!(model.merges(), &[("a".to_string(), "b".to_string())]);
    }

    #[test]
    fn save_load_round_trip() {
        let c = corpus(&[("abab", 3), ("abc", 2)]);
        let model = BpeModel::learn(&c, 8);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bpe.txt");
        model.save(&path).unwrap();
        assert_eq!(BpeModel::load(&path).unwrap(), model);
    }

    proptest! {
        #[test]
        fn segmentation_round_trips(token in "[a-z@]{1,12}", merges in 0usize..6) {
            let c = corpus(&[("abab", 3), ("abba", 2), ("@@x", 2)]);
            let model = BpeModel::learn(&c, merges);
            let pieces = model.segment_token(&token);
            prop_assert_eq!(desegment_token(&pieces), token);
        }

        #[test]
        fn stream_round_trips(words in proptest::collection::vec("[a-z]{1,8}", 1..6)) {
            let c = corpus(&[("abab", 3), ("cdcd", 2)]);
            let model = BpeModel::learn(&c, 4);
            let seq = TokenSeq::new(words.clone(), "xx");
            let segged = model.segment_seq(&seq);
            prop_assert_eq!(desegment_stream(&segged.tokens), words);
        }
    }
}
