//! Balanced dataset construction: gold pairs as positives plus the same
//! number of sampled non-matching pairs as negatives.

use crate::{Error, GoldPairs, MonoCorpus, Result};
use numkit::Rng;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPair {
    pub src_id: String,
    pub tgt_id: String,
    pub label: bool,
}

/// Builds a balanced pair list: every gold pair labeled positive, and an
/// equal number of uniformly sampled non-gold cross pairs (without
/// replacement) labeled negative.
pub fn build_balanced(
    gold: &GoldPairs,
    src: &MonoCorpus,
    tgt: &MonoCorpus,
    rng: &mut Rng,
) -> Result<Vec<LabeledPair>> {
    gold.validate(src, tgt)?;
    let needed = gold.len();
    let total_cross = src.len() * tgt.len();
    if total_cross < gold.len() + needed {
        return Err(Error::Sampling(format!(
            "need {needed} negatives but only {} non-gold cross pairs exist",
            total_cross.saturating_sub(gold.len())
        )));
    }

    let mut out: Vec<LabeledPair> = gold
        .pairs()
        .iter()
        .map(|(s, t)| LabeledPair {
            src_id: s.clone(),
            tgt_id: t.clone(),
            label: true,
        })
        .collect();

    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    // Small cross products are enumerated exactly; large ones use rejection
    // sampling (gold density is tiny there).
    if total_cross <= 1 << 20 {
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for i in 0..src.len() {
            for j in 0..tgt.len() {
                if !gold.contains(src.id_at(i), tgt.id_at(j)) {
                    candidates.push((i, j));
                }
            }
        }
        if candidates.len() < needed {
            return Err(Error::Sampling(format!(
                "need {needed} negatives but only {} non-gold cross pairs exist",
                candidates.len()
            )));
        }
        rng.shuffle(&mut candidates);
        for &(i, j) in candidates.iter().take(needed) {
            out.push(LabeledPair {
                src_id: src.id_at(i).to_string(),
                tgt_id: tgt.id_at(j).to_string(),
                label: false,
            });
        }
    } else {
        let max_attempts = needed * 1000 + 10_000;
        let mut attempts = 0;
        while seen.len() < needed {
            attempts += 1;
            if attempts > max_attempts {
                return Err(Error::Sampling(format!(
                    "gave up after {attempts} attempts drawing {needed} negatives"
                )));
            }
            let i = rng.index(src.len());
            let j = rng.index(tgt.len());
            if gold.contains(src.id_at(i), tgt.id_at(j)) || !seen.insert((i, j)) {
                continue;
            }
            out.push(LabeledPair {
                src_id: src.id_at(i).to_string(),
                tgt_id: tgt.id_at(j).to_string(),
                label: false,
            });
        }
    }
    Ok(out)
}

/// The shuffle protocol for building unrelated pairs: target sides are
/// permuted so that no pair keeps its original partner.
pub fn shuffle_unrelated(pairs: &[(String, String)], rng: &mut Rng) -> Vec<(String, String)> {
    let n = pairs.len();
    let mut perm: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut perm);
    // break fixed points by rotating them amongst themselves
    let fixed: Vec<usize> = (0..n).filter(|&i| perm[i] == i).collect();
    if fixed.len() == 1 && n > 1 {
        let other = if fixed[0] == 0 { 1 } else { 0 };
        perm.swap(fixed[0], other);
    } else {
        for w in 0..fixed.len() {
            let a = fixed[w];
            let b = fixed[(w + 1) % fixed.len()];
            perm[a] = b;
        }
    }
    (0..n)
        .map(|i| (pairs[i].0.clone(), pairs[perm[i]].1.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(lang: &str, n: usize) -> MonoCorpus {
        let mut c = MonoCorpus::new(lang);
        for _ in 0..n {
            c.push_auto(format!("sentence in {lang}"));
        }
        c
    }

    fn gold_diag(src: &MonoCorpus, tgt: &MonoCorpus, n: usize) -> GoldPairs {
        let mut g = GoldPairs::new();
        for i in 0..n {
            g.push(src.id_at(i).to_string(), tgt.id_at(i).to_string())
                .unwrap();
        }
        g
    }

    #[test]
    fn balanced_counts() {
        let src = corpus("aa", 30);
        let tgt = corpus("bb", 30);
        let gold = gold_diag(&src, &tgt, 10);
        let pairs = build_balanced(&gold, &src, &tgt, &mut Rng::new(5)).unwrap();
        assert_eq!(pairs.len(), 20);
        assert_eq!(pairs.iter().filter(|p| p.label).count(), 10);
        for p in pairs.iter().filter(|p| !p.label) {
            assert!(!gold.contains(&p.src_id, &p.tgt_id));
        }
    }

    #[test]
    fn same_seed_same_negatives() {
        let src = corpus("aa", 50);
        let tgt = corpus("bb", 50);
        let gold = gold_diag(&src, &tgt, 20);
        let a = build_balanced(&gold, &src, &tgt, &mut Rng::new(9)).unwrap();
        let b = build_balanced(&gold, &src, &tgt, &mut Rng::new(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn negatives_are_distinct() {
        let src = corpus("aa", 10);
        let tgt = corpus("bb", 10);
        let gold = gold_diag(&src, &tgt, 8);
        let pairs = build_balanced(&gold, &src, &tgt, &mut Rng::new(1)).unwrap();
        let negs: HashSet<_> = pairs
            .iter()
            .filter(|p| !p.label)
            .map(|p| (p.src_id.clone(), p.tgt_id.clone()))
            .collect();
        assert_eq!(negs.len(), 8);
    }

    #[test]
    fn exhausted_cross_product_errors() {
        let src = corpus("aa", 1);
        let tgt = corpus("bb", 1);
        let gold = gold_diag(&src, &tgt, 1);
        assert!(build_balanced(&gold, &src, &tgt, &mut Rng::new(1)).is_err());
    }

    #[test]
    fn shuffled_pairs_have_no_fixed_points() {
        let pairs: Vec<(String, String)> = (0..40)
            .map(|i| (format!("s{i}"), format!("t{i}")))
            .collect();
        for seed in 0..20 {
            let unrel = shuffle_unrelated(&pairs, &mut Rng::new(seed));
            assert_eq!(unrel.len(), pairs.len());
            for (i, (s, t)) in unrel.iter().enumerate() {
                assert_eq!(s, &pairs[i].0);
                assert_ne!(t, &pairs[i].1, "fixed point at {i} with seed {seed}");
            }
        }
    }
}
