//! Stratified three-way split mirroring the train / ensemble-train /
//! held-out proportions.

use crate::{Error, LabeledPair, Result};
use numkit::Rng;

/// Splits labeled pairs into (train, ensemble_train, heldout) with the
/// given fractions, stratified by label. Overall split sizes follow
/// largest-remainder rounding of `n * fraction` (ties toward the earlier
/// split); classes are then balanced within each split as closely as the
/// margins allow (off by at most one).
pub fn split_three_way(
    pairs: &[LabeledPair],
    fractions: (f64, f64, f64),
    rng: &mut Rng,
) -> Result<(Vec<LabeledPair>, Vec<LabeledPair>, Vec<LabeledPair>)> {
    let (f0, f1, f2) = fractions;
    if !(f0 >= 0.0 && f1 >= 0.0 && f2 >= 0.0) || ((f0 + f1 + f2) - 1.0).abs() > 1e-9 {
        return Err(Error::Config(format!(
            "split fractions must be non-negative and sum to 1, got ({f0}, {f1}, {f2})"
        )));
    }

    let n = pairs.len();
    let overall = largest_remainder(n, &[f0, f1, f2]);

    // class pools, shuffled once
    let mut pools: [Vec<&LabeledPair>; 2] = [
        pairs.iter().filter(|p| p.label).collect(),
        pairs.iter().filter(|p| !p.label).collect(),
    ];
    for pool in &mut pools {
        rng.shuffle(pool);
    }
    let mut remaining = [pools[0].len(), pools[1].len()];

    let mut splits: [Vec<LabeledPair>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (k, &size) in overall.iter().enumerate() {
        let take = if k + 1 == overall.len() {
            // last split absorbs whatever the margins leave
            [remaining[0], remaining[1]]
        } else {
            let ideal: Vec<f64> = remaining
                .iter()
                .map(|&r| size as f64 * r as f64 / (remaining[0] + remaining[1]).max(1) as f64)
                .collect();
            let mut take = [
                (ideal[0].floor() as usize).min(remaining[0]),
                (ideal[1].floor() as usize).min(remaining[1]),
            ];
            let mut short = size - (take[0] + take[1]);
            // distribute the rounding remainder by largest fractional part
            let mut order = [0usize, 1usize];
            if (ideal[1] - ideal[1].floor()) > (ideal[0] - ideal[0].floor()) {
                order = [1, 0];
            }
            for &c in &order {
                while short > 0 && take[c] < remaining[c] {
                    take[c] += 1;
                    short -= 1;
                }
            }
            take
        };
        for (c, &cnt) in take.iter().enumerate() {
            let start = pools[c].len() - remaining[c];
            splits[k].extend(pools[c][start..start + cnt].iter().map(|&p| p.clone()));
            remaining[c] -= cnt;
        }
    }

    let [train, ensemble, heldout] = splits;
    if train.is_empty() || ensemble.is_empty() || heldout.is_empty() {
        return Err(Error::Config(format!(
            "fractions ({f0}, {f1}, {f2}) produce an empty split for {n} pairs"
        )));
    }
    Ok((train, ensemble, heldout))
}

fn largest_remainder(n: usize, fractions: &[f64]) -> Vec<usize> {
    let targets: Vec<f64> = fractions.iter().map(|f| f * n as f64).collect();
    let mut counts: Vec<usize> = targets.iter().map(|t| t.floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..fractions.len()).collect();
    // ties resolved toward the earlier split by the stable sort
    order.sort_by(|&a, &b| {
        let ra = targets[a] - targets[a].floor();
        let rb = targets[b] - targets[b].floor();
        rb.partial_cmp(&ra).unwrap()
    });
    for k in 0..(n - assigned) {
        counts[order[k % order.len()]] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn balanced(n_per_class: usize) -> Vec<LabeledPair> {
        let mut pairs = Vec::new();
        for i in 0..n_per_class {
            for &label in &[true, false] {
                pairs.push(LabeledPair {
                    src_id: format!("aa-{i:06}-{label}"),
                    tgt_id: format!("bb-{i:06}-{label}"),
                    label,
                });
            }
        }
        pairs
    }

    #[test]
    fn forty_pairs_split_as_35_4_1() {
        let pairs = balanced(20);
        let (train, ens, held) =
            split_three_way(&pairs, (0.875, 0.10, 0.025), &mut Rng::new(3)).unwrap();
        assert_eq!((train.len(), ens.len(), held.len()), (35, 4, 1));
    }

    #[test]
    fn four_thousand_split_exactly() {
        let pairs = balanced(2000);
        let (train, ens, held) =
            split_three_way(&pairs, (0.875, 0.10, 0.025), &mut Rng::new(3)).unwrap();
        assert_eq!((train.len(), ens.len(), held.len()), (3500, 400, 100));
        // stratified: equal class counts everywhere
        for split in [&train, &ens, &held] {
            let pos = split.iter().filter(|p| p.label).count();
            assert_eq!(pos * 2, split.len());
        }
    }

    #[test]
    fn splits_are_disjoint_and_exhaustive() {
        let pairs = balanced(40);
        let (a, b, c) = split_three_way(&pairs, (0.5, 0.25, 0.25), &mut Rng::new(8)).unwrap();
        let mut ids: Vec<&str> = a
            .iter()
            .chain(&b)
            .chain(&c)
            .map(|p| p.src_id.as_str())
            .collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), pairs.len());
    }

    #[test]
    fn empty_split_is_a_configuration_error() {
        let pairs = balanced(20);
        assert!(split_three_way(&pairs, (1.0, 0.0, 0.0), &mut Rng::new(1)).is_err());
    }

    #[test]
    fn bad_fractions_rejected() {
        let pairs = balanced(20);
        assert!(split_three_way(&pairs, (0.5, 0.2, 0.2), &mut Rng::new(1)).is_err());
    }

    #[test]
    fn same_seed_same_membership() {
        let pairs = balanced(50);
        let a = split_three_way(&pairs, (0.8, 0.1, 0.1), &mut Rng::new(77)).unwrap();
        let b = split_three_way(&pairs, (0.8, 0.1, 0.1), &mut Rng::new(77)).unwrap();
        assert_eq!(a, b);
    }
}
