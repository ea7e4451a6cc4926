//! The complementary surface measures for sentence-pair classification:
//! character n-gram cosine (n = 2..5, spaces removed), pseudo-cognate
//! cosine (4-character prefixes), token/character counts, and the
//! Gaussian length factor, assembled into fixed-order feature vectors.

use numkit::Real;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use textproc::{normalize_for_surface, tokenize, TokenSeq};
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length model needs at least {min} parallel pairs, got {got}")]
    TooFewPairs { min: usize, got: usize },

    #[error("length model is degenerate: all character ratios identical (sigma = 0)")]
    DegenerateSigma,

    #[error("zero-length source sentence in length computation")]
    ZeroLengthSource,
}

/// Classifier input scenarios: embedding cosine alone, the surface
/// measures alone, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Ctx,
    Comp,
    All,
}

impl Scenario {
    pub fn parse(s: &str) -> Option<Scenario> {
        match s {
            "ctx" => Some(Scenario::Ctx),
            "comp" => Some(Scenario::Comp),
            "all" => Some(Scenario::All),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Ctx => "ctx",
            Scenario::Comp => "comp",
            Scenario::All => "all",
        }
    }
}

/// Gaussian model of target/source character-length ratios, fitted on
/// parallel pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthModel {
    pub mu: Real,
    pub sigma: Real,
    pub src_lang: String,
    pub tgt_lang: String,
}

/// One pair's feature values in their fixed column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairFeatures {
    pub ngram_cos: Real,
    pub cognate_cos: Real,
    pub src_tokens: usize,
    pub tgt_tokens: usize,
    pub src_chars: usize,
    pub tgt_chars: usize,
    pub length_factor: Real,
    pub ctx_cos: Option<Real>,
}

impl PairFeatures {
    /// Column names in assembly order; `ctx_cos` only participates in the
    /// `all` scenario.
    pub const COLUMNS: [&'static str; 8] = [
        "ngram_cos",
        "cognate_cos",
        "src_tokens",
        "tgt_tokens",
        "src_chars",
        "tgt_chars",
        "length_factor",
        "ctx_cos",
    ];

    /// The feature vector for a scenario: 1 value for `ctx`, 7 for
    /// `comp`, 8 for `all`. Panics if `ctx_cos` is required but absent.
    pub fn vector(&self, scenario: Scenario) -> Vec<Real> {
        let surface = [
            self.ngram_cos,
            self.cognate_cos,
            self.src_tokens as Real,
            self.tgt_tokens as Real,
            self.src_chars as Real,
            self.tgt_chars as Real,
            self.length_factor,
        ];
        match scenario {
            Scenario::Ctx => vec![self.ctx_cos.expect("ctx scenario needs ctx_cos")],
            Scenario::Comp => surface.to_vec(),
            Scenario::All => {
                let mut v = surface.to_vec();
                v.push(self.ctx_cos.expect("all scenario needs ctx_cos"));
                v
            }
        }
    }
}

fn cosine_of_counts(a: &HashMap<String, usize>, b: &HashMap<String, usize>) -> Real {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let dot: Real = a
        .iter()
        .filter_map(|(k, &va)| b.get(k).map(|&vb| va as Real * vb as Real))
        .sum();
    let na: Real = a.values().map(|&v| (v as Real).powi(2)).sum::<Real>().sqrt();
    let nb: Real = b.values().map(|&v| (v as Real).powi(2)).sum::<Real>().sqrt();
    dot / (na * nb)
}

fn ngram_profile(text: &str) -> HashMap<String, usize> {
    // spaces removed to better account for compounds
    let chars: Vec<char> = normalize_for_surface(text)
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let mut counts = HashMap::new();
    for n in 2..=5usize {
        if chars.len() < n {
            break;
        }
        for w in chars.windows(n) {
            *counts.entry(w.iter().collect::<String>()).or_insert(0) += 1;
        }
    }
    counts
}

/// Cosine over combined 2-5 character n-gram term frequencies of the
/// normalized, space-stripped texts. Empty profiles give 0.
pub fn char_ngram_similarity(s: &str, t: &str) -> Real {
    cosine_of_counts(&ngram_profile(s), &ngram_profile(t))
}

fn cognate_profile(seq: &TokenSeq) -> HashMap<String, usize> {
    let mut counts = HashMap::new();
    for token in &seq.tokens {
        let norm = normalize_for_surface(token);
        if norm.is_empty() {
            continue;
        }
        let alphabetic = norm.chars().all(|c| c.is_alphabetic());
        let len = norm.chars().count();
        // tokens shorter than four characters are discarded unless they
        // contain a non-alphabetic character
        if len < 4 && alphabetic {
            continue;
        }
        let key = if alphabetic {
            norm.chars().take(4).collect()
        } else {
            norm
        };
        *counts.entry(key).or_insert(0) += 1;
    }
    counts
}

/// Cosine over pseudo-cognate prefix counts. Either side empty after
/// filtering gives 0.
pub fn pseudo_cognate_similarity(s: &TokenSeq, t: &TokenSeq) -> Real {
    cosine_of_counts(&cognate_profile(s), &cognate_profile(t))
}

/// Character count on raw text, excluding newlines.
pub fn char_count(text: &str) -> usize {
    text.chars().filter(|&c| c != '\n').count()
}

/// Token and character counts for both sides.
pub fn count_features(s: &str, t: &str) -> (usize, usize, usize, usize) {
    (
        tokenize(s).len(),
        tokenize(t).len(),
        char_count(s),
        char_count(t),
    )
}

pub const LENGTH_MODEL_MIN_PAIRS: usize = 100;

/// Fits the length-factor Gaussian from parallel pairs: mean and
/// population std of `|t|/|s|` character ratios.
pub fn fit_length_model<'a, I>(pairs: I, src_lang: &str, tgt_lang: &str) -> Result<LengthModel>
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let mut ratios = Vec::new();
    for (s, t) in pairs {
        let ls = char_count(s);
        if ls == 0 {
            return Err(Error::ZeroLengthSource);
        }
        ratios.push(char_count(t) as Real / ls as Real);
    }
    if ratios.len() < LENGTH_MODEL_MIN_PAIRS {
        return Err(Error::TooFewPairs {
            min: LENGTH_MODEL_MIN_PAIRS,
            got: ratios.len(),
        });
    }
    let n = ratios.len() as Real;
    let mu = ratios.iter().sum::<Real>() / n;
    let var = ratios.iter().map(|r| (r - mu) * (r - mu)).sum::<Real>() / n;
    let sigma = var.sqrt();
    if sigma <= 0.0 {
        return Err(Error::DegenerateSigma);
    }
    Ok(LengthModel {
        mu,
        sigma,
        src_lang: src_lang.to_string(),
        tgt_lang: tgt_lang.to_string(),
    })
}

/// Gaussian score of the pair's character-length ratio under the fitted
/// model: `exp(-0.5 ((|t|/|s| - mu) / sigma)^2)`, in (0, 1].
pub fn length_factor(model: &LengthModel, s: &str, t: &str) -> Result<Real> {
    let ls = char_count(s);
    if ls == 0 {
        return Err(Error::ZeroLengthSource);
    }
    let ratio = char_count(t) as Real / ls as Real;
    let z = (ratio - model.mu) / model.sigma;
    Ok((-0.5 * z * z).exp())
}

/// Computes all surface features for a pair, attaching the embedding
/// cosine when the scenario carries one.
pub fn assemble(
    s: &str,
    t: &str,
    src_lang: &str,
    tgt_lang: &str,
    model: &LengthModel,
    ctx_cos: Option<Real>,
) -> Result<PairFeatures> {
    let (src_tokens, tgt_tokens, src_chars, tgt_chars) = count_features(s, t);
    let s_seq = TokenSeq::from_text(s, src_lang);
    let t_seq = TokenSeq::from_text(t, tgt_lang);
    Ok(PairFeatures {
        ngram_cos: char_ngram_similarity(s, t),
        cognate_cos: pseudo_cognate_similarity(&s_seq, &t_seq),
        src_tokens,
        tgt_tokens,
        src_chars,
        tgt_chars,
        length_factor: length_factor(model, s, t)?,
        ctx_cos,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(tokens: &[&str]) -> TokenSeq {
        TokenSeq::new(tokens.iter().map(|t| t.to_string()).collect(), "xx")
    }

    fn fitted_model() -> LengthModel {
        let pairs: Vec<(String, String)> = (0..100)
            .map(|i| {
                if i % 2 == 0 {
                    ("abcdefghij".to_string(), "abcdefghi".to_string())
                } else {
                    ("abcdefghij".to_string(), "abcdefghijk".to_string())
                }
            })
            .collect();
        fit_length_model(
            pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            "aa",
            "bb",
        )
        .unwrap()
    }

    #[test]
    fn identical_strings_have_unit_ngram_cosine() {
        assert!((char_ngram_similarity("some words here", "some words here") - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_ngrams_have_zero_cosine() {
        assert_eq!(char_ngram_similarity("aaaa", "bbbb"), 0.0);
    }

    #[test]
    fn ngram_regression_constant() {
        // independent oracle: enumerate every 2-5 gram of both strings and
        // take the cosine of the count vectors by hand.
        let grams = |s: &str| -> Vec<String> {
            let cs: Vec<char> = s.chars().collect();
            let mut out = Vec::new();
            for n in 2..=5 {
                for start in 0..cs.len().saturating_sub(n - 1) {
                    out.push(cs[start..start + n].iter().collect());
                }
            }
            out
        };
        let (a, b) = (grams("abcd"), grams("abce"));
        let dot = a.iter().filter(|g| b.contains(g)).count() as f64;
        let oracle = dot / ((a.len() as f64).sqrt() * (b.len() as f64).sqrt());
        assert!((oracle - 0.5).abs() < 1e-12, "oracle drifted: {oracle}");
        assert!((char_ngram_similarity("abcd", "abce") - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ngram_ignores_spaces_and_case() {
        // "ab cd" vs "abcd": identical profiles once spaces are gone
        assert!((char_ngram_similarity("ab cd", "ABCD") - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cognates_match_on_prefixes() {
        let s = seq(&["parallel", "text"]);
        let t = seq(&["paralelo", "texto"]);
        assert!((pseudo_cognate_similarity(&s, &t) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn short_alphabetic_tokens_are_discarded() {
        let s = seq(&["the", "a", "of"]);
        let t = seq(&["the", "words", "here"]);
        assert_eq!(pseudo_cognate_similarity(&s, &t), 0.0);
    }

    #[test]
    fn numeric_tokens_survive() {
        let s = seq(&["2017"]);
        let t = seq(&["2017"]);
        assert!((pseudo_cognate_similarity(&s, &t) - 1.0).abs() < 1e-12);
        // kept through the non-alphabetic rule even when short
        let s = seq(&["a1"]);
        let t = seq(&["a1"]);
        assert!((pseudo_cognate_similarity(&s, &t) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn counts_are_raw_per_side() {
        assert_eq!(count_features("a b", "xyz"), (2, 1, 3, 3));
        assert_eq!(count_features("", ""), (0, 0, 0, 0));
    }

    #[test]
    fn length_model_closed_form() {
        let m = fitted_model();
        assert!((m.mu - 1.0).abs() < 1e-12);
        assert!((m.sigma - 0.1).abs() < 1e-12);
    }

    #[test]
    fn degenerate_ratios_are_rejected() {
        let pairs: Vec<(String, String)> = (0..120)
            .map(|_| ("abcd".to_string(), "abcd".to_string()))
            .collect();
        let err = fit_length_model(
            pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            "aa",
            "bb",
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegenerateSigma));
    }

    #[test]
    fn too_few_pairs_rejected() {
        let err =
            fit_length_model([("ab", "abc")], "aa", "bb").unwrap_err();
        assert!(matches!(err, Error::TooFewPairs { .. }));
    }

    #[test]
    fn refit_is_identical() {
        assert_eq!(fitted_model(), fitted_model());
    }

    #[test]
    fn length_factor_closed_forms() {
        let m = fitted_model(); // mu = 1, sigma = 0.1
        // ratio = mu
        let f = length_factor(&m, "abcdefghij", "abcdefghij").unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        // ratio = mu + sigma -> e^{-1/2}
        let f = length_factor(&m, "abcdefghij", "abcdefghijk").unwrap();
        assert!((f - (-0.5f64).exp()).abs() < 1e-12, "{f}");
        // ratio = mu + 3 sigma -> e^{-4.5}
        let f = length_factor(&m, "abcdefghij", "abcdefghijklm").unwrap();
        assert!((f - (-4.5f64).exp()).abs() < 1e-12, "{f}");
    }

    #[test]
    fn zero_length_source_is_an_error() {
        let m = fitted_model();
        assert!(length_factor(&m, "", "abc").is_err());
    }

    #[test]
    fn assemble_scenarios() {
        let m = fitted_model();
        let comp = assemble("abcdefghij", "abcdefghij", "aa", "bb", &m, None).unwrap();
        assert_eq!(comp.vector(Scenario::Comp).len(), 7);
        assert!(comp.ctx_cos.is_none());

        let all = assemble("abcdefghij", "abcdefghij", "aa", "bb", &m, Some(0.9)).unwrap();
        assert_eq!(all.vector(Scenario::All).len(), 8);
        assert_eq!(all.vector(Scenario::Ctx), vec![0.9]);
        // identical pair: unit cosines and peak length factor
        assert!((all.ngram_cos - 1.0).abs() < 1e-12);
        assert!((all.cognate_cos - 1.0).abs() < 1e-12);
        assert!((all.length_factor - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cosines_symmetric_counts_not() {
        let (s, t) = ("short one", "a rather longer sentence");
        assert_eq!(
            char_ngram_similarity(s, t).to_bits(),
            char_ngram_similarity(t, s).to_bits()
        );
        let ss = seq(&["short", "tokens"]);
        let tt = seq(&["longer", "tokens", "here"]);
        assert_eq!(
            pseudo_cognate_similarity(&ss, &tt).to_bits(),
            pseudo_cognate_similarity(&tt, &ss).to_bits()
        );
        // order matters for counts and length factor
        assert_ne!(count_features(s, t), count_features(t, s));
        let m = fitted_model();
        assert_ne!(
            length_factor(&m, "abcd", "abcdefgh").unwrap(),
            length_factor(&m, "abcdefgh", "abcd").unwrap()
        );
    }

    proptest! {
        #[test]
        fn self_similarity_is_one(s in "[a-z]{2,16}") {
            prop_assert!((char_ngram_similarity(&s, &s) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn cosines_bounded(a in "[a-z ]{0,20}", b in "[a-z ]{0,20}") {
            let c = char_ngram_similarity(&a, &b);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        }
    }
}
