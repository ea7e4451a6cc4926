//! Labeled feature rows.

use crate::{Error, Result};
use numkit::Real;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub features: Vec<Real>,
    pub label: bool,
    pub id: String,
}

/// Validated collection of rows: uniform arity, finite features, unique
/// pair ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    rows: Vec<Row>,
    arity: usize,
}

impl Dataset {
    pub fn new(rows: Vec<Row>) -> Result<Dataset> {
        if rows.is_empty() {
            return Err(Error::Dataset("empty dataset".into()));
        }
        let arity = rows[0].features.len();
        if arity == 0 {
            return Err(Error::Dataset("rows carry no features".into()));
        }
        let mut ids = HashSet::new();
        for r in &rows {
            if r.features.len() != arity {
                return Err(Error::Dataset(format!(
                    "row `{}` has {} features, expected {arity}",
                    r.id,
                    r.features.len()
                )));
            }
            if r.features.iter().any(|v| !v.is_finite()) {
                return Err(Error::Dataset(format!(
                    "row `{}` contains a non-finite feature",
                    r.id
                )));
            }
            if !ids.insert(r.id.as_str()) {
                return Err(Error::Dataset(format!("duplicate pair id `{}`", r.id)));
            }
        }
        Ok(Dataset { rows, arity })
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.rows.iter().filter(|r| r.label).count();
        (pos, self.rows.len() - pos)
    }

    pub fn require_both_classes(&self) -> Result<()> {
        let (pos, neg) = self.class_counts();
        if pos == 0 {
            return Err(Error::SingleClass("negatives"));
        }
        if neg == 0 {
            return Err(Error::SingleClass("positives"));
        }
        Ok(())
    }

    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            arity: self.arity,
        }
    }

    pub fn labels(&self) -> Vec<bool> {
        self.rows.iter().map(|r| r.label).collect()
    }
}

#[cfg(test)]
pub(crate) fn scalar_dataset(sims: &[(Real, bool)]) -> Dataset {
    Dataset::new(
        sims.iter()
            .enumerate()
            .map(|(i, &(s, label))| Row {
                features: vec![s],
                label,
                id: format!("p{i}"),
            })
            .collect(),
    )
    .unwrap()
}
