use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dataset: {0}")]
    Dataset(String),

    #[error("fitting requires both classes; dataset has only {0}")]
    SingleClass(&'static str),

    #[error("prediction arity mismatch: model expects {expected} features, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("length mismatch: {0} predictions vs {1} gold labels")]
    LengthMismatch(usize, usize),

    #[error("SMO did not converge within {0} iterations")]
    NonConvergence(usize),

    #[error("stratification: class `{class}` has {count} members, need at least {need}")]
    Stratification {
        class: &'static str,
        count: usize,
        need: usize,
    },

    #[error("model file: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
