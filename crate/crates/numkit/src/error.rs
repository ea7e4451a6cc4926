use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {a_rows}x{a_cols} vs {b_rows}x{b_cols}")]
    DimMismatch {
        op: &'static str,
        a_rows: usize,
        a_cols: usize,
        b_rows: usize,
        b_cols: usize,
    },

    #[error("empty matrix passed to {0}")]
    Empty(&'static str),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("training divergence: non-finite gradient for parameter `{0}`")]
    DivergentGradient(String),

    #[error("loss evaluation returned a non-finite value")]
    NonFiniteLoss,

    #[error("container: {0}")]
    Container(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("container header: {0}")]
    Json(#[from] serde_json::Error),
}
