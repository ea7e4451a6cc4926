use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },

    #[error("gold alignment references unknown sentence id `{0}`")]
    DanglingId(String),

    #[error("duplicate sentence id `{0}`")]
    DuplicateId(String),

    #[error("sentence id `{id}` does not carry the `{language}-` prefix")]
    IdPrefix { id: String, language: String },

    #[error("negative sampling: {0}")]
    Sampling(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
