use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown target language `{0}` (no <2{0}> tag in the vocabulary)")]
    UnknownLanguage(String),

    #[error("token id {0} out of vocabulary range")]
    IdOutOfRange(u32),

    #[error("vocabulary file: {0}")]
    VocabFormat(String),

    #[error("bpe file: line {line}: {msg}")]
    BpeFormat { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
