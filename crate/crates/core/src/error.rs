use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("function file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
