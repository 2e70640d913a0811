use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("window exceeded: {0}")]
    WindowExceeded(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
