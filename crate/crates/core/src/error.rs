use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed data: wrong degrees, unknown tokens, mismatched lengths.
    #[error("structural error: {0}")]
    Structural(String),
    /// An operation was applied outside its domain (e.g. non-composable cells).
    #[error("domain error: {0}")]
    Domain(String),
    /// A hypothesis required by a construction does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An enumeration could not certify that it found everything.
    #[error("possibly incomplete: {0}")]
    Incomplete(String),
    /// A simplicial construction needs simplices beyond the materialized cap.
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
