use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was applied outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size limit was exceeded.
    #[error("limit exceeded: {0}")]
    Limit(String),
    /// Inputs have incompatible shapes (group structure, matrix sizes, ...).
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// A structural invariant failed; the message names the witness.
    #[error("validation failed: {0}")]
    Validation(String),
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
