use thiserror::Error;

/// Errors raised by the library. CLI exit codes are derived from the variant:
/// validation problems map to 2, invariant violations to 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A mathematical invariant failed to hold. The payload carries a
    /// serialized witness (usually the offending matrix or class).
    #[error("invariant violation: {message}")]
    Invariant { message: String, witness: String },
}

impl Error {
    pub fn invariant(message: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Invariant {
            message: message.into(),
            witness: witness.into(),
        }
    }

    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
