//! Crate-wide error type.

/// Errors produced by the library, grouped by failure class so callers can
/// map them to distinct exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid inputs: bad dimensions, out-of-range values, schema violations.
    #[error("validation error: {0}")]
    Validation(String),

    /// Numerical failure: singular systems, non-finite intermediate values,
    /// diverging training runs.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Malformed file contents.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, message: msg.into() }
    }
}
