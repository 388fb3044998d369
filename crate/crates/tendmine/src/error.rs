use std::io;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// Input uses a feature outside the supported subset; `line` is 1-based.
    #[error("line {line}: unsupported: {message}")]
    Unsupported { line: usize, message: String },
    /// Schema construction or compatibility failure.
    #[error("{0}")]
    Schema(String),
    /// An argument violates an operation's contract.
    #[error("{0}")]
    InvalidArgument(String),
    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn unsupported(line: usize, message: impl Into<String>) -> Self {
        Error::Unsupported {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn schema(message: impl Into<String>) -> Self {
        Error::Schema(message.into())
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
