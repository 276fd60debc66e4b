use thiserror::Error;

/// Errors produced by parsing, model building, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{path}:{line}: {message}")]
    Format {
        path: String,
        line: usize,
        message: String,
    },

    #[error("unknown format version in {path}: expected `{expected}`, found `{found}`")]
    Version {
        path: String,
        expected: String,
        found: String,
    },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn format(path: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.to_string(),
            line,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }
}
