use std::path::PathBuf;

use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("masses sum to {sum}, expected 1 (tolerance {tolerance:e})")]
    MassSum { sum: f64, tolerance: f64 },

    #[error("the empty set cannot carry positive mass ({mass})")]
    EmptyFocal { mass: f64 },

    #[error("frame mismatch: {0}")]
    FrameMismatch(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("frame error: {0}")]
    Frame(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("line {line}, column {column}: {message}")]
    Label {
        line: u64,
        column: usize,
        message: String,
    },

    #[error("instance too large for exhaustive enumeration: {0}")]
    Size(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("database failed validation with {} violation(s); first: {}", .0.len(), .0[0])]
    Invalid(Vec<crate::edb::Violation>),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
