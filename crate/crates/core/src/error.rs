use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by measure construction, evaluation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("atom cap exceeded: {requested} atoms requested, cap is {cap}")]
    AtomCap { requested: u128, cap: usize },

    #[error("scale out of range at eps={eps}: {what}")]
    ScaleOutOfRange { eps: f64, what: String },

    #[error("degenerate series: {0}")]
    Degenerate(String),

    #[error("malformed image {path}: {reason}")]
    Image { path: PathBuf, reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True when the failure is numeric rather than a bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::ScaleOutOfRange { .. } | Error::Degenerate(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
