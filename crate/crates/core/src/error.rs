use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request would exceed a configured memory or work budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),

    /// A persisted file is malformed.
    #[error("{}:{line}: {message}", path.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "<input>".into()))]
    Parse { path: Option<PathBuf>, line: usize, message: String },

    /// Two caches disagree about the value of the same signature.
    #[error("cache conflict for signature {signature}: {left} != {right}")]
    CacheConflict { signature: String, left: String, right: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
