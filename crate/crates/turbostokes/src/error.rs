//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value is invalid or inconsistent with the grid.
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation was requested in a mode that does not support it,
    /// e.g. the Stratonovich correction for time-dependent noise.
    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),

    /// A harness ran but its pass condition failed.
    #[error("harness failure: {0}")]
    Harness(String),

    /// Parse failure for an experiment spec file.
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedMode(msg.into())
    }
}
