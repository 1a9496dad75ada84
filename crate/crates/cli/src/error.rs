use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid parameters: {0}")]
    Invalid(#[from] primelab_core::Error),
    #[error("checkpoint {path} was written for different parameters (hash {found}, expected {expected})")]
    HashMismatch { path: PathBuf, found: String, expected: String },
    #[error("corrupt checkpoint {path}: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },
    #[error("64-bit overflow while evaluating key {key}")]
    Overflow { key: u64 },
    #[error("internal error at key {key}: {reason}")]
    Internal { key: u64, reason: String },
    #[error("halted after {waves} waves (checkpoint saved)")]
    Halted { waves: u64 },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// Maps an unexpected core error raised while evaluating `key`.
    pub fn at_key(key: u64, err: primelab_core::Error) -> Self {
        match err {
            primelab_core::Error::Overflow => CliError::Overflow { key },
            other => CliError::Internal { key, reason: other.to_string() },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(primelab_core::Error::Overflow) => 3,
            CliError::Usage(_) | CliError::Invalid(_) | CliError::HashMismatch { .. } => 2,
            _ => 3,
        }
    }
}
