use std::path::PathBuf;

use thiserror::Error;

/// Exit code for a run whose checks all passed.
pub const EXIT_OK: u8 = 0;
/// Exit code when a verification check failed.
pub const EXIT_VERIFICATION_FAILED: u8 = 1;
/// Exit code for usage errors and malformed input files.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{record}: {message}")]
    Format { record: String, message: String },

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] latcheck_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_USAGE
    }
}
