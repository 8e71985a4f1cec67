use std::path::PathBuf;

use aee_core::AeeError;
use aee_oracle::OracleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("engine error: {0}")]
    Engine(#[from] AeeError),

    #[error("oracle error: {0}")]
    Oracle(#[from] OracleError),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// How a command finished, mapped onto the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    NotConverged,
    ValidationFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::NotConverged => 3,
            Status::ValidationFailed => 4,
        }
    }
}

/// Exit code for errors raised before or during computation.
pub const ERROR_EXIT: i32 = 2;
