use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] lodim::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Rejected(String),
}

impl CliError {
    /// 1 infeasible or rejected, 2 usage or malformed input, 3 cap exceeded.
    pub fn exit_code(&self) -> u8 {
        use lodim::Error as E;
        match self {
            CliError::Core(E::CapExceeded { .. }) => 3,
            CliError::Core(
                E::Parse { .. } | E::InvalidGraph(_) | E::InvalidField(_) | E::Precondition(_) | E::LengthMismatch(..),
            ) => 2,
            CliError::Core(_) | CliError::Rejected(_) => 1,
            CliError::Io { .. } | CliError::Json(_) | CliError::Usage(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
