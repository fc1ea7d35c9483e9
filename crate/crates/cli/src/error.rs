use std::path::PathBuf;

use thiserror::Error;
use whichpath_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] CoreError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    BadInput { path: PathBuf, message: String },
}

impl CliError {
    /// 0 success, 2 usage, 3 numeric non-convergence, 4 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::BadInput { .. } => 2,
            CliError::Model(CoreError::NonConvergence { .. } | CoreError::GridTooSmall { .. }) => 3,
            CliError::Model(_) => 2,
            CliError::Io { .. } => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
