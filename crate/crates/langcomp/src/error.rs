use std::path::PathBuf;

use langcomp_core::Error as ModelError;

/// Exit code for bad input: usage, parameters, initial conditions.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code for failures after the inputs were accepted.
pub const EXIT_RUNTIME: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Model(e) => match e {
                ModelError::Integration(_) | ModelError::NoThreshold { .. } => EXIT_RUNTIME,
                _ => EXIT_VALIDATION,
            },
            CliError::Io { .. } | CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
