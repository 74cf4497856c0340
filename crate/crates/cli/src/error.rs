use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error(transparent)]
    Physics(vibpol::Error),
    #[error("{failed} verification check(s) failed")]
    VerificationFailed { failed: usize },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 3,
            CliError::Validation(_) => 4,
            CliError::Physics(_) | CliError::VerificationFailed { .. } => 5,
            CliError::Io { .. } => 6,
        }
    }
}

impl From<vibpol::Error> for CliError {
    fn from(e: vibpol::Error) -> Self {
        match e {
            vibpol::Error::InvalidParameter { .. } => CliError::Validation(e.to_string()),
            other => CliError::Physics(other),
        }
    }
}
