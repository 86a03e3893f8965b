use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dirac_core::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    InFile { path: PathBuf, source: dirac_core::Error },

    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type CliResult<T> = Result<T, CliError>;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_IDENTITY: u8 = 3;

fn core_exit_code(e: &dirac_core::Error) -> u8 {
    use dirac_core::Error::*;
    match e {
        IdentityViolation(_) | NoConvergence { .. } | NotSymmetric { .. } => EXIT_IDENTITY,
        _ => EXIT_INPUT,
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::InFile { source: e, .. } => core_exit_code(e),
            CliError::Io { .. } | CliError::Argument(_) => EXIT_INPUT,
        }
    }
}
