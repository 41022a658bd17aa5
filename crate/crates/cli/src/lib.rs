//! Command-line front end for `crepant-core`: coefficient tables, invariant
//! values, verification reports and numeric evaluation.

pub mod commands;
pub mod config;
pub mod format;

use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Failed(String),
    #[error(transparent)]
    Core(#[from] crepant_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for verification failures, poles and runtime errors; 2 for bad
    /// input, including parity violations.
    pub fn exit_code(&self) -> ExitCode {
        use crepant_core::Error as E;
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Core(E::ParityViolation { .. } | E::InvalidDegree(_) | E::UnknownVariable(_)) => {
                ExitCode::from(2)
            }
            _ => ExitCode::from(1),
        }
    }
}
