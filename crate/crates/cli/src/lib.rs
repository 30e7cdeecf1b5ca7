//! IO companion of the `darboux-dirac` core: run configuration, CSV table
//! emission, the curve/spectrum commands and the verification suite.

use core::fmt;

pub mod commands;
pub mod config;
pub mod table;
pub mod verify;

/// Command-level failure: either a configuration problem (exit code 2) or a
/// numerical one surfaced by the core (exit code 3 for poles, divergence and
/// non-convergence; 2 for domain violations).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(darboux_dirac::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Numeric(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<darboux_dirac::Error> for CliError {
    fn from(err: darboux_dirac::Error) -> CliError {
        CliError::Numeric(err)
    }
}

fn numeric_exit_code(err: &darboux_dirac::Error) -> u8 {
    use darboux_dirac::Error::*;
    match err {
        Pole { .. } | Divergence { .. } | NonConvergence { .. } | ZeroNorm => 3,
        At { source, .. } => numeric_exit_code(source),
        Domain { .. } | Grid { .. } => 2,
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(err) => numeric_exit_code(err),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
