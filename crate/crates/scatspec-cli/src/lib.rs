//! Library surface of the `scatspec` binary: argument types, command
//! implementations, file formats and the SVG renderer.

// negated comparisons like `!(x > 0.0)` are deliberate: they reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod io;
pub mod svg;

/// Error carrying the process exit code.
///
/// Exit codes: 0 success / all checks pass, 1 usage error, 2 compute
/// failure, 3 verification failure.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Compute(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<scatspec::Error> for CliError {
    fn from(e: scatspec::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(format!("I/O error: {e}"))
    }
}
