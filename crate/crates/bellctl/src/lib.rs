//! Library half of the `bellctl` command-line tool. Each command returns a
//! [`RunReport`] (or CSV text for sweeps) so the binary only handles flags and
//! output.

pub mod commands;
pub mod report;

pub use commands::{
    analyze, correlators, lhv, parse_table, sweep, verify_appendix, Sweep, SweepRow,
};
pub use report::{format_float, round_sig, RunReport, TOOL_VERSION};

use bell_workbench::Error as WorkbenchError;

/// Failures, split by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, bad ranges or unreadable input. Exit status 2.
    #[error("{0}")]
    Usage(String),
    /// The numerics did not hold together. Exit status 3.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<WorkbenchError> for CliError {
    fn from(e: WorkbenchError) -> Self {
        match e {
            WorkbenchError::OutOfRange { .. }
            | WorkbenchError::CapExceeded { .. }
            | WorkbenchError::InvalidTable(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
