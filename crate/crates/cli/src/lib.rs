//! Library side of the `hyperform` command-line tool: configuration, command
//! dispatch and report formatting. `main.rs` only wires these to the process.

mod commands;
pub mod config;
mod output;
mod table;

use hyperform_core::Error;
use thiserror::Error as ThisError;

pub use commands::run;
pub use config::{Command, OutputFormat, RunConfig};
pub use output::render;
pub use table::{table_csv, TableRow, TABLE_HEADER};

/// Exit statuses of the binary.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONVERGENCE: i32 = 2;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "HYPERFORM_THREADS";

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Clap(#[from] clap::Error),
    #[error("missing required flag {0}")]
    Missing(&'static str),
    #[error("invalid value for {flag}: {reason}")]
    Invalid { flag: &'static str, reason: String },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if !e.use_stderr() => EXIT_OK,
            CliError::Core(Error::Convergence { .. }) => EXIT_CONVERGENCE,
            _ => EXIT_USAGE,
        }
    }
}

/// A finished run: the rendered report and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

/// Sizes the global rayon pool from `HYPERFORM_THREADS`, if set.
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let Some(raw) = value else { return Ok(()) };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| CliError::Invalid {
        flag: THREADS_ENV,
        reason: format!("expected a positive integer, got `{raw}`"),
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Invalid { flag: THREADS_ENV, reason: e.to_string() })
}
