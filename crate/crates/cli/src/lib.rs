//! Command-line front end for `innerfn`: spec-file parsing, evaluation, level
//! sets, certification reports and norm experiments.
//!
//! Exit codes: 0 success, 1 usage error, 2 spec error, 3 numerical flag
//! (insufficient truncation; the report is still written).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod examples;
pub mod format;
pub mod report;
pub mod specfile;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::Parser;
use thiserror::Error;

pub use specfile::{parse_spec, to_spec_text, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_VAR: &str = "INNERFN_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("spec error: {0}")]
    Spec(#[from] SpecError),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Numerics(#[from] innerfn::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Write { .. } => EXIT_USAGE,
            CliError::Spec(_) | CliError::Read { .. } => EXIT_SPEC,
            CliError::Numerics(innerfn::Error::InsufficientTruncation { .. }) => EXIT_NUMERICAL,
            CliError::Numerics(_) => EXIT_USAGE,
        }
    }
}

/// Completed command; `flag` carries the reason for exit code 3.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub flag: Option<String>,
}

impl Outcome {
    pub fn ok() -> Self {
        Self { flag: None }
    }

    pub fn flagged(reason: impl Into<String>) -> Self {
        Self {
            flag: Some(reason.into()),
        }
    }
}

/// Applies a thread cap from the value of [`THREADS_VAR`].
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let Some(raw) = value else { return Ok(()) };
    let n = raw
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got '{raw}'")))?;
    // A pool already built by an earlier call in this process keeps its size.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs one command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let threads = std::env::var(THREADS_VAR).ok();
    let result = configure_threads(threads.as_deref()).and_then(|()| commands::execute(cli, out));
    match result {
        Ok(Outcome { flag: None }) => EXIT_OK,
        Ok(Outcome { flag: Some(reason) }) => {
            let _ = writeln!(err, "innerfn: numerical flag: {reason}");
            EXIT_NUMERICAL
        }
        Err(e) => {
            let _ = writeln!(err, "innerfn: {e}");
            e.exit_code()
        }
    }
}
