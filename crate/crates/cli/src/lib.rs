//! The `skewmorph` command-line tool.
//!
//! Every command renders its full result into memory before anything is
//! written, so output is byte-identical across runs and thread counts.

pub mod args;
mod commands;
pub mod input;
mod render;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use skewmorph::{Error, Execution};

pub use args::{Cli, Command, Format};

/// Exit codes of the tool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    /// A candidate was rejected, a mismatch was found, or a search hit a limit.
    Negative = 1,
    Usage = 2,
    /// The library contradicted itself (duplicate family members, verifiers disagreeing).
    Internal = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { status: Status::Usage, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { status: Status::Internal, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Consistency(_) | Error::NotClassifiable | Error::NotNormal => Status::Internal,
            Error::Timeout { .. }
            | Error::ClosureCapExceeded { .. }
            | Error::OrderOverflow
            | Error::NotSkewMorphism => Status::Negative,
            _ => Status::Usage,
        };
        Failure { status, message: e.to_string() }
    }
}

/// Rendered output and the exit status it goes with.
#[derive(Debug)]
pub struct Outcome {
    pub body: Vec<u8>,
    pub status: Status,
}

/// Resource limits and parallelism resolved from flags and environment.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub closure_cap: usize,
    pub time_cap: std::time::Duration,
    pub execution: Execution,
}

impl Limits {
    fn from_cli(cli: &Cli) -> Self {
        let sequential = cli.jobs == Some(1) || !Execution::parallel_available();
        Limits {
            closure_cap: usize::try_from(cli.closure_cap).unwrap_or(usize::MAX),
            time_cap: std::time::Duration::from_secs(cli.time_cap),
            execution: if sequential { Execution::Sequential } else { Execution::Parallel },
        }
    }
}

/// Runs a parsed command line and returns its output without writing it.
pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let limits = Limits::from_cli(cli);
    with_jobs(cli.jobs, || commands::dispatch(cli, &limits))
}

#[cfg(feature = "parallel")]
fn with_jobs<T: Send>(jobs: Option<u64>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) if j > 1 => match rayon::ThreadPoolBuilder::new().num_threads(j as usize).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<T: Send>(_jobs: Option<u64>, f: impl FnOnce() -> T + Send) -> T {
    f()
}

/// Entry point of the binary.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {f}");
            return f.status.into();
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(&outcome.body).and_then(|_| out.flush()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return Status::Usage.into();
    }
    outcome.status.into()
}
