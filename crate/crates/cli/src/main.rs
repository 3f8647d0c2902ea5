mod args;
mod commands;
mod config;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;

/// Failure classes and their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input data (exit 2).
    Parse(String),
    /// Invalid flags, configuration or parameter values (exit 3).
    Flag(String),
    /// A result failed an internal consistency check (exit 4).
    Invariant(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Flag(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Flag(m) | CliError::Invariant(m) => m,
        }
    }
}

impl From<hlouvain_core::Error> for CliError {
    fn from(err: hlouvain_core::Error) -> Self {
        use hlouvain_core::Error as E;
        match err {
            E::InvalidParameter(_) | E::MissingEta(_) | E::Infeasible(_) => CliError::Flag(err.to_string()),
            E::EmptyHypergraph
            | E::EmptyEdge { .. }
            | E::InvalidWeight { .. }
            | E::NodeOutOfRange { .. }
            | E::NodeSetMismatch(..)
            | E::Io(_)
            | E::Parse { .. } => CliError::Parse(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| commands::run(cli)))
        .unwrap_or_else(|_| Err(CliError::Invariant("internal error".into())));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
