//! Command-line surface of `kohn-spectra`: basis listings, exact matrices,
//! tridiagonal blocks, spectra, the eigenvalue bound and CSV sweeps.
//!
//! Exit codes: `0` success, `1` configuration error, `2` a checked inequality failed.

pub mod config;
pub mod matrix_io;
mod render;

use std::io::Write;

use config::{Cli, Command, Format};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Core(#[from] kohn_spectra::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    /// Output was produced, but a checked inequality failed.
    #[error("assertion failed: {0}")]
    Assertion(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Assertion(_) => 2,
            _ => 1,
        }
    }
}

/// Rendered command output plus any assertion failure to report after writing it.
pub struct Outcome {
    pub body: String,
    pub failure: Option<String>,
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.output.format.unwrap_or(match cli.command {
        Command::Sweep { .. } => Format::Csv,
        _ => Format::Text,
    });
    let header = (!cli.output.no_header).then(|| {
        format!(
            "kohn-spectra {} {} generated {}",
            env!("CARGO_PKG_VERSION"),
            cli.command.name(),
            chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
        )
    });
    render::run(&cli.command, format, header.as_deref(), cli.output.tol)
}

/// Runs the command and writes its output; the assertion failure, if any, is
/// returned after the output has been written.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let outcome = execute(cli)?;
    match &cli.output.out {
        Some(path) => std::fs::write(path, &outcome.body)?,
        None => std::io::stdout()
            .lock()
            .write_all(outcome.body.as_bytes())?,
    }
    match outcome.failure {
        Some(why) => Err(CliError::Assertion(why)),
        None => Ok(()),
    }
}
