//! `crofton` command-line tool.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 bad usage or input.

mod args;
mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use crate::args::Cli;
use crate::report::Status;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] crofton_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = report
        .render(cli.global.output, &mut out)
        .and_then(|_| Ok(out.flush()?))
    {
        // A closed pipe (e.g. `| head`) is not an error worth reporting.
        let closed = |io: &std::io::Error| io.kind() == std::io::ErrorKind::BrokenPipe;
        let quiet = match &e {
            CliError::Io(io) => closed(io),
            CliError::Json(j) => j.io_error_kind() == Some(std::io::ErrorKind::BrokenPipe),
            CliError::Csv(c) => matches!(c.kind(), csv::ErrorKind::Io(io) if closed(io)),
            _ => false,
        };
        if !quiet {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match report.verdict.status {
        Status::Fail => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
