//! Command-line front end for `mlumbral`.
//!
//! [`run`] takes the arguments after the program name and returns the
//! process exit code: 0 on success, 2 for usage, parameter, domain and I/O
//! errors, 3 when a legal computation failed to converge or overflowed.

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use thiserror::Error;

mod args;
mod commands;
mod config;
mod figures;
mod output;

pub use output::OUT_DIR_ENV;

use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("missing required flag {0}")]
    Missing(&'static str),

    #[error("invalid value for {flag}: {msg}")]
    Invalid { flag: &'static str, msg: String },

    #[error("--config: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] mlumbral::Error),

    #[error("cannot write {path}: {source}", path = path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("--out: {0}")]
    Csv(#[from] csv::Error),

    #[error("--out: {0}")]
    Json(#[from] serde_json::Error),

    #[error("cannot write to standard output: {0}")]
    Stdout(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_convergence_failure() => EXIT_NONCONVERGENCE,
            _ => EXIT_USAGE,
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Eval(a) => commands::eval(a, out),
        Command::Compose(a) => commands::compose(a, out),
        Command::Integrate(a) => commands::integrate(a, out),
        Command::Pde(a) => commands::pde(a, out),
        Command::Dist(a) => commands::dist(a, out),
        Command::Figures(a) => figures::figures(a, out),
    }
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
pub fn run_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let merged = match config::merge(args.to_vec()) {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let argv = std::iter::once("mlumbral".to_string()).chain(merged);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            // clap's first line names the offending flag; the rest is hints.
            let text = e.to_string();
            let _ = writeln!(err, "{}", text.lines().next().unwrap_or("error: invalid arguments"));
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command against the process's standard streams.
pub fn run(args: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
