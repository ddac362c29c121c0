mod args;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use args::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    /// Rejected input; exit code 2.
    #[error("{0}")]
    Invalid(String),
    /// A result contradicts a known bound or an internal invariant; exit
    /// code 1.
    #[error("{0}")]
    Contract(String),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("curve table: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        format: cli.format,
        out: cli.out,
    };
    let result = match cli.command {
        Command::Enumerate { n } => commands::enumerate(&ctx, n),
        Command::Count { n, verify } => commands::count(&ctx, n, verify),
        Command::Classify(a) => commands::classify(&ctx, a),
        Command::Check3 { tuple } => commands::check3(&ctx, &tuple),
        Command::Construct3(a) => commands::construct3(&ctx, a),
        Command::Anderson(a) => commands::anderson(&ctx, a),
        Command::Trig(a) => commands::trig(&ctx, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
