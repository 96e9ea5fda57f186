mod args;
mod commands;
mod presets;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::{Cli, Command};
use dirac_sta::Error;

/// Why a command stopped, and what goes on the single stderr line.
pub enum Failure {
    Library(Error),
    Checks(Vec<String>),
}

impl Failure {
    fn checks(names: Vec<String>) -> Self {
        Failure::Checks(names)
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Library(e) => match e {
                Error::Domain(_) | Error::Io(_) | Error::Format(_) => 2,
                Error::Numerical { .. } => 3,
                Error::Consistency(_) => 4,
            },
            Failure::Checks(_) => 4,
        }
    }

    fn report(&self) -> serde_json::Value {
        match self {
            Failure::Library(Error::Numerical { step, reason }) => json!({
                "error": "numerical",
                "step": step,
                "message": reason,
            }),
            Failure::Library(e) => json!({ "error": e.kind(), "message": e.to_string() }),
            Failure::Checks(names) => json!({
                "error": "verification",
                "failed": names,
                "message": format!("failed checks: {}", names.join(", ")),
            }),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Library(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Library(e.into())
    }
}

fn usage_failure(err: clap::Error) -> ExitCode {
    let text = err.to_string();
    let message = text
        .lines()
        .next()
        .unwrap_or("invalid arguments")
        .trim_start_matches("error: ")
        .to_string();
    eprintln!("{}", json!({ "error": "usage", "message": message }));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return usage_failure(e),
    };
    let outcome = match &cli.command {
        Command::Verify(a) => commands::cmd_verify(a, cli.json),
        Command::Evolve(a) => commands::cmd_evolve(a, cli.json),
        Command::Bilinears(a) => commands::cmd_bilinears(a, cli.json),
        Command::DumpRep(a) => commands::cmd_dump_rep(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.report());
            ExitCode::from(f.exit_code())
        }
    }
}
