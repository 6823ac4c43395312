mod args;
mod commands;
mod svg;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Validation(_) => 1,
            Self::Io(_) => 2,
            Self::Verification(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Validation(m) | Self::Io(m) | Self::Verification(m) => f.write_str(m),
        }
    }
}

impl From<hyperan::Error> for CliError {
    fn from(e: hyperan::Error) -> Self {
        use hyperan::Error as E;
        match e {
            E::Io { .. } | E::Format { .. } | E::MissingKey { .. } => Self::Io(e.to_string()),
            other => Self::Validation(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => commands::cmd_generate(a),
        Command::Qft(a) => commands::cmd_qft(a),
        Command::Analytic(a) => commands::cmd_analytic(a),
        Command::Features(a) => commands::cmd_features(a),
        Command::Stqft(a) => commands::cmd_stqft(a),
        Command::Verify(a) => commands::cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
