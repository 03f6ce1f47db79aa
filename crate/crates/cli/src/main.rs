mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::error::{EXIT_INPUT, EXIT_OK, EXIT_VERIFICATION};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK as u8),
                _ => ExitCode::from(EXIT_INPUT as u8),
            };
        }
    };
    match commands::run(cli) {
        Ok(done) if done.pass => ExitCode::from(EXIT_OK as u8),
        Ok(_) => ExitCode::from(EXIT_VERIFICATION as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
