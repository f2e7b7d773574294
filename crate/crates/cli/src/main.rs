//! `intensity`: distortion, rules, games and lower-bound instances from the command line.

mod args;
mod commands;
mod render;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use render::UsageError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
