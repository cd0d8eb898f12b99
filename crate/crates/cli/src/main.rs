use std::process::ExitCode;

use clap::Parser;

mod cache;
mod cli;
mod commands;
mod config;
mod context;
mod error;

use cli::{Cli, Command};
use context::Context;
use error::CliResult;

fn run(cli: Cli) -> CliResult<()> {
    let ctx = Context::new(cli.global)?;
    match &cli.command {
        Command::Weyl(cmd) => commands::weyl::run(&ctx, cmd),
        Command::Hecke(cmd) => commands::hecke::run(&ctx, cmd),
        Command::Satake(args) => commands::satake::run(&ctx, args),
        Command::Cache(cmd) => commands::cache::run(&ctx, cmd),
        Command::Oracle(cmd) => commands::oracle::run(&ctx, cmd),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
