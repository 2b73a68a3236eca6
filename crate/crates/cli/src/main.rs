#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod cli;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::cli::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tc(args) => commands::tc::run(&args),
        Command::Tables(args) => commands::tables::run(&args),
        Command::Scan(args) => commands::scan::run(&args),
        Command::Wavefunction(args) => commands::wavefunction::run(&args),
        Command::Validate(args) => commands::validate::run(&args),
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if !out.stderr.is_empty() {
                eprint!("{}", out.stderr);
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
