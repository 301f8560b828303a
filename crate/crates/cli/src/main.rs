//! `nbhdcx`: neighborhood complexes from the command line.
//!
//! Exit status: 0 on success, 1 for argument, parse or domain errors, 2 when
//! a work cap is exceeded, 3 for I/O failures.

mod commands;

use std::process::ExitCode;

use clap::Parser;
use nbhdcx::Error;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => 2,
        Error::Io(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match commands::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
