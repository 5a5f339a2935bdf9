mod args;
mod cli_suite;
mod commands;
mod error;
mod io;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth(a) => commands::synth(a),
        Command::Qft(a) => commands::qft(a),
        Command::Reconstruct(a) => commands::reconstruct(a),
        Command::Verify(a) => commands::verify(a),
        Command::KernelEval(a) => commands::kernel_eval(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("quatpw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
