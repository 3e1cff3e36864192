#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod output;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = run::configure_threads(std::env::var("SPECTRA_THREADS").ok()).and_then(|_| {
        match &cli.command {
            Command::Spectrum(a) => run::spectrum(a),
            Command::Compare(a) => run::compare(a),
            Command::Converge(a) => run::converge(a),
            Command::Fit(a) => run::fit(a),
            Command::Wavefunction(a) => run::wavefunction(a),
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spectra: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
