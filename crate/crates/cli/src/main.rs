use std::process::ExitCode;

use clap::Parser;

mod commands;
mod input;

use commands::{Cli, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::FAILURE;
        }
    }
    match commands::run(&cli) {
        Ok(Outcome::Ok(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Mismatch(out)) => {
            print!("{out}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
