use std::process::ExitCode;

use clap::Parser;
use constel_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match constel_cli::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(constel_cli::exit_code(&e))
        }
    }
}
