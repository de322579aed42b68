use std::io::Write;
use std::process::ExitCode;

use bosegas_cli::{execute, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("bosegas: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let written = match cli.command.out_path() {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("bosegas: i/o error: {e}");
        return ExitCode::from(1);
    }
    if outcome.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
