use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tcnet::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, error) = cli.execute();
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    if let Some(e) = error {
        eprintln!("error: {e}");
    }
    ExitCode::from(outcome.code as u8)
}
