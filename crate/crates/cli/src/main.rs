use std::process::ExitCode;

use clap::Parser;
use stratalg_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (status, text) = run(&cli);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(status as u8)
}
