use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use opk::config::{Cli, BITS_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let env_bits = std::env::var(BITS_ENV).ok();
    let outcome = match opk::run(cli, env_bits.as_deref()) {
        Ok(o) => o,
        Err((msg, code)) => {
            eprintln!("opk: {msg}");
            return ExitCode::from(code as u8);
        }
    };
    let written = match &out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("opk: cannot write output: {e}");
        return ExitCode::from(opk::EXIT_FAIL as u8);
    }
    ExitCode::from(outcome.code as u8)
}
