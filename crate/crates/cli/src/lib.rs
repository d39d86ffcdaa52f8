//! Command-line front end: tables of coefficients, zeros and moments, and grid verification.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use config::{Cli, Command, Format, RunConfig};

/// Exit status for a run that completed with every check passing.
pub const EXIT_OK: i32 = 0;
/// Failing checks or a computation error.
pub const EXIT_FAIL: i32 = 1;
/// Invalid arguments.
pub const EXIT_USAGE: i32 = 2;

/// The rendered output of a successful run and its exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

/// Runs one command; `Err` carries a message and an exit status.
pub fn run(cli: Cli, env_bits: Option<&str>) -> Result<Outcome, (String, i32)> {
    let cfg = RunConfig::from_cli(cli, env_bits).map_err(|e| (e.0, EXIT_USAGE))?;
    if cfg.command == Command::Verify {
        verify::check_only(&cfg).map_err(|e| (e.0, EXIT_USAGE))?;
        let report = verify::cmd_verify(&cfg).map_err(|e| (e, EXIT_FAIL))?;
        let text = match cfg.format {
            Format::Csv => report.records_table().to_csv(),
            Format::Json => report.to_json(),
        };
        let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
        return Ok(Outcome { text, code });
    }
    let table = match cfg.command {
        Command::Coeffs => commands::cmd_coeffs(&cfg),
        Command::Zeros => commands::cmd_zeros(&cfg),
        Command::Moments => commands::cmd_moments(&cfg),
        Command::Verify => unreachable!("handled above"),
    }
    .map_err(|e| (e, EXIT_FAIL))?;
    let text = match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    Ok(Outcome { text, code: EXIT_OK })
}
