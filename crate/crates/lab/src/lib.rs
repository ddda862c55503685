//! Command-line laboratory around `fkpp-core`: simulations, front-speed fits, eps sweeps,
//! closed-form tables and the verification report.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 failed verification.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod error;
pub mod output;
pub mod settings;

use std::io::Write;

use cli::{Cli, Command};
use commands::{actions, gaz, simulate, sweep, verify};
pub use error::{LabError, LabResult};
use output::{json_string, Artifacts};
use settings::{MeasureSettings, OutputDefault, SimSettings};

/// Caps the number of worker threads used by `verify` and `sweep-epsilon`.
pub const WORKERS_ENV: &str = "FKPP_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ACCEPTANCE: i32 = 3;

fn emit(stdout: &mut impl Write, text: &str) -> LabResult<()> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|source| LabError::Io {
            path: "<stdout>".into(),
            source,
        })
}

fn finish(stdout: &mut impl Write, artifacts: Artifacts) -> LabResult<()> {
    for path in artifacts.write()? {
        eprintln!("wrote {}", path.display());
    }
    let _ = stdout.flush();
    Ok(())
}

/// Runs one command, printing its JSON report to `stdout`, and returns the exit code.
pub fn run(cli: Cli, stdout: &mut impl Write) -> LabResult<i32> {
    match cli.command {
        Command::Verify(args) => {
            let report = verify::verify_report(args.seed)?;
            let text = json_string(&report)?;
            emit(stdout, &text)?;
            let mut artifacts = Artifacts::default();
            if let Some(out) = args.out {
                artifacts.add(out, text);
            }
            finish(stdout, artifacts)?;
            Ok(if report.all_pass {
                EXIT_OK
            } else {
                EXIT_ACCEPTANCE
            })
        }
        Command::Simulate(args) => {
            let settings = SimSettings::from_args(&args, OutputDefault::Every(1.0))?;
            let (meta, artifacts) = simulate::cmd_simulate(&settings)?;
            emit(stdout, &json_string(&meta)?)?;
            finish(stdout, artifacts)?;
            Ok(EXIT_OK)
        }
        Command::FrontSpeed(args) => {
            let settings = SimSettings::from_args(&args.sim, OutputDefault::Samples(100.0))?;
            let measure = MeasureSettings::from_args(&args)?;
            let (report, artifacts) = simulate::cmd_front_speed(&settings, &measure)?;
            emit(stdout, &json_string(&report)?)?;
            finish(stdout, artifacts)?;
            Ok(EXIT_OK)
        }
        Command::SweepEpsilon(args) => {
            let (verdict, artifacts) = sweep::cmd_sweep(&args)?;
            emit(stdout, &json_string(&verdict)?)?;
            finish(stdout, artifacts)?;
            if verdict.failures.is_empty() {
                Ok(EXIT_OK)
            } else {
                Err(LabError::Numerical(format!(
                    "{} sweep row(s) failed",
                    verdict.failures.len()
                )))
            }
        }
        Command::Actions(args) => {
            let artifacts = actions::cmd_actions(&args)?;
            let files: Vec<String> = artifacts.paths().map(|p| p.display().to_string()).collect();
            emit(
                stdout,
                &json_string(&serde_json::json!({ "files": files }))?,
            )?;
            finish(stdout, artifacts)?;
            Ok(EXIT_OK)
        }
        Command::CompareGaz(args) => {
            let report = gaz::gaz_report(args.d, args.u)?;
            let text = json_string(&report)?;
            emit(stdout, &text)?;
            let mut artifacts = Artifacts::default();
            if let Some(out) = args.out {
                artifacts.add(out, text);
            }
            finish(stdout, artifacts)?;
            Ok(EXIT_OK)
        }
    }
}
