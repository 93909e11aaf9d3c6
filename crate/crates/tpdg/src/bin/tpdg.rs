//! Command-line driver for the thermo-poroelastic wave simulator.
//!
//! Four subcommands cover the study workflows: `convergence` runs a
//! manufactured-solution refinement ladder and fails the process when the
//! observed dG rates fall short, `simulate` runs a physical scenario with
//! receivers and snapshots, `compare` post-processes two snapshot sets into
//! difference fields, and `validate-config` checks a configuration without
//! running anything. All runs are driven by a single TOML configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tpdg::config::RunConfig;
use tpdg::driver::{compare_runs, run_convergence, run_simulate};

#[derive(Parser)]
#[command(name = "tpdg", version, about = "Polytopal dG thermo-poroelastic wave simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a manufactured-solution convergence study.
    Convergence {
        /// Path to the TOML run configuration.
        config: PathBuf,
    },
    /// Run a physical simulation with sources, receivers and snapshots.
    Simulate {
        /// Path to the TOML run configuration.
        config: PathBuf,
    },
    /// Compute difference fields between two snapshot directories.
    Compare {
        /// Run directory (or snapshots directory) of the first run.
        run_a: PathBuf,
        /// Run directory (or snapshots directory) of the second run.
        run_b: PathBuf,
        /// Directory receiving the difference CSV files.
        #[arg(long, default_value = "compare")]
        out: PathBuf,
    },
    /// Check a configuration and report problems without running.
    ValidateConfig {
        /// Path to the TOML run configuration.
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match command {
        Command::Convergence { config } => {
            let cfg = RunConfig::load(&config)?;
            print_warnings(&cfg.validate()?);
            let outcome = run_convergence(&cfg)?;
            print!("{}", outcome.report.csv());
            if outcome.passed() {
                println!("convergence gate: pass");
                Ok(ExitCode::SUCCESS)
            } else {
                for f in &outcome.failures {
                    eprintln!("convergence gate: {f}");
                }
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Simulate { config } => {
            let cfg = RunConfig::load(&config)?;
            let result = run_simulate(&cfg)?;
            for w in &result.meta.warnings {
                eprintln!("warning: {w}");
            }
            let steps = result.energy.len().saturating_sub(1);
            println!(
                "completed {} steps; final energy {:.6e}; outputs in {}",
                steps,
                result.energy.last().copied().unwrap_or(0.0),
                cfg.output.directory.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { run_a, run_b, out } => {
            let comparisons = compare_runs(&run_a, &run_b, Some(&out))?;
            println!("step,max_difference,min_cosine,max_magnitude_gap,peak_magnitude");
            for c in &comparisons {
                println!(
                    "{},{:.6e},{:.6e},{:.6e},{:.6e}",
                    c.step, c.max_difference, c.min_cosine, c.max_magnitude_gap, c.peak_magnitude
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ValidateConfig { config } => {
            let cfg = RunConfig::load(&config)?;
            match cfg.validate() {
                Ok(warnings) => {
                    print_warnings(&warnings);
                    println!("configuration is valid");
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("invalid configuration: {e}");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
    }
}

fn print_warnings(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}
