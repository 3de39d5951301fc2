//! `etpa` — bound sweeps, feasibility scenarios, width-convention tables,
//! enhancement-factor comparisons, and joint-spectral-amplitude export as
//! scriptable commands.

mod commands;
mod output;

use clap::{Parser, Subcommand};

/// Exit code 2: the input could not be validated.
/// Exit code 1: a runtime or numerical failure (including a violated bound).
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Runtime(m) => m,
        }
    }
}

impl From<etpa_core::EtpaError> for CliError {
    fn from(e: etpa_core::EtpaError) -> Self {
        use etpa_core::EtpaError::*;
        match e {
            Validation(_) | InvalidParameter(_) | Parse(_) | GridAlignment(_) => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "etpa",
    version,
    about = "Numerical toolkit for two-photon absorption with entangled photon pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the spectral-overlap bounds over bandwidth caps, linewidths,
    /// and narrow-factor widths.
    Bounds(commands::bounds::BoundsArgs),
    /// Run the end-to-end detectability estimate for a dye solution.
    Feasibility(commands::feasibility::FeasibilityArgs),
    /// Reproduce the peak-normalized duration table for the standard shapes.
    Conventions(commands::conventions::ConventionsArgs),
    /// Compare pair-driven and coherent-driven absorption per pulse.
    Qef(commands::qef::QefArgs),
    /// Build and export a joint spectral amplitude as CSV plus sidecar.
    Jsa(commands::jsa::JsaArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds(args) => commands::bounds::run(args),
        Command::Feasibility(args) => commands::feasibility::run(args),
        Command::Conventions(args) => commands::conventions::run(args),
        Command::Qef(args) => commands::qef::run(args),
        Command::Jsa(args) => commands::jsa::run(args),
    };
    match result {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.code());
        }
    }
}

/// Grid resolution default, overridable through ETPA_GRID_POINTS.
pub fn grid_points_default(fallback: usize) -> CliResult<usize> {
    match std::env::var("ETPA_GRID_POINTS") {
        Err(_) => Ok(fallback),
        Ok(text) => {
            let n: usize = text.trim().parse().map_err(|_| {
                CliError::Validation(format!(
                    "ETPA_GRID_POINTS must be a positive integer, got {text:?}"
                ))
            })?;
            if n < 3 || n % 2 == 0 {
                return Err(CliError::Validation(format!(
                    "ETPA_GRID_POINTS must be odd and >= 3, got {n}"
                )));
            }
            Ok(n)
        }
    }
}

/// Parse `value` or `start:end:count` into a deterministic sweep.
pub fn parse_range(text: &str, name: &str) -> CliResult<Vec<f64>> {
    let bad = |why: &str| {
        CliError::Validation(format!(
            "{name}: {why} (expected VALUE or START:END:COUNT, got {text:?})"
        ))
    };
    let parts: Vec<&str> = text.split(':').collect();
    let parse = |s: &str| -> CliResult<f64> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| bad("not a number"))?;
        if !(v.is_finite() && v > 0.0) {
            return Err(bad("values must be positive and finite"));
        }
        Ok(v)
    };
    match parts.as_slice() {
        [single] => Ok(vec![parse(single)?]),
        [start, end, count] => {
            let (a, b) = (parse(start)?, parse(end)?);
            let n: usize = count
                .trim()
                .parse()
                .map_err(|_| bad("count is not an integer"))?;
            if n == 0 {
                return Err(bad("count must be at least 1"));
            }
            if b < a {
                return Err(bad("end must not be below start"));
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            let step = (b - a) / (n - 1) as f64;
            Ok((0..n).map(|k| a + k as f64 * step).collect())
        }
        _ => Err(bad("wrong number of ':' separators")),
    }
}
