//! `etpa bounds`: sweep the overlap factors over bandwidth caps, linewidths,
//! and narrow-factor widths, asserting the analytic bounds on every row.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use etpa_core::grid::FrequencyGrid;
use etpa_core::lineshape::LorentzianLine;
use etpa_core::overlap::{entanglement_time, eta_factors, f_epp, BOUND_SLACK};
use etpa_core::shapes;

use crate::output::{render_table, sci, write_to, Format};
use crate::{grid_points_default, parse_range, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BroadShape {
    Box,
    Gaussian,
    Sinc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NarrowShape {
    Gaussian,
    Box,
}

#[derive(Args)]
pub struct BoundsArgs {
    /// Bandwidth cap Ω in rad/s, as VALUE or START:END:COUNT.
    #[arg(long = "omega-cap")]
    omega_cap: String,
    /// Half linewidth γ in rad/s, as VALUE or START:END:COUNT.
    #[arg(long)]
    gamma: String,
    /// Narrow-factor width in rad/s, as VALUE or START:END:COUNT.
    #[arg(long = "psi-n-width")]
    psi_n_width: String,
    /// Broad-factor shape; its scale is the bandwidth cap Ω.
    #[arg(long = "psi-b-shape", value_enum, default_value_t = BroadShape::Box)]
    psi_b_shape: BroadShape,
    /// Narrow-factor shape.
    #[arg(long = "psi-n-shape", value_enum, default_value_t = NarrowShape::Gaussian)]
    psi_n_shape: NarrowShape,
    /// Replace the shaped broad factor with this many seeded random
    /// amplitudes per grid point.
    #[arg(long = "random-psi-b", default_value_t = 0)]
    random_psi_b: usize,
    /// Seed for the random broad factors.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Grid points per 1D amplitude (odd); ETPA_GRID_POINTS overrides the
    /// default.
    #[arg(long = "grid-points")]
    grid_points: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Row {
    omega_cap_rad_s: f64,
    gamma_fg_rad_s: f64,
    psi_n_width: f64,
    eta: f64,
    eta_n: f64,
    eta_b: f64,
    eta_max: f64,
    t_e_s: f64,
    f_epp: f64,
    bound_satisfied: bool,
}

const CSV_HEADER: &str =
    "omega_cap_rad_s,gamma_fg_rad_s,psi_N_width,eta,eta_N,eta_B,eta_max,T_e_s,f_EPP,bound_satisfied";

pub fn run(args: BoundsArgs) -> CliResult<()> {
    let omegas = parse_range(&args.omega_cap, "--omega-cap")?;
    let gammas = parse_range(&args.gamma, "--gamma")?;
    let widths = parse_range(&args.psi_n_width, "--psi-n-width")?;
    let n_points = match args.grid_points {
        Some(n) if n < 3 || n % 2 == 0 => {
            return Err(CliError::Validation(format!(
                "--grid-points must be odd and >= 3, got {n}"
            )))
        }
        Some(n) => n,
        None => grid_points_default(etpa_core::grid::DEFAULT_GRID_POINTS)?,
    };

    let mut rows = Vec::new();
    for &omega in &omegas {
        for &gamma in &gammas {
            for &width in &widths {
                if args.random_psi_b == 0 {
                    rows.push(evaluate_row(
                        omega,
                        gamma,
                        width,
                        args.psi_b_shape,
                        args.psi_n_shape,
                        n_points,
                        None,
                    )?);
                } else {
                    for k in 0..args.random_psi_b {
                        rows.push(evaluate_row(
                            omega,
                            gamma,
                            width,
                            args.psi_b_shape,
                            args.psi_n_shape,
                            n_points,
                            Some(args.seed.wrapping_add(k as u64)),
                        )?);
                    }
                }
            }
        }
    }

    let content = match args.format {
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    sci(r.omega_cap_rad_s),
                    sci(r.gamma_fg_rad_s),
                    sci(r.psi_n_width),
                    sci(r.eta),
                    sci(r.eta_n),
                    sci(r.eta_b),
                    sci(r.eta_max),
                    sci(r.t_e_s),
                    sci(r.f_epp),
                    r.bound_satisfied
                ));
            }
            out
        }
        Format::Json => {
            let mut out = serde_json::to_string_pretty(&rows)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            out.push('\n');
            out
        }
        Format::Table => {
            let header = [
                "omega_cap", "gamma_fg", "psi_N_width", "eta", "eta_N", "eta_B", "eta_max",
                "T_e_s", "f_EPP", "bound",
            ];
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        sci(r.omega_cap_rad_s),
                        sci(r.gamma_fg_rad_s),
                        sci(r.psi_n_width),
                        sci(r.eta),
                        sci(r.eta_n),
                        sci(r.eta_b),
                        sci(r.eta_max),
                        sci(r.t_e_s),
                        sci(r.f_epp),
                        if r.bound_satisfied { "ok" } else { "VIOLATED" }.to_string(),
                    ]
                })
                .collect();
            render_table(&header, &body)
        }
    };
    write_to(args.output.as_ref(), &content)?;

    let violations = rows.iter().filter(|r| !r.bound_satisfied).count();
    if violations > 0 {
        return Err(CliError::Runtime(format!(
            "{violations} of {} rows violate the analytic bounds",
            rows.len()
        )));
    }
    Ok(())
}

fn evaluate_row(
    omega_cap: f64,
    gamma: f64,
    width: f64,
    b_shape: BroadShape,
    n_shape: NarrowShape,
    n_points: usize,
    random_seed: Option<u64>,
) -> CliResult<Row> {
    let line = LorentzianLine::new(0.0, gamma)?;

    let b_grid = shapes::grid_for_box(0.0, omega_cap, n_points, 1.25)?;
    let psi_b = match random_seed {
        Some(seed) => shapes::random_spectrum_on(&b_grid, omega_cap, seed, false)?,
        None => match b_shape {
            BroadShape::Box => shapes::box_spectrum(&b_grid, omega_cap)?,
            BroadShape::Gaussian => {
                let grid = FrequencyGrid::spanning(0.0, 8.0 * omega_cap, n_points)?;
                shapes::gaussian_spectrum(&grid, omega_cap)?
            }
            BroadShape::Sinc => {
                let grid = FrequencyGrid::spanning(0.0, 60.0 * omega_cap, n_points)?;
                shapes::sinc_spectrum(&grid, omega_cap)?
            }
        },
    };

    let psi_n = match n_shape {
        NarrowShape::Gaussian => {
            let grid = FrequencyGrid::spanning(0.0, 10.0 * width, n_points)?;
            shapes::gaussian_spectrum(&grid, width)?
        }
        NarrowShape::Box => {
            let grid = shapes::grid_for_box(0.0, width, n_points, 1.25)?;
            shapes::box_spectrum(&grid, width)?
        }
    };

    let factors = eta_factors(&psi_n, &psi_b, &line)?;
    let te = entanglement_time(&psi_b)?;
    let eta = 2.0 * factors.eta_n * factors.eta_b_rad_per_s;
    // Hard-support shapes are capped by Ω; unbounded shapes only by the grid.
    let cap = psi_b
        .support_half_width()
        .unwrap_or_else(|| psi_b.grid().half_span());
    let eta_max = 2.0 * cap / std::f64::consts::PI;
    let f = f_epp(eta, te.t_e_s);
    let bound_satisfied = factors.eta_n <= 1.0 + 1e-12
        && factors.eta_b_rad_per_s <= cap / std::f64::consts::PI * (1.0 + BOUND_SLACK)
        && eta <= eta_max * (1.0 + BOUND_SLACK)
        && f <= 2.001;
    Ok(Row {
        omega_cap_rad_s: omega_cap,
        gamma_fg_rad_s: gamma,
        psi_n_width: width,
        eta,
        eta_n: factors.eta_n,
        eta_b: factors.eta_b_rad_per_s,
        eta_max,
        t_e_s: te.t_e_s,
        f_epp: f,
        bound_satisfied,
    })
}
