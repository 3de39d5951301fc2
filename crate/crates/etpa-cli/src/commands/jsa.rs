//! `etpa jsa`: build a joint spectral amplitude and export it as CSV with a
//! JSON sidecar; optionally also export the marginal spectrum.

use std::path::PathBuf;

use clap::{Args, ValueEnum};

use etpa_core::grid::FrequencyGrid;
use etpa_core::jsa::{JointSpectralAmplitude, PmShape, PumpShape, SpdcParams};
use etpa_core::overlap::marginal_spectrum;
use etpa_core::shapes;
use etpa_core::units::constants::C_LIGHT;

use crate::output::{sci, write_file};
use crate::{grid_points_default, CliError, CliResult};

/// Hard cap on exported grids; n² rows beyond this stop being a file anyone
/// can use.
const MAX_GRID_POINTS: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Factored,
    Spdc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NarrowShape {
    Gaussian,
    Box,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BroadShape {
    Gaussian,
    Box,
    Sinc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PmShapeArg {
    Gaussian,
    Sinc,
}

#[derive(Args)]
pub struct JsaArgs {
    #[arg(long, value_enum, default_value_t = Model::Factored)]
    model: Model,
    /// Narrow-factor shape (factored model).
    #[arg(long = "psi-n-shape", value_enum, default_value_t = NarrowShape::Gaussian)]
    psi_n_shape: NarrowShape,
    /// Broad-factor shape (factored model).
    #[arg(long = "psi-b-shape", value_enum, default_value_t = BroadShape::Box)]
    psi_b_shape: BroadShape,
    /// Narrow-factor width in rad/s (factored model).
    #[arg(long = "psi-n-width", default_value_t = 1e12)]
    psi_n_width: f64,
    /// Broad-factor width in rad/s (factored model).
    #[arg(long = "psi-b-width", default_value_t = 2e13)]
    psi_b_width: f64,
    /// Pump bandwidth in rad/s (downconversion model).
    #[arg(long = "pump-bandwidth", default_value_t = 1e12)]
    pump_bandwidth: f64,
    /// Phase-matching bandwidth in rad/s (downconversion model).
    #[arg(long = "pm-bandwidth", default_value_t = 2e13)]
    pm_bandwidth: f64,
    /// Phase-matching shape (downconversion model).
    #[arg(long = "pm-shape", value_enum, default_value_t = PmShapeArg::Gaussian)]
    pm_shape: PmShapeArg,
    /// Center frequency ω₀ in rad/s; defaults to 1064 nm.
    #[arg(long = "center-rad-s", default_value_t = std::f64::consts::TAU * C_LIGHT / 1.064e-6)]
    center_rad_s: f64,
    /// Grid half-span in rad/s; defaults to six broad widths.
    #[arg(long = "half-span-rad-s")]
    half_span_rad_s: Option<f64>,
    /// Grid points per axis (odd, at most 2^14); ETPA_GRID_POINTS overrides
    /// the default.
    #[arg(long = "grid-points")]
    grid_points: Option<usize>,
    /// Destination CSV; the sidecar goes to <output>.json.
    #[arg(long)]
    output: PathBuf,
    /// Also write the marginal spectrum to <output>.marginal.csv.
    #[arg(long)]
    marginal: bool,
}

pub fn run(args: JsaArgs) -> CliResult<()> {
    let n_points = match args.grid_points {
        Some(n) => n,
        None => grid_points_default(257)?,
    };
    if n_points > MAX_GRID_POINTS {
        return Err(CliError::Validation(format!(
            "--grid-points {n_points} exceeds the maximum of {MAX_GRID_POINTS}"
        )));
    }
    if n_points < 3 || n_points % 2 == 0 {
        return Err(CliError::Validation(format!(
            "--grid-points must be odd and >= 3, got {n_points}"
        )));
    }

    let jsa = match args.model {
        Model::Factored => build_factored(&args, n_points)?,
        Model::Spdc => {
            let half_span = args
                .half_span_rad_s
                .unwrap_or(6.0 * args.pm_bandwidth.max(args.pump_bandwidth));
            let grid = FrequencyGrid::spanning(args.center_rad_s, half_span, n_points)?;
            let params = SpdcParams {
                pump_bandwidth: args.pump_bandwidth,
                pm_bandwidth: args.pm_bandwidth,
                pump_shape: PumpShape::Gaussian,
                pm_shape: match args.pm_shape {
                    PmShapeArg::Gaussian => PmShape::Gaussian,
                    PmShapeArg::Sinc => PmShape::Sinc,
                },
            };
            JointSpectralAmplitude::from_spdc(&params, grid)?.jsa
        }
    };

    let mut csv = Vec::new();
    jsa.write_csv(&mut csv)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let csv = String::from_utf8(csv).expect("CSV output is UTF-8");
    write_file(&args.output, &csv)?;

    let sidecar_path = sidecar_path(&args.output);
    let mut sidecar = serde_json::to_string_pretty(&jsa.sidecar())
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    sidecar.push('\n');
    write_file(&sidecar_path, &sidecar)?;

    if args.marginal {
        let m = marginal_spectrum(&jsa);
        let mut out = String::from("omega,m\n");
        for (i, &v) in m.values().iter().enumerate() {
            out.push_str(&format!("{},{}\n", sci(m.grid().sample(i)), sci(v)));
        }
        write_file(&marginal_path(&args.output), &out)?;
    }
    Ok(())
}

pub fn sidecar_path(output: &std::path::Path) -> PathBuf {
    let mut p = output.as_os_str().to_owned();
    p.push(".json");
    PathBuf::from(p)
}

pub fn marginal_path(output: &std::path::Path) -> PathBuf {
    let mut p = output.as_os_str().to_owned();
    p.push(".marginal.csv");
    PathBuf::from(p)
}

fn build_factored(args: &JsaArgs, n_points: usize) -> CliResult<JointSpectralAmplitude> {
    let broad = args.psi_b_width;
    let half_span = args.half_span_rad_s.unwrap_or_else(|| {
        match args.psi_b_shape {
            // The box needs little margin; smooth shapes need tail room.
            BroadShape::Box => 1.25 * broad,
            BroadShape::Gaussian => 6.0 * broad,
            BroadShape::Sinc => 30.0 * broad,
        }
        .max(6.0 * args.psi_n_width)
    });
    let grid = match args.psi_b_shape {
        BroadShape::Box => {
            let margin = half_span / broad;
            if margin <= 1.0 {
                return Err(CliError::Validation(format!(
                    "half-span {half_span} does not contain the box half-width {broad}"
                )));
            }
            shapes::grid_for_box(args.center_rad_s, broad, n_points, margin)?
        }
        _ => FrequencyGrid::spanning(args.center_rad_s, half_span, n_points)?,
    };
    let (sum_grid, diff_grid) = JointSpectralAmplitude::factored_component_grids(&grid)?;
    let psi_n = match args.psi_n_shape {
        NarrowShape::Gaussian => shapes::gaussian_spectrum(&sum_grid, args.psi_n_width)?,
        NarrowShape::Box => shapes::box_spectrum(&sum_grid, args.psi_n_width)?,
    };
    let psi_b = match args.psi_b_shape {
        BroadShape::Gaussian => shapes::gaussian_spectrum(&diff_grid, broad)?,
        BroadShape::Box => shapes::box_spectrum(&diff_grid, broad)?,
        BroadShape::Sinc => shapes::sinc_spectrum(&diff_grid, broad)?,
    };
    Ok(JointSpectralAmplitude::from_factors(psi_n, psi_b, grid)?)
}
