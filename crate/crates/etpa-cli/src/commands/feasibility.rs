//! `etpa feasibility`: the end-to-end detectability estimate.

use std::path::PathBuf;

use clap::{Args, ValueEnum};

use etpa_core::feasibility::{
    golden_r6g_cw, golden_r6g_pulsed, run_scenario_with_mode, ScenarioConfig, ScenarioReport,
};
use etpa_core::units::RadPerSec;

use crate::output::{render_table, sci, write_to, Format};
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Pulsed,
    Cw,
}

#[derive(Args)]
pub struct FeasibilityArgs {
    /// Scenario JSON file.
    #[arg(long, conflicts_with = "golden_r6g")]
    config: Option<PathBuf>,
    /// Use the built-in dye benchmark instead of a config file.
    #[arg(long = "golden-r6g")]
    golden_r6g: bool,
    /// Source variant for the built-in benchmark.
    #[arg(long, value_enum, default_value_t = Source::Pulsed)]
    source: Source,
    /// Spectral overlap factor in rad/s from a concrete two-photon
    /// amplitude, replacing the bandwidth approximation.
    #[arg(long = "eta-rad-s")]
    eta_rad_s: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Output path; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn run(args: FeasibilityArgs) -> CliResult<()> {
    let cfg = load_config(&args)?;
    cfg.validate().map_err(|e| CliError::Validation(e.to_string()))?;
    let eta = match args.eta_rad_s {
        Some(v) if !(v.is_finite() && v > 0.0) => {
            return Err(CliError::Validation(format!(
                "--eta-rad-s must be positive, got {v}"
            )))
        }
        other => other.map(RadPerSec),
    };
    let report = run_scenario_with_mode(&cfg, eta)?;
    let content = match args.format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(&report)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            out.push('\n');
            out
        }
        Format::Table | Format::Csv => render_report(&report),
    };
    write_to(args.output.as_ref(), &content)
}

fn load_config(args: &FeasibilityArgs) -> CliResult<ScenarioConfig> {
    if args.golden_r6g {
        return Ok(match args.source {
            Source::Pulsed => golden_r6g_pulsed(),
            Source::Cw => golden_r6g_cw(),
        });
    }
    let path = args.config.as_ref().ok_or_else(|| {
        CliError::Validation("either --config PATH or --golden-r6g is required".into())
    })?;
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Validation(format!("cannot read config {}: {e}", path.display()))
    })?;
    ScenarioConfig::from_json(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn render_report(r: &ScenarioReport) -> String {
    let rows = vec![
        vec!["beam area".into(), sci(r.beam_area_m2), "m^2".into()],
        vec!["bandwidth".into(), sci(r.bandwidth_hz), "Hz".into()],
        vec![
            "effective length".into(),
            sci(r.effective_length_m),
            "m".into(),
        ],
        vec!["focal volume".into(), sci(r.focal_volume_m3), "m^3".into()],
        vec![
            "molecules per mmol".into(),
            sci(r.molecules_per_mmol),
            "".into(),
        ],
        vec![
            "absorption probability per pair".into(),
            sci(r.p_f_per_pair),
            "".into(),
        ],
        vec![
            "absorbed fraction per mmol".into(),
            sci(r.absorbed_fraction_per_mmol),
            "".into(),
        ],
        vec![
            "event rate".into(),
            sci(r.event_rate_per_s),
            "1/s".into(),
        ],
        vec![
            "rate rule".into(),
            sci(r.rate_rule_per_gm_mmol_pair),
            "1/(GM mmol pair)".into(),
        ],
        vec![
            "figure of merit".into(),
            sci(r.figure_of_merit),
            "GM mmol pairs/s".into(),
        ],
        vec![
            "margin over threshold".into(),
            sci(r.margin_ratio),
            "".into(),
        ],
        vec![
            "detectable".into(),
            r.detectable.to_string(),
            "".into(),
        ],
    ];
    render_table(&["quantity", "value", "unit"], &rows)
}
