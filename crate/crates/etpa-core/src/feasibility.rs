//! End-to-end feasibility estimates: from beam, solution, and source
//! parameters to per-pair absorption probability, event rates, and the
//! fluorescence-detectability figure of merit.

use serde::{Deserialize, Serialize};

use crate::error::{EtpaError, Result};
use crate::rates::{p_f_epp, BeamParams, PfMode};
use crate::units::constants::{AVOGADRO, C_LIGHT};
use crate::units::{CrossSection2P, CubicMeters, Hertz, Meters, RadPerSec, SquareMeters};

/// Figure-of-merit threshold for in-principle fluorescence detectability,
/// in units of GM · (mmol/L) · pairs/s. The published criterion is a "much
/// greater than" comparison; the hard threshold plus the reported margin
/// ratio keeps that softness visible.
pub const DETECTABILITY_THRESHOLD: f64 = 1e15;

/// Pair source: a pulsed pump with a pair probability per pulse, or a
/// continuous source with a pair rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SourceConfig {
    Pulsed { rep_rate_hz: f64, epsilon_sq: f64 },
    Cw { pair_rate_per_s: f64 },
}

/// Scenario input, mirroring the JSON schema. Wavelength-like inputs accept
/// either an `_m` or `_nm` key (exactly one of each pair).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_wavelength_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_wavelength_nm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marginal_bandwidth_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marginal_bandwidth_nm: Option<f64>,
    pub waist_radius_m: f64,
    pub cuvette_length_m: f64,
    /// Concentration in mmol/L.
    pub concentration_mmol: f64,
    /// Conventional two-photon cross section in GM.
    pub sigma2_gm: f64,
    pub refractive_index: f64,
    pub source: SourceConfig,
    /// Fluorophore quantum efficiency, defaults to 1.
    #[serde(default = "one")]
    pub qe: f64,
    /// Collection efficiency, defaults to 1.
    #[serde(default = "one")]
    pub ce: f64,
    /// Pair pulse duration; recorded for provenance but not used by any
    /// computed quantity here.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_p_s: Option<f64>,
}

fn one() -> f64 {
    1.0
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        Ok(cfg)
    }

    pub fn center_wavelength(&self) -> Result<Meters> {
        pick_length(
            self.center_wavelength_m,
            self.center_wavelength_nm,
            "center_wavelength",
        )
    }

    pub fn marginal_bandwidth(&self) -> Result<Meters> {
        pick_length(
            self.marginal_bandwidth_m,
            self.marginal_bandwidth_nm,
            "marginal_bandwidth",
        )
    }

    /// Check every field, reporting all failures at once.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let mut lambda = f64::NAN;
        match self.center_wavelength() {
            Ok(l) => {
                lambda = l.value();
                if !(l.value() > 0.0) {
                    problems.push("center_wavelength must be positive".into());
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
        match self.marginal_bandwidth() {
            Ok(b) => {
                if !(b.value() > 0.0) {
                    problems.push("marginal_bandwidth must be positive".into());
                } else if lambda.is_finite() && b.value() >= lambda {
                    problems.push(format!(
                        "marginal_bandwidth {} m must be smaller than the center wavelength {lambda} m",
                        b.value()
                    ));
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
        if !(self.waist_radius_m > 0.0 && self.waist_radius_m.is_finite()) {
            problems.push(format!(
                "waist_radius_m must be positive, got {}",
                self.waist_radius_m
            ));
        }
        if !(self.cuvette_length_m > 0.0 && self.cuvette_length_m.is_finite()) {
            problems.push(format!(
                "cuvette_length_m must be positive, got {}",
                self.cuvette_length_m
            ));
        }
        if !(self.concentration_mmol > 0.0 && self.concentration_mmol.is_finite()) {
            problems.push(format!(
                "concentration_mmol must be positive, got {}",
                self.concentration_mmol
            ));
        }
        if !(self.sigma2_gm > 0.0 && self.sigma2_gm.is_finite()) {
            problems.push(format!(
                "sigma2_gm must be positive, got {}",
                self.sigma2_gm
            ));
        }
        if !(self.refractive_index >= 1.0 && self.refractive_index.is_finite()) {
            problems.push(format!(
                "refractive_index must be >= 1, got {}",
                self.refractive_index
            ));
        }
        match self.source {
            SourceConfig::Pulsed {
                rep_rate_hz,
                epsilon_sq,
            } => {
                if !(rep_rate_hz > 0.0 && rep_rate_hz.is_finite()) {
                    problems.push(format!("rep_rate_hz must be positive, got {rep_rate_hz}"));
                }
                if !(epsilon_sq > 0.0 && epsilon_sq <= 0.5) {
                    problems.push(format!(
                        "epsilon_sq must lie in (0, 0.5] for isolated pairs, got {epsilon_sq}"
                    ));
                }
            }
            SourceConfig::Cw { pair_rate_per_s } => {
                if !(pair_rate_per_s > 0.0 && pair_rate_per_s.is_finite()) {
                    problems.push(format!(
                        "pair_rate_per_s must be positive, got {pair_rate_per_s}"
                    ));
                }
            }
        }
        for (name, v) in [("qe", self.qe), ("ce", self.ce)] {
            if !(0.0..=1.0).contains(&v) {
                problems.push(format!("{name} must lie in [0, 1], got {v}"));
            }
        }
        if let Some(tp) = self.t_p_s {
            if !(tp > 0.0 && tp.is_finite()) {
                problems.push(format!("t_p_s must be positive when given, got {tp}"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(EtpaError::Validation(problems))
        }
    }

    /// Pairs per second delivered by the source.
    pub fn pair_rate_per_s(&self) -> f64 {
        match self.source {
            SourceConfig::Pulsed {
                rep_rate_hz,
                epsilon_sq,
            } => rep_rate_hz * epsilon_sq,
            SourceConfig::Cw { pair_rate_per_s } => pair_rate_per_s,
        }
    }
}

fn pick_length(m: Option<f64>, nm: Option<f64>, name: &str) -> Result<Meters> {
    match (m, nm) {
        (Some(v), None) => Ok(Meters(v)),
        (None, Some(v)) => Ok(Meters(v * 1e-9)),
        (None, None) => Err(EtpaError::Validation(vec![format!(
            "one of {name}_m or {name}_nm is required"
        )])),
        (Some(_), Some(_)) => Err(EtpaError::Validation(vec![format!(
            "give only one of {name}_m and {name}_nm"
        )])),
    }
}

/// Focal geometry of the scenario beam.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BeamGeometry {
    pub area: SquareMeters,
    pub effective_length: Meters,
    pub volume: CubicMeters,
}

/// Beam area πw², interaction length min(cuvette, 2 z_R), and focal volume.
///
/// The Rayleigh range uses the vacuum wavelength, z_R = πw²/λ; including the
/// solvent index would stretch the focal volume by n and is not done here,
/// matching the idealized free-space focusing picture the rest of the
/// numbers assume.
pub fn beam_geometry(cfg: &ScenarioConfig) -> Result<BeamGeometry> {
    cfg.validate()?;
    let w = cfg.waist_radius_m;
    let lambda = cfg.center_wavelength()?.value();
    let area = SquareMeters(std::f64::consts::PI * w * w);
    let z_r = std::f64::consts::PI * w * w / lambda;
    let effective_length = Meters(cfg.cuvette_length_m.min(2.0 * z_r));
    Ok(BeamGeometry {
        area,
        effective_length,
        volume: area * effective_length,
    })
}

/// Marginal bandwidth in ordinary frequency: B = c Δλ / λ².
pub fn bandwidth_hz(cfg: &ScenarioConfig) -> Result<Hertz> {
    let lambda = cfg.center_wavelength()?.value();
    let dl = cfg.marginal_bandwidth()?.value();
    Ok(Hertz(C_LIGHT * dl / (lambda * lambda)))
}

/// Molecules inside `volume` per mmol/L of concentration.
pub fn molecules_in_focus(volume: CubicMeters) -> f64 {
    // m³ → L is ×1e3 and mmol → mol is ×1e-3; they cancel.
    volume.value() * AVOGADRO
}

/// Everything the feasibility chain produces.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub beam_area_m2: f64,
    pub bandwidth_hz: f64,
    pub effective_length_m: f64,
    pub focal_volume_m3: f64,
    pub molecules_per_mmol: f64,
    /// Probability that one pair is absorbed by one molecule.
    pub p_f_per_pair: f64,
    /// Fraction of pairs absorbed in the solution, per mmol/L.
    pub absorbed_fraction_per_mmol: f64,
    /// Detected event rate at the configured concentration and efficiencies.
    pub event_rate_per_s: f64,
    /// Absorbed fraction per GM, per mmol/L, per pair.
    pub rate_rule_per_gm_mmol_pair: f64,
    /// GM × mmol × pairs/s × QE × CE.
    pub figure_of_merit: f64,
    pub detectable: bool,
    /// figure_of_merit over the detectability threshold.
    pub margin_ratio: f64,
}

/// Run the feasibility chain: geometry → bandwidth → per-pair absorption →
/// absorbed fraction → event rate and figure of merit.
///
/// The per-pair probability is the bandwidth approximation evaluated on a
/// per-pair basis (one pair traversing the beam area); callers holding a
/// concrete two-photon amplitude can instead supply an exact overlap factor
/// through [`run_scenario_with_mode`].
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    run_scenario_with_mode(cfg, None)
}

/// As [`run_scenario`], but with an explicit overlap factor replacing the
/// bandwidth approximation when `eta` is given.
pub fn run_scenario_with_mode(
    cfg: &ScenarioConfig,
    eta: Option<RadPerSec>,
) -> Result<ScenarioReport> {
    let geometry = beam_geometry(cfg)?;
    let bandwidth = bandwidth_hz(cfg)?;
    let molecules_per_mmol = molecules_in_focus(geometry.volume);
    let lambda = cfg.center_wavelength()?.value();
    let beam = BeamParams {
        omega_0: Hertz(C_LIGHT / lambda).to_rad_per_sec(),
        area: geometry.area,
        refractive_index: cfg.refractive_index,
        bandwidth,
        entanglement_area: None,
    };
    let sigma2 = CrossSection2P::from_gm(cfg.sigma2_gm);
    let mode = match eta {
        Some(e) => PfMode::ExactEta(e),
        None => PfMode::BandwidthApprox,
    };
    // One pair through the beam area: unit occupation in the pair basis.
    let per_pair = p_f_epp(1.0 - f64::EPSILON, &beam, sigma2, mode)?;
    let p_f_per_pair = per_pair.probability;

    let absorbed_fraction_per_mmol = p_f_per_pair * molecules_per_mmol;
    let pair_rate = cfg.pair_rate_per_s();
    let event_rate_per_s =
        pair_rate * absorbed_fraction_per_mmol * cfg.concentration_mmol * cfg.qe * cfg.ce;
    let rate_rule = absorbed_fraction_per_mmol / cfg.sigma2_gm;
    let figure_of_merit =
        cfg.sigma2_gm * cfg.concentration_mmol * pair_rate * cfg.qe * cfg.ce;

    let report = ScenarioReport {
        beam_area_m2: geometry.area.value(),
        bandwidth_hz: bandwidth.value(),
        effective_length_m: geometry.effective_length.value(),
        focal_volume_m3: geometry.volume.value(),
        molecules_per_mmol,
        p_f_per_pair,
        absorbed_fraction_per_mmol,
        event_rate_per_s,
        rate_rule_per_gm_mmol_pair: rate_rule,
        figure_of_merit,
        detectable: figure_of_merit > DETECTABILITY_THRESHOLD,
        margin_ratio: figure_of_merit / DETECTABILITY_THRESHOLD,
    };
    for (name, v) in [
        ("beam_area_m2", report.beam_area_m2),
        ("bandwidth_hz", report.bandwidth_hz),
        ("p_f_per_pair", report.p_f_per_pair),
        ("event_rate_per_s", report.event_rate_per_s),
        ("figure_of_merit", report.figure_of_merit),
    ] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(EtpaError::Contract(format!(
                "scenario output {name} = {v} is not finite and non-negative"
            )));
        }
    }
    Ok(report)
}

/// The built-in dye benchmark: 1064 nm center, 40 nm marginal bandwidth,
/// 5 µm waist, 1 cm cuvette, 9 GM, 100 mmol/L, pulsed 80 MHz source with
/// pair probability 0.1 per pulse.
pub fn golden_r6g_pulsed() -> ScenarioConfig {
    ScenarioConfig {
        center_wavelength_m: None,
        center_wavelength_nm: Some(1064.0),
        marginal_bandwidth_m: None,
        marginal_bandwidth_nm: Some(40.0),
        waist_radius_m: 5e-6,
        cuvette_length_m: 1e-2,
        concentration_mmol: 100.0,
        sigma2_gm: 9.0,
        refractive_index: 1.33,
        source: SourceConfig::Pulsed {
            rep_rate_hz: 80e6,
            epsilon_sq: 0.1,
        },
        qe: 1.0,
        ce: 1.0,
        t_p_s: None,
    }
}

/// The same benchmark driven by a continuous source at 10¹³ pairs/s, about
/// the highest rate before pair overlap breaks the isolated-pair condition.
pub fn golden_r6g_cw() -> ScenarioConfig {
    ScenarioConfig {
        source: SourceConfig::Cw {
            pair_rate_per_s: 1e13,
        },
        ..golden_r6g_pulsed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn golden_geometry_numbers() {
        let cfg = golden_r6g_pulsed();
        let g = beam_geometry(&cfg).unwrap();
        // 5 µm waist: area 7.85e-11 m² = 7.85e-7 cm².
        assert_relative_eq!(g.area.value(), 7.85e-11, max_relative = 0.01);
        // z_R = 73.8 µm, doubled and well under the 1 cm cuvette.
        assert_relative_eq!(g.effective_length.value(), 1.476e-4, max_relative = 0.01);
        // 1.16e-14 m³ = 1.16e-8 cm³.
        assert_relative_eq!(g.volume.value(), 1.16e-14, max_relative = 0.01);
    }

    #[test]
    fn geometry_clamps_to_short_cuvette() {
        let mut cfg = golden_r6g_pulsed();
        cfg.cuvette_length_m = 1e-5;
        let g = beam_geometry(&cfg).unwrap();
        assert_relative_eq!(g.effective_length.value(), 1e-5);
        assert_relative_eq!(
            g.volume.value(),
            g.area.value() * 1e-5,
            max_relative = 1e-12
        );
    }

    #[test]
    fn bandwidth_conversion() {
        let cfg = golden_r6g_pulsed();
        let b = bandwidth_hz(&cfg).unwrap();
        assert_relative_eq!(b.value(), 1.06e13, max_relative = 0.005);

        let mut doubled = cfg.clone();
        doubled.marginal_bandwidth_nm = Some(80.0);
        assert_relative_eq!(
            bandwidth_hz(&doubled).unwrap().value(),
            2.0 * b.value(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn molecules_scale_with_volume_and_concentration() {
        let cfg = golden_r6g_pulsed();
        let g = beam_geometry(&cfg).unwrap();
        let n = molecules_in_focus(g.volume);
        assert_relative_eq!(n, 7.0e9, max_relative = 0.01);
        assert_eq!(molecules_in_focus(CubicMeters(0.0)), 0.0);
        assert_relative_eq!(
            molecules_in_focus(CubicMeters(10.0 * g.volume.value())),
            10.0 * n,
            max_relative = 1e-12
        );
    }

    #[test]
    fn golden_pulsed_and_cw_rates() {
        let pulsed = run_scenario(&golden_r6g_pulsed()).unwrap();
        assert_relative_eq!(pulsed.p_f_per_pair, 1.5e-24, max_relative = 0.15);
        assert_relative_eq!(
            pulsed.absorbed_fraction_per_mmol,
            1.1e-14,
            max_relative = 0.15
        );
        assert_relative_eq!(pulsed.event_rate_per_s, 8.8e-6, max_relative = 0.15);
        assert_relative_eq!(
            pulsed.rate_rule_per_gm_mmol_pair,
            1.2e-15,
            max_relative = 0.15
        );
        assert!(!pulsed.detectable);

        let cw = run_scenario(&golden_r6g_cw()).unwrap();
        assert_relative_eq!(cw.event_rate_per_s, 11.0, max_relative = 0.15);
        assert!(cw.detectable);
        assert!(cw.margin_ratio > 1.0);
    }

    #[test]
    fn event_rate_is_linear_in_each_factor() {
        let base_cfg = golden_r6g_cw();
        let base = run_scenario(&base_cfg).unwrap().event_rate_per_s;
        let scaled = |f: &dyn Fn(&mut ScenarioConfig)| {
            let mut cfg = base_cfg.clone();
            f(&mut cfg);
            run_scenario(&cfg).unwrap().event_rate_per_s
        };
        let doubled_pairs = scaled(&|c| {
            c.source = SourceConfig::Cw {
                pair_rate_per_s: 2e13,
            }
        });
        assert_relative_eq!(doubled_pairs, 2.0 * base, max_relative = 1e-12);
        let doubled_conc = scaled(&|c| c.concentration_mmol = 200.0);
        assert_relative_eq!(doubled_conc, 2.0 * base, max_relative = 1e-12);
        let doubled_sigma = scaled(&|c| c.sigma2_gm = 18.0);
        assert_relative_eq!(doubled_sigma, 2.0 * base, max_relative = 1e-12);
        let halved_qe = scaled(&|c| c.qe = 0.5);
        assert_relative_eq!(halved_qe, 0.5 * base, max_relative = 1e-12);
        let halved_ce = scaled(&|c| c.ce = 0.5);
        assert_relative_eq!(halved_ce, 0.5 * base, max_relative = 1e-12);
    }

    #[test]
    fn rate_rule_recomposes_event_rate() {
        for cfg in [golden_r6g_pulsed(), golden_r6g_cw()] {
            let r = run_scenario(&cfg).unwrap();
            let recomposed = r.rate_rule_per_gm_mmol_pair
                * cfg.sigma2_gm
                * cfg.concentration_mmol
                * cfg.pair_rate_per_s()
                * cfg.qe
                * cfg.ce;
            assert_relative_eq!(recomposed, r.event_rate_per_s, max_relative = 1e-6);
        }
    }

    #[test]
    fn validation_collects_every_failure() {
        let mut cfg = golden_r6g_pulsed();
        cfg.waist_radius_m = -1.0;
        cfg.qe = 2.0;
        cfg.sigma2_gm = 0.0;
        let err = cfg.validate().unwrap_err();
        match err {
            EtpaError::Validation(problems) => {
                assert!(problems.iter().any(|p| p.contains("waist_radius_m")));
                assert!(problems.iter().any(|p| p.contains("qe")));
                assert!(problems.iter().any(|p| p.contains("sigma2_gm")));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn wavelength_keys_are_exclusive() {
        let mut cfg = golden_r6g_pulsed();
        cfg.center_wavelength_m = Some(1.064e-6);
        assert!(cfg.validate().is_err());
        cfg.center_wavelength_nm = None;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn config_json_round_trip() {
        let cfg = golden_r6g_pulsed();
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        let back = ScenarioConfig::from_json(&text).unwrap();
        assert_eq!(back.sigma2_gm, cfg.sigma2_gm);
        assert_eq!(back.source, cfg.source);
        let bad = ScenarioConfig::from_json("{\"unknown_field\": 1}");
        assert!(bad.is_err());
    }
}
