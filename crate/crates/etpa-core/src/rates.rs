//! Physical-unit rate layer: the conventional two-photon cross section, the
//! pair-enhanced cross section, per-pulse absorption probabilities for pair
//! and coherent illumination, and the quantum enhancement factor.

use serde::Serialize;

use crate::error::{EtpaError, Result};
use crate::units::constants::{C_LIGHT, EPSILON_0, HBAR};
use crate::units::{CrossSection2P, Hertz, RadPerSec, Seconds, SquareMeters};

/// One far-off-resonant intermediate state in the sum-over-states cross
/// section: scaled dipole elements (d·e/ħ) and the state frequencies.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntermediateState {
    pub mu_fm: f64,
    pub mu_mg: f64,
    pub omega_mg: f64,
    pub omega_fm: f64,
}

/// Molecular two-photon transition parameters. The cross section may be
/// given directly in GM or computed from the sum-over-states table.
#[derive(Debug, Clone)]
pub struct MolecularTpaParams {
    pub sigma2_gm: f64,
    pub omega_fg: RadPerSec,
    pub gamma_fg: RadPerSec,
    pub states: Vec<IntermediateState>,
}

impl MolecularTpaParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma2_gm >= 0.0 && self.sigma2_gm.is_finite()) {
            return Err(EtpaError::InvalidParameter(format!(
                "cross section must be non-negative, got {} GM",
                self.sigma2_gm
            )));
        }
        if !(self.gamma_fg.value() > 0.0) {
            return Err(EtpaError::InvalidParameter(
                "half linewidth must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn sigma2(&self) -> CrossSection2P {
        CrossSection2P::from_gm(self.sigma2_gm)
    }
}

/// Conventional two-photon cross section from the sum over virtual
/// intermediate states,
///
/// σ⁽²⁾ = (ħω₀/ε₀nc)² (1/2γ) Σ_{m,m'} μ_fm μ_mg μ_m'f μ_gm' /
///        [(ω₀ − ω_fm)(ω_m'g − ω₀)]
///
/// valid only when every denominator stays away from zero (virtual states).
pub fn sigma2_sum_over_states(
    params: &MolecularTpaParams,
    omega_0: RadPerSec,
    refractive_index: f64,
) -> Result<CrossSection2P> {
    params.validate()?;
    if params.states.is_empty() {
        return Err(EtpaError::InvalidParameter(
            "sum-over-states table is empty".into(),
        ));
    }
    if !(refractive_index >= 1.0) {
        return Err(EtpaError::InvalidParameter(format!(
            "refractive index must be >= 1, got {refractive_index}"
        )));
    }
    let w0 = omega_0.value();
    let mut s_absorb = 0.0;
    let mut s_emit = 0.0;
    for st in &params.states {
        let d_absorb = w0 - st.omega_fm;
        let d_emit = st.omega_mg - w0;
        for (name, d) in [("ω₀-ω_fm", d_absorb), ("ω_mg-ω₀", d_emit)] {
            if d.abs() <= 1e-6 * w0 {
                return Err(EtpaError::ResonantIntermediate(format!(
                    "denominator {name} = {d:.3e} is within 1e-6 of resonance; \
                     the virtual-state model does not apply"
                )));
            }
        }
        s_absorb += st.mu_fm * st.mu_mg / d_absorb;
        s_emit += st.mu_fm * st.mu_mg / d_emit;
    }
    let prefactor = HBAR * w0 / (EPSILON_0 * refractive_index * C_LIGHT);
    let value = prefactor * prefactor / (2.0 * params.gamma_fg.value()) * s_absorb * s_emit;
    Ok(CrossSection2P(value))
}

/// Beam parameters at the sample. `entanglement_area`, when given, replaces
/// the beam area in the cross-section factor only (pairs correlated more
/// tightly than the beam concentrate the interaction); it defaults to the
/// beam area.
#[derive(Debug, Clone, Copy)]
pub struct BeamParams {
    pub omega_0: RadPerSec,
    pub area: SquareMeters,
    pub refractive_index: f64,
    /// Marginal spectral width of the pair beam in Hz (cycles).
    pub bandwidth: Hertz,
    pub entanglement_area: Option<SquareMeters>,
}

impl BeamParams {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !(self.area.value() > 0.0) {
            problems.push(format!("beam area must be positive, got {}", self.area.value()));
        }
        if !(self.refractive_index >= 1.0) {
            problems.push(format!(
                "refractive index must be >= 1, got {}",
                self.refractive_index
            ));
        }
        if !(self.bandwidth.value() > 0.0) {
            problems.push(format!(
                "bandwidth must be positive, got {} Hz",
                self.bandwidth.value()
            ));
        }
        if let Some(ae) = self.entanglement_area {
            if !(ae.value() > 0.0) {
                problems.push("entanglement area must be positive".into());
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(EtpaError::Validation(problems))
        }
    }

    fn interaction_area(&self) -> SquareMeters {
        self.entanglement_area.unwrap_or(self.area)
    }
}

/// Pair-enhanced absorption cross section σ_e = σ⁽²⁾ B / A, with B the
/// marginal bandwidth in Hz.
pub fn sigma_e(sigma2: CrossSection2P, beam: &BeamParams) -> Result<SquareMeters> {
    beam.validate()?;
    Ok(sigma2 * beam.bandwidth / beam.interaction_area())
}

/// How the spectral factor of the pair absorption probability is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PfMode {
    /// Use an overlap factor η (rad/s) computed from a concrete amplitude.
    ExactEta(RadPerSec),
    /// Use the bandwidth approximation η ≈ B (Hz), valid when the pair
    /// spectrum is broad against the line and optimally compressed.
    BandwidthApprox,
}

impl PfMode {
    pub fn label(&self) -> &'static str {
        match self {
            PfMode::ExactEta(_) => "exact-eta",
            PfMode::BandwidthApprox => "bandwidth-approximation",
        }
    }
}

/// Per-pulse pair absorption probability with its provenance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairAbsorption {
    pub probability: f64,
    pub mode: &'static str,
    /// Raised above 1e-2 per pulse, where the perturbative treatment that
    /// the probability formula rests on stops being trustworthy.
    pub perturbative_warning: bool,
}

/// Probability that a molecule absorbs from a pair pulse of mean photon
/// number `n_epp` < 1 (isolated pairs):
///
/// P = (N/A₀)(σ⁽²⁾/A) η      (exact mode)
/// P = (N/A₀)(σ⁽²⁾/A) B      (bandwidth approximation, B in Hz)
pub fn p_f_epp(
    n_epp: f64,
    beam: &BeamParams,
    sigma2: CrossSection2P,
    mode: PfMode,
) -> Result<PairAbsorption> {
    beam.validate()?;
    if !(n_epp >= 0.0 && n_epp < 1.0) {
        return Err(EtpaError::InvalidParameter(format!(
            "isolated-pair treatment requires 0 <= N < 1, got {n_epp}"
        )));
    }
    let per_area = n_epp / beam.area.value();
    let spectral_area: SquareMeters = match mode {
        PfMode::ExactEta(eta) => sigma2 / beam.interaction_area() * eta,
        PfMode::BandwidthApprox => sigma2 * beam.bandwidth / beam.interaction_area(),
    };
    let probability = per_area * spectral_area.value();
    Ok(PairAbsorption {
        probability,
        mode: mode.label(),
        perturbative_warning: probability > 1e-2,
    })
}

/// Pulse parameters for the pair/coherent comparison.
#[derive(Debug, Clone, Copy)]
pub struct PulseParams {
    /// Mean photons per pair pulse, < 1 in the isolated-pair regime.
    pub n_epp: f64,
    /// Mean photons per coherent pulse.
    pub n_coh: f64,
    /// Coherent pulse duration.
    pub t_c: Seconds,
    /// Pair correlation time.
    pub t_e: Seconds,
    /// Order-unity coherent shape factor; an input because its exact value
    /// depends on the pulse shape. Defaults to 1.
    pub f_coh: f64,
}

impl PulseParams {
    pub fn new(n_epp: f64, n_coh: f64, t_c: Seconds, t_e: Seconds) -> Result<Self> {
        let p = Self {
            n_epp,
            n_coh,
            t_c,
            t_e,
            f_coh: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_f_coh(mut self, f_coh: f64) -> Self {
        self.f_coh = f_coh;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !(self.n_epp >= 0.0 && self.n_epp < 1.0) {
            problems.push(format!("n_epp must lie in [0, 1), got {}", self.n_epp));
        }
        if !(self.n_coh > 0.0) {
            problems.push(format!("n_coh must be positive, got {}", self.n_coh));
        }
        if !(self.t_c.value() > 0.0) {
            problems.push("coherent pulse duration must be positive".into());
        }
        if !(self.t_e.value() > 0.0) {
            problems.push("pair correlation time must be positive".into());
        }
        if !(self.f_coh > 0.0) {
            problems.push(format!("f_coh must be positive, got {}", self.f_coh));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(EtpaError::Validation(problems))
        }
    }
}

/// Per-pulse absorption probability for a coherent pulse:
/// P = (N²/A₀)(σ⁽²⁾/(A T_c)) f_coh.
pub fn p_f_coherent(
    pulse: &PulseParams,
    beam: &BeamParams,
    sigma2: CrossSection2P,
) -> Result<f64> {
    beam.validate()?;
    pulse.validate()?;
    let per_area = pulse.n_coh * pulse.n_coh / beam.area.value();
    let spectral_area: SquareMeters = sigma2 / beam.interaction_area() / pulse.t_c;
    Ok(per_area * spectral_area.value() * pulse.f_coh)
}

/// Quantum enhancement factor, the ratio of pair-driven to coherent-driven
/// excited populations.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QefValues {
    /// (N_EPP / N_coh²)(T_c / T_e).
    pub general: f64,
    /// (1/N)(T_c / T_e), defined when the two pulses carry the same mean
    /// photon number.
    pub equal_n: Option<f64>,
}

pub fn qef(pulse: &PulseParams) -> Result<QefValues> {
    pulse.validate()?;
    if !(pulse.n_epp > 0.0) {
        return Err(EtpaError::InvalidParameter(
            "QEF needs a positive pair photon number".into(),
        ));
    }
    let ratio = pulse.t_c / pulse.t_e;
    let general = pulse.n_epp / (pulse.n_coh * pulse.n_coh) * ratio;
    let equal_n = if (pulse.n_epp - pulse.n_coh).abs() <= 1e-12 * pulse.n_coh {
        Some(ratio / pulse.n_epp)
    } else {
        None
    };
    Ok(QefValues { general, equal_n })
}

/// JSON row of the pair/coherent comparison at one photon number.
#[derive(Debug, Clone, Serialize)]
pub struct QefReport {
    pub n_epp: f64,
    pub n_coh: f64,
    #[serde(rename = "T_c_s")]
    pub t_c_s: f64,
    #[serde(rename = "T_e_s")]
    pub t_e_s: f64,
    pub p_f_epp: f64,
    pub p_f_coh: f64,
    pub qef_general: f64,
    pub qef_equal_n: Option<f64>,
}

/// Evaluate both probabilities and the enhancement factor with matched shape
/// factors (the pair overlap taken as η = f_coh/T_e), which makes
/// QEF × P_coh = P_epp an algebraic identity.
pub fn qef_report(
    pulse: &PulseParams,
    beam: &BeamParams,
    sigma2: CrossSection2P,
) -> Result<QefReport> {
    let eta = RadPerSec(pulse.f_coh / pulse.t_e.value());
    let epp = p_f_epp(pulse.n_epp, beam, sigma2, PfMode::ExactEta(eta))?;
    let coh = p_f_coherent(pulse, beam, sigma2)?;
    let q = qef(pulse)?;
    Ok(QefReport {
        n_epp: pulse.n_epp,
        n_coh: pulse.n_coh,
        t_c_s: pulse.t_c.value(),
        t_e_s: pulse.t_e.value(),
        p_f_epp: epp.probability,
        p_f_coh: coh,
        qef_general: q.general,
        qef_equal_n: q.equal_n,
    })
}
