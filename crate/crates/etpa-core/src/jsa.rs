//! Joint spectral amplitudes on a square frequency grid: the factored
//! narrow-by-broad model, SPDC-style pump × phase-matching constructions,
//! exchange symmetrization, and CSV export/import.

use std::io::{BufRead, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amplitude::SpectralAmplitude1D;
use crate::error::{EtpaError, Result};
use crate::grid::FrequencyGrid;
use crate::parallel;
use crate::shapes;

/// Normalization tolerance for 2D amplitudes.
pub const JSA_NORM_TOL: f64 = 1e-6;

/// How a [`JointSpectralAmplitude`] was produced.
#[derive(Debug, Clone, PartialEq)]
pub enum JsaKind {
    Raw,
    Symmetrized,
    /// Product of a narrow amplitude of the sum detuning and a broad, even
    /// amplitude of half the difference; exchange-symmetric by construction.
    Factored {
        psi_n: Box<SpectralAmplitude1D>,
        psi_b: Box<SpectralAmplitude1D>,
    },
}

impl JsaKind {
    pub fn label(&self) -> &'static str {
        match self {
            JsaKind::Raw => "raw",
            JsaKind::Symmetrized => "symmetrized",
            JsaKind::Factored { .. } => "factored",
        }
    }
}

/// Complex two-photon amplitude ψ(ω, ω̃) sampled on `grid × grid`,
/// row-major with `values[i * n + j]` at (ωᵢ, ω̃ⱼ).
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectralAmplitude {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
    kind: JsaKind,
}

/// Deterministic 1D trapezoid weight over the full grid.
fn edge_weight(k: usize, n: usize) -> f64 {
    if k == 0 || k == n - 1 {
        0.5
    } else {
        1.0
    }
}

impl JointSpectralAmplitude {
    /// Wrap raw values; no normalization or symmetry is assumed.
    pub fn from_raw(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        let n = grid.n_points();
        if values.len() != n * n {
            return Err(EtpaError::DimensionMismatch(format!(
                "expected {} values for a {n}x{n} grid, got {}",
                n * n,
                values.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            kind: JsaKind::Raw,
        })
    }

    /// The 1D grids a factored construction needs: the narrow factor lives on
    /// the sum-detuning axis (same step, twice the span) and the broad factor
    /// on the half-difference axis (half the step, same span). Both are
    /// centered at zero detuning, so every lattice evaluation lands exactly
    /// on a sample of the corresponding factor.
    pub fn factored_component_grids(grid: &FrequencyGrid) -> Result<(FrequencyGrid, FrequencyGrid)> {
        let n = grid.n_points();
        let sum_grid = FrequencyGrid::new(0.0, grid.step(), 2 * n - 1)?;
        let diff_grid = FrequencyGrid::new(0.0, grid.step() / 2.0, 2 * n - 1)?;
        Ok((sum_grid, diff_grid))
    }

    /// Build ψ(ω, ω̃) = ψ_N(ω + ω̃ − 2ω₀) · ψ_B((ω − ω̃)/2) on `grid`
    /// (ω₀ is the grid center), renormalized on the 2D grid.
    ///
    /// `psi_n` and `psi_b` must be normalized, live on the grids from
    /// [`Self::factored_component_grids`], and `psi_b` must be even.
    pub fn from_factors(
        psi_n: SpectralAmplitude1D,
        psi_b: SpectralAmplitude1D,
        grid: FrequencyGrid,
    ) -> Result<Self> {
        let (sum_grid, diff_grid) = Self::factored_component_grids(&grid)?;
        check_conforming(psi_n.grid(), &sum_grid, "narrow factor")?;
        check_conforming(psi_b.grid(), &diff_grid, "broad factor")?;
        for amp in [&psi_n, &psi_b] {
            if !amp.is_normalized(JSA_NORM_TOL) {
                return Err(EtpaError::NotNormalized(format!(
                    "factor norm² = {}, expected 1",
                    amp.norm_sq()
                )));
            }
        }
        // State symmetry requires an even broad factor.
        let nb = psi_b.values().len();
        let max_b = psi_b
            .values()
            .iter()
            .map(|v| v.norm())
            .fold(0.0f64, f64::max);
        for k in 0..nb / 2 {
            let defect = (psi_b.values()[k] - psi_b.values()[nb - 1 - k]).norm();
            if defect > 1e-9 * max_b {
                return Err(EtpaError::SymmetryViolation(format!(
                    "broad factor is not even: |ψ(-z) - ψ(z)| = {defect:.3e} at sample {k}"
                )));
            }
        }

        let n = grid.n_points();
        let n_values = psi_n.values().to_vec();
        let b_values = psi_b.values().to_vec();
        let values = parallel::map_indexed(n, |i| {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                // sum index i + j on the 2n-1 axis; difference index
                // i - j + (n-1) on the 2n-1 axis.
                row.push(n_values[i + j] * b_values[i + n - 1 - j]);
            }
            row
        })
        .into_iter()
        .flatten()
        .collect();

        let jsa = Self {
            grid,
            values,
            kind: JsaKind::Factored {
                psi_n: Box::new(psi_n),
                psi_b: Box::new(psi_b),
            },
        };
        jsa.renormalized()
    }

    /// Pump-times-phase-matching construction for a collinear downconversion
    /// source, normalized on the grid. Returns the amplitude and the
    /// entanglement ratio `pm_bandwidth / pump_bandwidth` (elongation of the
    /// two-photon amplitude, a measure of time-frequency entanglement).
    pub fn from_spdc(params: &SpdcParams, grid: FrequencyGrid) -> Result<SpdcJsa> {
        params.validate()?;
        let span = grid.half_span();
        // Sum axis covers ±2·span, difference axis ±span.
        if 4.0 * span < 6.0 * params.pump_bandwidth {
            return Err(EtpaError::Truncation(format!(
                "grid span ±{span:.3e} cannot contain six pump widths of {:.3e}",
                params.pump_bandwidth
            )));
        }
        if 2.0 * span < 6.0 * params.pm_bandwidth {
            return Err(EtpaError::Truncation(format!(
                "grid span ±{span:.3e} cannot contain six phase-matching widths of {:.3e}",
                params.pm_bandwidth
            )));
        }
        let (sum_grid, diff_grid) = Self::factored_component_grids(&grid)?;
        let psi_n = match params.pump_shape {
            PumpShape::Gaussian => shapes::gaussian_spectrum(&sum_grid, params.pump_bandwidth)?,
        };
        let psi_b = match params.pm_shape {
            PmShape::Gaussian => shapes::gaussian_spectrum(&diff_grid, params.pm_bandwidth)?,
            PmShape::Sinc => shapes::sinc_spectrum(&diff_grid, params.pm_bandwidth)?,
        };
        let jsa = Self::from_factors(psi_n, psi_b, grid)?;
        Ok(SpdcJsa {
            jsa,
            entanglement_ratio: params.pm_bandwidth / params.pump_bandwidth,
        })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn kind(&self) -> &JsaKind {
        &self.kind
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value_at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.grid.n_points() + j]
    }

    /// Quadrature weight of a lattice point. Factored amplitudes reuse their
    /// factors' support weights in the rotated (sum, difference) directions,
    /// which keeps sharp-edged broad factors exact on the lattice; everything
    /// else gets the plain 2D trapezoid rule.
    pub fn lattice_weight(&self, i: usize, j: usize) -> f64 {
        let n = self.grid.n_points();
        match &self.kind {
            JsaKind::Factored { psi_n, psi_b } => {
                psi_n.weight(i + j) * psi_b.weight(i + n - 1 - j)
            }
            _ => edge_weight(i, n) * edge_weight(j, n),
        }
    }

    /// ∫∫ (dω dω̃ / 4π²) |ψ|².
    pub fn norm_sq(&self) -> f64 {
        let n = self.grid.n_points();
        let mut acc = 0.0;
        for i in 0..n {
            let mut row = 0.0;
            for j in 0..n {
                row += self.lattice_weight(i, j) * self.values[i * n + j].norm_sqr();
            }
            acc += row;
        }
        let measure = self.grid.step() / std::f64::consts::TAU;
        acc * measure * measure
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    pub fn renormalized(&self) -> Result<Self> {
        let n2 = self.norm_sq();
        if !(n2.is_finite() && n2 > 1e-300) {
            return Err(EtpaError::DegenerateAmplitude(format!(
                "cannot renormalize amplitude with squared norm {n2}"
            )));
        }
        let scale = 1.0 / n2.sqrt();
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= scale;
        }
        Ok(out)
    }

    /// Exchange-symmetrized amplitude {ψ(ω,ω̃) + ψ(ω̃,ω)}/2, renormalized.
    /// Already-symmetric kinds pass through unchanged.
    pub fn symmetrized(&self) -> Result<Self> {
        if !matches!(self.kind, JsaKind::Raw) {
            return Ok(self.clone());
        }
        let n = self.grid.n_points();
        let values: Vec<Complex64> = parallel::map_indexed(n, |i| {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push((self.values[i * n + j] + self.values[j * n + i]) * 0.5);
            }
            row
        })
        .into_iter()
        .flatten()
        .collect();
        let sym = Self {
            grid: self.grid,
            values,
            kind: JsaKind::Symmetrized,
        };
        sym.renormalized()
    }

    /// Largest |ψ(ω,ω̃) − ψ(ω̃,ω)| over the grid.
    pub fn transpose_defect(&self) -> f64 {
        let n = self.grid.n_points();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = (self.values[i * n + j] - self.values[j * n + i]).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Write the amplitude as CSV rows `(omega, omega_tilde, re, im)` in
    /// row-major order, absolute frequencies in rad/s.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "omega,omega_tilde,re,im")?;
        let n = self.grid.n_points();
        for i in 0..n {
            let wi = self.grid.sample(i);
            for j in 0..n {
                let v = self.values[i * n + j];
                writeln!(
                    out,
                    "{:.11e},{:.11e},{:.11e},{:.11e}",
                    wi,
                    self.grid.sample(j),
                    v.re,
                    v.im
                )?;
            }
        }
        Ok(())
    }

    /// Grid metadata for the JSON sidecar accompanying a CSV export.
    pub fn sidecar(&self) -> JsaSidecar {
        JsaSidecar {
            center_rad_s: self.grid.center(),
            step_rad_s: self.grid.step(),
            n_points: self.grid.n_points(),
            kind: self.kind.label().to_string(),
        }
    }

    /// Read an amplitude back from a CSV export and its sidecar. Factored
    /// provenance is not serialized, so such amplitudes come back tagged
    /// `symmetrized` (the matrix itself is exchange-symmetric).
    pub fn read_csv<R: BufRead>(reader: R, sidecar: &JsaSidecar) -> Result<Self> {
        let grid = FrequencyGrid::new(sidecar.center_rad_s, sidecar.step_rad_s, sidecar.n_points)?;
        let n = grid.n_points();
        let mut values = vec![Complex64::new(0.0, 0.0); n * n];
        let mut seen = 0usize;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            if lineno == 0 {
                if line.trim() != "omega,omega_tilde,re,im" {
                    return Err(EtpaError::Parse(format!(
                        "unexpected CSV header: {line:?}"
                    )));
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(EtpaError::Parse(format!(
                    "line {}: expected 4 fields, got {}",
                    lineno + 1,
                    fields.len()
                )));
            }
            let parse = |s: &str| -> Result<f64> {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| EtpaError::Parse(format!("line {}: {e}", lineno + 1)))
            };
            let omega = parse(fields[0])?;
            let omega_tilde = parse(fields[1])?;
            let re = parse(fields[2])?;
            let im = parse(fields[3])?;
            let half_step = 0.5;
            let i = grid
                .index_of_offset(omega - grid.center(), half_step)
                .ok_or_else(|| {
                    EtpaError::Parse(format!("line {}: omega {omega} off-grid", lineno + 1))
                })?;
            let j = grid
                .index_of_offset(omega_tilde - grid.center(), half_step)
                .ok_or_else(|| {
                    EtpaError::Parse(format!(
                        "line {}: omega_tilde {omega_tilde} off-grid",
                        lineno + 1
                    ))
                })?;
            values[i * n + j] = Complex64::new(re, im);
            seen += 1;
        }
        if seen != n * n {
            return Err(EtpaError::Parse(format!(
                "expected {} data rows, got {seen}",
                n * n
            )));
        }
        let kind = match sidecar.kind.as_str() {
            "raw" => JsaKind::Raw,
            _ => JsaKind::Symmetrized,
        };
        Ok(Self { grid, values, kind })
    }
}

fn check_conforming(got: &FrequencyGrid, want: &FrequencyGrid, what: &str) -> Result<()> {
    let step_ok = (got.step() - want.step()).abs() <= 1e-9 * want.step();
    let center_ok = got.center().abs() <= 1e-9 * want.step();
    if !step_ok || !center_ok || got.n_points() != want.n_points() {
        return Err(EtpaError::DimensionMismatch(format!(
            "{what} grid (center {}, step {}, {} points) does not conform to the \
             required axis (center 0, step {}, {} points)",
            got.center(),
            got.step(),
            got.n_points(),
            want.step(),
            want.n_points()
        )));
    }
    Ok(())
}

/// Sidecar metadata for a CSV export.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsaSidecar {
    pub center_rad_s: f64,
    pub step_rad_s: f64,
    pub n_points: usize,
    pub kind: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PumpShape {
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmShape {
    Gaussian,
    Sinc,
}

/// Pump and phase-matching parameters for [`JointSpectralAmplitude::from_spdc`].
///
/// `pump_bandwidth` is the width of the pump profile in the sum detuning
/// ω + ω̃ − 2ω₀; `pm_bandwidth` the width of the phase-matching profile in
/// the half difference (ω − ω̃)/2 (rms width for Gaussian, first-zero/π
/// scale for sinc).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpdcParams {
    pub pump_bandwidth: f64,
    pub pm_bandwidth: f64,
    pub pump_shape: PumpShape,
    pub pm_shape: PmShape,
}

impl SpdcParams {
    fn validate(&self) -> Result<()> {
        if !(self.pump_bandwidth.is_finite() && self.pump_bandwidth > 0.0) {
            return Err(EtpaError::InvalidParameter(format!(
                "pump bandwidth must be positive, got {}",
                self.pump_bandwidth
            )));
        }
        if !(self.pm_bandwidth.is_finite() && self.pm_bandwidth > 0.0) {
            return Err(EtpaError::InvalidParameter(format!(
                "phase-matching bandwidth must be positive, got {}",
                self.pm_bandwidth
            )));
        }
        Ok(())
    }
}

/// A downconversion amplitude together with its entanglement ratio.
#[derive(Debug, Clone)]
pub struct SpdcJsa {
    pub jsa: JointSpectralAmplitude,
    pub entanglement_ratio: f64,
}

/// A photon-pair state: a joint spectral amplitude plus the per-pulse pair
/// probability ε². Isolated-pair treatment requires ε² ≤ 1/2 so that the
/// mean photon number 2ε² stays at or below one.
#[derive(Debug, Clone)]
pub struct EppState {
    pub jsa: JointSpectralAmplitude,
    epsilon_sq: f64,
}

impl EppState {
    pub fn new(jsa: JointSpectralAmplitude, epsilon_sq: f64) -> Result<Self> {
        if !(epsilon_sq.is_finite() && epsilon_sq > 0.0 && epsilon_sq <= 0.5) {
            return Err(EtpaError::InvalidParameter(format!(
                "pair probability per pulse must lie in (0, 0.5], got {epsilon_sq}"
            )));
        }
        Ok(Self { jsa, epsilon_sq })
    }

    pub fn epsilon_sq(&self) -> f64 {
        self.epsilon_sq
    }

    /// Mean photon number per pulse, twice the pair probability.
    pub fn mean_photon_number(&self) -> f64 {
        2.0 * self.epsilon_sq
    }
}
