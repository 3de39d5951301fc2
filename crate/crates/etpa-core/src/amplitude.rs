//! Complex amplitudes on frequency/time grids and the quadrature and
//! transform conventions used everywhere else.
//!
//! Frequency integrals carry the dω/2π measure. Quadrature is trapezoidal
//! over the amplitude's support window: weight 1/2 at the two support edges,
//! 1 inside, 0 outside. For smooth amplitudes the support is the whole grid
//! and this is the ordinary trapezoid rule; for amplitudes with sharp edges
//! (box, random-on-support) placing the half weights on the edge samples
//! makes box normalization and the Cauchy-Schwarz saturation exact on the
//! grid instead of accurate to O(step).

use num_complex::Complex64;

use crate::error::{EtpaError, Result};
use crate::grid::{FrequencyGrid, TimeGrid};
use crate::parallel;

/// Tolerance used by `is_normalized` checks on 1D amplitudes.
pub const NORM_TOL: f64 = 1e-9;

/// Complex spectral amplitude sampled on a [`FrequencyGrid`].
///
/// Units are (rad/s)^(-1/2) scaled so that ∫(dω/2π)|f|² is dimensionless.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralAmplitude1D {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
    /// Inclusive index range outside of which the amplitude is treated as
    /// identically zero by quadrature.
    support: (usize, usize),
}

impl SpectralAmplitude1D {
    pub fn new(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(EtpaError::DimensionMismatch(format!(
                "grid has {} points but {} values were given",
                grid.n_points(),
                values.len()
            )));
        }
        let hi = grid.n_points() - 1;
        Ok(Self {
            grid,
            values,
            support: (0, hi),
        })
    }

    /// Amplitude that quadrature treats as supported only on `lo..=hi`.
    pub fn with_support(
        grid: FrequencyGrid,
        values: Vec<Complex64>,
        lo: usize,
        hi: usize,
    ) -> Result<Self> {
        let mut amp = Self::new(grid, values)?;
        if lo >= hi || hi >= amp.grid.n_points() {
            return Err(EtpaError::InvalidParameter(format!(
                "support {lo}..={hi} is not a valid window on a {}-point grid",
                amp.grid.n_points()
            )));
        }
        amp.support = (lo, hi);
        Ok(amp)
    }

    pub fn from_fn(grid: FrequencyGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.n_points()).map(|k| f(grid.offset(k))).collect();
        Self {
            grid,
            values,
            support: (0, grid.n_points() - 1),
        }
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn support(&self) -> (usize, usize) {
        self.support
    }

    /// Half-width of the support window measured from the grid center, when
    /// the window is symmetric about it.
    pub fn support_half_width(&self) -> Option<f64> {
        let mid = self.grid.mid_index();
        let (lo, hi) = self.support;
        if hi >= mid && mid >= lo && hi - mid == mid - lo {
            Some((hi - mid) as f64 * self.grid.step())
        } else {
            None
        }
    }

    /// Quadrature weight of sample `k`.
    pub fn weight(&self, k: usize) -> f64 {
        let (lo, hi) = self.support;
        if k < lo || k > hi {
            0.0
        } else if k == lo || k == hi {
            0.5
        } else {
            1.0
        }
    }

    /// ∫(dω/2π) f(ω) over the support window.
    pub fn integral(&self) -> Complex64 {
        self.integral_weighted_by(|_| 1.0)
    }

    /// ∫(dω/2π) g(z) f(z) with `g` a real function of the detuning from the
    /// grid center.
    pub fn integral_weighted_by(&self, g: impl Fn(f64) -> f64) -> Complex64 {
        let (lo, hi) = self.support;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in lo..=hi {
            acc += self.values[k] * (self.weight(k) * g(self.grid.offset(k)));
        }
        acc * (self.grid.step() / std::f64::consts::TAU)
    }

    /// ∫(dω/2π) g(z) |f(z)|².
    pub fn abs_sq_integral_weighted_by(&self, g: impl Fn(f64) -> f64) -> f64 {
        let (lo, hi) = self.support;
        let mut acc = 0.0;
        for k in lo..=hi {
            acc += self.values[k].norm_sqr() * self.weight(k) * g(self.grid.offset(k));
        }
        acc * (self.grid.step() / std::f64::consts::TAU)
    }

    /// ∫(dω/2π) |f|².
    pub fn norm_sq(&self) -> f64 {
        self.abs_sq_integral_weighted_by(|_| 1.0)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    /// Rescale so that ∫(dω/2π)|f|² = 1. The input is left unchanged.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sq();
        if !(n.is_finite() && n > 1e-300) {
            return Err(EtpaError::DegenerateAmplitude(format!(
                "cannot normalize amplitude with squared norm {n}"
            )));
        }
        let scale = 1.0 / n.sqrt();
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= scale;
        }
        Ok(out)
    }

    pub fn abs_sq(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// Direct transform to the time domain in the rotating frame:
    ///
    /// φ(τ) = ∫(dω/2π) f(z) e^{-izτ}, z the detuning from the grid center.
    ///
    /// The carrier e^{-i·center·τ} is omitted; it cancels in every |·|² this
    /// crate computes. The sum is a direct O(N·M) evaluation so frequency and
    /// time grids may be chosen independently; the time grid should span at
    /// least a few inverse spectral widths so the main lobe is resolved.
    pub fn to_time_domain(&self, tgrid: &TimeGrid) -> TemporalAmplitude1D {
        let (lo, hi) = self.support;
        let scale = self.grid.step() / std::f64::consts::TAU;
        // Pre-weighted samples so the inner loop is a plain phase sum.
        let weighted: Vec<(f64, Complex64)> = (lo..=hi)
            .map(|k| (self.grid.offset(k), self.values[k] * self.weight(k)))
            .collect();
        let values = parallel::map_indexed(tgrid.n_points(), |j| {
            let tau = tgrid.sample(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for &(z, v) in &weighted {
                let phase = -z * tau;
                acc += v * Complex64::new(phase.cos(), phase.sin());
            }
            acc * scale
        });
        TemporalAmplitude1D {
            grid: *tgrid,
            values,
        }
    }
}

/// Complex temporal amplitude sampled on a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalAmplitude1D {
    grid: TimeGrid,
    values: Vec<Complex64>,
}

impl TemporalAmplitude1D {
    pub fn new(grid: TimeGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(EtpaError::DimensionMismatch(format!(
                "time grid has {} points but {} values were given",
                grid.n_points(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn abs_sq(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// ∫dt |φ|² by the trapezoid rule over the grid.
    pub fn norm_sq(&self) -> f64 {
        let n = self.values.len();
        let mut acc = 0.0;
        for (j, v) in self.values.iter().enumerate() {
            let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
            acc += w * v.norm_sqr();
        }
        acc * self.grid.step()
    }

    /// Value at t = 0 (the center sample).
    pub fn at_zero(&self) -> Complex64 {
        self.values[self.grid.mid_index()]
    }
}

/// Grid argmax of `samples` with a three-point parabolic refinement.
///
/// Ties are broken toward the sample closest to `prefer_index` (smallest
/// |t| when that is the center of a symmetric grid). Returns the refined
/// `(position offset from sample 0 in units of the step, peak value)`.
pub fn refined_peak(samples: &[f64], prefer_index: usize) -> (f64, f64) {
    let mut best = 0usize;
    for (k, &v) in samples.iter().enumerate() {
        let better = v > samples[best]
            || (v == samples[best]
                && (k as isize - prefer_index as isize).unsigned_abs()
                    < (best as isize - prefer_index as isize).unsigned_abs());
        if better {
            best = k;
        }
    }
    if best == 0 || best == samples.len() - 1 {
        return (best as f64, samples[best]);
    }
    let (ym, y0, yp) = (samples[best - 1], samples[best], samples[best + 1]);
    let denom = ym - 2.0 * y0 + yp;
    if denom >= 0.0 || !denom.is_finite() {
        // Flat or non-concave neighborhood; keep the grid value.
        return (best as f64, y0);
    }
    let delta = 0.5 * (ym - yp) / denom;
    let peak = y0 - 0.25 * (ym - yp) * delta;
    (best as f64 + delta, peak)
}
