//! Uniform sampling axes for angular frequency and time.

use serde::{Deserialize, Serialize};

use crate::error::{EtpaError, Result};

/// Default number of samples for auto-constructed frequency grids.
///
/// 4097 points spanning six spectral widths keeps Gaussian tail truncation
/// below 1e-8 while a direct O(N*M) transform stays fast at desk scale.
pub const DEFAULT_GRID_POINTS: usize = 4097;

/// Uniform angular-frequency axis carrying the dω/2π integration measure.
///
/// Samples are `center + k*step` for `k` in `-(n-1)/2 ..= (n-1)/2`. The point
/// count is odd so the center is itself a sample and even/odd symmetry of
/// amplitudes holds exactly on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    center: f64,
    step: f64,
    n_points: usize,
}

impl FrequencyGrid {
    pub fn new(center: f64, step: f64, n_points: usize) -> Result<Self> {
        if !step.is_finite() || step <= 0.0 {
            return Err(EtpaError::InvalidParameter(format!(
                "frequency grid step must be positive and finite, got {step}"
            )));
        }
        if !center.is_finite() {
            return Err(EtpaError::InvalidParameter(
                "frequency grid center must be finite".into(),
            ));
        }
        if n_points < 3 || n_points % 2 == 0 {
            return Err(EtpaError::InvalidParameter(format!(
                "frequency grid needs an odd point count >= 3, got {n_points}"
            )));
        }
        Ok(Self {
            center,
            step,
            n_points,
        })
    }

    /// Grid spanning `center ± half_span` with `n_points` samples.
    pub fn spanning(center: f64, half_span: f64, n_points: usize) -> Result<Self> {
        if !half_span.is_finite() || half_span <= 0.0 {
            return Err(EtpaError::InvalidParameter(format!(
                "frequency grid half-span must be positive, got {half_span}"
            )));
        }
        if n_points < 3 || n_points % 2 == 0 {
            return Err(EtpaError::InvalidParameter(format!(
                "frequency grid needs an odd point count >= 3, got {n_points}"
            )));
        }
        let step = 2.0 * half_span / (n_points - 1) as f64;
        Self::new(center, step, n_points)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Index of the center sample.
    pub fn mid_index(&self) -> usize {
        (self.n_points - 1) / 2
    }

    pub fn half_span(&self) -> f64 {
        self.mid_index() as f64 * self.step
    }

    /// Detuning of sample `k` from the grid center.
    pub fn offset(&self, k: usize) -> f64 {
        (k as isize - self.mid_index() as isize) as f64 * self.step
    }

    /// Absolute angular frequency of sample `k`.
    pub fn sample(&self, k: usize) -> f64 {
        self.center + self.offset(k)
    }

    pub fn offsets(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |k| self.offset(k))
    }

    /// Nearest sample index for a detuning from center, if it lies on the
    /// grid within `tol` of a sample.
    pub fn index_of_offset(&self, offset: f64, tol: f64) -> Option<usize> {
        let k = offset / self.step + self.mid_index() as f64;
        let rounded = k.round();
        if (k - rounded).abs() > tol || rounded < 0.0 || rounded >= self.n_points as f64 {
            None
        } else {
            Some(rounded as usize)
        }
    }

    /// Same span, half the step (2x refinement keeps every existing sample).
    pub fn refined(&self) -> Self {
        Self {
            center: self.center,
            step: self.step / 2.0,
            n_points: self.n_points * 2 - 1,
        }
    }
}

/// Uniform time axis centered at t = 0, odd point count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    step: f64,
    n_points: usize,
}

impl TimeGrid {
    pub fn new(step: f64, n_points: usize) -> Result<Self> {
        if !step.is_finite() || step <= 0.0 {
            return Err(EtpaError::InvalidParameter(format!(
                "time grid step must be positive and finite, got {step}"
            )));
        }
        if n_points < 3 || n_points % 2 == 0 {
            return Err(EtpaError::InvalidParameter(format!(
                "time grid needs an odd point count >= 3, got {n_points}"
            )));
        }
        Ok(Self { step, n_points })
    }

    /// Grid spanning `±half_span` with `n_points` samples.
    pub fn spanning(half_span: f64, n_points: usize) -> Result<Self> {
        if !half_span.is_finite() || half_span <= 0.0 {
            return Err(EtpaError::InvalidParameter(format!(
                "time grid half-span must be positive, got {half_span}"
            )));
        }
        if n_points < 3 || n_points % 2 == 0 {
            return Err(EtpaError::InvalidParameter(format!(
                "time grid needs an odd point count >= 3, got {n_points}"
            )));
        }
        let step = 2.0 * half_span / (n_points - 1) as f64;
        Self::new(step, n_points)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn mid_index(&self) -> usize {
        (self.n_points - 1) / 2
    }

    pub fn half_span(&self) -> f64 {
        self.mid_index() as f64 * self.step
    }

    pub fn sample(&self, j: usize) -> f64 {
        (j as isize - self.mid_index() as isize) as f64 * self.step
    }

    pub fn samples(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |j| self.sample(j))
    }
}
