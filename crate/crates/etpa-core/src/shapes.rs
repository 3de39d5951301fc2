//! The amplitude shape library: box, Gaussian, sinc, and seeded random
//! amplitudes on a bounded support.
//!
//! All constructors return square-normalized amplitudes in the dω/2π measure,
//! centered on the grid center (rotating frame).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amplitude::SpectralAmplitude1D;
use crate::error::{EtpaError, Result};
use crate::grid::FrequencyGrid;

/// sin(x)/x with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Locate the symmetric support window `center ± half_width`, requiring the
/// edges to land exactly on grid samples.
fn aligned_support(grid: &FrequencyGrid, half_width: f64) -> Result<(usize, usize)> {
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(EtpaError::InvalidParameter(format!(
            "support half-width must be positive, got {half_width}"
        )));
    }
    let m = half_width / grid.step();
    let rounded = m.round();
    if (m - rounded).abs() > 1e-9 * m.max(1.0) || rounded < 1.0 {
        return Err(EtpaError::GridAlignment(format!(
            "support edge ±{half_width} is not aligned with the grid step {}",
            grid.step()
        )));
    }
    let mid = grid.mid_index();
    let k = rounded as usize;
    if k > mid {
        return Err(EtpaError::GridAlignment(format!(
            "support half-width {half_width} exceeds the grid half-span {}",
            grid.half_span()
        )));
    }
    Ok((mid - k, mid + k))
}

/// Flat-top amplitude sqrt(π/Ω) on `[-Ω, Ω]`, zero outside.
///
/// Edges must fall exactly on grid samples; together with the half-weight
/// edge quadrature this makes the normalization, the time-domain peak
/// sqrt(Ω/π), and the Cauchy-Schwarz saturation value Ω/π exact on the grid.
pub fn box_spectrum(grid: &FrequencyGrid, half_width: f64) -> Result<SpectralAmplitude1D> {
    let (lo, hi) = aligned_support(grid, half_width)?;
    let height = (std::f64::consts::PI / half_width).sqrt();
    let values: Vec<Complex64> = (0..grid.n_points())
        .map(|k| {
            if k >= lo && k <= hi {
                Complex64::new(height, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    SpectralAmplitude1D::with_support(*grid, values, lo, hi)
}

/// Gaussian amplitude whose intensity |ψ|² has rms width `rms_width`,
/// numerically normalized on the grid.
pub fn gaussian_spectrum(grid: &FrequencyGrid, rms_width: f64) -> Result<SpectralAmplitude1D> {
    if !(rms_width.is_finite() && rms_width > 0.0) {
        return Err(EtpaError::InvalidParameter(format!(
            "gaussian rms width must be positive, got {rms_width}"
        )));
    }
    let amp = SpectralAmplitude1D::from_fn(*grid, |z| {
        Complex64::new((-z * z / (4.0 * rms_width * rms_width)).exp(), 0.0)
    });
    amp.normalized()
}

/// Sinc amplitude ψ(z) ∝ sinc(z/scale), numerically normalized on the grid.
pub fn sinc_spectrum(grid: &FrequencyGrid, scale: f64) -> Result<SpectralAmplitude1D> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(EtpaError::InvalidParameter(format!(
            "sinc scale must be positive, got {scale}"
        )));
    }
    let amp = SpectralAmplitude1D::from_fn(*grid, |z| Complex64::new(sinc(z / scale), 0.0));
    amp.normalized()
}

/// Seeded random smooth complex amplitude supported on `[-Ω, Ω]`.
///
/// The amplitude is a low-order trigonometric series on the support, so it is
/// smooth but otherwise arbitrary (including nonzero edge values and, unless
/// `even_only`, no particular parity). Deterministic for a given seed.
pub fn random_spectrum_on(
    grid: &FrequencyGrid,
    half_width: f64,
    seed: u64,
    even_only: bool,
) -> Result<SpectralAmplitude1D> {
    let (lo, hi) = aligned_support(grid, half_width)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_harmonics = 6;
    let mut cos_coef = Vec::with_capacity(n_harmonics);
    let mut sin_coef = Vec::with_capacity(n_harmonics);
    for _ in 0..n_harmonics {
        cos_coef.push(Complex64::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ));
        sin_coef.push(Complex64::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ));
    }
    let values: Vec<Complex64> = (0..grid.n_points())
        .map(|k| {
            if k < lo || k > hi {
                return Complex64::new(0.0, 0.0);
            }
            let u = grid.offset(k) / half_width; // in [-1, 1]
            let mut acc = Complex64::new(0.0, 0.0);
            for (h, c) in cos_coef.iter().enumerate() {
                acc += c * (h as f64 * std::f64::consts::PI * u).cos();
            }
            if !even_only {
                for (h, s) in sin_coef.iter().enumerate() {
                    acc += s * ((h + 1) as f64 * std::f64::consts::PI * u).sin();
                }
            }
            acc
        })
        .collect();
    SpectralAmplitude1D::with_support(*grid, values, lo, hi)?.normalized()
}

/// Convenience: a grid of `n_points` spanning `margin` times the box
/// half-width, adjusted so the box edges land exactly on samples.
pub fn grid_for_box(
    center: f64,
    half_width: f64,
    n_points: usize,
    margin: f64,
) -> Result<FrequencyGrid> {
    if !(margin.is_finite() && margin > 1.0) {
        return Err(EtpaError::InvalidParameter(format!(
            "margin must exceed 1, got {margin}"
        )));
    }
    if n_points < 3 || n_points % 2 == 0 {
        return Err(EtpaError::InvalidParameter(format!(
            "grid needs an odd point count >= 3, got {n_points}"
        )));
    }
    let mid = (n_points - 1) / 2;
    // Samples inside the box on each side of center.
    let k = ((mid as f64) / margin).floor().max(1.0) as usize;
    let step = half_width / k as f64;
    FrequencyGrid::new(center, step, n_points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn box_requires_aligned_edges() {
        let grid = FrequencyGrid::new(0.0, 0.25, 101).unwrap();
        assert!(box_spectrum(&grid, 1.0).is_ok());
        assert!(matches!(
            box_spectrum(&grid, 1.1),
            Err(EtpaError::GridAlignment(_))
        ));
        assert!(matches!(
            box_spectrum(&grid, 100.0),
            Err(EtpaError::GridAlignment(_))
        ));
    }

    #[test]
    fn box_is_normalized_and_flat() {
        let grid = grid_for_box(0.0, 2.0, 801, 1.3).unwrap();
        let b = box_spectrum(&grid, 2.0).unwrap();
        assert_relative_eq!(b.norm_sq(), 1.0, max_relative = 1e-12);
        let mid = grid.mid_index();
        assert_relative_eq!(b.values()[mid].re, (PI / 2.0).sqrt(), max_relative = 1e-12);
        assert_eq!(b.support_half_width(), Some(2.0));
    }

    #[test]
    fn gaussian_moments_match_requested_width() {
        let grid = FrequencyGrid::spanning(0.0, 10.0, 2001).unwrap();
        let g = gaussian_spectrum(&grid, 1.5).unwrap();
        let second = g.abs_sq_integral_weighted_by(|z| z * z);
        assert_relative_eq!(second.sqrt(), 1.5, max_relative = 1e-9);
    }

    #[test]
    fn sinc_zero_crossings_on_scale_multiples() {
        let grid = FrequencyGrid::spanning(0.0, 20.0, 4001).unwrap();
        let s = sinc_spectrum(&grid, 1.0).unwrap();
        let k = grid.index_of_offset(PI, 1e-6);
        // π is not a sample here, but sinc(π) itself is zero; check via fn.
        assert!(k.is_none() || s.values()[k.unwrap()].norm() < 1e-9);
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(PI).abs() < 1e-15);
    }

    #[test]
    fn random_spectrum_is_deterministic_and_normalized() {
        let grid = grid_for_box(0.0, 1.0, 501, 1.2).unwrap();
        let a = random_spectrum_on(&grid, 1.0, 42, false).unwrap();
        let b = random_spectrum_on(&grid, 1.0, 42, false).unwrap();
        assert_eq!(a.values(), b.values());
        assert_relative_eq!(a.norm_sq(), 1.0, max_relative = 1e-12);
        let c = random_spectrum_on(&grid, 1.0, 43, false).unwrap();
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn random_even_spectrum_is_even() {
        let grid = grid_for_box(0.0, 1.0, 501, 1.2).unwrap();
        let a = random_spectrum_on(&grid, 1.0, 7, true).unwrap();
        let n = grid.n_points();
        for k in 0..n {
            let diff = (a.values()[k] - a.values()[n - 1 - k]).norm();
            assert!(diff < 1e-12);
        }
    }
}
