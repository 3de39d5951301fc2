//! Peak-normalized bandwidth/duration conventions.
//!
//! The width of a real, non-negative profile is the integral of the profile
//! after dividing by its maximum: B = ∫(dω/2π) F(ω)/F_max in Hz for spectra,
//! T = ∫dt G(t)/G_max in seconds for time profiles. For a square-normalized
//! transform pair this equals the inverse squared peak of the corresponding
//! amplitude.

use serde::Serialize;

use crate::error::{EtpaError, Result};
use crate::lineshape::LorentzianLine;
use crate::shapes::sinc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidthDomain {
    /// dω/2π measure; result in Hz.
    Frequency,
    /// dt measure; result in seconds.
    Time,
}

/// Peak-normalized width of non-negative samples on a uniform grid.
///
/// The samples are peak-normalized internally, then integrated by the
/// trapezoid rule over the given array, so an array that ends exactly at the
/// support edges integrates a flat top exactly.
pub fn width_by_peak_norm(samples: &[f64], step: f64, domain: WidthDomain) -> Result<f64> {
    if samples.len() < 3 {
        return Err(EtpaError::DimensionMismatch(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(EtpaError::InvalidParameter(format!(
            "step must be positive, got {step}"
        )));
    }
    let mut peak = 0.0f64;
    for &v in samples {
        if !v.is_finite() || v < -1e-12 {
            return Err(EtpaError::InvalidParameter(
                "samples must be finite and non-negative".into(),
            ));
        }
        peak = peak.max(v);
    }
    if peak <= 0.0 {
        return Err(EtpaError::DegenerateAmplitude(
            "all-zero profile has no width".into(),
        ));
    }
    let n = samples.len();
    let mut acc = 0.0;
    for (k, &v) in samples.iter().enumerate() {
        let w = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
        acc += w * v;
    }
    let plain = acc * step / peak;
    Ok(match domain {
        WidthDomain::Frequency => plain / std::f64::consts::TAU,
        WidthDomain::Time => plain,
    })
}

/// One row of the duration-convention table.
#[derive(Debug, Clone, Serialize)]
pub struct ConventionRow {
    pub shape: &'static str,
    pub analytic: f64,
    pub numeric: f64,
    pub rel_error: f64,
}

/// Durations of the four standard peak-normalized profiles with scale σ,
/// each compared against its closed form: flat top of full width σ gives σ;
/// exp(−x²/2σ²) gives √(2π)σ; sinc²(x/σ) gives πσ; σ²/(σ²+x²) gives πσ.
///
/// The Lorentzian row integrates to ±400σ and adds the analytic tail
/// correction σ(π/2 − arctan(a/σ)) per side; the sinc² row spans ±200σ and
/// keeps its slowly converging tails as truncation error.
pub fn duration_table(sigma: f64) -> Result<Vec<ConventionRow>> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(EtpaError::InvalidParameter(format!(
            "scale must be positive, got {sigma}"
        )));
    }
    let mut rows = Vec::with_capacity(4);

    // Flat top: sample exactly the support [-σ/2, σ/2].
    {
        let n = 2001;
        let step = sigma / (n as f64 - 1.0);
        let samples = vec![1.0; n];
        let numeric = width_by_peak_norm(&samples, step, WidthDomain::Time)?;
        rows.push(row("box", sigma, numeric));
    }

    // Gaussian over ±12σ: truncation far below the quadrature tolerance.
    {
        let n = 8193;
        let half = 12.0 * sigma;
        let step = 2.0 * half / (n as f64 - 1.0);
        let samples: Vec<f64> = (0..n)
            .map(|k| {
                let x = -half + k as f64 * step;
                (-x * x / (2.0 * sigma * sigma)).exp()
            })
            .collect();
        let numeric = width_by_peak_norm(&samples, step, WidthDomain::Time)?;
        rows.push(row(
            "gaussian",
            (2.0 * std::f64::consts::PI).sqrt() * sigma,
            numeric,
        ));
    }

    // sinc² over ±200σ.
    {
        let n = 65537;
        let half = 200.0 * sigma;
        let step = 2.0 * half / (n as f64 - 1.0);
        let samples: Vec<f64> = (0..n)
            .map(|k| {
                let x = -half + k as f64 * step;
                let s = sinc(x / sigma);
                s * s
            })
            .collect();
        let numeric = width_by_peak_norm(&samples, step, WidthDomain::Time)?;
        rows.push(row("sinc_squared", std::f64::consts::PI * sigma, numeric));
    }

    // Lorentzian over ±400σ plus the analytic tails.
    {
        let n = 65537;
        let half = 400.0 * sigma;
        let step = 2.0 * half / (n as f64 - 1.0);
        let line = LorentzianLine::new(0.0, sigma)?;
        let samples: Vec<f64> = (0..n)
            .map(|k| line.eval_detuning(-half + k as f64 * step))
            .collect();
        let truncated = width_by_peak_norm(&samples, step, WidthDomain::Time)?;
        let numeric = truncated + 2.0 * line.tail_integral_plain(half);
        rows.push(row("lorentzian", std::f64::consts::PI * sigma, numeric));
    }

    Ok(rows)
}

fn row(shape: &'static str, analytic: f64, numeric: f64) -> ConventionRow {
    ConventionRow {
        shape,
        analytic,
        numeric,
        rel_error: (numeric - analytic).abs() / analytic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn flat_top_width_is_exact() {
        let table = duration_table(2.5).unwrap();
        let box_row = &table[0];
        assert_relative_eq!(box_row.numeric, 2.5, max_relative = 1e-14);
    }

    #[test]
    fn gaussian_width_matches_closed_form() {
        let sigma = 1.7;
        let table = duration_table(sigma).unwrap();
        let g = &table[1];
        assert_relative_eq!(g.numeric, (2.0 * PI).sqrt() * sigma, max_relative = 1e-4);
        assert!(g.rel_error < 1e-4);
        // 2.51 σ to the printed precision.
        assert_relative_eq!(g.analytic / sigma, 2.51, epsilon = 0.005);
    }

    #[test]
    fn sinc_squared_width_within_slow_tail_tolerance() {
        let sigma = 0.8;
        let table = duration_table(sigma).unwrap();
        let s = &table[2];
        assert_relative_eq!(s.numeric, PI * sigma, max_relative = 1e-2);
    }

    #[test]
    fn lorentzian_width_with_tail_correction() {
        let sigma = 3.0;
        let table = duration_table(sigma).unwrap();
        let l = &table[3];
        assert_relative_eq!(l.numeric, PI * sigma, max_relative = 1e-3);
    }

    #[test]
    fn all_rows_within_one_percent() {
        for row in duration_table(1.0).unwrap() {
            assert!(row.rel_error < 1e-2, "{}: {}", row.shape, row.rel_error);
        }
    }

    #[test]
    fn frequency_domain_carries_the_measure() {
        // A flat spectrum of full width W rad/s has bandwidth W/2π Hz.
        let n = 101;
        let w = 4.0;
        let step = w / (n as f64 - 1.0);
        let samples = vec![2.0; n];
        let b = width_by_peak_norm(&samples, step, WidthDomain::Frequency).unwrap();
        assert_relative_eq!(b, w / std::f64::consts::TAU, max_relative = 1e-14);
    }

    #[test]
    fn degenerate_profiles_are_rejected() {
        assert!(matches!(
            width_by_peak_norm(&[0.0, 0.0, 0.0], 1.0, WidthDomain::Time),
            Err(EtpaError::DegenerateAmplitude(_))
        ));
        assert!(width_by_peak_norm(&[1.0, -5.0, 1.0], 1.0, WidthDomain::Time).is_err());
        assert!(width_by_peak_norm(&[1.0, 2.0], 1.0, WidthDomain::Time).is_err());
    }
}
