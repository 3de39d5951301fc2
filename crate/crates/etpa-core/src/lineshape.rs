//! Peak-normalized Lorentzian line shape for a homogeneously broadened
//! two-photon transition.

use serde::{Deserialize, Serialize};

use crate::error::{EtpaError, Result};

/// L(x) = γ² / (γ² + x²) with transition frequency ω_fg and half linewidth γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzianLine {
    omega_fg: f64,
    gamma_fg: f64,
}

impl LorentzianLine {
    pub fn new(omega_fg: f64, gamma_fg: f64) -> Result<Self> {
        if !(gamma_fg.is_finite() && gamma_fg > 0.0) {
            return Err(EtpaError::InvalidParameter(format!(
                "half linewidth must be positive, got {gamma_fg}"
            )));
        }
        if !omega_fg.is_finite() || omega_fg < 0.0 {
            return Err(EtpaError::InvalidParameter(format!(
                "transition frequency must be non-negative, got {omega_fg}"
            )));
        }
        Ok(Self { omega_fg, gamma_fg })
    }

    pub fn omega_fg(&self) -> f64 {
        self.omega_fg
    }

    pub fn gamma_fg(&self) -> f64 {
        self.gamma_fg
    }

    /// L at a detuning `x` from exact two-photon resonance. L(0) = 1.
    pub fn eval_detuning(&self, x: f64) -> f64 {
        let g2 = self.gamma_fg * self.gamma_fg;
        g2 / (g2 + x * x)
    }

    /// L(ω_fg − ω − ω̃) for a pair of absolute frequencies summing to
    /// `omega_sum`.
    pub fn eval_at_sum(&self, omega_sum: f64) -> f64 {
        self.eval_detuning(self.omega_fg - omega_sum)
    }

    /// Closed form ∫ₐᵇ L(x) dx/2π.
    pub fn measure_integral(&self, a: f64, b: f64) -> f64 {
        self.gamma_fg * ((b / self.gamma_fg).atan() - (a / self.gamma_fg).atan())
            / std::f64::consts::TAU
    }

    /// Closed form one-sided tail ∫ₐ^∞ L(x) dx (plain dx, no measure);
    /// used as an analytic truncation correction for wide-span integrals.
    pub fn tail_integral_plain(&self, a: f64) -> f64 {
        self.gamma_fg * (std::f64::consts::FRAC_PI_2 - (a / self.gamma_fg).atan())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn peak_is_one() {
        let l = LorentzianLine::new(10.0, 2.0).unwrap();
        assert_eq!(l.eval_detuning(0.0), 1.0);
        assert_eq!(l.eval_at_sum(10.0), 1.0);
    }

    #[test]
    fn half_width_point() {
        let l = LorentzianLine::new(10.0, 2.0).unwrap();
        assert_relative_eq!(l.eval_detuning(2.0), 0.5);
    }

    #[test]
    fn direct_arithmetic_point() {
        // γ = 2, x = 4: 4 / (4 + 16) = 0.2.
        let l = LorentzianLine::new(0.0, 2.0).unwrap();
        assert_relative_eq!(l.eval_detuning(4.0), 0.2);
    }

    #[test]
    fn rejects_nonpositive_width() {
        assert!(LorentzianLine::new(1.0, 0.0).is_err());
        assert!(LorentzianLine::new(1.0, -1.0).is_err());
    }

    #[test]
    fn measure_integral_full_line() {
        // ∫ L dx/2π over the whole line is γ/2.
        let l = LorentzianLine::new(0.0, 3.0).unwrap();
        let v = l.measure_integral(-1e9, 1e9);
        assert_relative_eq!(v, 1.5, max_relative = 1e-8);
    }

    #[test]
    fn tail_matches_quadrature() {
        let l = LorentzianLine::new(0.0, 1.0).unwrap();
        // Trapezoid of L over [5, 500] plus the analytic tail beyond 500
        // should equal the analytic tail beyond 5.
        let n = 200_000;
        let step = (500.0 - 5.0) / n as f64;
        let mut acc = 0.0;
        for k in 0..=n {
            let x = 5.0 + k as f64 * step;
            let w = if k == 0 || k == n { 0.5 } else { 1.0 };
            acc += w * l.eval_detuning(x);
        }
        let numeric = acc * step + l.tail_integral_plain(500.0);
        assert_relative_eq!(numeric, l.tail_integral_plain(5.0), max_relative = 1e-6);
    }

    proptest! {
        #[test]
        fn in_unit_interval_and_even(gamma in 1e-3f64..1e3, x in -1e6f64..1e6) {
            let l = LorentzianLine::new(0.0, gamma).unwrap();
            let v = l.eval_detuning(x);
            prop_assert!(v > 0.0 && v <= 1.0);
            prop_assert_eq!(v, l.eval_detuning(-x));
        }
    }
}
