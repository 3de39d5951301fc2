//! Physical constants and unit-tagged quantities.
//!
//! Quantities that cross module boundaries carry a newtype naming their SI
//! unit, with arithmetic defined only for the dimensionally valid
//! compositions this crate needs. Mixing units is a type error:
//!
//! ```compile_fail
//! use etpa_core::units::{Seconds, SquareMeters};
//! let _ = Seconds(1.0) + SquareMeters(2.0);
//! ```
//!
//! ```compile_fail
//! use etpa_core::units::{CrossSection2P, Seconds};
//! // A two-photon cross section divided by a time is not an area.
//! fn wants_area(_: etpa_core::units::SquareMeters) {}
//! wants_area(CrossSection2P(1e-58) / Seconds(1.0));
//! ```

use serde::{Deserialize, Serialize};

/// Exact and CODATA-fixed constants, embedded so golden numbers reproduce.
pub mod constants {
    /// Reduced Planck constant, J·s.
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Speed of light in vacuum, m/s (exact).
    pub const C_LIGHT: f64 = 299_792_458.0;
    /// Vacuum permittivity, F/m.
    pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
    /// Avogadro constant, 1/mol (exact).
    pub const AVOGADRO: f64 = 6.022_140_76e23;
    /// One Goppert-Mayer unit of two-photon cross section, m⁴·s.
    pub const GM_IN_M4_S: f64 = 1e-58;
}

macro_rules! quantity {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
        pub struct $name(pub f64);

        impl $name {
            pub fn value(self) -> f64 {
                self.0
            }
        }

        impl std::ops::Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                Self(self.0 + rhs.0)
            }
        }

        impl std::ops::Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                Self(self.0 - rhs.0)
            }
        }

        impl std::ops::Mul<f64> for $name {
            type Output = Self;
            fn mul(self, rhs: f64) -> Self {
                Self(self.0 * rhs)
            }
        }

        impl std::ops::Mul<$name> for f64 {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                $name(self * rhs.0)
            }
        }

        impl std::ops::Div<f64> for $name {
            type Output = Self;
            fn div(self, rhs: f64) -> Self {
                Self(self.0 / rhs)
            }
        }

        impl std::ops::Div<$name> for $name {
            type Output = f64;
            fn div(self, rhs: $name) -> f64 {
                self.0 / rhs.0
            }
        }
    };
}

quantity!(
    /// Time in seconds.
    Seconds
);
quantity!(
    /// Ordinary frequency in Hz (cycles per second).
    Hertz
);
quantity!(
    /// Angular frequency or rate in rad/s.
    RadPerSec
);
quantity!(
    /// Length in meters.
    Meters
);
quantity!(
    /// Area in m².
    SquareMeters
);
quantity!(
    /// Volume in m³.
    CubicMeters
);
quantity!(
    /// Area-time in m²·s, the intermediate σ⁽²⁾/A₀.
    SquareMeterSeconds
);
quantity!(
    /// Two-photon absorption cross section in m⁴·s.
    CrossSection2P
);

impl CrossSection2P {
    pub fn from_gm(gm: f64) -> Self {
        Self(gm * constants::GM_IN_M4_S)
    }

    pub fn as_gm(self) -> f64 {
        self.0 / constants::GM_IN_M4_S
    }
}

impl Seconds {
    pub fn recip(self) -> Hertz {
        Hertz(1.0 / self.0)
    }
}

impl Hertz {
    pub fn recip(self) -> Seconds {
        Seconds(1.0 / self.0)
    }

    pub fn to_rad_per_sec(self) -> RadPerSec {
        RadPerSec(self.0 * std::f64::consts::TAU)
    }
}

impl RadPerSec {
    pub fn to_hertz(self) -> Hertz {
        Hertz(self.0 / std::f64::consts::TAU)
    }
}

// The dimensional compositions the rate formulas rely on.

/// m⁴s × Hz = m⁴ (folded to m²·m² as an area pair is never needed alone),
/// realized here as m⁴s / s.
impl std::ops::Mul<Hertz> for CrossSection2P {
    type Output = QuarticMeters;
    fn mul(self, rhs: Hertz) -> QuarticMeters {
        QuarticMeters(self.0 * rhs.0)
    }
}

impl std::ops::Mul<RadPerSec> for SquareMeterSeconds {
    type Output = SquareMeters;
    fn mul(self, rhs: RadPerSec) -> SquareMeters {
        SquareMeters(self.0 * rhs.0)
    }
}

impl std::ops::Div<SquareMeters> for CrossSection2P {
    type Output = SquareMeterSeconds;
    fn div(self, rhs: SquareMeters) -> SquareMeterSeconds {
        SquareMeterSeconds(self.0 / rhs.0)
    }
}

impl std::ops::Div<Seconds> for SquareMeterSeconds {
    type Output = SquareMeters;
    fn div(self, rhs: Seconds) -> SquareMeters {
        SquareMeters(self.0 / rhs.0)
    }
}

quantity!(
    /// m⁴, the product of a two-photon cross section and a bandwidth.
    QuarticMeters
);

impl std::ops::Div<SquareMeters> for QuarticMeters {
    type Output = SquareMeters;
    fn div(self, rhs: SquareMeters) -> SquareMeters {
        SquareMeters(self.0 / rhs.0)
    }
}

impl std::ops::Mul<Seconds> for RadPerSec {
    type Output = f64;
    fn mul(self, rhs: Seconds) -> f64 {
        self.0 * rhs.0
    }
}

impl std::ops::Mul<Meters> for SquareMeters {
    type Output = CubicMeters;
    fn mul(self, rhs: Meters) -> CubicMeters {
        CubicMeters(self.0 * rhs.0)
    }
}
