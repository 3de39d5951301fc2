//! Numerical toolkit for two-photon absorption driven by time-frequency-
//! entangled photon pairs.
//!
//! The crate is organized around one pipeline:
//!
//! - [`grid`], [`amplitude`], [`shapes`]: sampling axes, quadrature under the
//!   dω/2π measure, the direct frequency→time transform, and the amplitude
//!   shape library.
//! - [`lineshape`], [`jsa`]: the Lorentzian two-photon line and joint
//!   spectral amplitude models (factored, downconversion-style), plus
//!   exchange symmetrization and CSV export.
//! - [`overlap`]: the antidiagonal projection, the spectral overlap factor η
//!   with its narrow/broad factorization and bounds, the entanglement time,
//!   and the coherent-state comparison path.
//! - [`conventions`]: peak-normalized bandwidth/duration conventions.
//! - [`units`], [`rates`]: physical constants, unit-tagged quantities, cross
//!   sections, per-pulse probabilities, and the quantum enhancement factor.
//! - [`feasibility`]: the end-to-end detectability estimate for a dye
//!   solution scenario.
//!
//! Everything is pure and deterministic; data-parallel inner loops use rayon
//! when the default `parallel` feature is enabled and fall back to
//! sequential iteration without it, producing bit-identical results either
//! way.

pub mod amplitude;
pub mod conventions;
pub mod error;
pub mod feasibility;
pub mod grid;
pub mod jsa;
pub mod lineshape;
pub mod overlap;
mod parallel;
pub mod rates;
pub mod shapes;
pub mod units;

pub use error::{EtpaError, Result};
