//! Numerical laboratory for the singular-value spectra of two linear
//! scattering operators: the normalized Herglotz density-to-wave map on the
//! unit ball and the linearized far-field (Born) map on `[0,1]^n`.
//!
//! The crate computes exact Herglotz spectra through the plane-wave
//! expansion (Bessel product integrals with spherical-harmonic
//! multiplicities), assembles the far-field Gram matrix on a midpoint grid
//! and diagonalizes it, verifies a family of exact integral and algebraic
//! identities (coarea reductions of double sphere integrals, the
//! Hilbert-Schmidt norm of the far-field kernel, a rank-two determinant
//! identity, the large-frequency Agmon-Hormander limit), and fits the
//! stable-plateau / exponential-tail structure of the resulting spectra.
//!
//! Batch evaluations run data-parallel under the default `parallel`
//! feature (rayon) and fall back to sequential loops without it; outputs
//! are identical either way.

// negated comparisons like `!(x >= 0.0)` are deliberate: they reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::manual_is_multiple_of)]

pub mod error;
pub mod farfield;
pub mod herglotz;
pub mod identity;
pub mod linalg;
pub mod quadrature;
pub mod region;
pub mod special;
pub mod spectrum;

mod exec;
pub(crate) mod rng;

pub use error::{Error, Result};
pub use spectrum::{OperatorTag, SpectrumEntry, SpectrumRecord, Truncation};

/// Ambient dimension; all numerics are restricted to R^2 and R^3.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn n(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    /// Parses 2 or 3.
    pub fn from_n(n: usize) -> Result<Self> {
        match n {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            _ => Err(Error::Domain(format!("dimension must be 2 or 3, got {n}"))),
        }
    }

    /// Surface measure of the unit sphere S^{n-1}.
    pub fn sphere_surface(self) -> f64 {
        match self {
            Dim::Two => 2.0 * std::f64::consts::PI,
            Dim::Three => 4.0 * std::f64::consts::PI,
        }
    }

    /// `(2 pi)^n`.
    pub fn two_pi_pow(self) -> f64 {
        let tp = 2.0 * std::f64::consts::PI;
        match self {
            Dim::Two => tp * tp,
            Dim::Three => tp * tp * tp,
        }
    }

    /// Normalization exponent: `kappa^{(n-1)/2}` relates the normalized and
    /// plain operators in both problems.
    pub fn normalizing_power(self, kappa: f64) -> f64 {
        match self {
            Dim::Two => kappa.sqrt(),
            Dim::Three => kappa,
        }
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.n())
    }
}
