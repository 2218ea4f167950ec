//! Numerical toolkit for relativistic Schrödinger operators
//! (-Δ + m²)^s - a(x/|x|) |x|^{-2s} with singular homogeneous potentials.
//!
//! The crate computes the first eigenvalue μ₁(a) of the weighted angular
//! problem on the upper half-sphere, classifies essential self-adjointness
//! against the sharp threshold, evaluates the fractional operator on radial
//! profiles through dual representations, verifies the Bessel-kernel
//! extension identities, and builds the explicit L² witness function of the
//! supercritical regime.
//!
//! Entry points by theme:
//! - [`specfun`]: Gamma, K_ν, I_ν, the θ profile, κ_s.
//! - [`angular`]: μ₁ solvers and the closed-form Gamma map λ(α).
//! - [`classifier`]: the self-adjointness decision and decay exponents.
//! - [`fracops`]: (-Δ+c)^s on radial functions, singular integral, Kelvin.
//! - [`extension`]: Bessel kernel, extension of radial data, flux checks.
//! - [`witness`]: the explicit non-self-adjointness witness.
//! - [`verify`]: runnable check suites mirroring the library's guarantees.

pub mod angular;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod extension;
pub mod fracops;
pub mod linalg;
pub mod quad;
pub mod specfun;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};

/// Operator parameters: dimension, fractional order, mass, and coupling.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub dim: usize,
    pub s: f64,
    pub mass: f64,
    pub coupling: angular::Coupling,
}

/// Surface area of the unit sphere S^{n-1} in R^n.
pub fn sphere_area(n: usize) -> f64 {
    let nf = n as f64;
    2.0 * std::f64::consts::PI.powf(0.5 * nf)
        / specfun::gamma(0.5 * nf).expect("gamma(n/2) is finite for n >= 1")
}
