//! First eigenvalue μ₁(a) of the weighted angular problem on the upper
//! half-sphere S^N_+ with weight θ₁^{1-2s} and equator coupling κ_s a, plus
//! the closed-form Gamma map λ(α) and its inverse.
//!
//! For zonal data the problem reduces, in the variable u = θ₁, to
//!
//!   minimize [∫₀¹ u^{1-2s}(1-u²)^{N/2} ψ'(u)² du - κ_s a ψ(0)²]
//!          / [∫₀¹ u^{1-2s}(1-u²)^{(N-2)/2} ψ(u)² du],
//!
//! which the solver discretizes by a spectral Galerkin method in t = u².

mod basis;
mod solver;

pub use solver::{mu1_constant, mu1_fourier, Eigenfunction, FourierPsi, ZonalPsi};

use crate::error::{Error, Result};
use crate::specfun::{check_s, gamma};
use num_complex::Complex64;
use std::path::Path;

/// Equator coupling: a constant for any dimension, or a Fourier series on
/// the circle for N = 2.
#[derive(Debug, Clone)]
pub enum Coupling {
    Constant(f64),
    Fourier(FourierCoupling),
}

impl Coupling {
    pub fn constant(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidCoupling(format!("non-finite constant {value}")));
        }
        Ok(Coupling::Constant(value))
    }
}

/// Hermitian Fourier coefficients â_k of a real coupling a(τ) = Σ â_k e^{ikτ}.
/// Only k >= 0 is stored; â_{-k} = conj(â_k).
#[derive(Debug, Clone)]
pub struct FourierCoupling {
    coeffs: Vec<Complex64>,
}

impl FourierCoupling {
    /// Builds from (k, â_k) pairs, applying Hermitian completion. Pairs for
    /// both k and -k must be consistent; â_0 must be real.
    pub fn new(entries: &[(i32, Complex64)]) -> Result<Self> {
        let max_k = entries.iter().map(|e| e.0.unsigned_abs()).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); max_k + 1];
        let mut seen = vec![false; max_k + 1];
        for &(k, v) in entries {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidCoupling(format!("non-finite coefficient at k={k}")));
            }
            let idx = k.unsigned_abs() as usize;
            let canon = if k >= 0 { v } else { v.conj() };
            if seen[idx] {
                let prev = coeffs[idx];
                if (prev - canon).norm() > 1e-12 * (1.0 + prev.norm()) {
                    return Err(Error::InvalidCoupling(format!(
                        "inconsistent Hermitian pair at |k| = {idx}"
                    )));
                }
            }
            coeffs[idx] = canon;
            seen[idx] = true;
        }
        if coeffs[0].im.abs() > 1e-12 * (1.0 + coeffs[0].re.abs()) {
            return Err(Error::InvalidCoupling(
                "zero mode must be real for a real coupling".into(),
            ));
        }
        coeffs[0].im = 0.0;
        Ok(Self { coeffs })
    }

    pub fn from_mean(mean: f64) -> Result<Self> {
        Self::new(&[(0, Complex64::new(mean, 0.0))])
    }

    /// â_k for any integer k (zero beyond the stored range).
    pub fn coeff(&self, k: i32) -> Complex64 {
        let idx = k.unsigned_abs() as usize;
        let v = self.coeffs.get(idx).copied().unwrap_or(Complex64::new(0.0, 0.0));
        if k >= 0 {
            v
        } else {
            v.conj()
        }
    }

    pub fn max_mode(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// a(τ) pointwise.
    pub fn eval(&self, tau: f64) -> f64 {
        let mut acc = self.coeffs[0].re;
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let kf = k as f64;
            acc += 2.0 * (c.re * (kf * tau).cos() - c.im * (kf * tau).sin());
        }
        acc
    }

    /// Parses the plain-text format: one coefficient per line, "k re im",
    /// with '#' comments. Hermitian completion is applied on load.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::InvalidCoupling(format!(
                    "line {}: expected 'k re im', got '{line}'",
                    lineno + 1
                )));
            }
            let k: i32 = fields[0].parse().map_err(|_| {
                Error::InvalidCoupling(format!("line {}: bad mode index", lineno + 1))
            })?;
            let re: f64 = fields[1].parse().map_err(|_| {
                Error::InvalidCoupling(format!("line {}: bad real part", lineno + 1))
            })?;
            let im: f64 = fields[2].parse().map_err(|_| {
                Error::InvalidCoupling(format!("line {}: bad imaginary part", lineno + 1))
            })?;
            entries.push((k, Complex64::new(re, im)));
        }
        if entries.is_empty() {
            return Err(Error::InvalidCoupling("empty coupling file".into()));
        }
        Self::new(&entries)
    }
}

/// Galerkin discretization parameters.
#[derive(Debug, Clone)]
pub struct SpectralConfig {
    /// Polynomial degree cut per branch.
    pub basis_size: usize,
    /// Gauss–Jacobi node count for assembly integrals.
    pub quad_points: usize,
    /// Angular modes kept on each side for N = 2 Fourier couplings.
    pub fourier_modes: usize,
    /// Convergence target for the basis-refinement study.
    pub tolerance: f64,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self { basis_size: 64, quad_points: 136, fourier_modes: 4, tolerance: 1e-8 }
    }
}

impl SpectralConfig {
    pub fn with_basis(basis_size: usize) -> Self {
        Self {
            basis_size,
            quad_points: 2 * basis_size + 8,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.basis_size < 4 {
            return Err(Error::Range(format!(
                "basis_size must be >= 4, got {}",
                self.basis_size
            )));
        }
        if self.quad_points < 2 * self.basis_size + 8 {
            return Err(Error::Range(format!(
                "quad_points must be >= 2*basis_size + 8 = {}, got {}",
                2 * self.basis_size + 8,
                self.quad_points
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Range("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Solver output: eigenvalue, eigenfunction, equator trace, diagnostics.
#[derive(Debug, Clone)]
pub struct Mu1Result {
    pub mu1: f64,
    /// Equator value of the L²(θ₁^{1-2s})-normalized, sign-positive
    /// eigenfunction (its zonal mean for Fourier couplings).
    pub trace: f64,
    pub converged: bool,
    pub est_error: f64,
    pub psi: Eigenfunction,
}

impl Mu1Result {
    pub fn coeffs(&self) -> &[f64] {
        self.psi.coeffs()
    }
}

pub(crate) fn check_dim(n: usize, s: f64) -> Result<()> {
    check_s(s)?;
    if n == 0 {
        return Err(Error::Range("dimension N must be >= 1".into()));
    }
    if n as f64 <= 2.0 * s {
        return Err(Error::Range(format!("need N > 2s, got N = {n}, s = {s}")));
    }
    Ok(())
}

/// λ(α) = 2^{2s} Γ((N+2s+2α)/4) Γ((N+2s-2α)/4) / [Γ((N-2s-2α)/4) Γ((N-2s+2α)/4)]
/// for α in (0, (N-2s)/2). Decreasing in α; λ(α) is the constant coupling
/// whose μ₁ equals α² - ((N-2s)/2)².
pub fn lambda_of_alpha(n: usize, s: f64, alpha: f64) -> Result<f64> {
    check_dim(n, s)?;
    let beta = 0.5 * (n as f64 - 2.0 * s);
    if !(alpha > 0.0 && alpha < beta) {
        return Err(Error::Range(format!(
            "alpha must lie in (0, {beta}), got {alpha}"
        )));
    }
    gamma_map(n, s, alpha)
}

// The Gamma quotient, valid wherever the arguments avoid poles; callers
// restrict the range.
fn gamma_map(n: usize, s: f64, nu: f64) -> Result<f64> {
    let nf = n as f64;
    let num = gamma((nf + 2.0 * s + 2.0 * nu) / 4.0)? * gamma((nf + 2.0 * s - 2.0 * nu) / 4.0)?;
    let den = gamma((nf - 2.0 * s - 2.0 * nu) / 4.0)? * gamma((nf - 2.0 * s + 2.0 * nu) / 4.0)?;
    Ok(2f64.powf(2.0 * s) * num / den)
}

/// The sharp constant-coupling threshold λ(s) = 2^{2s} Γ((N+4s)/4)/Γ((N-4s)/4).
/// Defined for N > 4s.
pub fn critical_coupling(n: usize, s: f64) -> Result<f64> {
    check_dim(n, s)?;
    let nf = n as f64;
    if nf <= 4.0 * s {
        return Err(Error::Range(format!(
            "critical coupling needs N > 4s (N = {n}, s = {s})"
        )));
    }
    Ok(2f64.powf(2.0 * s) * gamma((nf + 4.0 * s) / 4.0)? / gamma((nf - 4.0 * s) / 4.0)?)
}

/// Largest constant coupling with μ₁(a) + ((N-2s)/2)² > 0: the α -> 0 limit
/// of λ(α).
pub fn hardy_coupling(n: usize, s: f64) -> Result<f64> {
    check_dim(n, s)?;
    let nf = n as f64;
    let q = gamma((nf + 2.0 * s) / 4.0)? / gamma((nf - 2.0 * s) / 4.0)?;
    Ok(2f64.powf(2.0 * s) * q * q)
}

/// Inverse of `lambda_of_alpha` by bisection over the decreasing map.
/// Requires 0 < lam < hardy_coupling(N, s).
pub fn alpha_of_lambda(n: usize, s: f64, lam: f64) -> Result<f64> {
    check_dim(n, s)?;
    let top = hardy_coupling(n, s)?;
    if !(lam > 0.0 && lam < top) {
        return Err(Error::Range(format!(
            "lambda must lie in (0, {top:.6e}), got {lam}"
        )));
    }
    let beta = 0.5 * (n as f64 - 2.0 * s);
    bisect_decreasing(|nu| gamma_map(n, s, nu), lam, beta * 1e-14, beta * (1.0 - 1e-14))
}

fn bisect_decreasing<F: Fn(f64) -> Result<f64>>(
    f: F,
    target: f64,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64> {
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if !((f_lo - target) >= 0.0 && (f_hi - target) <= 0.0) {
        return Err(Error::Range(format!(
            "target {target:.6e} not bracketed by [{:.6e}, {:.6e}]",
            f_hi, f_lo
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Closed-form μ₁ for constant couplings through the Gamma map: inverts
/// a = λ(ν) with μ₁ = ν² - ((N-2s)/2)². Returns None where the real-Gamma
/// inversion does not reach (a at or beyond the positivity endpoint).
pub fn closed_form_mu1(n: usize, s: f64, a: f64) -> Result<Option<f64>> {
    check_dim(n, s)?;
    let beta = 0.5 * (n as f64 - 2.0 * s);
    if a == 0.0 {
        return Ok(Some(0.0));
    }
    let top = hardy_coupling(n, s)?;
    if a > 0.0 {
        if a >= top {
            // μ₁ <= -((N-2s)/2)²: positivity fails, no real order ν
            return Ok(None);
        }
        let nu = bisect_decreasing(|nu| gamma_map(n, s, nu), a, beta * 1e-14, beta * (1.0 - 1e-14))?;
        return Ok(Some(nu * nu - beta * beta));
    }
    // a < 0: the same Gamma quotient continues, decreasing from 0 at ν = β
    // to -∞ as ν -> β + 2s (a numerator pole crosses zero there).
    let lo = beta + 2.0 * s * 1e-12;
    let hi = beta + 2.0 * s * (1.0 - 1e-12);
    let nu = bisect_decreasing(|nu| gamma_map(n, s, nu), a, lo, hi)?;
    Ok(Some(nu * nu - beta * beta))
}
