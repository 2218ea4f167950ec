//! Self-contained special functions: Gamma, log-Gamma, modified Bessel
//! functions of real order, and the degenerate-diffusion profile θ.
//!
//! Supported parameter box: s in [0.05, 0.95], |nu| <= 50, arguments in
//! [1e-6, 100]. Inputs outside the box raise range errors rather than
//! silently degrading.

mod bessel;
mod gamma;

pub use bessel::{
    bessel_i, bessel_i_derivative, bessel_k, bessel_k_derivative, BesselOrder, MAX_ARG, MAX_ORDER,
    MIN_ARG,
};
pub use gamma::{gamma, log_gamma};

use crate::error::{Error, Result};

pub const S_MIN: f64 = 0.05;
pub const S_MAX: f64 = 0.95;

/// Validates the fractional order s against the supported box.
pub fn check_s(s: f64) -> Result<()> {
    if !(S_MIN..=S_MAX).contains(&s) {
        return Err(Error::Range(format!(
            "fractional order s = {s} outside supported [{S_MIN}, {S_MAX}]"
        )));
    }
    Ok(())
}

/// κ_s = Γ(1-s) / (2^{2s-1} Γ(s)), the flux normalization constant.
pub fn kappa_s(s: f64) -> Result<f64> {
    check_s(s)?;
    Ok(gamma(1.0 - s)? / (2f64.powf(2.0 * s - 1.0) * gamma(s)?))
}

/// θ(r) = (2/Γ(s)) (r/2)^s K_s(r), the profile solving
/// θ'' + ((1-2s)/r) θ' - θ = 0 with θ(0) = 1.
pub fn theta_profile(s: f64, r: f64) -> Result<f64> {
    check_s(s)?;
    if !r.is_finite() || r < 0.0 {
        return Err(Error::Domain(format!("theta argument must be >= 0, got {r}")));
    }
    if r == 0.0 {
        return Ok(1.0);
    }
    let pre = 2.0 / gamma(s)? * (0.5 * r).powf(s);
    // below the Bessel quadrature box, the dual ascending series is exact
    let k = if r < MIN_ARG {
        bessel::k_small_series(s, r)?
    } else {
        bessel_k(BesselOrder::new(s)?, r)?
    };
    Ok(pre * k)
}

/// θ'(r) = -(2/Γ(s)) (r/2)^s K_{s-1}(r), from d/dr [r^s K_s(r)] = -r^s K_{s-1}(r).
pub fn theta_profile_derivative(s: f64, r: f64) -> Result<f64> {
    check_s(s)?;
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::Domain(format!("theta' argument must be > 0, got {r}")));
    }
    let pre = 2.0 / gamma(s)? * (0.5 * r).powf(s);
    let k = if r < MIN_ARG {
        bessel::k_small_series((s - 1.0).abs(), r)?
    } else {
        bessel_k(BesselOrder::new(s - 1.0)?, r)?
    };
    Ok(-pre * k)
}
