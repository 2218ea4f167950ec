//! Modified Bessel functions K_nu and I_nu of real order.
//!
//! K_nu is evaluated through the integral representation
//! ∫₀^∞ exp(-r cosh t) cosh(nu t) dt with adaptive truncation, switching to
//! the large-argument expansion for r > 30 when that expansion converges.
//! I_nu uses the ascending series, with the large-argument expansion as an
//! accelerator where it is valid. Neither route restricts the order to
//! integers or half-integers.

use crate::error::{Error, Result};
use crate::quad::adaptive_quad_segments;
use crate::specfun::gamma::{gamma, log_gamma};
use std::f64::consts::PI;

pub const MAX_ORDER: f64 = 50.0;
pub const MIN_ARG: f64 = 1e-6;
pub const MAX_ARG: f64 = 100.0;

/// Real order of a modified Bessel function, |nu| <= 50.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() {
            return Err(Error::Domain(format!("Bessel order not finite: {nu}")));
        }
        if nu.abs() > MAX_ORDER {
            return Err(Error::Range(format!(
                "Bessel order |nu| = {} exceeds supported {MAX_ORDER}",
                nu.abs()
            )));
        }
        Ok(Self(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for BesselOrder {
    type Error = Error;
    fn try_from(nu: f64) -> Result<Self> {
        Self::new(nu)
    }
}

fn check_arg(r: f64) -> Result<()> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::Domain(format!("Bessel argument must be positive, got {r}")));
    }
    if !(MIN_ARG..=MAX_ARG).contains(&r) {
        return Err(Error::Range(format!(
            "Bessel argument {r} outside supported [{MIN_ARG:e}, {MAX_ARG}]"
        )));
    }
    Ok(())
}

// log of the dominant half-integrand: nu*t - r*cosh(t).
fn k_log_env(nu: f64, r: f64, t: f64) -> f64 {
    nu * t - r * t.cosh()
}

fn k_integrand(nu: f64, r: f64, t: f64) -> f64 {
    let e = -r * t.cosh();
    let nt = nu * t;
    if nt < 35.0 {
        e.exp() * nt.cosh()
    } else {
        0.5 * ((nt + e).exp() + (e - nt).exp())
    }
}

fn k_quadrature(nu: f64, r: f64) -> Result<f64> {
    // Peak of the log-envelope and overflow pre-check.
    let (t_peak, env_max) = if nu > 0.0 {
        let tp = (nu / r).asinh();
        (tp, nu * tp - (nu * nu + r * r).sqrt())
    } else {
        (0.0, -r)
    };
    if env_max > 700.0 {
        return Err(Error::Overflow(format!("K_{nu}({r}) exceeds f64 range")));
    }
    // Truncate once the envelope has dropped 45 e-folds below its peak.
    let cutoff = env_max - 45.0;
    let mut t_end = t_peak + 1.0;
    while k_log_env(nu, r, t_end) > cutoff {
        t_end += 0.5;
    }
    let bps = if t_peak > 0.0 {
        vec![0.0, t_peak, t_end]
    } else {
        vec![0.0, t_end]
    };
    let q = adaptive_quad_segments(|t| k_integrand(nu, r, t), &bps, 1e-13, 1e-290);
    if !q.value.is_finite() {
        return Err(Error::Overflow(format!("K_{nu}({r})")));
    }
    if !q.converged {
        return Err(Error::NonConvergence {
            what: format!("K_{nu}({r}) quadrature"),
            achieved: q.abs_error / q.value.abs().max(1e-300),
        });
    }
    Ok(q.value)
}

// Large-argument expansion sqrt(pi/2r) e^{-r} [1 + sum a_k(nu)/r^k].
// Returns None when the expansion fails to converge before its terms grow.
fn k_asymptotic(nu: f64, r: f64) -> Option<f64> {
    let four_nu2 = 4.0 * nu * nu;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..=30u32 {
        let kf = k as f64;
        let prev = term.abs();
        term *= (four_nu2 - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * r);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            return Some((PI / (2.0 * r)).sqrt() * (-r).exp() * sum);
        }
        if term.abs() >= prev {
            return None;
        }
    }
    None
}

/// K_nu(r), using K_{-nu} = K_nu for negative orders.
pub fn bessel_k(nu: BesselOrder, r: f64) -> Result<f64> {
    check_arg(r)?;
    let n = nu.value().abs();
    if r > 30.0 {
        if let Some(v) = k_asymptotic(n, r) {
            return Ok(v);
        }
    }
    k_quadrature(n, r)
}

/// K_nu'(r) = -(nu/r) K_nu(r) - K_{nu-1}(r).
pub fn bessel_k_derivative(nu: BesselOrder, r: f64) -> Result<f64> {
    check_arg(r)?;
    let n = nu.value();
    let k_n = bessel_k(nu, r)?;
    let k_nm1 = bessel_k(BesselOrder::new(n - 1.0)?, r)?;
    Ok(-(n / r) * k_n - k_nm1)
}

fn i_series(nu: f64, r: f64) -> Result<f64> {
    // first term (r/2)^nu / Gamma(nu+1), in log form to dodge overflow
    let log_first = nu * (0.5 * r).ln() - log_gamma(nu + 1.0)?;
    if log_first > 700.0 {
        return Err(Error::Overflow(format!("I_{nu}({r})")));
    }
    let mut term = log_first.exp();
    let mut sum = term;
    let q = 0.25 * r * r;
    for k in 0..400u32 {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (kf + 1.0 + nu));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    if !sum.is_finite() {
        return Err(Error::Overflow(format!("I_{nu}({r})")));
    }
    Ok(sum)
}

fn i_asymptotic(nu: f64, r: f64) -> Option<f64> {
    let four_nu2 = 4.0 * nu * nu;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..=30u32 {
        let kf = k as f64;
        let prev = term.abs();
        term *= -(four_nu2 - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * r);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            return Some(r.exp() / (2.0 * PI * r).sqrt() * sum);
        }
        if term.abs() >= prev {
            return None;
        }
    }
    None
}

/// I_nu(r) for nu >= 0 (the orders this crate needs never go negative).
pub fn bessel_i(nu: BesselOrder, r: f64) -> Result<f64> {
    check_arg(r)?;
    let n = nu.value();
    if n < 0.0 {
        return Err(Error::Range(format!(
            "I_nu implemented for nu >= 0 only, got {n}"
        )));
    }
    if r > 20.0 {
        if let Some(v) = i_asymptotic(n, r) {
            return Ok(v);
        }
    }
    i_series(n, r)
}

/// I_nu'(r) = (nu/r) I_nu(r) + I_{nu+1}(r).
pub fn bessel_i_derivative(nu: BesselOrder, r: f64) -> Result<f64> {
    check_arg(r)?;
    let n = nu.value();
    let i_n = bessel_i(nu, r)?;
    let i_np1 = bessel_i(BesselOrder::new(n + 1.0)?, r)?;
    Ok((n / r) * i_n + i_np1)
}

/// Dual ascending series for K_nu at small argument, non-integer nu only.
/// Used by the theta profile below the quadrature box.
pub(crate) fn k_small_series(nu: f64, x: f64) -> Result<f64> {
    let g_pos = gamma(nu)?;
    let g_neg = gamma(-nu)?;
    let q = 0.25 * x * x;
    let mut a = 1.0f64;
    let mut b = 1.0f64;
    let mut sum_a = 1.0f64;
    let mut sum_b = 1.0f64;
    for k in 0..60u32 {
        let kf = k as f64;
        a *= q / ((kf + 1.0) * (kf + 1.0 - nu));
        b *= q / ((kf + 1.0) * (kf + 1.0 + nu));
        sum_a += a;
        sum_b += b;
        if a.abs() < 1e-18 && b.abs() < 1e-18 {
            break;
        }
    }
    let half_x = 0.5 * x;
    Ok(0.5 * (g_pos * half_x.powf(-nu) * sum_a + g_neg * half_x.powf(nu) * sum_b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(nu: f64) -> BesselOrder {
        BesselOrder::new(nu).unwrap()
    }

    #[test]
    fn half_order_closed_forms() {
        // K_{1/2}(r) = sqrt(pi/2r) e^{-r}
        for &r in &[0.3, 1.0, 5.0, 40.0] {
            let exact = (PI / (2.0 * r)).sqrt() * (-r).exp();
            let got = bessel_k(ord(0.5), r).unwrap();
            assert!((got - exact).abs() < 1e-11 * exact, "K_1/2({r}): {got} vs {exact}");
        }
        // I_{1/2}(r) = sqrt(2/(pi r)) sinh(r)
        for &r in &[0.5, 1.0, 3.0, 25.0] {
            let exact = (2.0 / (PI * r)).sqrt() * r.sinh();
            let got = bessel_i(ord(0.5), r).unwrap();
            assert!((got - exact).abs() < 1e-11 * exact, "I_1/2({r}): {got} vs {exact}");
        }
    }

    #[test]
    fn k_one_at_one() {
        // K_1(1) reference value (Abramowitz & Stegun)
        let got = bessel_k(ord(1.0), 1.0).unwrap();
        assert!((got - 0.601_907_230_197_234_6).abs() < 1e-12);
    }

    #[test]
    fn negative_order_symmetry() {
        for &(nu, r) in &[(0.3, 0.7), (1.5, 2.0), (4.2, 11.0), (0.9, 45.0)] {
            let plus = bessel_k(ord(nu), r).unwrap();
            let minus = bessel_k(ord(-nu), r).unwrap();
            assert!((plus - minus).abs() <= 1e-14 * plus.abs());
        }
    }

    #[test]
    fn k_derivative_identity_elementary() {
        // nu = 1/2: K_{-1/2} = K_{1/2}, so K'_{1/2}(2) = -(1/4)K_{1/2}(2) - K_{1/2}(2)
        let r = 2.0;
        let k_half = bessel_k(ord(0.5), r).unwrap();
        let expected = -(0.5 / r) * k_half - k_half;
        let got = bessel_k_derivative(ord(0.5), r).unwrap();
        assert!((got - expected).abs() < 1e-12 * expected.abs());
        // and against the closed form derivative of sqrt(pi/2r) e^{-r}
        let exact = (PI / (2.0 * r)).sqrt() * (-r).exp() * (-1.0 - 0.5 / r);
        assert!((got - exact).abs() < 1e-11 * exact.abs());
    }

    #[test]
    fn small_argument_leading_order() {
        // K_nu(r) ~ (Gamma(nu)/2) (r/2)^{-nu} as r -> 0. The subleading
        // branch is (Gamma(-nu)/Gamma(nu)) (r/2)^{2 nu}, which is small only
        // once (r/2)^{2 nu} is; the bound below accounts for it, so small
        // orders are covered too.
        for &nu in &[0.1, 0.3, 0.5, 1.0, 3.0] {
            let r: f64 = 1e-4;
            let lead = 0.5 * gamma(nu).unwrap() * (0.5 * r).powf(-nu);
            let got = bessel_k(ord(nu), r).unwrap();
            let sub = if nu < 1.0 {
                (gamma(-nu).unwrap() / gamma(nu).unwrap()).abs() * (0.5 * r).powf(2.0 * nu)
            } else {
                0.0
            };
            let bound = 1e-3 + 1.25 * sub;
            assert!(
                (got / lead - 1.0).abs() < bound,
                "nu={nu}: ratio {} (bound {bound:.3e})",
                got / lead
            );
        }
        // I_nu(r) Gamma(nu+1) (r/2)^{-nu} -> 1
        for &nu in &[0.2, 1.3, 4.0] {
            let r: f64 = 1e-5;
            let got = bessel_i(ord(nu), r).unwrap();
            let ratio = got * gamma(nu + 1.0).unwrap() * (0.5 * r).powf(-nu);
            assert!((ratio - 1.0).abs() < 1e-9, "nu={nu}: {ratio}");
        }
    }

    #[test]
    fn large_argument_exponential_decay() {
        // K_nu(r) ~ sqrt(pi/2) r^{-1/2} e^{-r} as r -> inf; the first
        // correction is (4nu^2 - 1)/(8r).
        let r: f64 = 50.0;
        for &nu in &[0.0f64, 0.5, 1.0, 2.5] {
            let got = bessel_k(ord(nu), r).unwrap();
            let asympt = (PI / 2.0).sqrt() * r.powf(-0.5) * (-r).exp();
            let bound = 1e-2f64.max(1.25 * (4.0 * nu * nu - 1.0).abs() / (8.0 * r));
            assert!(
                (got / asympt - 1.0).abs() < bound,
                "nu={nu}: ratio {}",
                got / asympt
            );
        }
    }

    #[test]
    fn asymptotic_matches_quadrature_at_switch() {
        // continuity across the r = 30 method switch
        for &nu in &[0.0, 0.5, 2.0, 5.0, 10.0] {
            let below = k_quadrature(nu, 31.0).unwrap();
            let above = bessel_k(ord(nu), 31.0).unwrap();
            assert!(
                (below - above).abs() < 1e-11 * below.abs(),
                "nu={nu}: {below} vs {above}"
            );
        }
    }

    #[test]
    fn integer_order_continuity_in_nu() {
        // the integral representation must be smooth through integer orders
        let at = bessel_k(ord(2.0), 3.0).unwrap();
        let near = bessel_k(ord(2.0 + 1e-7), 3.0).unwrap();
        assert!((at - near).abs() < 1e-6 * at.abs());
    }

    #[test]
    fn domain_and_range_errors() {
        assert!(matches!(bessel_k(ord(1.0), 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(ord(1.0), -2.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(ord(1.0), 1e-9), Err(Error::Range(_))));
        assert!(matches!(bessel_k(ord(1.0), 150.0), Err(Error::Range(_))));
        assert!(BesselOrder::new(60.0).is_err());
        assert!(matches!(bessel_k(ord(50.0), 1e-6), Err(Error::Overflow(_))));
    }

    #[test]
    fn k_small_series_consistent_with_quadrature() {
        for &(nu, x) in &[(0.5, 0.01), (0.3, 0.5), (0.85, 1.5)] {
            let series = k_small_series(nu, x).unwrap();
            let quad = k_quadrature(nu, x).unwrap();
            assert!(
                (series - quad).abs() < 1e-11 * quad.abs(),
                "nu={nu} x={x}: {series} vs {quad}"
            );
        }
    }
}
