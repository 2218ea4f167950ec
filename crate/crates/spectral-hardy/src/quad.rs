//! Quadrature: adaptive Gauss–Kronrod (G7/K15) panels and Gauss–Jacobi rules
//! for weights with endpoint singularities.

use crate::error::{Error, Result};
use crate::specfun::log_gamma;
use nalgebra::DMatrix;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights. Standard QUADPACK values.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Outcome of an adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evals: usize,
    pub converged: bool,
}

fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let hlgth = 0.5 * (b - a);
    let centr = 0.5 * (a + b);
    let fc = f(centr);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let absc = hlgth * XGK[j];
        let f1 = f(centr - absc);
        let f2 = f(centr + absc);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - reskh).abs() + (fv[14 - j] - reskh).abs());
    }
    resasc *= hlgth.abs();
    let result = resk * hlgth;
    let mut err = ((resk - resg) * hlgth).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    (result, err)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

/// Globally adaptive G7/K15 integration over `[a, b]`.
pub fn adaptive_quad<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> QuadResult {
    adaptive_quad_segments(f, &[a, b], rel_tol, abs_tol)
}

/// Adaptive integration with caller-provided initial breakpoints (useful for
/// oscillatory integrands: seed one panel per half-period).
pub fn adaptive_quad_segments<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> QuadResult {
    const MAX_PANELS: usize = 30_000;
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    let mut evals = 0;
    for w in breakpoints.windows(2) {
        let (v, e) = kronrod_panel(&f, w[0], w[1]);
        evals += 15;
        value += v;
        error += e;
        heap.push(Panel { a: w[0], b: w[1], value: v, error: e });
    }
    let tol = |v: f64| (rel_tol * v.abs()).max(abs_tol);
    while error > tol(value) && heap.len() < MAX_PANELS {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        // Bisection floor: stop refining sub-ulp intervals.
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            value += worst.value - worst.value; // no-op, keep panel accounted
            error -= worst.error * 0.5; // prevent spinning on a hard point
            heap.push(Panel { error: worst.error * 0.5, ..worst });
            continue;
        }
        let (v1, e1) = kronrod_panel(&f, worst.a, mid);
        let (v2, e2) = kronrod_panel(&f, mid, worst.b);
        evals += 30;
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
    QuadResult {
        value,
        abs_error: error.max(0.0),
        evals,
        converged: error <= tol(value).max(1e-300),
    }
}

/// Gauss–Jacobi rule on (0,1): integrates t^beta (1-t)^alpha f(t) dt exactly
/// for polynomials f up to degree 2n-1.
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    alpha: f64,
    beta: f64,
}

impl GaussJacobi {
    /// Golub–Welsch construction; `alpha` weights the (1-t) endpoint and
    /// `beta` the t endpoint, both must exceed -1.
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Range(format!("Gauss-Jacobi needs n >= 2, got {n}")));
        }
        if !(alpha.is_finite() && alpha > -1.0) || !(beta.is_finite() && beta > -1.0) {
            return Err(Error::Range(format!(
                "Gauss-Jacobi exponents must exceed -1: alpha = {alpha}, beta = {beta}"
            )));
        }
        // Symmetric tridiagonal companion matrix for (1-x)^alpha (1+x)^beta on (-1,1).
        let (a, b) = (alpha, beta);
        let mut m = DMatrix::<f64>::zeros(n, n);
        let mut diag = (b - a) / (2.0 + a + b);
        for k in 0..n - 1 {
            let kp1 = (k + 1) as f64;
            let denom = 2.0 * kp1 + a + b;
            let off = 2.0 / denom
                * (kp1 * (kp1 + a) * (kp1 + b) * (kp1 + a + b)
                    / ((denom + 1.0) * (denom - 1.0)))
                    .sqrt();
            m[(k, k)] = diag;
            m[(k, k + 1)] = off;
            m[(k + 1, k)] = off;
            diag = (b * b - a * a) / (denom * (denom + 2.0));
        }
        m[(n - 1, n - 1)] = diag;
        let eig = m.symmetric_eigen();
        // mu0 = ∫ (1-x)^a (1+x)^b dx over (-1,1)
        let mu0 = ((a + b + 1.0) * 2.0f64.ln() + log_gamma(a + 1.0)? + log_gamma(b + 1.0)?
            - log_gamma(a + b + 2.0)?)
            .exp();
        let mut pairs: Vec<(f64, f64)> = eig
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let q0 = eig.eigenvectors[(0, i)];
                (x, mu0 * q0 * q0)
            })
            .collect();
        pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
        // Map (-1,1) -> (0,1): t = (1+x)/2, weight picks up 2^{-(a+b+1)}.
        let scale = 2.0f64.powf(-(a + b + 1.0));
        let nodes = pairs.iter().map(|p| 0.5 * (1.0 + p.0)).collect();
        let weights = pairs.iter().map(|p| p.1 * scale).collect();
        Ok(Self { nodes, weights, alpha, beta })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// ∫₀¹ t^beta (1-t)^alpha f(t) dt
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    #[test]
    fn gk_smooth() {
        let r = adaptive_quad(|x: f64| x.exp(), 0.0, 1.0, 1e-13, 1e-300);
        assert!((r.value - (1f64.exp() - 1.0)).abs() < 1e-13);
        assert!(r.converged);
    }

    #[test]
    fn gk_oscillatory() {
        // ∫_0^{20π} sin x dx = 0, seeded with one panel per period
        let n = 40;
        let bps: Vec<f64> = (0..=n).map(|k| k as f64 * std::f64::consts::PI).collect();
        let r = adaptive_quad_segments(|x: f64| x.sin(), &bps, 1e-12, 1e-12);
        assert!(r.value.abs() < 1e-11);
    }

    #[test]
    fn gk_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2 (integrable singularity at 0)
        let r = adaptive_quad(|x: f64| 1.0 / x.sqrt(), 1e-300, 1.0, 1e-10, 1e-12);
        assert!((r.value - 2.0).abs() < 2e-6, "got {}", r.value);
    }

    // Beta-function oracle: ∫₀¹ t^β(1-t)^α t^k dt = B(β+k+1, α+1).
    fn beta_fn(p: f64, q: f64) -> f64 {
        (gamma(p).unwrap() * gamma(q).unwrap()) / gamma(p + q).unwrap()
    }

    #[test]
    fn jacobi_monomials_match_beta_integrals() {
        for &(a, b) in &[(0.5, -0.5), (0.0, -0.3), (1.5, 0.7), (2.0, 0.0)] {
            let rule = GaussJacobi::new(12, a, b).unwrap();
            for k in 0..8 {
                let exact = beta_fn(b + k as f64 + 1.0, a + 1.0);
                let got = rule.integrate(|t| t.powi(k));
                assert!(
                    (got - exact).abs() < 1e-12 * exact.abs().max(1.0),
                    "a={a} b={b} k={k}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn jacobi_rejects_bad_exponents() {
        assert!(GaussJacobi::new(8, -1.0, 0.0).is_err());
        assert!(GaussJacobi::new(8, 0.0, -1.2).is_err());
        assert!(GaussJacobi::new(1, 0.0, 0.0).is_err());
    }

    #[test]
    fn jacobi_singular_weight_integral() {
        // ∫₀¹ t^{-0.4} (1-t)^{0.5} sin(t) dt, reference from adaptive quadrature
        let rule = GaussJacobi::new(40, 0.5, -0.4).unwrap();
        let got = rule.integrate(|t| t.sin());
        let reference = adaptive_quad(
            |t: f64| t.powf(-0.4) * (1.0 - t).powf(0.5) * t.sin(),
            1e-300,
            1.0,
            1e-12,
            1e-14,
        );
        assert!((got - reference.value).abs() < 5e-7, "{got} vs {}", reference.value);
    }
}
