//! Orthonormal Jacobi polynomial families on (0,1) used as Galerkin bases.
//!
//! A `BranchBasis` is orthonormal with respect to t^b (1-t)^a dt. The
//! eigenfunctions of the reduced angular problem have the two Frobenius
//! branches 1 and t^s at the equator (t = u², u = θ₁), so the solver pairs a
//! plain branch (b = -s) with an enriched branch multiplied by t^s (b = +s).

use crate::error::Result;
use crate::specfun::log_gamma;

#[derive(Debug, Clone)]
pub(crate) struct BranchBasis {
    pub size: usize,
    pub a: f64,
    pub b: f64,
    inv_norms: Vec<f64>,
}

impl BranchBasis {
    pub fn new(size: usize, a: f64, b: f64) -> Result<Self> {
        // ||P_k||^2 on (0,1) with weight t^b (1-t)^a:
        //   Γ(k+a+1) Γ(k+b+1) (k+a+b+1) / ((2k+a+b+1) Γ(k+a+b+2) k!)
        let mut inv_norms = Vec::with_capacity(size);
        for k in 0..size {
            let kf = k as f64;
            let log_h = log_gamma(kf + a + 1.0)? + log_gamma(kf + b + 1.0)?
                - log_gamma(kf + a + b + 2.0)?
                - log_gamma(kf + 1.0)?;
            let h = log_h.exp() * (kf + a + b + 1.0) / (2.0 * kf + a + b + 1.0);
            inv_norms.push(1.0 / h.sqrt());
        }
        Ok(Self { size, a, b, inv_norms })
    }

    /// Normalized values and t-derivatives of the whole family at t.
    pub fn eval(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        let (a, b) = (self.a, self.b);
        let x = 2.0 * t - 1.0;
        let mut vals = vec![0.0; self.size];
        let mut ders = vec![0.0; self.size];
        let mut p_prev = 1.0; // P_0
        let mut d_prev = 0.0;
        if self.size > 0 {
            vals[0] = self.inv_norms[0];
        }
        let mut p_cur = 0.5 * ((a + b + 2.0) * x + (a - b)); // P_1
        let mut d_cur = 0.5 * (a + b + 2.0);
        if self.size > 1 {
            vals[1] = p_cur * self.inv_norms[1];
            ders[1] = 2.0 * d_cur * self.inv_norms[1]; // d/dt = 2 d/dx
        }
        for k in 2..self.size {
            let kf = k as f64;
            let c1 = 2.0 * kf * (kf + a + b) * (2.0 * kf + a + b - 2.0);
            let c2 = (2.0 * kf + a + b - 1.0) * (a * a - b * b);
            let c3 = (2.0 * kf + a + b - 2.0) * (2.0 * kf + a + b - 1.0) * (2.0 * kf + a + b);
            let c4 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + a + b);
            let p_next = ((c2 + c3 * x) * p_cur - c4 * p_prev) / c1;
            let d_next = ((c2 + c3 * x) * d_cur + c3 * p_cur - c4 * d_prev) / c1;
            vals[k] = p_next * self.inv_norms[k];
            ders[k] = 2.0 * d_next * self.inv_norms[k];
            p_prev = p_cur;
            p_cur = p_next;
            d_prev = d_cur;
            d_cur = d_next;
        }
        (vals, ders)
    }

    pub fn values_at(&self, t: f64) -> Vec<f64> {
        self.eval(t).0
    }

    /// Family values at t = 0 (the equator trace of the plain branch).
    pub fn values_at_zero(&self) -> Vec<f64> {
        self.values_at(0.0)
    }
}
