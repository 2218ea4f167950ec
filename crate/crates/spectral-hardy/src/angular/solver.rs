//! Spectral Galerkin solvers for the reduced angular eigenvalue problem.
//!
//! In t = u², u = θ₁, the energy of a zonal function is
//!   2 ∫₀¹ t^{1-s}(1-t)^{N/2} ψ_t² dt - κ_s a ψ(0)²
//! against the mass (1/2) ∫₀¹ t^{-s}(1-t)^{(N-2)/2} ψ² dt. Basis functions
//! are orthonormal Jacobi polynomials in t paired with a t^s-enriched copy,
//! so both Frobenius branches at the equator are represented exactly. Every
//! assembly integral has the form t^c (1-t)^d × polynomial and is computed
//! exactly by a Gauss–Jacobi rule matched to (c, d).

use super::basis::BranchBasis;
use super::{check_dim, FourierCoupling, Mu1Result, SpectralConfig};
use crate::error::{Error, Result};
use crate::linalg::{mass_whitener, smallest_generalized_eigenpair, smallest_symmetric_eigenpair};
use crate::quad::GaussJacobi;
use crate::specfun::kappa_s;
use crate::sphere_area;
use nalgebra::{DMatrix, DVector};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

// The enriched block tends toward linear dependence on the plain block as K
// grows; directions this far below the top mass eigenvalue carry only
// rounding noise and are cut before whitening.
const MASS_TRUNC_TOL: f64 = 1e-10;

fn rule(n: usize, alpha: f64, beta: f64) -> Result<Arc<GaussJacobi>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64, u64), Arc<GaussJacobi>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n, alpha.to_bits(), beta.to_bits());
    if let Some(r) = cache.lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let r = Arc::new(GaussJacobi::new(n, alpha, beta)?);
    cache.lock().unwrap().insert(key, r.clone());
    Ok(r)
}

// Rows: basis functions; columns: quadrature nodes.
fn values_on_nodes(basis: &BranchBasis, nodes: &[f64]) -> (DMatrix<f64>, DMatrix<f64>) {
    let k = basis.size;
    let l = nodes.len();
    let mut vals = DMatrix::zeros(k, l);
    let mut ders = DMatrix::zeros(k, l);
    for (col, &t) in nodes.iter().enumerate() {
        let (v, d) = basis.eval(t);
        for row in 0..k {
            vals[(row, col)] = v[row];
            ders[(row, col)] = d[row];
        }
    }
    (vals, ders)
}

// E[i][j] = Σ_l w_l F[i][l] G[j][l]
fn weighted_gram(f: &DMatrix<f64>, g: &DMatrix<f64>, weights: &[f64]) -> DMatrix<f64> {
    let mut fw = f.clone();
    for (col, &w) in weights.iter().enumerate() {
        for row in 0..fw.nrows() {
            fw[(row, col)] *= w;
        }
    }
    fw * g.transpose()
}

/// Radial matrices of one angular sector: the symmetric pair (A, M) over the
/// 2K basis {(1-t)^{m/2} p_j} ∪ {(1-t)^{m/2} t^s q_j}, without the equator
/// coupling, plus the equator trace vector.
struct SectorMatrices {
    a: DMatrix<f64>,
    m: DMatrix<f64>,
    trace: DVector<f64>,
}

fn sector_matrices(n_dim: usize, s: f64, mode: usize, k: usize, nq: usize) -> Result<SectorMatrices> {
    let nf = n_dim as f64;
    let aw = 0.5 * (nf - 2.0);
    let mf = mode as f64;
    let b0 = BranchBasis::new(k, aw + mf, -s)?;
    let b1 = BranchBasis::new(k, aw + mf, s)?;
    let nq = nq.max(2 * k + 8);

    let mut a_mat = DMatrix::<f64>::zeros(2 * k, 2 * k);
    let mut m_mat = DMatrix::<f64>::zeros(2 * k, 2 * k);

    // mass: diagonal blocks are identities by orthonormality
    for i in 0..2 * k {
        m_mat[(i, i)] = 0.5;
    }
    let rm = rule(nq, aw + mf, 0.0)?;
    let (p_m, _) = values_on_nodes(&b0, rm.nodes());
    let (q_m, _) = values_on_nodes(&b1, rm.nodes());
    let m01 = weighted_gram(&p_m, &q_m, rm.weights()) * 0.5;
    for i in 0..k {
        for j in 0..k {
            m_mat[(i, k + j)] = m01[(i, j)];
            m_mat[(k + i, j)] = m01[(j, i)];
        }
    }

    if mode == 0 {
        // stiffness 2 ∫ t^{1-s}(1-t)^{N/2} Dφ_i Dφ_j dt
        let r00 = rule(nq, 0.5 * nf, 1.0 - s)?;
        let (_, d0) = values_on_nodes(&b0, r00.nodes());
        let s00 = weighted_gram(&d0, &d0, r00.weights());

        let r11 = rule(nq, 0.5 * nf, s - 1.0)?;
        let (v1, d1) = values_on_nodes(&b1, r11.nodes());
        let mut g1 = v1.clone();
        for (col, &t) in r11.nodes().iter().enumerate() {
            for row in 0..k {
                g1[(row, col)] = s * v1[(row, col)] + t * d1[(row, col)];
            }
        }
        let s11 = weighted_gram(&g1, &g1, r11.weights());

        let r01 = rule(nq, 0.5 * nf, 0.0)?;
        let (_, d0c) = values_on_nodes(&b0, r01.nodes());
        let (v1c, d1c) = values_on_nodes(&b1, r01.nodes());
        let mut g1c = v1c.clone();
        for (col, &t) in r01.nodes().iter().enumerate() {
            for row in 0..k {
                g1c[(row, col)] = s * v1c[(row, col)] + t * d1c[(row, col)];
            }
        }
        let s01 = weighted_gram(&d0c, &g1c, r01.weights());

        for i in 0..k {
            for j in 0..k {
                a_mat[(i, j)] = 2.0 * s00[(i, j)];
                a_mat[(i, k + j)] = 2.0 * s01[(i, j)];
                a_mat[(k + i, j)] = 2.0 * s01[(j, i)];
                a_mat[(k + i, k + j)] = 2.0 * s11[(i, j)];
            }
        }
    } else {
        // gradient factors with the (1-t)^{m/2} prefactor differentiated:
        //   block 0: (1-t)^{m/2-1} [ -(m/2) p + (1-t) p' ]
        //   block 1: (1-t)^{m/2-1} t^{s-1} [ -(m/2) t q + (1-t)(s q + t q') ]
        // so the stiffness weight becomes t^{..}(1-t)^{N/2+m-2}.
        let am = 0.5 * nf + mf - 2.0;
        let make_g0 = |v: &DMatrix<f64>, d: &DMatrix<f64>, nodes: &[f64]| {
            let mut g = v.clone();
            for (col, &t) in nodes.iter().enumerate() {
                for row in 0..k {
                    g[(row, col)] = -0.5 * mf * v[(row, col)] + (1.0 - t) * d[(row, col)];
                }
            }
            g
        };
        let make_g1 = |v: &DMatrix<f64>, d: &DMatrix<f64>, nodes: &[f64]| {
            let mut g = v.clone();
            for (col, &t) in nodes.iter().enumerate() {
                for row in 0..k {
                    g[(row, col)] = -0.5 * mf * t * v[(row, col)]
                        + (1.0 - t) * (s * v[(row, col)] + t * d[(row, col)]);
                }
            }
            g
        };

        let r00 = rule(nq, am, 1.0 - s)?;
        let (v0, d0) = values_on_nodes(&b0, r00.nodes());
        let g0 = make_g0(&v0, &d0, r00.nodes());
        let s00 = weighted_gram(&g0, &g0, r00.weights());

        let r11 = rule(nq, am, s - 1.0)?;
        let (v1, d1) = values_on_nodes(&b1, r11.nodes());
        let g1 = make_g1(&v1, &d1, r11.nodes());
        let s11 = weighted_gram(&g1, &g1, r11.weights());

        let r01 = rule(nq, am, 0.0)?;
        let (v0c, d0c) = values_on_nodes(&b0, r01.nodes());
        let (v1c, d1c) = values_on_nodes(&b1, r01.nodes());
        let g0c = make_g0(&v0c, &d0c, r01.nodes());
        let g1c = make_g1(&v1c, &d1c, r01.nodes());
        let s01 = weighted_gram(&g0c, &g1c, r01.weights());

        // azimuthal term (m²/2) ∫ t^{-s}(1-t)^{(N-2)/2+m-1} φ_i φ_j dt
        let az = aw + mf - 1.0;
        let z00_rule = rule(nq, az, -s)?;
        let (vz0, _) = values_on_nodes(&b0, z00_rule.nodes());
        let z00 = weighted_gram(&vz0, &vz0, z00_rule.weights());
        let z01_rule = rule(nq, az, 0.0)?;
        let (vz0c, _) = values_on_nodes(&b0, z01_rule.nodes());
        let (vz1c, _) = values_on_nodes(&b1, z01_rule.nodes());
        let z01 = weighted_gram(&vz0c, &vz1c, z01_rule.weights());
        let z11_rule = rule(nq, az, s)?;
        let (vz1, _) = values_on_nodes(&b1, z11_rule.nodes());
        let z11 = weighted_gram(&vz1, &vz1, z11_rule.weights());

        let half_m2 = 0.5 * mf * mf;
        for i in 0..k {
            for j in 0..k {
                a_mat[(i, j)] = 2.0 * s00[(i, j)] + half_m2 * z00[(i, j)];
                a_mat[(i, k + j)] = 2.0 * s01[(i, j)] + half_m2 * z01[(i, j)];
                a_mat[(k + i, j)] = a_mat[(j, k + i)];
                a_mat[(k + i, k + j)] = 2.0 * s11[(i, j)] + half_m2 * z11[(i, j)];
            }
        }
    }

    let tr0 = b0.values_at_zero();
    let mut trace = DVector::zeros(2 * k);
    for i in 0..k {
        trace[i] = tr0[i];
    }
    Ok(SectorMatrices { a: a_mat, m: m_mat, trace })
}

/// Zonal eigenfunction handle: ψ(u) = Σ c_j p_j(u²) + u^{2s} Σ c_{K+j} q_j(u²).
#[derive(Debug, Clone)]
pub struct ZonalPsi {
    pub n_dim: usize,
    pub s: f64,
    k: usize,
    coeffs: Vec<f64>,
    b0: BranchBasis,
    b1: BranchBasis,
}

impl ZonalPsi {
    pub fn eval(&self, u: f64) -> f64 {
        let t = (u * u).clamp(0.0, 1.0);
        let v0 = self.b0.values_at(t);
        let v1 = self.b1.values_at(t);
        let mut acc = 0.0;
        for j in 0..self.k {
            acc += self.coeffs[j] * v0[j];
        }
        let ts = t.powf(self.s);
        for j in 0..self.k {
            acc += self.coeffs[self.k + j] * ts * v1[j];
        }
        acc
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

/// Fourier eigenfunction on the half-sphere of S², one radial profile per
/// angular sector (1, cos mτ, sin mτ)/normalization.
#[derive(Debug, Clone)]
pub struct FourierPsi {
    pub s: f64,
    pub modes: usize,
    k: usize,
    coeffs: Vec<f64>,
    bases: Vec<(usize, BranchBasis, BranchBasis)>,
}

impl FourierPsi {
    fn sector_value(&self, sector: usize, u: f64) -> f64 {
        let t = (u * u).clamp(0.0, 1.0);
        let (mode, ref b0, ref b1) = self.bases[sector];
        let pre = (1.0 - t).powf(0.5 * mode as f64);
        let v0 = b0.values_at(t);
        let v1 = b1.values_at(t);
        let off = sector * 2 * self.k;
        let mut acc = 0.0;
        for j in 0..self.k {
            acc += self.coeffs[off + j] * v0[j];
        }
        let ts = t.powf(self.s);
        for j in 0..self.k {
            acc += self.coeffs[off + self.k + j] * ts * v1[j];
        }
        pre * acc
    }

    /// ψ(u, τ) with u = θ₁ and τ the equator angle.
    pub fn eval(&self, u: f64, tau: f64) -> f64 {
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut acc = self.sector_value(0, u) / two_pi.sqrt();
        let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
        let mut sector = 1;
        for m in 1..=self.modes {
            let mf = m as f64;
            acc += self.sector_value(sector, u) * (mf * tau).cos() * inv_sqrt_pi;
            acc += self.sector_value(sector + 1, u) * (mf * tau).sin() * inv_sqrt_pi;
            sector += 2;
        }
        acc
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

/// Eigenfunction handle for either solver.
#[derive(Debug, Clone)]
pub enum Eigenfunction {
    Zonal(ZonalPsi),
    Fourier(FourierPsi),
}

impl Eigenfunction {
    pub fn coeffs(&self) -> &[f64] {
        match self {
            Eigenfunction::Zonal(z) => z.coeffs(),
            Eigenfunction::Fourier(f) => f.coeffs(),
        }
    }

    /// Zonal value ψ(θ₁); for Fourier eigenfunctions this is the angular mean.
    pub fn eval_zonal(&self, u: f64) -> f64 {
        match self {
            Eigenfunction::Zonal(z) => z.eval(u),
            Eigenfunction::Fourier(f) => {
                f.sector_value(0, u) / (2.0 * std::f64::consts::PI).sqrt()
            }
        }
    }
}

struct ZonalSolve {
    mu: f64,
    psi: ZonalPsi,
    trace: f64,
}

fn solve_zonal(n_dim: usize, s: f64, a_const: f64, k: usize, nq: usize) -> Result<ZonalSolve> {
    let sm = sector_matrices(n_dim, s, 0, k, nq)?;
    let kap = kappa_s(s)?;
    let mut a = sm.a;
    for i in 0..k {
        for j in 0..k {
            a[(i, j)] -= kap * a_const * sm.trace[i] * sm.trace[j];
        }
    }
    let (mu, c) = smallest_generalized_eigenpair(&a, &sm.m, MASS_TRUNC_TOL)?;
    // sphere normalization: the reduced mass integral misses |S^{N-1}|
    let scale = sphere_area(n_dim).sqrt();
    let mut coeffs: Vec<f64> = c.iter().map(|x| x / scale).collect();
    let mut trace = (0..k).map(|i| coeffs[i] * sm.trace[i]).sum::<f64>();
    if trace < 0.0 {
        for x in coeffs.iter_mut() {
            *x = -*x;
        }
        trace = -trace;
    }
    let psi = ZonalPsi {
        n_dim,
        s,
        k,
        coeffs,
        b0: BranchBasis::new(k, 0.5 * (n_dim as f64 - 2.0), -s)?,
        b1: BranchBasis::new(k, 0.5 * (n_dim as f64 - 2.0), s)?,
    };
    Ok(ZonalSolve { mu, psi, trace })
}

/// μ₁ for a constant coupling in dimension N >= 1, by Rayleigh–Ritz over the
/// enriched basis, with a (K, 2K) refinement study for the error estimate.
pub fn mu1_constant(n_dim: usize, s: f64, a: f64, cfg: &SpectralConfig) -> Result<Mu1Result> {
    check_dim(n_dim, s)?;
    cfg.validate()?;
    if !a.is_finite() {
        return Err(Error::InvalidCoupling(format!("constant coupling {a}")));
    }
    let k = cfg.basis_size;
    let coarse = solve_zonal(n_dim, s, a, k, cfg.quad_points)?;
    let fine = solve_zonal(n_dim, s, a, 2 * k, 2 * cfg.quad_points)?;
    let est_error = (fine.mu - coarse.mu).abs();
    Ok(Mu1Result {
        mu1: fine.mu,
        trace: fine.trace,
        converged: est_error <= cfg.tolerance,
        est_error,
        psi: Eigenfunction::Zonal(fine.psi),
    })
}

// Angular sectors: 0 is the zonal mean, then (cos mτ, sin mτ) pairs.
#[derive(Clone, Copy, PartialEq)]
enum SectorKind {
    Mean,
    Cos(usize),
    Sin(usize),
}

fn sector_mode(kind: SectorKind) -> usize {
    match kind {
        SectorKind::Mean => 0,
        SectorKind::Cos(m) | SectorKind::Sin(m) => m,
    }
}

// ∫ a e_i e_j dτ over the orthonormal angular functions, from the Fourier
// coefficients of a.
fn coupling_entry(coup: &FourierCoupling, i: SectorKind, j: SectorKind) -> f64 {
    use SectorKind::*;
    let sqrt2 = std::f64::consts::SQRT_2;
    match (i, j) {
        (Mean, Mean) => coup.coeff(0).re,
        (Mean, Cos(m)) | (Cos(m), Mean) => sqrt2 * coup.coeff(m as i32).re,
        (Mean, Sin(m)) | (Sin(m), Mean) => -sqrt2 * coup.coeff(m as i32).im,
        (Cos(m), Cos(p)) => {
            coup.coeff(m as i32 - p as i32).re + coup.coeff(m as i32 + p as i32).re
        }
        (Sin(m), Sin(p)) => {
            coup.coeff(m as i32 - p as i32).re - coup.coeff(m as i32 + p as i32).re
        }
        (Cos(m), Sin(p)) | (Sin(p), Cos(m)) => {
            coup.coeff(m as i32 - p as i32).im - coup.coeff(m as i32 + p as i32).im
        }
    }
}

fn solve_fourier(
    s: f64,
    coup: &FourierCoupling,
    modes: usize,
    k: usize,
    nq: usize,
) -> Result<(f64, FourierPsi, f64)> {
    let n_dim = 2usize;
    let kinds: Vec<SectorKind> = {
        let mut v = vec![SectorKind::Mean];
        for m in 1..=modes {
            v.push(SectorKind::Cos(m));
            v.push(SectorKind::Sin(m));
        }
        v
    };
    let n_sec = kinds.len();
    let block = 2 * k;
    let n_total = n_sec * block;

    // per-sector radial matrices and mass whiteners
    let mut sector_a = Vec::with_capacity(n_sec);
    let mut traces = Vec::with_capacity(n_sec);
    let mut whiteners = Vec::with_capacity(n_sec);
    for &kind in &kinds {
        let sm = sector_matrices(n_dim, s, sector_mode(kind), k, nq)?;
        whiteners.push(mass_whitener(&sm.m, MASS_TRUNC_TOL)?);
        sector_a.push(sm.a);
        traces.push(sm.trace);
    }

    let kap = kappa_s(s)?;
    let mut a_full = DMatrix::<f64>::zeros(n_total, n_total);
    for (si, asec) in sector_a.iter().enumerate() {
        let off = si * block;
        for i in 0..block {
            for j in 0..block {
                a_full[(off + i, off + j)] = asec[(i, j)];
            }
        }
    }
    for si in 0..n_sec {
        for sj in 0..n_sec {
            let t_ang = coupling_entry(coup, kinds[si], kinds[sj]);
            if t_ang == 0.0 {
                continue;
            }
            let (oi, oj) = (si * block, sj * block);
            for i in 0..k {
                if traces[si][i] == 0.0 {
                    continue;
                }
                for j in 0..k {
                    a_full[(oi + i, oj + j)] -= kap * t_ang * traces[si][i] * traces[sj][j];
                }
            }
        }
    }

    // whiten blockwise, one big symmetric eigensolve
    let cols: Vec<usize> = whiteners.iter().map(|w| w.ncols()).collect();
    let n_red: usize = cols.iter().sum();
    let mut w_full = DMatrix::<f64>::zeros(n_total, n_red);
    let mut col_off = 0;
    for (si, w) in whiteners.iter().enumerate() {
        let row_off = si * block;
        for j in 0..w.ncols() {
            for i in 0..block {
                w_full[(row_off + i, col_off + j)] = w[(i, j)];
            }
        }
        col_off += w.ncols();
    }
    let reduced = {
        let aw = &a_full * &w_full;
        let mut r = w_full.transpose() * aw;
        for i in 0..r.nrows() {
            for j in 0..i {
                let v = 0.5 * (r[(i, j)] + r[(j, i)]);
                r[(i, j)] = v;
                r[(j, i)] = v;
            }
        }
        r
    };
    let (mu, y) = smallest_symmetric_eigenpair(&reduced)?;
    let c = &w_full * y;

    let mut coeffs: Vec<f64> = c.iter().copied().collect();
    let trace_raw: f64 = (0..k).map(|i| coeffs[i] * traces[0][i]).sum();
    let mut trace = trace_raw / (2.0 * std::f64::consts::PI).sqrt();
    if trace < 0.0 {
        for x in coeffs.iter_mut() {
            *x = -*x;
        }
        trace = -trace;
    }

    let mut bases = Vec::with_capacity(n_sec);
    for &kind in &kinds {
        let m = sector_mode(kind);
        bases.push((
            m,
            BranchBasis::new(k, m as f64, -s)?,
            BranchBasis::new(k, m as f64, s)?,
        ));
    }
    let psi = FourierPsi { s, modes, k, coeffs, bases };
    Ok((mu, psi, trace))
}

/// μ₁ for an N = 2 Fourier coupling: per-sector radial problems coupled only
/// through the equator term. Reduces to `mu1_constant` when only â₀ is set.
pub fn mu1_fourier(s: f64, coup: &FourierCoupling, cfg: &SpectralConfig) -> Result<Mu1Result> {
    check_dim(2, s)?;
    cfg.validate()?;
    let k = cfg.basis_size;
    let k_coarse = (k / 2).max(4);
    let (mu_c, _, _) = solve_fourier(s, coup, cfg.fourier_modes, k_coarse, cfg.quad_points)?;
    let (mu, psi, trace) = solve_fourier(s, coup, cfg.fourier_modes, k, cfg.quad_points)?;
    let est_error = (mu - mu_c).abs();
    Ok(Mu1Result {
        mu1: mu,
        trace,
        converged: est_error <= cfg.tolerance,
        est_error,
        psi: Eigenfunction::Fourier(psi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::lambda_of_alpha;

    fn cfg(k: usize) -> SpectralConfig {
        SpectralConfig::with_basis(k)
    }

    #[test]
    fn zero_coupling_gives_zero_eigenvalue() {
        for &(n, s) in &[(1usize, 0.3), (2, 0.4), (3, 0.5), (4, 0.75)] {
            let r = mu1_constant(n, s, 0.0, &cfg(16)).unwrap();
            assert!(r.mu1.abs() < 1e-10, "N={n} s={s}: {}", r.mu1);
            assert!(r.trace > 0.0);
            assert!(r.converged);
        }
    }

    #[test]
    fn gamma_map_oracle_single_case() {
        // N = 3, s = 1/2, a = λ(0.3): μ₁ = 0.3² - 1 = -0.91
        let a = lambda_of_alpha(3, 0.5, 0.3).unwrap();
        let r = mu1_constant(3, 0.5, a, &cfg(32)).unwrap();
        assert!(
            (r.mu1 - (-0.91)).abs() < 1e-7,
            "mu1 = {}, want -0.91 (err {:.2e})",
            r.mu1,
            (r.mu1 + 0.91).abs()
        );
    }

    #[test]
    fn rayleigh_ritz_upper_bound_decreases() {
        let a = 0.35;
        let (n, s) = (3usize, 0.6);
        let mut prev = f64::INFINITY;
        for &k in &[8usize, 12, 16, 24, 32] {
            let sol = solve_zonal(n, s, a, k, 2 * k + 8).unwrap();
            assert!(sol.mu <= prev + 1e-10, "k={k}: {} vs {prev}", sol.mu);
            prev = sol.mu;
        }
    }

    #[test]
    fn eigenfunction_positive_and_normalized() {
        let r = mu1_constant(3, 0.5, 0.4, &cfg(24)).unwrap();
        let psi = match &r.psi {
            Eigenfunction::Zonal(z) => z,
            _ => unreachable!(),
        };
        for i in 0..=50 {
            let u = i as f64 / 50.0;
            assert!(psi.eval(u) > 0.0, "psi({u}) not positive");
        }
        // equator trace matches the handle evaluation
        assert!((psi.eval(0.0) - r.trace).abs() < 1e-12 * r.trace);
    }

    #[test]
    fn fourier_single_mode_matches_constant() {
        let s = 0.4;
        let c = 0.3;
        let coup = FourierCoupling::from_mean(c).unwrap();
        let config = SpectralConfig {
            basis_size: 24,
            quad_points: 2 * 24 + 8,
            fourier_modes: 3,
            tolerance: 1e-6,
        };
        let rf = mu1_fourier(s, &coup, &config).unwrap();
        // constant solver at half the basis: its fine level equals 24
        let rc = mu1_constant(2, s, c, &cfg(12)).unwrap();
        assert!(
            (rf.mu1 - rc.mu1).abs() < 1e-8,
            "fourier {} vs constant {}",
            rf.mu1,
            rc.mu1
        );
        assert!((rf.trace - rc.trace).abs() < 1e-8 * rc.trace.abs());
    }

    #[test]
    fn fourier_perturbation_continuity() {
        let s = 0.45;
        let c = 0.2;
        let config = SpectralConfig {
            basis_size: 16,
            quad_points: 40,
            fourier_modes: 3,
            tolerance: 1e-6,
        };
        let base = mu1_fourier(s, &FourierCoupling::from_mean(c).unwrap(), &config)
            .unwrap()
            .mu1;
        let mut prev_gap = f64::INFINITY;
        for &eps in &[0.08, 0.04, 0.02] {
            let coup = FourierCoupling::new(&[
                (0, num_complex::Complex64::new(c, 0.0)),
                (1, num_complex::Complex64::new(eps, 0.0)),
            ])
            .unwrap();
            let mu = mu1_fourier(s, &coup, &config).unwrap().mu1;
            let gap = (mu - base).abs();
            assert!(gap < 1.0 * eps, "eps={eps}: gap {gap}");
            assert!(gap <= prev_gap + 1e-12);
            prev_gap = gap;
        }
    }
}
