//! Dense symmetric generalized eigensolver used by the Galerkin solvers.
//!
//! Enriched spectral bases drift toward linear dependence as the degree
//! grows, so the mass matrix is reduced by greedy pivoted Cholesky: basis
//! functions are kept one at a time by largest Schur-complement pivot until
//! the remaining pivots fall below a drop tolerance. Rayleigh–Ritz on the
//! kept subset stays a variational upper bound and never mixes discarded
//! noise directions into the span.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Greedy pivoted Cholesky of a symmetric PSD matrix. Returns the selected
/// indices (in pivot order) and the lower-triangular factor L with
/// M[sel, sel] = L L^T.
fn pivoted_cholesky(m: &DMatrix<f64>, drop_tol: f64) -> Result<(Vec<usize>, DMatrix<f64>)> {
    let n = m.nrows();
    let mut diag: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    let d0 = diag.iter().cloned().fold(f64::MIN, f64::max);
    if !(d0 > 0.0) {
        return Err(Error::LinearAlgebra("mass matrix has no positive diagonal".into()));
    }
    let mut selected: Vec<usize> = Vec::new();
    let mut in_sel = vec![false; n];
    // columns of the factor over all row indices, one per selected pivot
    let mut cols: Vec<DVector<f64>> = Vec::new();
    loop {
        let mut j_best = usize::MAX;
        let mut d_best = drop_tol * d0;
        for j in 0..n {
            if !in_sel[j] && diag[j] > d_best {
                d_best = diag[j];
                j_best = j;
            }
        }
        if j_best == usize::MAX {
            break;
        }
        let pivot = d_best.sqrt();
        let mut col = DVector::zeros(n);
        col[j_best] = pivot;
        for k in 0..n {
            if k == j_best || in_sel[k] {
                continue;
            }
            let mut v = m[(k, j_best)];
            for c in &cols {
                v -= c[k] * c[j_best];
            }
            col[k] = v / pivot;
            diag[k] -= col[k] * col[k];
        }
        in_sel[j_best] = true;
        selected.push(j_best);
        cols.push(col);
    }
    if selected.is_empty() {
        return Err(Error::LinearAlgebra("mass matrix numerically zero".into()));
    }
    let k = selected.len();
    let mut l = DMatrix::<f64>::zeros(k, k);
    for (t, c) in cols.iter().enumerate() {
        for (i, &row) in selected.iter().enumerate() {
            if i >= t {
                l[(i, t)] = c[row];
            }
        }
    }
    Ok((selected, l))
}

/// Whitening factor W (n x k) with W^T M W = I on the selected subspace:
/// rows outside the kept subset are zero, so W also embeds reduced
/// coordinates back into the full basis.
pub fn mass_whitener(m: &DMatrix<f64>, drop_tol: f64) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    let (sel, l) = pivoted_cholesky(m, drop_tol)?;
    let k = sel.len();
    let linv_t = l
        .transpose()
        .solve_upper_triangular(&DMatrix::identity(k, k))
        .ok_or_else(|| Error::LinearAlgebra("triangular solve failed".into()))?;
    let mut w = DMatrix::<f64>::zeros(n, k);
    for (i, &row) in sel.iter().enumerate() {
        for j in 0..k {
            w[(row, j)] = linv_t[(i, j)];
        }
    }
    Ok(w)
}

/// Smallest eigenpair of a dense symmetric matrix.
pub fn smallest_symmetric_eigenpair(a: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    if a.nrows() == 0 || a.nrows() != a.ncols() {
        return Err(Error::LinearAlgebra("matrix must be square and nonempty".into()));
    }
    let eig = a.clone().symmetric_eigen();
    let mut idx = 0;
    let mut best = f64::INFINITY;
    for (i, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam < best {
            best = lam;
            idx = i;
        }
    }
    Ok((best, eig.eigenvectors.column(idx).clone_owned()))
}

/// Smallest eigenpair of A x = mu M x with A, M symmetric, M positive
/// semi-definite. The returned coefficients satisfy x^T M x = 1.
pub fn smallest_generalized_eigenpair(
    a: &DMatrix<f64>,
    m: &DMatrix<f64>,
    drop_tol: f64,
) -> Result<(f64, DVector<f64>)> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n || m.nrows() != n || m.ncols() != n {
        return Err(Error::LinearAlgebra(format!(
            "shape mismatch: A is {}x{}, M is {}x{}",
            a.nrows(),
            a.ncols(),
            m.nrows(),
            m.ncols()
        )));
    }
    let w = mass_whitener(m, drop_tol)?;
    let reduced = {
        let aw = a * &w;
        let mut r = w.transpose() * aw;
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
    Ok((mu, &w * y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_problem() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 1.0, 7.0]));
        let m = DMatrix::identity(3, 3);
        let (mu, x) = smallest_generalized_eigenpair(&a, &m, 1e-14).unwrap();
        assert!((mu - 1.0).abs() < 1e-12);
        assert!(x[1].abs() > 0.99);
    }

    #[test]
    fn scaled_mass() {
        // A = diag(2, 8), M = diag(2, 2): eigenvalues 1 and 4
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 8.0]));
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 2.0]));
        let (mu, x) = smallest_generalized_eigenpair(&a, &m, 1e-14).unwrap();
        assert!((mu - 1.0).abs() < 1e-12);
        let norm = (m * &x).dot(&x);
        assert!((norm - 1.0).abs() < 1e-10);
    }

    #[test]
    fn near_singular_mass_drops_dependent_direction() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 5.0]);
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0 + 1e-15]);
        let (mu, _) = smallest_generalized_eigenpair(&a, &m, 1e-12).unwrap();
        assert!(mu.is_finite());
        let w = mass_whitener(&m, 1e-12).unwrap();
        assert_eq!(w.ncols(), 1);
    }

    #[test]
    fn whitener_whitens() {
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[2.0, 0.3, 0.1, 0.3, 1.5, 0.2, 0.1, 0.2, 1.0],
        );
        let w = mass_whitener(&m, 1e-14).unwrap();
        let should_be_identity = w.transpose() * &m * &w;
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((should_be_identity[(i, j)] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn subset_keeps_exact_basis_vectors() {
        // one nearly dependent pair: selection must drop a whole column,
        // leaving the others untouched
        let mut m = DMatrix::<f64>::identity(4, 4);
        m[(2, 3)] = 1.0 - 1e-13;
        m[(3, 2)] = 1.0 - 1e-13;
        let w = mass_whitener(&m, 1e-10).unwrap();
        assert_eq!(w.ncols(), 3);
    }
}
