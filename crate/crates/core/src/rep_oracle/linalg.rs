//! Floating-point null spaces and orthonormalization.

use nalgebra::{DMatrix, DVector};

/// Singular values below this count as zero.
pub const NULL_TOLERANCE: f64 = 1e-9;

/// Orthonormal basis of `{ x : a x = 0 }`.
pub fn null_space(a: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let cols = a.ncols();
    if cols == 0 {
        return Vec::new();
    }
    if a.nrows() == 0 || a.iter().all(|x| *x == 0.0) {
        return (0..cols).map(|i| DVector::from_fn(cols, |j, _| f64::from(u8::from(i == j)))).collect();
    }
    // pad to at least square so that V is complete
    let rows = a.nrows().max(cols);
    let mut padded = DMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let found: Vec<DVector<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s < tol)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect();
    orthonormalize(&found, tol)
}

/// Two-pass Gram-Schmidt in the given order; drops vectors whose residual
/// norm falls below `tol`.
pub fn orthonormalize(vs: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &out {
                let c = b.dot(&w);
                w.axpy(-c, b, 1.0);
            }
        }
        let n = w.norm();
        if n > tol {
            out.push(w / n);
        }
    }
    out
}

/// Numerical rank of a set of matrices viewed as vectors.
pub fn matrix_rank(ms: &[DMatrix<f64>], tol: f64) -> usize {
    let flat: Vec<DVector<f64>> = ms.iter().map(flatten).collect();
    orthonormalize(&flat, tol).len()
}

pub fn flatten(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(m.len(), m.iter().copied())
}

pub fn unflatten(v: &DVector<f64>, n: usize) -> DMatrix<f64> {
    DMatrix::from_iterator(n, n, v.iter().copied())
}

/// Least-squares coordinates of `target` against `basis`, `None` when the
/// residual exceeds `tol`.
pub fn coordinates(basis: &[DMatrix<f64>], target: &DMatrix<f64>, tol: f64) -> Option<DVector<f64>> {
    let n = target.len();
    let a = DMatrix::from_fn(n, basis.len(), |i, j| basis[j].as_slice()[i]);
    let b = flatten(target);
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&b, 1e-12).ok()?;
    ((&a * &x - b).norm() <= tol).then_some(x)
}

pub fn bracket(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}
