//! Explicit matrix models of small complex semisimple Lie algebras with an
//! involution, realized on a faithful defining representation whose standard
//! basis vectors are weight vectors.
//!
//! - `su2`: `sl(2)`, `theta(X) = -X^T`, fixed algebra `so(2)`.
//! - `su3`: `sl(3)` on `C^3 (+) (C^3)*`, `theta(X) = -X^T`, fixed algebra `so(3)`.
//! - `so5`: `so(5)` preserving the anti-diagonal form, `theta = Ad(s)` with `s`
//!   swapping the first and last basis vectors, fixed algebra `so(4)`.
//! - `su2xsu2`: `sl(2) (+) sl(2)` on `C^2 (+) C^2`,
//!   `theta(X, Y) = (phi(Y), phi(X))` with `phi = Ad([[0, 1], [-1, 0]])`;
//!   fixed algebra the twisted diagonal.

use nalgebra::DMatrix;

use super::linalg::{self, bracket, matrix_rank, orthonormalize, NULL_TOLERANCE};
use super::OracleError;
use crate::rational::{self, q, to_f64, QMatrix, QVec};
use crate::root_core::{Factor, RootSystem, Series};
use crate::space_catalog::{AnalyticKind, Flavor, Space, SpaceSpec};

pub const SUPPORTED_MODELS: [&str; 4] = ["su2", "su3", "so5", "su2xsu2"];

const EXACT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Model {
    Su2,
    Su3,
    So5,
    Su2xSu2,
}

#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    pub name: String,
    model: Model,
    /// Root system in the ambient realization used by the symbolic side.
    pub rs: RootSystem,
    /// The involution transported to weights, in ambient coordinates.
    pub theta_weights: QMatrix,
    /// Symbolic space of the model, used for restricted-root data.
    pub space: Space,
    pub basis: Vec<DMatrix<f64>>,
    /// `H_i` with `lambda(H_i) = <lambda, alpha_i>` on weight vectors.
    pub coroots: Vec<DMatrix<f64>>,
    pub raising: Vec<DMatrix<f64>>,
    pub lowering: Vec<DMatrix<f64>>,
    /// `(alpha, X_alpha)` for every positive root, in the order of `rs.positive_roots()`.
    pub root_vectors: Vec<(QVec, DMatrix<f64>)>,
    /// Orthonormal (Frobenius) basis of the fixed algebra of theta.
    pub k_basis: Vec<DMatrix<f64>>,
    /// Orthonormal basis of the (-1)-part of the Cartan subalgebra.
    pub a_basis: Vec<DMatrix<f64>>,
}

fn unit(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

fn diag(xs: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(xs))
}

fn block(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = DMatrix::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(b);
    out
}

fn neg_identity(n: usize) -> QMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { q(-1) } else { q(0) }).collect()).collect()
}

struct Raw {
    rs: RootSystem,
    theta_weights: QMatrix,
    basis: Vec<DMatrix<f64>>,
    coroots: Vec<DMatrix<f64>>,
    raising: Vec<DMatrix<f64>>,
    lowering: Vec<DMatrix<f64>>,
}

fn sl2_parts() -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    (diag(&[1.0, -1.0]), unit(2, 0, 1), unit(2, 1, 0))
}

fn raw_su2() -> Raw {
    let (h, e, f) = sl2_parts();
    Raw {
        rs: RootSystem::new(Series::A, 1).expect("A1"),
        theta_weights: neg_identity(2),
        basis: vec![h.clone(), e.clone(), f.clone()],
        coroots: vec![h],
        raising: vec![e],
        lowering: vec![f],
    }
}

fn raw_su3() -> Raw {
    // X acts on C^3 (+) (C^3)* as X (+) -X^T
    let emb = |x: DMatrix<f64>| block(&x, &(-x.transpose()));
    let mut basis = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                basis.push(emb(unit(3, i, j)));
            }
        }
    }
    let h1 = emb(diag(&[1.0, -1.0, 0.0]));
    let h2 = emb(diag(&[0.0, 1.0, -1.0]));
    basis.push(h1.clone());
    basis.push(h2.clone());
    Raw {
        rs: RootSystem::new(Series::A, 2).expect("A2"),
        theta_weights: neg_identity(3),
        basis,
        coroots: vec![h1, h2],
        raising: vec![emb(unit(3, 0, 1)), emb(unit(3, 1, 2))],
        lowering: vec![emb(unit(3, 1, 0)), emb(unit(3, 2, 1))],
    }
}

fn antidiagonal(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| f64::from(u8::from(i + j + 1 == n)))
}

fn raw_so5() -> Raw {
    let j = antidiagonal(5);
    let mut basis = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            basis.push(&j * (unit(5, a, b) - unit(5, b, a)));
        }
    }
    // Cartan diag(h1, h2, 0, -h2, -h1); simple roots e1 - e2 (long), e2 (short)
    let h1 = diag(&[1.0, -1.0, 0.0, 1.0, -1.0]);
    let h2 = diag(&[0.0, 2.0, 0.0, -2.0, 0.0]);
    let e1 = unit(5, 0, 1) - unit(5, 3, 4);
    let e2 = unit(5, 1, 2) - unit(5, 2, 3);
    let (f1, f2) = (e1.transpose(), e2.transpose());
    Raw {
        rs: RootSystem::new(Series::B, 2).expect("B2"),
        theta_weights: vec![vec![q(-1), q(0)], vec![q(0), q(1)]],
        basis,
        coroots: vec![h1, h2],
        raising: vec![e1, e2],
        lowering: vec![f1, f2],
    }
}

fn raw_su2xsu2() -> Raw {
    let (h, e, f) = sl2_parts();
    let z = DMatrix::zeros(2, 2);
    let left = |x: &DMatrix<f64>| block(x, &z);
    let right = |x: &DMatrix<f64>| block(&z, x);
    let a1 = Factor { series: Series::A, rank: 1 };
    let rows: [[i64; 4]; 4] = [[0, 0, -1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, -1, 0, 0]];
    Raw {
        rs: RootSystem::from_factors(&[a1, a1]).expect("A1xA1"),
        theta_weights: rows.iter().map(|r| rational::qvec(r)).collect(),
        basis: vec![left(&h), left(&e), left(&f), right(&h), right(&e), right(&f)],
        coroots: vec![left(&h), right(&h)],
        raising: vec![left(&e), right(&e)],
        lowering: vec![left(&f), right(&f)],
    }
}

impl Model {
    fn parse(name: &str) -> Option<Self> {
        match name {
            "su2" => Some(Model::Su2),
            "su3" => Some(Model::Su3),
            "so5" => Some(Model::So5),
            "su2xsu2" => Some(Model::Su2xSu2),
            _ => None,
        }
    }

    fn raw(self) -> Raw {
        match self {
            Model::Su2 => raw_su2(),
            Model::Su3 => raw_su3(),
            Model::So5 => raw_so5(),
            Model::Su2xSu2 => raw_su2xsu2(),
        }
    }

    fn theta(self, x: &DMatrix<f64>) -> DMatrix<f64> {
        match self {
            Model::Su2 | Model::Su3 => -x.transpose(),
            Model::So5 => {
                let mut s = DMatrix::<f64>::identity(5, 5);
                s.swap_rows(0, 4);
                &s * x * &s
            }
            Model::Su2xSu2 => {
                let w = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
                let w_inv = w.transpose();
                let phi = |m: DMatrix<f64>| &w * m * &w_inv;
                let a = x.view((0, 0), (2, 2)).into_owned();
                let b = x.view((2, 2), (2, 2)).into_owned();
                block(&phi(b), &phi(a))
            }
        }
    }
}

impl MatrixAlgebra {
    pub fn defining_dim(&self) -> usize {
        self.basis[0].nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn apply_theta(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        self.model.theta(x)
    }

    /// Coordinates of `x` against `basis`, if `x` lies in the algebra.
    pub fn coordinates(&self, x: &DMatrix<f64>) -> Option<nalgebra::DVector<f64>> {
        linalg::coordinates(&self.basis, x, 1e-9)
    }

    /// Dynkin labels of the standard basis vectors of the defining representation.
    pub fn defining_weights(&self) -> Vec<Vec<i64>> {
        (0..self.defining_dim())
            .map(|k| self.coroots.iter().map(|h| h[(k, k)].round() as i64).collect())
            .collect()
    }

    /// Model element `H_x` with `lambda(H_x) = (lambda, x)` for a vector `x` of
    /// the root span.
    pub fn cartan_element(&self, x: &[crate::rational::Q]) -> DMatrix<f64> {
        // x = sum c_i alpha_i^vee with alpha_i^vee = 2 alpha_i / (alpha_i, alpha_i)
        let c = self.rs.simple_root_coords(x).expect("x lies in the root span");
        let n = self.defining_dim();
        self.rs.simple_roots().iter().zip(&c).zip(&self.coroots).fold(DMatrix::zeros(n, n), |acc, ((a, ci), h)| {
            let len2 = self.rs.inner(a, a);
            acc + h * to_f64(&(ci * &len2 / q(2)))
        })
    }

    fn validate(&self) -> Result<(), OracleError> {
        let bad = |msg: String| Err(OracleError::InvalidModel(format!("{}: {msg}", self.name)));
        let expected = self.rs.rank() + 2 * self.rs.positive_roots().len();
        if matrix_rank(&self.basis, NULL_TOLERANCE) != expected || self.basis.len() != expected {
            return bad(format!("basis does not span a {expected}-dimensional algebra"));
        }
        for x in &self.basis {
            for y in &self.basis {
                if self.coordinates(&bracket(x, y)).is_none() {
                    return bad("basis is not closed under the bracket".into());
                }
            }
        }
        for h in &self.coroots {
            if (h - DMatrix::from_diagonal(&h.diagonal())).norm() > EXACT {
                return bad("Cartan elements must be diagonal".into());
            }
        }
        for (i, h) in self.coroots.iter().enumerate() {
            for (j, (e, f)) in self.raising.iter().zip(&self.lowering).enumerate() {
                let c = to_f64(&self.rs.dynkin_labels(&self.rs.simple_roots()[j])[i]);
                if (bracket(h, e) - e * c).norm() > EXACT || (bracket(h, f) + f * c).norm() > EXACT {
                    return bad(format!("[H_{i}, X_(+-{j})] does not match the Cartan matrix"));
                }
            }
        }
        for (alpha, x) in &self.root_vectors {
            let labels = self.rs.dynkin_labels(alpha);
            for (h, c) in self.coroots.iter().zip(&labels) {
                if (bracket(h, x) - x * to_f64(c)).norm() > EXACT || x.norm() < 0.5 {
                    return bad(format!("root vector for {} is wrong", rational::DisplayVec(alpha)));
                }
            }
        }
        for x in &self.basis {
            let tx = self.apply_theta(x);
            if (self.apply_theta(&tx) - x).norm() > EXACT {
                return bad("theta is not an involution".into());
            }
            if self.coordinates(&tx).is_none() {
                return bad("theta does not preserve the algebra".into());
            }
            for y in &self.basis {
                let lhs = self.apply_theta(&bracket(x, y));
                let rhs = bracket(&tx, &self.apply_theta(y));
                if (lhs - rhs).norm() > EXACT {
                    return bad("theta is not an automorphism".into());
                }
            }
        }
        for k in &self.k_basis {
            if (self.apply_theta(k) - k).norm() > EXACT {
                return bad("k basis is not fixed by theta".into());
            }
        }
        let anti: Vec<DMatrix<f64>> = self.basis.iter().map(|x| x - self.apply_theta(x)).collect();
        if self.k_basis.len() + matrix_rank(&anti, NULL_TOLERANCE) != self.dim() {
            return bad("k basis does not exhaust the fixed points of theta".into());
        }
        // theta on weights is the transpose of theta on the Cartan subalgebra
        let weights = self.defining_weights();
        for (i, h) in self.coroots.iter().enumerate() {
            let th = self.apply_theta(h);
            for (k, w) in weights.iter().enumerate() {
                let lambda = self.rs.weight_from_dynkin(w).expect("rank matches");
                let image = rational::mat_vec(&self.theta_weights, &lambda.0);
                let lhs = to_f64(&self.rs.dynkin_labels(&image)[i]);
                if (lhs - th[(k, k)]).abs() > EXACT {
                    return bad("theta on weights disagrees with theta on the Cartan subalgebra".into());
                }
            }
        }
        Ok(())
    }
}

fn root_vectors(rs: &RootSystem, raising: &[DMatrix<f64>]) -> Result<Vec<(QVec, DMatrix<f64>)>, OracleError> {
    let coords = rs.positive_root_coords();
    let mut out: Vec<(QVec, DMatrix<f64>)> = Vec::new();
    for (root, c) in rs.positive_roots().iter().zip(coords) {
        let height: i64 = c.iter().sum();
        if height == 1 {
            let i = c.iter().position(|&x| x == 1).expect("simple root");
            out.push((root.clone(), raising[i].clone()));
            continue;
        }
        let found = (0..c.len()).find_map(|i| {
            if c[i] == 0 {
                return None;
            }
            let mut lower = c.clone();
            lower[i] -= 1;
            let k = coords.iter().position(|d| d == &lower)?;
            let x = bracket(&raising[i], &out[k].1);
            (x.norm() > 0.5).then_some(x)
        });
        match found {
            Some(x) => out.push((root.clone(), x)),
            None => {
                return Err(OracleError::InvalidModel(format!(
                    "no root vector for {}",
                    rational::DisplayVec(root)
                )))
            }
        }
    }
    Ok(out)
}

/// Builds and validates one of [`SUPPORTED_MODELS`].
pub fn build_algebra(name: &str) -> Result<MatrixAlgebra, OracleError> {
    let model = Model::parse(name).ok_or_else(|| OracleError::UnsupportedModel(name.to_string()))?;
    let raw = model.raw();
    let spec = SpaceSpec::new(name, raw.rs.clone(), raw.theta_weights.clone(), AnalyticKind::Weight, Flavor::K0);
    let space = Space::new(spec).map_err(|v| OracleError::InvalidModel(format!("{name}: {v}")))?;
    let fixed: Vec<DMatrix<f64>> = raw.basis.iter().map(|x| (x + model.theta(x)) * 0.5).collect();
    let k_basis = orthonormal_matrices(&fixed);
    let anti_cartan: Vec<DMatrix<f64>> = raw.coroots.iter().map(|h| (h - model.theta(h)) * 0.5).collect();
    let a_basis = orthonormal_matrices(&anti_cartan);
    let root_vectors = root_vectors(&raw.rs, &raw.raising)?;
    let alg = MatrixAlgebra {
        name: name.to_string(),
        model,
        rs: raw.rs,
        theta_weights: raw.theta_weights,
        space,
        basis: raw.basis,
        coroots: raw.coroots,
        raising: raw.raising,
        lowering: raw.lowering,
        root_vectors,
        k_basis,
        a_basis,
    };
    alg.validate()?;
    Ok(alg)
}

fn orthonormal_matrices(ms: &[DMatrix<f64>]) -> Vec<DMatrix<f64>> {
    let n = ms.first().map_or(0, DMatrix::nrows);
    let flat: Vec<_> = ms.iter().map(linalg::flatten).collect();
    orthonormalize(&flat, NULL_TOLERANCE).iter().map(|v| linalg::unflatten(v, n)).collect()
}
