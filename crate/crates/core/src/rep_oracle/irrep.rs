//! Irreducible representations cut out of tensor powers of a defining
//! representation: find a highest-weight vector of the requested weight,
//! lower it until the span stops growing, orthonormalize weight space by
//! weight space.

use std::collections::{BTreeMap, VecDeque};

use nalgebra::{DMatrix, DVector};

use super::algebra::MatrixAlgebra;
use super::linalg::{null_space, NULL_TOLERANCE};
use super::tensor::{Derivation, Tensor, Tuple};
use super::OracleError;
use crate::rational::to_i64_vec;
use crate::root_core::Weight;

/// Largest tensor degree searched for a highest-weight vector.
pub const DEGREE_CAP: usize = 6;

#[derive(Debug, Clone)]
pub struct Irrep {
    pub highest: Weight,
    pub labels: Vec<i64>,
    /// Tensor degree the carrier was found in.
    pub degree: usize,
    /// Weight of each orthonormal basis vector, as ambient weights and Dynkin labels.
    pub weights: Vec<Weight>,
    pub weight_labels: Vec<Vec<i64>>,
    basis: Vec<Tensor>,
    /// Representation matrices of `alg.basis`, in the same order.
    pub matrices: Vec<DMatrix<f64>>,
}

impl Irrep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of an arbitrary element of the algebra, given on the defining
    /// representation, in the orthonormal carrier basis.
    pub fn represent(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let d = Derivation::new(x);
        let n = self.dim();
        let images: Vec<Tensor> = self.basis.iter().map(|b| d.apply(b)).collect();
        DMatrix::from_fn(n, n, |i, j| self.basis[i].dot(&images[j]))
    }

    /// Indices of basis vectors grouped by weight.
    pub fn weight_spaces(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(i);
        }
        out
    }

    /// Components of `v` grouped by weight.
    pub fn components(&self, v: &DVector<f64>) -> BTreeMap<Weight, DVector<f64>> {
        self.weight_spaces()
            .into_iter()
            .map(|(w, idx)| (w, DVector::from_iterator(idx.len(), idx.iter().map(|&i| v[i]))))
            .collect()
    }
}

fn tuple_weight(weights: &[Vec<i64>], t: &[u8]) -> Vec<i64> {
    let rank = weights.first().map_or(0, Vec::len);
    t.iter().fold(vec![0; rank], |acc, &k| acc.iter().zip(&weights[usize::from(k)]).map(|(a, b)| a + b).collect())
}

/// All index tuples of length `degree` whose weights add up to `target`.
fn tuples_of_weight(weights: &[Vec<i64>], degree: usize, target: &[i64]) -> Vec<Tuple> {
    fn go(weights: &[Vec<i64>], left: usize, acc: Vec<i64>, prefix: &mut Tuple, target: &[i64], out: &mut Vec<Tuple>) {
        if left == 0 {
            if acc == target {
                out.push(prefix.clone());
            }
            return;
        }
        for (k, w) in weights.iter().enumerate() {
            prefix.push(u8::try_from(k).expect("small defining rep"));
            let next = acc.iter().zip(w).map(|(a, b)| a + b).collect();
            go(weights, left - 1, next, prefix, target, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, degree, vec![0; target.len()], &mut Vec::new(), target, &mut out);
    out
}

fn highest_weight_vector(alg: &MatrixAlgebra, labels: &[i64], raising: &[Derivation]) -> Option<(usize, Tensor)> {
    let weights = alg.defining_weights();
    for degree in 0..=DEGREE_CAP {
        let space = tuples_of_weight(&weights, degree, labels);
        if space.is_empty() {
            continue;
        }
        let images: Vec<Vec<Tensor>> =
            raising.iter().map(|e| space.iter().map(|t| e.apply(&Tensor::basis(t.clone()))).collect()).collect();
        let mut rows: BTreeMap<(usize, Tuple), usize> = BTreeMap::new();
        for (i, imgs) in images.iter().enumerate() {
            for img in imgs {
                for t in img.0.keys() {
                    let n = rows.len();
                    rows.entry((i, t.clone())).or_insert(n);
                }
            }
        }
        let mut a = DMatrix::zeros(rows.len(), space.len());
        for (i, imgs) in images.iter().enumerate() {
            for (j, img) in imgs.iter().enumerate() {
                for (t, x) in &img.0 {
                    a[(rows[&(i, t.clone())], j)] = *x;
                }
            }
        }
        if let Some(v) = null_space(&a, NULL_TOLERANCE).into_iter().next() {
            let mut tensor = Tensor::default();
            for (t, x) in space.iter().zip(v.iter()) {
                if x.abs() > 1e-14 {
                    tensor.0.insert(t.clone(), *x);
                }
            }
            return Some((degree, tensor));
        }
    }
    None
}

/// Builds `V(omega)` for a dominant weight `omega` of the model's root system.
pub fn build_irrep(alg: &MatrixAlgebra, omega: &Weight) -> Result<Irrep, OracleError> {
    let rs = &alg.rs;
    rs.require_dominant(omega).map_err(|e| OracleError::NotDominant(e.to_string()))?;
    let labels = to_i64_vec(&rs.dynkin_labels(&omega.0)).ok_or_else(|| OracleError::NotDominant(omega.to_string()))?;
    let raising: Vec<Derivation> = alg.raising.iter().map(Derivation::new).collect();
    let lowering: Vec<Derivation> = alg.lowering.iter().map(Derivation::new).collect();
    let (degree, hw) = highest_weight_vector(alg, &labels, &raising)
        .ok_or_else(|| OracleError::Unreachable { omega: omega.to_string(), cap: DEGREE_CAP })?;

    let defining = alg.defining_weights();
    let mut spaces: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    let mut basis: Vec<Tensor> = Vec::new();
    let mut weight_labels: Vec<Vec<i64>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut add = |v: Tensor, w: Vec<i64>, basis: &mut Vec<Tensor>, weight_labels: &mut Vec<Vec<i64>>| -> Option<usize> {
        let existing = spaces.entry(w.clone()).or_default();
        let mut r = v;
        for _ in 0..2 {
            for &i in existing.iter() {
                let c = basis[i].dot(&r);
                r.axpy(-c, &basis[i]);
            }
        }
        let n = r.norm();
        if n <= NULL_TOLERANCE {
            return None;
        }
        basis.push(r.scaled(1.0 / n));
        weight_labels.push(w);
        existing.push(basis.len() - 1);
        Some(basis.len() - 1)
    };
    if let Some(i) = add(hw, labels.clone(), &mut basis, &mut weight_labels) {
        queue.push_back(i);
    }
    let expected = rs.weyl_dimension(omega);
    while let Some(i) = queue.pop_front() {
        for f in &lowering {
            let v = f.apply(&basis[i]);
            let Some(t) = v.0.keys().next() else { continue };
            let w = tuple_weight(&defining, t);
            if let Some(j) = add(v, w, &mut basis, &mut weight_labels) {
                queue.push_back(j);
            }
        }
        if num_bigint::BigInt::from(basis.len()) > expected {
            break;
        }
    }
    if num_bigint::BigInt::from(basis.len()) != expected {
        return Err(OracleError::DimensionMismatch { found: basis.len(), expected: expected.to_string() });
    }
    let weights = weight_labels
        .iter()
        .map(|l| rs.weight_from_dynkin(l).expect("rank matches"))
        .collect();
    let mut irrep = Irrep { highest: omega.clone(), labels, degree, weights, weight_labels, basis, matrices: Vec::new() };
    irrep.matrices = alg.basis.iter().map(|x| irrep.represent(x)).collect();
    Ok(irrep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep_oracle::build_algebra;

    #[test]
    fn small_dimensions() {
        let su2 = build_algebra("su2").unwrap();
        let su3 = build_algebra("su3").unwrap();
        let w2 = |l: &[i64]| su2.rs.weight_from_dynkin(l).unwrap();
        let w3 = |l: &[i64]| su3.rs.weight_from_dynkin(l).unwrap();
        assert_eq!(build_irrep(&su2, &w2(&[2])).unwrap().dim(), 3);
        assert_eq!(build_irrep(&su3, &w3(&[1, 1])).unwrap().dim(), 8);
        let triv = build_irrep(&su3, &w3(&[0, 0])).unwrap();
        assert_eq!(triv.dim(), 1);
        assert!(triv.matrices.iter().all(|m| m.norm() < 1e-12));
    }

    #[test]
    fn unreachable_weight() {
        let su2 = build_algebra("su2").unwrap();
        let w = su2.rs.weight_from_dynkin(&[7]).unwrap();
        assert!(matches!(build_irrep(&su2, &w), Err(OracleError::Unreachable { .. })));
        // spin representation of so(5) is not in tensor powers of the vector representation
        let so5 = build_algebra("so5").unwrap();
        let spin = so5.rs.weight_from_dynkin(&[0, 1]).unwrap();
        assert!(matches!(build_irrep(&so5, &spin), Err(OracleError::Unreachable { .. })));
    }
}
