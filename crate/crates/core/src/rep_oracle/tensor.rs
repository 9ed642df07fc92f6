//! Sparse vectors in tensor powers of a defining representation, indexed by
//! tuples of basis indices. Ordered maps keep every traversal deterministic.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

pub type Tuple = Vec<u8>;

const DROP: f64 = 1e-14;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Tensor(pub BTreeMap<Tuple, f64>);

impl Tensor {
    pub fn basis(t: Tuple) -> Self {
        Tensor(BTreeMap::from([(t, 1.0)]))
    }

    pub fn dot(&self, other: &Tensor) -> f64 {
        let (small, large) = if self.0.len() <= other.0.len() { (self, other) } else { (other, self) };
        small.0.iter().filter_map(|(k, x)| large.0.get(k).map(|y| x * y)).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    #[cfg(test)]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: f64, other: &Tensor) {
        for (k, y) in &other.0 {
            let e = self.0.entry(k.clone()).or_insert(0.0);
            *e += c * y;
        }
        self.0.retain(|_, x| x.abs() > DROP);
    }

    pub fn scaled(&self, c: f64) -> Tensor {
        Tensor(self.0.iter().map(|(k, x)| (k.clone(), c * x)).collect())
    }
}

/// A matrix on the defining representation, stored by columns for applying
/// it as a derivation to tensors.
#[derive(Debug, Clone)]
pub struct Derivation {
    columns: Vec<Vec<(u8, f64)>>,
}

impl Derivation {
    pub fn new(m: &DMatrix<f64>) -> Self {
        let columns = (0..m.ncols())
            .map(|j| {
                (0..m.nrows())
                    .filter(|&i| m[(i, j)] != 0.0)
                    .map(|i| (u8::try_from(i).expect("small defining rep"), m[(i, j)]))
                    .collect()
            })
            .collect();
        Derivation { columns }
    }

    /// `X (v_1 (x) ... (x) v_d) = sum_p v_1 (x) ... X v_p ... (x) v_d`.
    pub fn apply(&self, v: &Tensor) -> Tensor {
        let mut out: BTreeMap<Tuple, f64> = BTreeMap::new();
        for (t, c) in &v.0 {
            for p in 0..t.len() {
                for &(row, x) in &self.columns[usize::from(t[p])] {
                    let mut s = t.clone();
                    s[p] = row;
                    *out.entry(s).or_insert(0.0) += c * x;
                }
            }
        }
        out.retain(|_, x| x.abs() > DROP);
        Tensor(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_on_sym2() {
        // E e2 = e1
        let e = Derivation::new(&DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]));
        let v = Tensor::basis(vec![1, 1]);
        let ev = e.apply(&v);
        assert_eq!(ev.0.len(), 2);
        assert_eq!(ev.0[&vec![0, 1]], 1.0);
        assert_eq!(ev.0[&vec![1, 0]], 1.0);
        assert!(e.apply(&Tensor::basis(vec![0, 0])).is_empty());
        assert_eq!(ev.dot(&ev), 2.0);
    }
}
