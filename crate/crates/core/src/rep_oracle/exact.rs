//! Exact rational model of `sl(2)` acting on `Sym^n(C^2)`, with the
//! `so(2)` generated by `K = [[0, 1], [-1, 0]]`.
//!
//! Basis `m_k = e1^(n-k) e2^k`, of weight `n - 2k` in the fundamental-weight
//! basis. The invariant inner product is `<m_j, m_k> = delta_jk / C(n, k)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{q, rref, QMatrix, QVec, Q};

#[derive(Debug, Clone)]
pub struct ExactSu2 {
    n: usize,
}

impl ExactSu2 {
    pub fn new(n: usize) -> Self {
        ExactSu2 { n }
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// Dynkin label of `m_k`.
    pub fn weight(&self, k: usize) -> i64 {
        self.n as i64 - 2 * k as i64
    }

    /// Matrix of `K = e1 d/de2 - e2 d/de1` in the monomial basis.
    pub fn k_matrix(&self) -> QMatrix {
        let n = self.n;
        let mut m = vec![vec![Q::zero(); n + 1]; n + 1];
        for k in 0..=n {
            // e1 d/de2 (e1^(n-k) e2^k) = k m_(k-1)
            if k > 0 {
                m[k - 1][k] += q(k as i64);
            }
            // -e2 d/de1 (e1^(n-k) e2^k) = -(n-k) m_(k+1)
            if k < n {
                m[k + 1][k] -= q((n - k) as i64);
            }
        }
        m
    }

    /// Basis of the exact null space of `K`.
    pub fn invariants(&self) -> Vec<QVec> {
        let mut a = self.k_matrix();
        let cols = self.dim();
        let pivots = rref(&mut a);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); cols];
                v[f] = Q::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -a[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// Dynkin labels of the monomials carrying a non-zero coefficient.
    pub fn support(&self, v: &[Q]) -> Vec<i64> {
        let mut out: Vec<i64> = (0..self.dim()).filter(|&k| !v[k].is_zero()).map(|k| self.weight(k)).collect();
        out.sort_unstable();
        out
    }

    fn binomial(&self, k: usize) -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(self.n - i) / BigInt::from(i + 1))
    }

    pub fn inner(&self, v: &[Q], u: &[Q]) -> Q {
        (0..self.dim()).fold(Q::zero(), |acc, k| acc + &v[k] * &u[k] / Q::from_integer(self.binomial(k)))
    }

    /// `<P0 v, u>` with `P0` the projection onto weight zero.
    pub fn zero_weight_projection(&self, v: &[Q], u: &[Q]) -> Q {
        if self.n % 2 == 1 {
            return Q::zero();
        }
        let k = self.n / 2;
        &v[k] * &u[k] / Q::from_integer(self.binomial(k))
    }
}
