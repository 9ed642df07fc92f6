//! Root systems with exact rational arithmetic.
//!
//! Classical series are realized in orthogonal coordinates (type `A_n` inside
//! the sum-zero hyperplane of `Q^{n+1}`); exceptional series use the
//! simple-root basis with the symmetrized Cartan matrix as Gram matrix.
//! Reducible systems are direct sums with block-diagonal Gram matrices.
//! Long roots always have squared length 2.

mod lattice;
mod weights;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use lattice::{IntegerLattice, Reduction};

use crate::rational::{
    self, bilinear, frac, inverse, mat_vec, q, qvec, scale, sub, zeros, DisplayVec, Q, QMatrix,
    QVec,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("invalid root system {series}{rank}")]
    InvalidSeriesRank { series: char, rank: usize },
    #[error("unknown series '{0}'")]
    UnknownSeries(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("pairing against the zero vector")]
    ZeroRoot,
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not in the analytic lattice")]
    NotAnalytic(String),
    #[error("weight {0} is not in the span of the roots")]
    OutsideRootSpan(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self, n: usize) -> usize {
        match self {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }
}

impl FromStr for Series {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            _ => Err(RootError::UnknownSeries(s.to_string())),
        }
    }
}

/// A weight in the ambient realization of a root system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub QVec);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(zeros(dim))
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        rational::is_zero_vec(&self.0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(rational::add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(sub(&self.0, &other.0))
    }

    pub fn neg(&self) -> Weight {
        Weight(rational::neg(&self.0))
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight(scale(c, &self.0))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", DisplayVec(&self.0))
    }
}

impl From<QVec> for Weight {
    fn from(v: QVec) -> Self {
        Weight(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub series: Series,
    pub rank: usize,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    factors: Vec<Factor>,
    dim: usize,
    simple: Vec<QVec>,
    gram: QMatrix,
    cartan: Vec<Vec<i64>>,
    positive: Vec<QVec>,
    positive_coords: Vec<Vec<i64>>,
    fundamental: Vec<QVec>,
    simple_gram_inv: QMatrix,
}

fn cartan_of(series: Series, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match series {
        Series::A | Series::B | Series::C | Series::D | Series::F | Series::G => {
            let chain = if series == Series::D { n - 1 } else { n };
            for i in 1..chain {
                link(&mut c, i - 1, i);
            }
        }
        Series::E => {
            // Bourbaki: 1-3-4-5-...-n with 2 attached to 4
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 3..n {
                link(&mut c, i - 1, i);
            }
        }
    }
    match series {
        Series::B => c[n - 1][n - 2] = -2,
        Series::C => c[n - 2][n - 1] = -2,
        Series::D => {
            c[n - 1][n - 3] = -1;
            c[n - 3][n - 1] = -1;
        }
        Series::F => c[1][2] = -2,
        Series::G => c[1][0] = -3,
        _ => {}
    }
    c
}

/// Ambient dimension, simple roots and Gram matrix of one simple factor.
fn realize(series: Series, n: usize) -> (usize, Vec<QVec>, QMatrix) {
    let e = |dim: usize, i: usize| -> QVec {
        let mut v = zeros(dim);
        v[i] = Q::one();
        v
    };
    let diff = |dim: usize, i: usize, j: usize| -> QVec { sub(&e(dim, i), &e(dim, j)) };
    match series {
        Series::A => {
            let dim = n + 1;
            let simple = (0..n).map(|i| diff(dim, i, i + 1)).collect();
            (dim, simple, rational::identity(dim))
        }
        Series::B => {
            let mut simple: Vec<QVec> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            simple.push(e(n, n - 1));
            (n, simple, rational::identity(n))
        }
        Series::C => {
            let mut simple: Vec<QVec> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            simple.push(scale(&q(2), &e(n, n - 1)));
            let half = frac(1, 2);
            let gram = rational::identity(n).into_iter().map(|r| scale(&half, &r)).collect();
            (n, simple, gram)
        }
        Series::D => {
            let mut simple: Vec<QVec> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            simple.push(rational::add(&e(n, n - 2), &e(n, n - 1)));
            (n, simple, rational::identity(n))
        }
        Series::E | Series::F | Series::G => {
            let c = cartan_of(series, n);
            // half squared lengths: long roots 1
            let half_len: Vec<Q> = match series {
                Series::F => vec![q(1), q(1), frac(1, 2), frac(1, 2)],
                Series::G => vec![frac(1, 3), q(1)],
                _ => vec![q(1); n],
            };
            let gram = (0..n)
                .map(|i| (0..n).map(|j| q(c[i][j]) * &half_len[j]).collect())
                .collect();
            let simple = (0..n).map(|i| e(n, i)).collect();
            (n, simple, gram)
        }
    }
}

impl RootSystem {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootError> {
        RootSystem::from_factors(&[Factor { series, rank }])
    }

    /// Direct sum of simple factors, in order.
    pub fn from_factors(factors: &[Factor]) -> Result<Self, RootError> {
        let mut dim = 0;
        let mut blocks = Vec::new();
        for f in factors {
            if !f.series.valid_rank(f.rank) {
                return Err(RootError::InvalidSeriesRank { series: f.series.letter(), rank: f.rank });
            }
            let (d, simple, gram) = realize(f.series, f.rank);
            blocks.push((dim, d, simple, gram));
            dim += d;
        }
        let mut simple = Vec::new();
        let mut gram = vec![zeros(dim); dim];
        for (off, d, s, g) in blocks {
            for root in s {
                let mut v = zeros(dim);
                v[off..off + d].clone_from_slice(&root);
                simple.push(v);
            }
            for i in 0..d {
                for j in 0..d {
                    gram[off + i][off + j] = g[i][j].clone();
                }
            }
        }
        Ok(RootSystem::from_realization(factors.to_vec(), gram, simple))
    }

    fn from_realization(factors: Vec<Factor>, gram: QMatrix, simple: Vec<QVec>) -> Self {
        let dim = gram.len();
        let r = simple.len();
        let ip = |a: &QVec, b: &QVec| bilinear(&gram, a, b);
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let v = q(2) * ip(&simple[i], &simple[j]) / ip(&simple[j], &simple[j]);
                        rational::to_i64_vec(&[v]).expect("Cartan entries are integers")[0]
                    })
                    .collect()
            })
            .collect();
        let positive_coords = positive_roots_from_cartan(&cartan);
        let positive = positive_coords
            .iter()
            .map(|c| {
                c.iter().zip(&simple).fold(zeros(dim), |acc, (&k, a)| rational::axpy(&acc, &q(k), a))
            })
            .collect();
        let cinv = inverse(&cartan.iter().map(|row| qvec(row)).collect::<Vec<_>>())
            .expect("Cartan matrix is invertible");
        // omega_i = sum_k (C^{-1})_{ik} alpha_k
        let fundamental = cinv
            .iter()
            .map(|row| row.iter().zip(&simple).fold(zeros(dim), |acc, (c, a)| rational::axpy(&acc, c, a)))
            .collect();
        let simple_gram: QMatrix =
            simple.iter().map(|a| simple.iter().map(|b| ip(a, b)).collect()).collect();
        let simple_gram_inv = inverse(&simple_gram).expect("inner product is positive definite");
        RootSystem {
            factors,
            dim,
            simple,
            gram,
            cartan,
            positive,
            positive_coords,
            fundamental,
            simple_gram_inv,
        }
    }

    /// Same root system with the inner product multiplied by `factor`.
    pub fn rescaled(&self, factor: &Q) -> RootSystem {
        let gram = self.gram.iter().map(|r| scale(factor, r)).collect();
        RootSystem::from_realization(self.factors.clone(), gram, self.simple.clone())
    }

    pub fn label(&self) -> String {
        self.factors.iter().map(ToString::to_string).collect::<Vec<_>>().join("x")
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn simple_roots(&self) -> &[QVec] {
        &self.simple
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[QVec] {
        &self.positive
    }

    /// Positive roots in simple-root coordinates, ordered by height.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_coords
    }

    /// All roots: positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<QVec> {
        let mut all = self.positive.clone();
        all.extend(self.positive.iter().map(|r| rational::neg(r)));
        all
    }

    pub fn highest_root(&self) -> Option<&QVec> {
        if self.factors.len() == 1 {
            self.positive.last()
        } else {
            None
        }
    }

    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        bilinear(&self.gram, a, b)
    }

    /// `<lambda, beta> = 2 (lambda, beta) / (beta, beta)`.
    pub fn pairing(&self, lambda: &[Q], beta: &[Q]) -> Result<Q, RootError> {
        if lambda.len() != self.dim || beta.len() != self.dim {
            return Err(RootError::DimensionMismatch {
                expected: self.dim,
                found: if lambda.len() != self.dim { lambda.len() } else { beta.len() },
            });
        }
        let bb = self.inner(beta, beta);
        if bb.is_zero() {
            return Err(RootError::ZeroRoot);
        }
        Ok(q(2) * self.inner(lambda, beta) / bb)
    }

    /// Reflection of `lambda` in the hyperplane orthogonal to `beta`.
    pub fn reflect(&self, lambda: &[Q], beta: &[Q]) -> QVec {
        let c = q(2) * self.inner(lambda, beta) / self.inner(beta, beta);
        rational::axpy(lambda, &-c, beta)
    }

    /// Matrix of the reflection `s_beta` on the ambient space.
    pub fn reflection_matrix(&self, beta: &[Q]) -> QMatrix {
        let cols: Vec<QVec> = (0..self.dim)
            .map(|j| {
                let mut e = zeros(self.dim);
                e[j] = Q::one();
                self.reflect(&e, beta)
            })
            .collect();
        rational::transpose(&cols)
    }

    pub fn is_dominant(&self, lambda: &[Q]) -> bool {
        self.simple.iter().all(|a| !self.inner(lambda, a).is_negative())
    }

    /// Coordinates in the fundamental-weight basis, `<lambda, alpha_i>`.
    pub fn dynkin_labels(&self, lambda: &[Q]) -> QVec {
        self.simple
            .iter()
            .map(|a| q(2) * self.inner(lambda, a) / self.inner(a, a))
            .collect()
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        self.fundamental.iter().cloned().map(Weight).collect()
    }

    pub fn weight_from_dynkin(&self, labels: &[i64]) -> Result<Weight, RootError> {
        if labels.len() != self.rank() {
            return Err(RootError::DimensionMismatch { expected: self.rank(), found: labels.len() });
        }
        let v = labels
            .iter()
            .zip(&self.fundamental)
            .fold(zeros(self.dim), |acc, (&k, w)| rational::axpy(&acc, &q(k), w));
        Ok(Weight(v))
    }

    /// Coordinates against the simple roots; `None` outside their span.
    pub fn simple_root_coords(&self, lambda: &[Q]) -> Option<QVec> {
        let rhs: QVec = self.simple.iter().map(|a| self.inner(a, lambda)).collect();
        let c = mat_vec(&self.simple_gram_inv, &rhs);
        let back = c.iter().zip(&self.simple).fold(zeros(self.dim), |acc, (ci, a)| rational::axpy(&acc, ci, a));
        (back == lambda).then_some(c)
    }

    pub fn in_root_span(&self, lambda: &[Q]) -> bool {
        self.simple_root_coords(lambda).is_some()
    }

    /// Orthogonal projection onto the span of the roots.
    pub fn project_to_root_span(&self, v: &[Q]) -> QVec {
        let rhs: QVec = self.simple.iter().map(|a| self.inner(a, v)).collect();
        let c = mat_vec(&self.simple_gram_inv, &rhs);
        c.iter().zip(&self.simple).fold(zeros(self.dim), |acc, (ci, a)| rational::axpy(&acc, ci, a))
    }

    pub fn root_lattice(&self) -> IntegerLattice {
        IntegerLattice::new(self.dim, self.simple.clone()).expect("simple roots have ambient dimension")
    }

    pub fn weight_lattice(&self) -> IntegerLattice {
        IntegerLattice::new(self.dim, self.fundamental.clone()).expect("weights have ambient dimension")
    }

    /// Half the sum of positive roots.
    pub fn rho(&self) -> QVec {
        self.fundamental.iter().fold(zeros(self.dim), |acc, w| rational::add(&acc, w))
    }

    /// Moves `lambda` into the dominant chamber of the reflection group generated by
    /// `reflections` (a simple system), returning the result and the indices of the
    /// reflections applied in order.
    pub fn dominant_representative(&self, lambda: &Weight, reflections: &[QVec]) -> (Weight, Vec<usize>) {
        let mut cur = lambda.0.clone();
        let mut word = Vec::new();
        while let Some(i) = reflections.iter().position(|b| self.inner(&cur, b).is_negative()) {
            cur = self.reflect(&cur, &reflections[i]);
            word.push(i);
        }
        (Weight(cur), word)
    }

    /// Applies the reflections named by `word` (indices into `reflections`) in order.
    pub fn apply_word(&self, lambda: &Weight, reflections: &[QVec], word: &[usize]) -> Weight {
        Weight(word.iter().fold(lambda.0.clone(), |acc, &i| self.reflect(&acc, &reflections[i])))
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, omega: &Weight) -> BigInt {
        let rho = self.rho();
        let shifted = rational::add(&omega.0, &rho);
        let d = self
            .positive
            .iter()
            .fold(Q::one(), |acc, a| acc * self.inner(&shifted, a) / self.inner(&rho, a));
        d.to_integer()
    }

    /// Set of root vectors as a lookup table.
    pub fn root_set(&self) -> HashSet<QVec> {
        self.roots().into_iter().collect()
    }

    pub fn require_dominant(&self, omega: &Weight) -> Result<(), RootError> {
        if omega.0.len() != self.dim {
            return Err(RootError::DimensionMismatch { expected: self.dim, found: omega.0.len() });
        }
        if !self.is_dominant(&omega.0) {
            return Err(RootError::NotDominant(omega.to_string()));
        }
        Ok(())
    }

    /// Weights of `V(omega)` without multiplicity, sorted.
    pub fn weights_of_rep(&self, omega: &Weight, analytic: &IntegerLattice) -> Result<Vec<Weight>, RootError> {
        self.require_dominant(omega)?;
        if !analytic.contains(&omega.0)? {
            return Err(RootError::NotAnalytic(omega.to_string()));
        }
        Ok(weights::saturate(self, omega).into_iter().collect::<BTreeSet<_>>().into_iter().collect())
    }

    /// Highest weight of the dual representation, `-w0(omega)`.
    pub fn dual_highest_weight(&self, omega: &Weight) -> Result<Weight, RootError> {
        self.require_dominant(omega)?;
        Ok(self.dominant_representative(&omega.neg(), &self.simple).0)
    }

    /// Whether `lambda` is a weight of `V(omega)`, without enumerating the weights.
    pub fn is_weight(&self, omega: &Weight, lambda: &Weight) -> Result<bool, RootError> {
        self.require_dominant(omega)?;
        Ok(weights::is_weight_of(self, omega, lambda))
    }

    /// Matrix of the longest Weyl group element on the ambient space.
    pub fn longest_element_matrix(&self) -> QMatrix {
        let (_, word) = self.dominant_representative(&Weight(rational::neg(&self.rho())), &self.simple);
        let cols: Vec<QVec> = (0..self.dim)
            .map(|i| {
                let e: QVec = (0..self.dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect();
                self.apply_word(&Weight(e), &self.simple, &word).0
            })
            .collect();
        rational::transpose(&cols)
    }
}

/// Positive roots in simple-root coordinates via root strings, ordered by height.
fn positive_roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut level = roots.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..r {
                // <beta, alpha_i> = sum_k beta_k C_{k i}
                let pairing: i64 = (0..r).map(|k| beta[k] * cartan[k][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        level = next;
    }
    roots
}
