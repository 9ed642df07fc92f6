//! Exact rational vectors and small dense matrices.
//!
//! Everything symbolic in the crate runs on [`Q`] (big-integer rationals).
//! Matrices are row-major `Vec<Vec<Q>>`; the sizes involved never exceed the
//! ambient dimension of an exceptional root system, so plain Gaussian
//! elimination is all that is needed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;
pub type QVec = Vec<Q>;
pub type QMatrix = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn zeros(n: usize) -> QVec {
    vec![Q::zero(); n]
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> QVec {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Q]) -> QVec {
    a.iter().map(|x| -x).collect()
}

/// `a + c*b`
pub fn axpy(a: &[Q], c: &Q, b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> QVec {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(Q::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<Q>]) -> QMatrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Bilinear form `a^T g b`.
pub fn bilinear(g: &[Vec<Q>], a: &[Q], b: &[Q]) -> Q {
    let gb = mat_vec(g, b);
    a.iter().zip(&gb).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Rank of a set of vectors.
pub fn rank_of(vs: &[QVec]) -> usize {
    rank(vs)
}

pub fn inverse(m: &[Vec<Q>]) -> Option<QMatrix> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                let pivot_row = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    det
}

/// Solves `sum_j c_j * basis[j] = v` exactly. `None` if `v` is outside the span
/// or the basis is linearly dependent.
pub fn solve_in_basis(basis: &[QVec], v: &[Q]) -> Option<QVec> {
    let k = basis.len();
    let n = v.len();
    let mut aug: QMatrix = (0..n)
        .map(|i| {
            let mut row: QVec = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    let mut out = zeros(k);
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = aug[r][k].clone();
    }
    Some(out)
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_integer_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn to_i64_vec(v: &[Q]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
        .collect()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// `p/q` or `p` rendering, matching what [`parse_q`] accepts.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub struct DisplayVec<'a>(pub &'a [Q]);

impl fmt::Display for DisplayVec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_q(x))?;
        }
        write!(f, ")")
    }
}
