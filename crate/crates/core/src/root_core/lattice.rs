//! Integer lattices in a rational vector space.
//!
//! A lattice is stored as `(1/scale) * H` where `H` is the column Hermite
//! normal form of the generators after clearing denominators. Columns of `H`
//! are lower echelon: basis vector `j` has its first non-zero entry (positive)
//! in row `pivots[j]`, and entries to the left of a pivot are reduced into
//! `[0, pivot)`. Membership and canonical residues follow by forward
//! substitution down the pivots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::RootError;
use crate::rational::{common_denominator, is_zero_vec, mat_vec, Q, QMatrix, QVec};

type IVec = Vec<BigInt>;

/// Column-style Hermite normal form of an integer matrix given by its columns.
#[derive(Debug, Clone)]
pub(crate) struct ColumnHnf {
    /// Non-zero columns of the normal form.
    pub basis: Vec<IVec>,
    /// Row of the leading entry of each basis column.
    pub pivots: Vec<usize>,
    /// For each basis column, its integer coordinates in the input columns.
    pub transform: Vec<IVec>,
    /// Basis of the integer relations among the input columns.
    pub kernel: Vec<IVec>,
}

fn unit(m: usize, i: usize) -> IVec {
    (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
}

fn col_sub_assign(a: &mut IVec, c: &BigInt, b: &IVec) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= c * y;
    }
}

pub(crate) fn column_hnf(columns: &[IVec], rows: usize) -> ColumnHnf {
    let m = columns.len();
    let mut cols: Vec<IVec> = columns.to_vec();
    let mut ucols: Vec<IVec> = (0..m).map(|i| unit(m, i)).collect();
    let mut pivots = Vec::new();
    let mut pc = 0;

    for r in 0..rows {
        if pc == m {
            break;
        }
        loop {
            let nz: Vec<usize> = (pc..m).filter(|&j| !cols[j][r].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    cols.swap(pc, j);
                    ucols.swap(pc, j);
                }
                break;
            }
            let best = *nz.iter().min_by_key(|&&j| cols[j][r].abs()).unwrap();
            cols.swap(pc, best);
            ucols.swap(pc, best);
            let (head, tail) = cols.split_at_mut(pc + 1);
            let (uhead, utail) = ucols.split_at_mut(pc + 1);
            let p = &head[pc];
            for (off, col) in tail.iter_mut().enumerate() {
                if col[r].is_zero() {
                    continue;
                }
                let quot = col[r].div_floor(&p[r]);
                col_sub_assign(col, &quot, p);
                col_sub_assign(&mut utail[off], &quot, &uhead[pc]);
            }
        }
        if cols[pc][r].is_zero() {
            continue;
        }
        if cols[pc][r].is_negative() {
            for x in cols[pc].iter_mut() {
                *x = -&*x;
            }
            for x in ucols[pc].iter_mut() {
                *x = -&*x;
            }
        }
        let (head, tail) = cols.split_at_mut(pc);
        let (uhead, utail) = ucols.split_at_mut(pc);
        let p = &tail[0];
        for j in 0..pc {
            let quot = head[j][r].div_floor(&p[r]);
            if !quot.is_zero() {
                col_sub_assign(&mut head[j], &quot, p);
                col_sub_assign(&mut uhead[j], &quot, &utail[0]);
            }
        }
        pivots.push(r);
        pc += 1;
    }

    let kernel = ucols.split_off(pc);
    cols.truncate(pc);
    ColumnHnf { basis: cols, pivots, transform: ucols, kernel }
}

/// Integer relations `c` with `sum_j c_j * columns[j] = 0` for rational columns.
pub(crate) fn integer_relations(columns: &[QVec], rows: usize) -> Vec<IVec> {
    let d = common_denominator(columns.iter().flatten());
    let int_cols: Vec<IVec> = columns
        .iter()
        .map(|c| c.iter().map(|x| (x * &d).to_integer()).collect())
        .collect();
    column_hnf(&int_cols, rows).kernel
}

/// Result of reducing a vector modulo a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Coefficients against the normal-form basis.
    pub coefficients: Vec<BigInt>,
    /// Canonical representative of `v` modulo the lattice; zero iff `v` is a member.
    pub residue: QVec,
}

#[derive(Debug, Clone)]
pub struct IntegerLattice {
    dim: usize,
    generators: Vec<QVec>,
    scale: BigInt,
    hnf: ColumnHnf,
}

impl IntegerLattice {
    pub fn new(dim: usize, generators: Vec<QVec>) -> Result<Self, RootError> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(RootError::DimensionMismatch { expected: dim, found: g.len() });
        }
        let scale = common_denominator(generators.iter().flatten());
        let int_cols: Vec<IVec> = generators
            .iter()
            .map(|g| g.iter().map(|x| (x * &scale).to_integer()).collect())
            .collect();
        let hnf = column_hnf(&int_cols, dim);
        Ok(IntegerLattice { dim, generators, scale, hnf })
    }

    pub fn zero(dim: usize) -> Self {
        IntegerLattice::new(dim, Vec::new()).expect("empty generator set")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.hnf.basis.len()
    }

    pub fn generators(&self) -> &[QVec] {
        &self.generators
    }

    /// Normal-form basis as rational vectors.
    pub fn basis(&self) -> Vec<QVec> {
        self.hnf
            .basis
            .iter()
            .map(|col| col.iter().map(|x| Q::new(x.clone(), self.scale.clone())).collect())
            .collect()
    }

    fn check_dim(&self, v: &[Q]) -> Result<(), RootError> {
        if v.len() != self.dim {
            return Err(RootError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(())
    }

    pub fn reduce(&self, v: &[Q]) -> Result<Reduction, RootError> {
        self.check_dim(v)?;
        let scale = Q::from_integer(self.scale.clone());
        let mut w: QVec = v.iter().map(|x| x * &scale).collect();
        let mut coefficients = Vec::with_capacity(self.rank());
        for (col, &p) in self.hnf.basis.iter().zip(&self.hnf.pivots) {
            let c = (&w[p] / Q::from_integer(col[p].clone())).floor().to_integer();
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(col) {
                    *x -= Q::from_integer(&c * y);
                }
            }
            coefficients.push(c);
        }
        let residue = w.iter().map(|x| x / &scale).collect();
        Ok(Reduction { coefficients, residue })
    }

    /// Exact membership of `v` in the integer span of the generators.
    pub fn contains(&self, v: &[Q]) -> Result<bool, RootError> {
        Ok(is_zero_vec(&self.reduce(v)?.residue))
    }

    /// Integer coordinates of `v` against the original generators, if `v` is a member.
    pub fn coordinates(&self, v: &[Q]) -> Result<Option<Vec<BigInt>>, RootError> {
        let red = self.reduce(v)?;
        if !is_zero_vec(&red.residue) {
            return Ok(None);
        }
        let m = self.generators.len();
        let mut out = vec![BigInt::zero(); m];
        for (c, t) in red.coefficients.iter().zip(&self.hnf.transform) {
            for (o, x) in out.iter_mut().zip(t) {
                *o += c * x;
            }
        }
        Ok(Some(out))
    }

    /// Recombines integer coordinates against the generators.
    pub fn combine(&self, coords: &[BigInt]) -> QVec {
        let mut out = vec![Q::zero(); self.dim];
        for (c, g) in coords.iter().zip(&self.generators) {
            let c = Q::from_integer(c.clone());
            for (o, x) in out.iter_mut().zip(g) {
                *o += &c * x;
            }
        }
        out
    }

    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> bool {
        self.basis().iter().all(|b| other.contains(b).unwrap_or(false))
    }

    pub fn same_as(&self, other: &IntegerLattice) -> bool {
        self.dim == other.dim && self.is_sublattice_of(other) && other.is_sublattice_of(self)
    }

    /// Image of the lattice under a linear map of the ambient space.
    pub fn image(&self, map: &QMatrix) -> IntegerLattice {
        let gens = self.generators.iter().map(|g| mat_vec(map, g)).collect();
        IntegerLattice::new(map.len(), gens).expect("map rows define the dimension")
    }

    pub fn scaled(&self, k: &Q) -> IntegerLattice {
        let gens = self.generators.iter().map(|g| g.iter().map(|x| x * k).collect()).collect();
        IntegerLattice::new(self.dim, gens).expect("same dimension")
    }

    fn sublattice_from_combinations(&self, combos: &[IVec]) -> IntegerLattice {
        let basis = self.basis();
        let gens: Vec<QVec> = combos
            .iter()
            .map(|c| {
                let mut v = vec![Q::zero(); self.dim];
                for (ci, b) in c.iter().zip(&basis) {
                    let ci = Q::from_integer(ci.clone());
                    for (o, x) in v.iter_mut().zip(b) {
                        *o += &ci * x;
                    }
                }
                v
            })
            .filter(|v| !is_zero_vec(v))
            .collect();
        let lat = IntegerLattice::new(self.dim, gens).expect("same dimension");
        let reduced = lat.basis();
        IntegerLattice::new(self.dim, reduced).expect("same dimension")
    }

    /// `{ v in L : map(v) = 0 }`.
    pub fn kernel_sublattice(&self, map: &QMatrix) -> IntegerLattice {
        let images: Vec<QVec> = self.basis().iter().map(|b| mat_vec(map, b)).collect();
        let rows = map.len();
        let rel = integer_relations(&images, rows);
        self.sublattice_from_combinations(&rel)
    }

    /// `{ v in L : f . v in Z for every functional f }` with the plain dot product.
    pub fn integral_sublattice(&self, functionals: &[QVec]) -> IntegerLattice {
        let basis = self.basis();
        let k = basis.len();
        let m = functionals.len();
        if m == 0 {
            return self.clone();
        }
        let values: Vec<QVec> = basis
            .iter()
            .map(|b| functionals.iter().map(|f| f.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
            .collect();
        let d = common_denominator(values.iter().flatten());
        // c in Z^k with A c = d * y for some y in Z^m.
        let mut cols: Vec<IVec> = values
            .iter()
            .map(|col| col.iter().map(|x| (x * &d).to_integer()).collect())
            .collect();
        for i in 0..m {
            let mut e = vec![BigInt::zero(); m];
            e[i] = -d.clone();
            cols.push(e);
        }
        let rel: Vec<IVec> = column_hnf(&cols, m).kernel.into_iter().map(|c| c[..k].to_vec()).collect();
        self.sublattice_from_combinations(&rel)
    }

    pub fn intersection(&self, other: &IntegerLattice) -> Result<IntegerLattice, RootError> {
        if self.dim != other.dim {
            return Err(RootError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let a = self.basis();
        let b = other.basis();
        let mut cols = a.clone();
        cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect()));
        let rel: Vec<IVec> =
            integer_relations(&cols, self.dim).into_iter().map(|c| c[..a.len()].to_vec()).collect();
        Ok(self.sublattice_from_combinations(&rel))
    }

    /// Index `[other : self]` when `self` is a full-rank sublattice of `other`.
    pub fn index_in(&self, other: &IntegerLattice) -> Option<BigInt> {
        if self.rank() != other.rank() || !self.is_sublattice_of(other) {
            return None;
        }
        let ob = other.basis();
        let coords: QMatrix = self
            .basis()
            .iter()
            .map(|b| crate::rational::solve_in_basis(&ob, b))
            .collect::<Option<_>>()?;
        Some(crate::rational::determinant(&coords).abs().to_integer())
    }
}
