//! Compact symmetric spaces as (root system, involution, analytic lattice,
//! invariance flavor), and the data derived from them: restricted roots, the
//! restricted Weyl group, the lattices `Lambda = {rho - theta rho}` and
//! `LambdaHat = {mu - theta mu}`, and the basis `x_i` dual to the simple
//! restricted roots.

mod file;

use std::collections::HashSet;
use std::fmt;

use num_traits::Signed;
use thiserror::Error;

pub use file::{bundled_catalog, load_catalog, parse_catalog, CatalogError, BUNDLED_CATALOG};

use crate::rational::{
    self, frac, inverse, is_zero_vec, mat_mul, mat_vec, q, scale, DisplayVec, Q, QMatrix, QVec,
};
use crate::root_core::{IntegerLattice, RootSystem, Weight};

/// Which isotropy group the functions are invariant under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Identity component `K_0`.
    K0,
    /// `K_Z = { g : theta(g)^-1 g in Z }`; the space is the adjoint form.
    KZ,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::K0 => "K0",
            Flavor::KZ => "KZ",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalyticKind {
    Root,
    Weight,
    Explicit,
}

#[derive(Debug, Clone)]
pub struct SpaceSpec {
    pub name: String,
    pub rs: RootSystem,
    pub theta: QMatrix,
    pub analytic_kind: AnalyticKind,
    pub analytic_lattice: IntegerLattice,
    pub flavor: Flavor,
    /// Name of a matrix model in `rep_oracle` realizing this space, if any.
    pub model: Option<String>,
    pub comment: String,
}

impl SpaceSpec {
    pub fn new(name: &str, rs: RootSystem, theta: QMatrix, analytic_kind: AnalyticKind, flavor: Flavor) -> Self {
        let analytic_lattice = match analytic_kind {
            AnalyticKind::Root | AnalyticKind::Explicit => rs.root_lattice(),
            AnalyticKind::Weight => rs.weight_lattice(),
        };
        SpaceSpec {
            name: name.to_string(),
            rs,
            theta,
            analytic_kind,
            analytic_lattice,
            flavor,
            model: None,
            comment: String::new(),
        }
    }

    pub fn with_lattice(mut self, generators: Vec<QVec>) -> Result<Self, crate::root_core::RootError> {
        self.analytic_lattice = IntegerLattice::new(self.rs.dim(), generators)?;
        self.analytic_kind = AnalyticKind::Explicit;
        Ok(self)
    }

    pub fn apply_theta(&self, v: &[Q]) -> QVec {
        mat_vec(&self.theta, v)
    }
}

/// First failed structural check, with a witness.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("theta must be {dim}x{dim}, got {rows}x{cols}")]
    ThetaShape { dim: usize, rows: usize, cols: usize },
    #[error("theta is not an involution (theta^2 != id)")]
    NotInvolution,
    #[error("theta is not an isometry of the inner product")]
    NotIsometry,
    #[error("theta maps root {root} outside the root system")]
    RootNotPreserved { root: String },
    #[error("positive root {root} has theta(root) != root but -theta(root) is not positive")]
    PositivityIncompatible { root: String },
    #[error("analytic lattice generator {generator} is not an integral weight")]
    AnalyticAboveWeightLattice { generator: String },
    #[error("simple root {root} is not in the analytic lattice")]
    AnalyticBelowRootLattice { root: String },
    #[error("theta does not preserve the analytic lattice: image of {generator} escapes")]
    AnalyticNotThetaStable { generator: String },
    #[error("empty restricted system: theta fixes every root")]
    EmptyRestrictedSystem,
    #[error("simple restricted roots do not form a basis of the (-1)-eigenspace ({found} roots, dimension {dim})")]
    RestrictedBasisDeficient { found: usize, dim: usize },
}

fn show(v: &[Q]) -> String {
    DisplayVec(v).to_string()
}

/// Checks every structural invariant of a space, exhaustively over the roots.
pub fn validate_spec(spec: &SpaceSpec) -> Result<(), Violation> {
    let rs = &spec.rs;
    let n = rs.dim();
    let t = &spec.theta;
    let cols = t.first().map_or(0, Vec::len);
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return Err(Violation::ThetaShape { dim: n, rows: t.len(), cols });
    }
    if mat_mul(t, t) != rational::identity(n) {
        return Err(Violation::NotInvolution);
    }
    let tg = mat_mul(&rational::transpose(t), &mat_mul(rs.gram(), t));
    if &tg != rs.gram() {
        return Err(Violation::NotIsometry);
    }
    let roots = rs.root_set();
    for a in rs.roots() {
        if !roots.contains(&spec.apply_theta(&a)) {
            return Err(Violation::RootNotPreserved { root: show(&a) });
        }
    }
    let positive: HashSet<&QVec> = rs.positive_roots().iter().collect();
    for a in rs.positive_roots() {
        let ta = spec.apply_theta(a);
        if &ta != a && !positive.contains(&rational::neg(&ta)) {
            return Err(Violation::PositivityIncompatible { root: show(a) });
        }
    }
    let weights = rs.weight_lattice();
    for g in spec.analytic_lattice.generators() {
        if !weights.contains(g).unwrap_or(false) {
            return Err(Violation::AnalyticAboveWeightLattice { generator: show(g) });
        }
    }
    for a in rs.simple_roots() {
        if !spec.analytic_lattice.contains(a).unwrap_or(false) {
            return Err(Violation::AnalyticBelowRootLattice { root: show(a) });
        }
    }
    for g in spec.analytic_lattice.generators() {
        if !spec.analytic_lattice.contains(&spec.apply_theta(g)).unwrap_or(false) {
            return Err(Violation::AnalyticNotThetaStable { generator: show(g) });
        }
    }
    compute_restricted(spec).map(|_| ())
}

/// Derived restricted-root data of a validated space.
#[derive(Debug, Clone)]
pub struct RestrictedData {
    /// `r(lambda) = (lambda - theta lambda) / 2`.
    pub restriction: QMatrix,
    pub sigma: Vec<QVec>,
    pub sigma_positive: Vec<QVec>,
    /// Simple restricted roots; their reflections generate the restricted Weyl group.
    pub simple: Vec<QVec>,
    /// `x_i` in the (-1)-eigenspace with `(alpha'_j, x_i) = delta_ij`.
    pub dual_basis: Vec<QVec>,
    pub lambda: IntegerLattice,
    pub lambda_hat: IntegerLattice,
}

impl RestrictedData {
    pub fn restrict(&self, v: &[Q]) -> QVec {
        mat_vec(&self.restriction, v)
    }

    /// Dimension of the (-1)-eigenspace of theta inside the root span.
    pub fn a_dim(&self) -> usize {
        self.simple.len()
    }
}

fn compute_restricted(spec: &SpaceSpec) -> Result<RestrictedData, Violation> {
    let rs = &spec.rs;
    let n = rs.dim();
    let half = frac(1, 2);
    let restriction: QMatrix = rational::identity(n)
        .iter()
        .zip(&spec.theta)
        .map(|(i, t)| i.iter().zip(t).map(|(a, b)| (a - b) * &half).collect())
        .collect();
    let restrict = |v: &QVec| mat_vec(&restriction, v);

    let mut sigma_positive: Vec<QVec> = Vec::new();
    for a in rs.positive_roots() {
        let r = restrict(a);
        if !is_zero_vec(&r) && !sigma_positive.contains(&r) {
            sigma_positive.push(r);
        }
    }
    if sigma_positive.is_empty() {
        return Err(Violation::EmptyRestrictedSystem);
    }
    let mut sigma = sigma_positive.clone();
    sigma.extend(sigma_positive.iter().map(|r| rational::neg(r)));

    let set: HashSet<&QVec> = sigma_positive.iter().collect();
    let simple: Vec<QVec> = sigma_positive
        .iter()
        .filter(|b| {
            let halfb = scale(&half, b);
            if set.contains(&halfb) {
                return false;
            }
            !sigma_positive
                .iter()
                .any(|g| set.contains(&rational::sub(b, g)))
        })
        .cloned()
        .collect();

    let lambda_gens: Vec<QVec> =
        rs.simple_roots().iter().map(|a| rational::sub(a, &spec.apply_theta(a))).collect();
    let a_dim = rational::rank_of(&lambda_gens);
    if simple.len() != a_dim || rational::rank_of(&simple) != a_dim {
        return Err(Violation::RestrictedBasisDeficient { found: simple.len(), dim: a_dim });
    }
    let lambda = IntegerLattice::new(n, lambda_gens).expect("ambient dimension");
    let hat_gens: Vec<QVec> = rs
        .fundamental_weights()
        .iter()
        .map(|w| rational::sub(&w.0, &spec.apply_theta(&w.0)))
        .collect();
    let lambda_hat = IntegerLattice::new(n, hat_gens).expect("ambient dimension");

    let g: QMatrix = simple.iter().map(|a| simple.iter().map(|b| rs.inner(a, b)).collect()).collect();
    let ginv = inverse(&g).ok_or(Violation::RestrictedBasisDeficient { found: simple.len(), dim: a_dim })?;
    let dual_basis = ginv
        .iter()
        .map(|row| row.iter().zip(&simple).fold(rational::zeros(n), |acc, (c, a)| rational::axpy(&acc, c, a)))
        .collect();

    Ok(RestrictedData { restriction, sigma, sigma_positive, simple, dual_basis, lambda, lambda_hat })
}

/// A validated space with its derived data.
#[derive(Debug, Clone)]
pub struct Space {
    pub spec: SpaceSpec,
    pub restricted: RestrictedData,
}

impl Space {
    pub fn new(spec: SpaceSpec) -> Result<Self, Violation> {
        validate_spec(&spec)?;
        let restricted = compute_restricted(&spec)?;
        Ok(Space { spec, restricted })
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn rs(&self) -> &RootSystem {
        &self.spec.rs
    }

    pub fn flavor(&self) -> Flavor {
        self.spec.flavor
    }

    pub fn theta(&self, v: &[Q]) -> QVec {
        self.spec.apply_theta(v)
    }

    pub fn lambda(&self) -> &IntegerLattice {
        &self.restricted.lambda
    }

    pub fn lambda_hat(&self) -> &IntegerLattice {
        &self.restricted.lambda_hat
    }

    pub fn dual_basis(&self) -> &[QVec] {
        &self.restricted.dual_basis
    }

    /// `theta(lambda) = -lambda`.
    pub fn is_anti_invariant(&self, v: &[Q]) -> bool {
        self.theta(v) == rational::neg(v)
    }

    /// `lambda(x_i)` for each dual basis vector, realized through the inner product.
    pub fn evaluate_dual_basis(&self, lambda: &[Q]) -> QVec {
        self.restricted.dual_basis.iter().map(|x| self.rs().inner(lambda, x)).collect()
    }

    pub fn restricted_reflections(&self) -> Vec<QMatrix> {
        self.restricted.simple.iter().map(|b| self.rs().reflection_matrix(b)).collect()
    }

    /// All elements of the restricted Weyl group as ambient matrices, by closure
    /// under the simple restricted reflections. `None` if the closure exceeds `limit`.
    pub fn restricted_weyl_group(&self, limit: usize) -> Option<Vec<QMatrix>> {
        let gens = self.restricted_reflections();
        let n = self.rs().dim();
        let mut elems = vec![rational::identity(n)];
        let mut seen: HashSet<QMatrix> = elems.iter().cloned().collect();
        let mut frontier = elems.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for s in &gens {
                    let sw = mat_mul(s, w);
                    if seen.insert(sw.clone()) {
                        if seen.len() > limit {
                            return None;
                        }
                        next.push(sw);
                    }
                }
            }
            elems.extend(next.iter().cloned());
            frontier = next;
        }
        Some(elems)
    }

    /// Dominant representative of a restricted weight under the restricted Weyl group.
    pub fn restricted_dominant(&self, lambda: &Weight) -> (Weight, Vec<usize>) {
        self.rs().dominant_representative(lambda, &self.restricted.simple)
    }

    /// Whether every element of the positive restricted system is a non-negative
    /// integer combination of the simple restricted roots.
    pub fn positive_system_is_spanned(&self) -> bool {
        self.restricted.sigma_positive.iter().all(|b| {
            rational::solve_in_basis(&self.restricted.simple, b)
                .is_some_and(|c| c.iter().all(|x| x.is_integer() && !x.is_negative()))
        })
    }

    /// `(omega, beta) / (beta, beta)` for each positive restricted root.
    pub fn helgason_ratios(&self, omega: &[Q]) -> Vec<Q> {
        self.restricted
            .sigma_positive
            .iter()
            .map(|b| self.rs().inner(omega, b) / self.rs().inner(b, b))
            .collect()
    }

    pub fn lattice_index(&self) -> Option<num_bigint::BigInt> {
        self.lambda().index_in(self.lambda_hat())
    }

    pub(crate) fn anti_invariant_map(&self) -> QMatrix {
        // theta + id
        self.spec
            .theta
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, x)| if i == j { x + q(1) } else { x.clone() }).collect())
            .collect()
    }
}

impl RestrictedData {
    /// Pairs of simple restricted roots that are proportional, which only happens
    /// for an (alpha, 2 alpha) pair.
    pub fn proportional_simple_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.simple.len() {
            for j in i + 1..self.simple.len() {
                if rational::rank_of(&[self.simple[i].clone(), self.simple[j].clone()]) < 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;
    use crate::root_core::{Factor, Series};

    fn diag(xs: &[i64]) -> QMatrix {
        (0..xs.len())
            .map(|i| (0..xs.len()).map(|j| if i == j { q(xs[i]) } else { q(0) }).collect())
            .collect()
    }

    fn a1_minus_id() -> SpaceSpec {
        SpaceSpec::new("s2", RootSystem::new(Series::A, 1).unwrap(), diag(&[-1, -1]), AnalyticKind::Root, Flavor::K0)
    }

    fn b2_sphere() -> SpaceSpec {
        SpaceSpec::new("s4", RootSystem::new(Series::B, 2).unwrap(), diag(&[-1, 1]), AnalyticKind::Weight, Flavor::K0)
    }

    fn a1xa1_twisted_swap() -> SpaceSpec {
        let f = Factor { series: Series::A, rank: 1 };
        let rs = RootSystem::from_factors(&[f, f]).unwrap();
        let theta = vec![qvec(&[0, 0, -1, 0]), qvec(&[0, 0, 0, -1]), qvec(&[-1, 0, 0, 0]), qvec(&[0, -1, 0, 0])];
        SpaceSpec::new("su2", rs, theta, AnalyticKind::Weight, Flavor::K0)
    }

    #[test]
    fn a1_minus_identity_is_valid() {
        let s = Space::new(a1_minus_id()).unwrap();
        assert_eq!(s.restricted.sigma_positive, vec![qvec(&[1, -1])]);
        assert_eq!(s.restricted.simple, vec![qvec(&[1, -1])]);
        assert_eq!(s.lambda().basis(), vec![qvec(&[2, -2])]);
        assert_eq!(s.lambda_hat().basis(), vec![qvec(&[1, -1])]);
    }

    #[test]
    fn a2_identity_is_rejected_as_empty() {
        let spec = SpaceSpec::new("bad", RootSystem::new(Series::A, 2).unwrap(), diag(&[1, 1, 1]), AnalyticKind::Weight, Flavor::K0);
        assert_eq!(validate_spec(&spec), Err(Violation::EmptyRestrictedSystem));
    }

    #[test]
    fn b2_sphere_restricted_data() {
        let spec = b2_sphere();
        assert_eq!(validate_spec(&spec), Ok(()));
        let fixed: Vec<QVec> = spec.rs.roots().into_iter().filter(|a| &spec.apply_theta(a) == a).collect();
        assert_eq!(fixed, vec![qvec(&[0, 1]), qvec(&[0, -1])]);
        let s = Space::new(spec).unwrap();
        assert_eq!(s.restricted.sigma_positive, vec![qvec(&[1, 0])]);
        assert_eq!(s.restricted.simple, vec![qvec(&[1, 0])]);
        assert!(s.lambda().same_as(&IntegerLattice::new(2, vec![qvec(&[2, 0])]).unwrap()));
        assert_eq!(s.dual_basis(), &[qvec(&[1, 0])]);
        assert_eq!(s.evaluate_dual_basis(&qvec(&[5, 0])), vec![q(5)]);
    }

    #[test]
    fn twisted_swap_restricts_both_roots_equally() {
        let s = Space::new(a1xa1_twisted_swap()).unwrap();
        let half = frac(1, 2);
        let beta = vec![half.clone(), -half.clone(), half.clone(), -half];
        assert_eq!(s.restricted.sigma_positive, vec![beta.clone()]);
        assert!(s.lambda().same_as(&IntegerLattice::new(4, vec![qvec(&[1, -1, 1, -1])]).unwrap()));
        let omega_sum = vec![frac(1, 2), frac(-1, 2), frac(1, 2), frac(-1, 2)];
        assert!(s.lambda_hat().same_as(&IntegerLattice::new(4, vec![omega_sum]).unwrap()));
        assert_eq!(s.lattice_index(), Some(2.into()));
    }

    #[test]
    fn plain_swap_breaks_positivity() {
        let mut spec = a1xa1_twisted_swap();
        spec.theta = vec![qvec(&[0, 0, 1, 0]), qvec(&[0, 0, 0, 1]), qvec(&[1, 0, 0, 0]), qvec(&[0, 1, 0, 0])];
        assert!(matches!(validate_spec(&spec), Err(Violation::PositivityIncompatible { .. })));
    }

    #[test]
    fn structural_violations() {
        let mut s = a1_minus_id();
        s.theta = diag(&[-1]);
        assert!(matches!(validate_spec(&s), Err(Violation::ThetaShape { .. })));
        s.theta = vec![qvec(&[0, 2]), qvec(&[1, 0])];
        assert_eq!(validate_spec(&s), Err(Violation::NotInvolution));
        let mut b = b2_sphere();
        b.theta = diag(&[1, -1]);
        assert!(matches!(validate_spec(&b), Err(Violation::PositivityIncompatible { .. })));
        // involutive shear
        b.theta = vec![vec![q(-1), q(0)], vec![q(2), q(1)]];
        assert!(matches!(validate_spec(&b), Err(Violation::NotIsometry)));
    }

    #[test]
    fn analytic_lattice_bounds() {
        let s = a1_minus_id().with_lattice(vec![vec![frac(1, 4), frac(-1, 4)]]).unwrap();
        assert!(matches!(validate_spec(&s), Err(Violation::AnalyticAboveWeightLattice { .. })));
        let s = a1_minus_id().with_lattice(vec![qvec(&[2, -2])]).unwrap();
        assert!(matches!(validate_spec(&s), Err(Violation::AnalyticBelowRootLattice { .. })));
    }

    #[test]
    fn dual_basis_parity_on_lambda_generators() {
        for spec in [a1_minus_id(), b2_sphere(), a1xa1_twisted_swap()] {
            let s = Space::new(spec).unwrap();
            for g in s.lambda().generators() {
                for v in s.evaluate_dual_basis(g) {
                    assert!(v.is_integer() && (v.to_integer() % 2u8) == 0u8.into());
                }
            }
        }
    }

    #[test]
    fn dual_basis_on_a1() {
        let s = Space::new(a1_minus_id()).unwrap();
        let w1 = s.rs().fundamental_weights()[0].clone();
        for m in 0..5 {
            assert_eq!(s.evaluate_dual_basis(&w1.scale(&q(m)).0), vec![frac(m, 2)]);
        }
    }
}
