//! Decision procedures for the maximal flat Radon transform on a compact
//! symmetric space: sphericality of `V(omega)`, the support of its
//! `k`-invariant vector, descent to the adjoint space, kernel membership and
//! injectivity.
//!
//! Everything reduces to exact membership tests in the lattice
//! `Lambda = { rho - theta(rho) : rho in the root lattice }`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{self, is_zero_vec, mat_vec, to_i64_vec, DisplayVec, QVec};
use crate::root_core::{IntegerLattice, RootError, Weight};
use crate::space_catalog::{Flavor, Space};

#[derive(Debug, Error)]
pub enum KernelError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("V{0} is not spherical")]
    NotSpherical(String),
    #[error("{0} is not anti-invariant under theta")]
    NotAntiInvariant(String),
    #[error("{lambda} is not a weight of V{omega}")]
    NotAWeight { omega: String, lambda: String },
    /// Two independent computations disagreed; indicates a bug or a mis-encoded involution.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

/// Classification of `V(omega)` inside the functions on the space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelVerdict {
    NotSpherical,
    /// `omega*` lies in `Lambda`; `coordinates` are its integer coordinates
    /// against the generators of `Lambda`.
    DescendsToAdjoint { dual: Weight, coordinates: Vec<BigInt> },
    /// `omega*` is not in `Lambda`; `residue` is its non-zero normal-form residue.
    InKernel { dual: Weight, residue: QVec },
}

impl KernelVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            KernelVerdict::NotSpherical => "NotSpherical",
            KernelVerdict::DescendsToAdjoint { .. } => "DescendsToAdjoint",
            KernelVerdict::InKernel { .. } => "InKernel",
        }
    }

    /// Human-readable certificate, empty for `NotSpherical`.
    pub fn certificate(&self) -> String {
        match self {
            KernelVerdict::NotSpherical => String::new(),
            KernelVerdict::DescendsToAdjoint { dual, coordinates } => {
                let c: Vec<String> = coordinates.iter().map(BigInt::to_string).collect();
                format!("dual {dual} = [{}] in Lambda generators", c.join(", "))
            }
            KernelVerdict::InKernel { dual, residue } => {
                format!("dual {dual} has residue {} mod Lambda", DisplayVec(residue))
            }
        }
    }

    /// Re-checks the certificate against `Lambda` alone.
    pub fn verify(&self, space: &Space, omega: &Weight) -> bool {
        let Ok(dual) = space.rs().dual_highest_weight(omega) else {
            return false;
        };
        let lambda = space.lambda();
        match self {
            KernelVerdict::NotSpherical => matches!(is_spherical(space, omega), Ok(false)),
            KernelVerdict::DescendsToAdjoint { dual: d, coordinates } => {
                d == &dual && lambda.combine(coordinates) == dual.0
            }
            KernelVerdict::InKernel { dual: d, residue } => {
                d == &dual
                    && !is_zero_vec(residue)
                    && lambda.reduce(&dual.0).is_ok_and(|r| &r.residue == residue)
            }
        }
    }
}

/// A weight `lambda` of `V(omega)`, checked on construction.
#[derive(Debug, Clone)]
pub struct SupportQuery {
    omega: Weight,
    lambda: Weight,
}

impl SupportQuery {
    pub fn new(space: &Space, omega: Weight, lambda: Weight) -> Result<Self, KernelError> {
        require_analytic(space, &omega)?;
        if !space.rs().is_weight(&omega, &lambda)? {
            return Err(KernelError::NotAWeight { omega: omega.to_string(), lambda: lambda.to_string() });
        }
        Ok(SupportQuery { omega, lambda })
    }

    pub fn omega(&self) -> &Weight {
        &self.omega
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }
}

fn require_analytic(space: &Space, omega: &Weight) -> Result<(), KernelError> {
    space.rs().require_dominant(omega)?;
    if !space.spec.analytic_lattice.contains(&omega.0)? {
        return Err(RootError::NotAnalytic(omega.to_string()).into());
    }
    Ok(())
}

/// Cartan-Helgason condition: `theta(omega) = -omega` and
/// `(omega, beta) / (beta, beta)` a non-negative integer for every positive
/// restricted root, including divisible ones.
fn helgason(space: &Space, omega: &Weight) -> bool {
    space.is_anti_invariant(&omega.0)
        && space.helgason_ratios(&omega.0).iter().all(|r| r.is_integer() && !r.is_negative())
}

/// Whether `V(omega)` has a non-zero invariant vector for the isotropy group
/// of the space's flavor.
pub fn is_spherical(space: &Space, omega: &Weight) -> Result<bool, KernelError> {
    require_analytic(space, omega)?;
    if !helgason(space, omega) {
        return Ok(false);
    }
    Ok(match space.flavor() {
        Flavor::K0 => true,
        Flavor::KZ => space.lambda().contains(&omega.0)?,
    })
}

/// Membership of `lambda` in the support of the `k`-invariant vector of `V(omega)`:
/// `theta(lambda) = -lambda` and `omega - lambda` in `Lambda`.
pub fn support_contains(space: &Space, query: &SupportQuery) -> Result<bool, KernelError> {
    if !helgason(space, &query.omega) {
        return Err(KernelError::NotSpherical(query.omega.to_string()));
    }
    if !space.is_anti_invariant(&query.lambda.0) {
        return Ok(false);
    }
    Ok(space.lambda().contains(&query.omega.sub(&query.lambda).0)?)
}

/// The support of the `k`-invariant vector of `V(omega)`, sorted.
pub fn support_of(space: &Space, omega: &Weight) -> Result<Vec<Weight>, KernelError> {
    if !helgason(space, omega) {
        return Err(KernelError::NotSpherical(omega.to_string()));
    }
    let rs = space.rs();
    let mut out = Vec::new();
    for lambda in rs.weights_of_rep(omega, &rs.weight_lattice())? {
        let query = SupportQuery { omega: omega.clone(), lambda };
        if support_contains(space, &query)? {
            out.push(query.lambda);
        }
    }
    Ok(out)
}

/// Whether the character `e^lambda` is trivial on the finite group `F`
/// generated by `exp(pi i x_j)`. Computed twice, by the parity of `lambda(x_j)`
/// and by membership in `Lambda`; the two must agree.
pub fn annihilates_f(space: &Space, lambda: &Weight) -> Result<bool, KernelError> {
    if !space.spec.analytic_lattice.contains(&lambda.0)? {
        return Err(RootError::NotAnalytic(lambda.to_string()).into());
    }
    if !space.is_anti_invariant(&lambda.0) {
        return Err(KernelError::NotAntiInvariant(lambda.to_string()));
    }
    let two = BigInt::from(2);
    let parity = space
        .evaluate_dual_basis(&lambda.0)
        .iter()
        .all(|v| v.is_integer() && (v.to_integer() % &two).is_zero());
    let member = space.lambda().contains(&lambda.0)?;
    if parity != member {
        return Err(KernelError::Inconsistent(format!(
            "{lambda}: parity test says {parity}, lattice membership says {member}"
        )));
    }
    Ok(member)
}

/// Whether the spherical `V(omega)` contributes functions on the adjoint space.
pub fn descends_to_adjoint(space: &Space, omega: &Weight) -> Result<bool, KernelError> {
    if !is_spherical(space, omega)? {
        return Err(KernelError::NotSpherical(omega.to_string()));
    }
    let dual = space.rs().dual_highest_weight(omega)?;
    Ok(space.lambda().contains(&dual.0)?)
}

/// Support route: `V(omega)` is annihilated iff no support weight of
/// `V(omega*)` restricts to zero. A weight with `theta(l) = -l` restricts to
/// zero only if it is zero, so only `l = 0` needs checking.
pub fn descends_by_support(space: &Space, omega: &Weight) -> Result<bool, KernelError> {
    let dual = space.rs().dual_highest_weight(omega)?;
    if !helgason(space, &dual) {
        return Err(KernelError::NotSpherical(dual.to_string()));
    }
    let zero = Weight::zero(space.rs().dim());
    if !space.rs().is_weight(&dual, &zero)? {
        return Ok(false);
    }
    let restricted = space.restricted.restrict(&zero.0);
    debug_assert!(is_zero_vec(&restricted));
    support_contains(space, &SupportQuery { omega: dual, lambda: zero })
}

/// Full classification of `V(omega)`, with a certificate.
pub fn in_kernel(space: &Space, omega: &Weight) -> Result<KernelVerdict, KernelError> {
    if !is_spherical(space, omega)? {
        return Ok(KernelVerdict::NotSpherical);
    }
    let dual = space.rs().dual_highest_weight(omega)?;
    let lambda = space.lambda();
    let verdict = match lambda.coordinates(&dual.0)? {
        Some(coordinates) => KernelVerdict::DescendsToAdjoint { dual, coordinates },
        None => {
            let residue = lambda.reduce(&dual.0)?.residue;
            KernelVerdict::InKernel { dual, residue }
        }
    };
    let by_support = descends_by_support(space, omega)?;
    if by_support != matches!(verdict, KernelVerdict::DescendsToAdjoint { .. }) {
        return Err(KernelError::Inconsistent(format!(
            "V{omega}: lattice route says {}, support route says descends = {by_support}",
            verdict.label()
        )));
    }
    Ok(verdict)
}

/// One row of an enumeration.
#[derive(Debug, Clone)]
pub struct Classified {
    /// Coordinates in the fundamental-weight basis.
    pub labels: Vec<i64>,
    pub omega: Weight,
    pub verdict: KernelVerdict,
}

/// Dynkin label vectors with entry sum exactly `total`, lexicographically descending.
fn compositions(rank: usize, total: u32) -> Vec<Vec<i64>> {
    fn go(rank: usize, left: u32, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() + 1 == rank {
            prefix.push(i64::from(left));
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(i64::from(k));
            go(rank, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if rank == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(rank, total, &mut Vec::new(), &mut out);
    out
}

/// Every spherical `V(omega)` whose fundamental-weight coordinates sum to at
/// most `bound`, with verdicts, sorted lexicographically by coordinates.
pub fn enumerate_spherical(space: &Space, bound: u32) -> Result<Vec<Classified>, KernelError> {
    let mut out = Vec::new();
    for (labels, omega) in dominant_analytic(space, bound)? {
        if !is_spherical(space, &omega)? {
            continue;
        }
        let verdict = in_kernel(space, &omega)?;
        out.push(Classified { labels, omega, verdict });
    }
    Ok(out)
}

/// Every dominant analytic weight whose fundamental-weight coordinates sum to
/// at most `bound`, sorted lexicographically by coordinates.
pub fn dominant_analytic(space: &Space, bound: u32) -> Result<Vec<(Vec<i64>, Weight)>, KernelError> {
    let rs = space.rs();
    let mut out = Vec::new();
    for total in 0..=bound {
        for labels in compositions(rs.rank(), total) {
            let omega = rs.weight_from_dynkin(&labels)?;
            if space.spec.analytic_lattice.contains(&omega.0)? {
                out.push((labels, omega));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Lattice whose dominant elements are exactly the spherical highest weights.
pub fn spherical_lattice(space: &Space) -> IntegerLattice {
    let rs = space.rs();
    let anti = space.spec.analytic_lattice.kernel_sublattice(&space.anti_invariant_map());
    let functionals: Vec<QVec> = space
        .restricted
        .sigma_positive
        .iter()
        .map(|b| {
            let nb = rs.inner(b, b);
            mat_vec(rs.gram(), b).iter().map(|x| x / &nb).collect()
        })
        .collect();
    let ch = anti.integral_sublattice(&functionals);
    match space.flavor() {
        Flavor::K0 => ch,
        Flavor::KZ => ch.intersection(space.lambda()).expect("same ambient dimension"),
    }
}

#[derive(Debug, Clone)]
pub enum InjectivityCertificate {
    /// For each basis vector `b` of the spherical lattice, `-w0(b)` with its
    /// integer coordinates against the generators of `Lambda`.
    Containment { images: Vec<(QVec, Vec<BigInt>)> },
    /// A spherical highest weight whose dual is not in `Lambda`.
    Witness { labels: Vec<i64>, omega: Weight, dual: Weight, residue: QVec },
}

#[derive(Debug, Clone)]
pub struct InjectivityReport {
    pub injective: bool,
    pub spherical_lattice: IntegerLattice,
    pub certificate: InjectivityCertificate,
}

impl InjectivityReport {
    pub fn verify(&self, space: &Space) -> bool {
        match &self.certificate {
            InjectivityCertificate::Containment { images } => {
                let lambda = space.lambda();
                let minus_w0 = minus_longest(space);
                let basis = self.spherical_lattice.basis();
                self.injective
                    && basis.len() == images.len()
                    && basis.iter().zip(images).all(|(b, (img, coords))| {
                        &mat_vec(&minus_w0, b) == img && &lambda.combine(coords) == img
                    })
            }
            InjectivityCertificate::Witness { omega, dual, residue, .. } => {
                !self.injective
                    && matches!(is_spherical(space, omega), Ok(true))
                    && matches!(in_kernel(space, omega), Ok(KernelVerdict::InKernel { dual: ref d, residue: ref r }) if d == dual && r == residue)
            }
        }
    }

    pub fn summary(&self) -> String {
        match &self.certificate {
            InjectivityCertificate::Containment { images } => {
                let parts: Vec<String> = images
                    .iter()
                    .map(|(img, c)| {
                        let c: Vec<String> = c.iter().map(BigInt::to_string).collect();
                        format!("{} = [{}]", DisplayVec(img), c.join(", "))
                    })
                    .collect();
                format!("spherical duals lie in Lambda: {}", parts.join("; "))
            }
            InjectivityCertificate::Witness { labels, dual, residue, .. } => {
                let l: Vec<String> = labels.iter().map(i64::to_string).collect();
                format!(
                    "witness omega = [{}] (dual {dual}) has residue {} mod Lambda",
                    l.join(", "),
                    DisplayVec(residue)
                )
            }
        }
    }
}

fn minus_longest(space: &Space) -> crate::rational::QMatrix {
    space
        .rs()
        .longest_element_matrix()
        .iter()
        .map(|row| rational::neg(row))
        .collect()
}

/// Largest coordinate sum searched for an explicit witness. A witness always
/// exists when the containment fails; this only guards against a runaway loop.
const WITNESS_SEARCH_LIMIT: u32 = 64;

/// Decides injectivity without any bound on the weights: the spherical highest
/// weights are the dominant points of [`spherical_lattice`], they generate it,
/// and `omega -> omega*` is the linear map `-w0` on them, so injectivity holds
/// iff `-w0` maps a basis of that lattice into `Lambda`.
pub fn is_transform_injective(space: &Space) -> Result<InjectivityReport, KernelError> {
    let sph = spherical_lattice(space);
    let minus_w0 = minus_longest(space);
    let lambda = space.lambda();
    let mut images = Vec::new();
    let mut contained = true;
    for b in sph.basis() {
        let img = mat_vec(&minus_w0, &b);
        match lambda.coordinates(&img)? {
            Some(c) => images.push((img, c)),
            None => {
                contained = false;
                break;
            }
        }
    }
    if contained {
        return Ok(InjectivityReport {
            injective: true,
            spherical_lattice: sph,
            certificate: InjectivityCertificate::Containment { images },
        });
    }
    let rs = space.rs();
    for total in 0..=WITNESS_SEARCH_LIMIT {
        for labels in compositions(rs.rank(), total) {
            let omega = rs.weight_from_dynkin(&labels)?;
            if !space.spec.analytic_lattice.contains(&omega.0)? || !is_spherical(space, &omega)? {
                continue;
            }
            if let KernelVerdict::InKernel { dual, residue } = in_kernel(space, &omega)? {
                return Ok(InjectivityReport {
                    injective: false,
                    spherical_lattice: sph,
                    certificate: InjectivityCertificate::Witness { labels, omega, dual, residue },
                });
            }
        }
    }
    Err(KernelError::Inconsistent(format!(
        "spherical lattice is not contained in Lambda but no witness has coordinate sum <= {WITNESS_SEARCH_LIMIT}"
    )))
}

/// Fundamental-weight coordinates of a weight, as integers when possible.
pub fn labels_of(space: &Space, omega: &Weight) -> Option<Vec<i64>> {
    to_i64_vec(&space.rs().dynkin_labels(&omega.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};
    use crate::space_catalog::bundled_catalog;

    fn space(name: &str) -> Space {
        bundled_catalog().into_iter().find(|s| s.name() == name).unwrap()
    }

    fn w(s: &Space, labels: &[i64]) -> Weight {
        s.rs().weight_from_dynkin(labels).unwrap()
    }

    #[test]
    fn compositions_order() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(1, 3), vec![vec![3]]);
        assert_eq!(compositions(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn sphere_sphericality() {
        let s = space("sphere-2");
        for l in 0..6 {
            assert!(is_spherical(&s, &w(&s, &[2 * l])).unwrap());
        }
        assert!(matches!(is_spherical(&s, &w(&s, &[1])), Err(KernelError::Root(RootError::NotAnalytic(_)))));
        let rp = space("rp-2");
        for l in 0..6 {
            assert_eq!(is_spherical(&rp, &w(&rp, &[2 * l])).unwrap(), l % 2 == 0);
        }
    }

    #[test]
    fn su3_sphericality_needs_even_labels() {
        let s = space("su3-mod-so3");
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(is_spherical(&s, &w(&s, &[a, b])).unwrap(), a % 2 == 0 && b % 2 == 0, "({a},{b})");
            }
        }
    }

    #[test]
    fn sphere_support_of_alpha() {
        let s = space("sphere-2");
        let alpha = w(&s, &[2]);
        assert_eq!(support_of(&s, &alpha).unwrap(), vec![alpha.neg(), alpha.clone()]);
        let q0 = SupportQuery::new(&s, alpha.clone(), Weight::zero(2)).unwrap();
        assert!(!support_contains(&s, &q0).unwrap());
        assert!(SupportQuery::new(&s, alpha.clone(), alpha.scale(&q(2))).is_err());
    }

    #[test]
    fn annihilates_f_examples() {
        let s = space("sphere-2");
        let alpha = w(&s, &[2]);
        assert!(annihilates_f(&s, &Weight::zero(2)).unwrap());
        assert!(!annihilates_f(&s, &alpha).unwrap());
        assert!(annihilates_f(&s, &alpha.scale(&q(2))).unwrap());
        assert_eq!(s.evaluate_dual_basis(&alpha.0), vec![q(1)]);
        let half = alpha.scale(&frac(1, 2));
        assert!(annihilates_f(&s, &half).is_err());
    }

    #[test]
    fn funk_parity_on_the_sphere() {
        let s = space("sphere-2");
        for l in 0..8 {
            let v = in_kernel(&s, &w(&s, &[2 * l])).unwrap();
            assert!(v.verify(&s, &w(&s, &[2 * l])));
            match l % 2 {
                0 => assert!(matches!(v, KernelVerdict::DescendsToAdjoint { .. }), "l={l}"),
                _ => assert!(matches!(v, KernelVerdict::InKernel { .. }), "l={l}"),
            }
        }
    }

    #[test]
    fn su3_two_omega1_is_in_kernel() {
        let s = space("su3-mod-so3");
        let omega = w(&s, &[2, 0]);
        assert!(!descends_to_adjoint(&s, &omega).unwrap());
        match in_kernel(&s, &omega).unwrap() {
            KernelVerdict::InKernel { dual, residue } => {
                assert_eq!(dual, w(&s, &[0, 2]));
                assert!(!is_zero_vec(&residue));
            }
            other => panic!("{other:?}"),
        }
        assert!(descends_to_adjoint(&s, &w(&s, &[2, 2])).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let s = space("sphere-2");
        let rows = enumerate_spherical(&s, 6).unwrap();
        let labels: Vec<_> = rows.iter().map(|r| r.labels.clone()).collect();
        assert_eq!(labels, vec![vec![0], vec![2], vec![4], vec![6]]);
        let kinds: Vec<_> = rows.iter().map(|r| r.verdict.label()).collect();
        assert_eq!(kinds, ["DescendsToAdjoint", "InKernel", "DescendsToAdjoint", "InKernel"]);

        let zero = enumerate_spherical(&s, 0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].verdict.label(), "DescendsToAdjoint");

        let rp = space("rp-2");
        let rows = enumerate_spherical(&rp, 6).unwrap();
        assert_eq!(rows.iter().map(|r| r.labels[0]).collect::<Vec<_>>(), vec![0, 4]);
        assert!(rows.iter().all(|r| r.verdict.label() == "DescendsToAdjoint"));
    }

    #[test]
    fn injectivity_examples() {
        let cases = [
            ("rp-2", true, None),
            ("rp-4", true, None),
            ("cp-2", true, None),
            ("g2-mod-so4", true, None),
            ("sphere-2", false, Some(vec![2])),
            ("sphere-4", false, Some(vec![1, 0])),
            ("su3-mod-so3", false, Some(vec![2, 0])),
            ("group-su2", false, Some(vec![1, 1])),
        ];
        for (name, injective, witness) in cases {
            let s = space(name);
            let report = is_transform_injective(&s).unwrap();
            assert_eq!(report.injective, injective, "{name}");
            assert!(report.verify(&s), "{name}");
            if let InjectivityCertificate::Witness { labels, .. } = &report.certificate {
                assert_eq!(Some(labels.clone()), witness, "{name}");
            }
        }
    }

    #[test]
    fn cp2_spherical_weights_are_multiples_of_the_highest_root() {
        let s = space("cp-2");
        let rows = enumerate_spherical(&s, 6).unwrap();
        let labels: Vec<_> = rows.iter().map(|r| r.labels.clone()).collect();
        assert_eq!(labels, vec![vec![0, 0], vec![1, 1], vec![2, 2], vec![3, 3]]);
    }
}
