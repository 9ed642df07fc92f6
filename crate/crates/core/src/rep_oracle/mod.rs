//! Brute-force verifier: explicit matrix models of small representations,
//! their `k`-invariant vectors, the weights those vectors are supported on,
//! and the average of matrix coefficients over the torus `A = exp(a)`.

mod algebra;
mod exact;
mod irrep;
pub mod linalg;
mod tensor;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_integer::Integer;
use thiserror::Error;

pub use algebra::{build_algebra, MatrixAlgebra, SUPPORTED_MODELS};
pub use exact::ExactSu2;
pub use irrep::{build_irrep, Irrep, DEGREE_CAP};
pub use linalg::NULL_TOLERANCE;

use crate::rational::Q;
use crate::root_core::Weight;
use crate::space_catalog::Flavor;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("unsupported model '{0}' (supported: su2, su3, so5, su2xsu2)")]
    UnsupportedModel(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("not a dominant integral weight: {0}")]
    NotDominant(String),
    #[error("V{omega} does not occur in tensor powers of degree <= {cap}")]
    Unreachable { omega: String, cap: usize },
    #[error("carrier has dimension {found}, Weyl dimension formula gives {expected}")]
    DimensionMismatch { found: usize, expected: String },
    #[error("support of the zero vector is undefined")]
    ZeroVector,
}

/// Orthonormal basis of the joint null space of the `k` action.
pub fn k_invariants(irrep: &Irrep, alg: &MatrixAlgebra) -> Vec<DVector<f64>> {
    let n = irrep.dim();
    let mats: Vec<DMatrix<f64>> = alg.k_basis.iter().map(|k| irrep.represent(k)).collect();
    let mut stacked = DMatrix::zeros(n * mats.len(), n);
    for (i, m) in mats.iter().enumerate() {
        stacked.view_mut((i * n, 0), (n, n)).copy_from(m);
    }
    linalg::null_space(&stacked, NULL_TOLERANCE)
}

/// Weights whose component in `v` has norm above `NULL_TOLERANCE`.
pub fn support_of(irrep: &Irrep, v: &DVector<f64>) -> Result<Vec<Weight>, OracleError> {
    if v.norm() <= NULL_TOLERANCE {
        return Err(OracleError::ZeroVector);
    }
    Ok(irrep
        .components(v)
        .into_iter()
        .filter(|(_, c)| c.norm() > NULL_TOLERANCE)
        .map(|(w, _)| w)
        .collect())
}

/// Integer frequencies of the torus characters on each carrier basis vector:
/// `f_kj = D_j * lambda_k(x_j)`, with `D_j` clearing denominators.
fn torus_frequencies(irrep: &Irrep, alg: &MatrixAlgebra) -> (Vec<i64>, Vec<Vec<i64>>) {
    let values: Vec<Vec<Q>> = irrep.weights.iter().map(|w| alg.space.evaluate_dual_basis(&w.0)).collect();
    let a = alg.space.dual_basis().len();
    let denoms: Vec<i64> = (0..a)
        .map(|j| {
            values.iter().fold(1i64, |acc, v| {
                let d: i64 = v[j].denom().try_into().expect("small denominators");
                acc.lcm(&d)
            })
        })
        .collect();
    let freqs = values
        .iter()
        .map(|v| {
            v.iter()
                .zip(&denoms)
                .map(|(x, d)| (x * Q::from_integer((*d).into())).to_integer().try_into().expect("small frequencies"))
                .collect()
        })
        .collect();
    (denoms, freqs)
}

/// Samples per torus direction at which the equal-weight rule is exact for
/// the matrix coefficients of `irrep`.
pub fn exactness_threshold(irrep: &Irrep, alg: &MatrixAlgebra) -> usize {
    let (_, freqs) = torus_frequencies(irrep, alg);
    let max = freqs.iter().flatten().map(|f| f.unsigned_abs()).max().unwrap_or(0);
    2 * usize::try_from(max).expect("small frequencies") + 1
}

/// `integral over A of <exp(a) v, u>` by the equal-weight rule with `samples`
/// points per torus direction. The torus is parametrized as
/// `t -> exp(2 pi i sum_j t_j D_j H_{x_j})`, `t in [0, 1)^dim a`, with
/// `x_j` dual to the simple restricted roots.
pub fn reynolds_ra(irrep: &Irrep, alg: &MatrixAlgebra, v: &DVector<f64>, u: &DVector<f64>, samples: usize) -> Complex64 {
    let threshold = exactness_threshold(irrep, alg);
    if samples < threshold {
        log::warn!("{samples} samples per direction is below the exactness threshold {threshold}");
    }
    let (denoms, _) = torus_frequencies(irrep, alg);
    let generators: Vec<DMatrix<Complex64>> = alg
        .space
        .dual_basis()
        .iter()
        .zip(&denoms)
        .map(|(x, d)| {
            let h = irrep.represent(&alg.cartan_element(x));
            h.map(|e| Complex64::new(0.0, 2.0 * std::f64::consts::PI * e * (*d as f64)))
        })
        .collect();
    let n = irrep.dim();
    let vc = v.map(|x| Complex64::new(x, 0.0));
    let uc = u.map(|x| Complex64::new(x, 0.0));
    let a = generators.len();
    let total = samples.pow(u32::try_from(a).expect("small torus"));
    let mut sum = Complex64::new(0.0, 0.0);
    for idx in 0..total {
        let mut rem = idx;
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for g in &generators {
            let t = (rem % samples) as f64 / samples as f64;
            rem /= samples;
            m += g * Complex64::new(t, 0.0);
        }
        let av = m.exp() * &vc;
        sum += uc.iter().zip(av.iter()).map(|(x, y)| y * x.conj()).sum::<Complex64>();
    }
    sum / total as f64
}

/// `<P0 v, u>` with `P0` the orthogonal projection onto basis vectors whose
/// weight restricts to zero on `a`. Exact reference for [`reynolds_ra`].
pub fn zero_restricted_projection(irrep: &Irrep, alg: &MatrixAlgebra, v: &DVector<f64>, u: &DVector<f64>) -> f64 {
    irrep
        .weights
        .iter()
        .enumerate()
        .filter(|(_, w)| alg.space.evaluate_dual_basis(&w.0).iter().all(num_traits::Zero::is_zero))
        .map(|(k, _)| v[k] * u[k])
        .sum()
}

/// Whether `v` is fixed by every `exp(pi i H_{x_j})`. These elements of
/// order two generate the component group of the adjoint isotropy `K_Z`.
pub fn fixed_by_component_group(irrep: &Irrep, alg: &MatrixAlgebra, v: &DVector<f64>) -> bool {
    let vc = v.map(|x| Complex64::new(x, 0.0));
    alg.space.dual_basis().iter().all(|x| {
        let h = irrep.represent(&alg.cartan_element(x));
        let g = h.map(|e| Complex64::new(0.0, std::f64::consts::PI * e)).exp();
        (g * &vc - &vc).norm() <= 1e3 * NULL_TOLERANCE
    })
}

/// Everything the matrix oracle can say about `V(omega)` for a given flavor.
#[derive(Debug, Clone)]
pub struct Observation {
    /// Dimension of the `k`-invariants.
    pub k_invariants: usize,
    /// Whether `V(omega)` has a non-zero vector invariant under the flavor's isotropy group.
    pub spherical: bool,
    /// Support of the invariant vector, when spherical.
    pub support: Option<Vec<Weight>>,
    /// `|R_A(v, v)|` for the unit invariant vector, when spherical.
    pub reynolds: Option<f64>,
    /// Samples per torus direction used for `reynolds`.
    pub samples: usize,
}

pub fn observe(alg: &MatrixAlgebra, flavor: Flavor, omega: &Weight) -> Result<Observation, OracleError> {
    let irrep = build_irrep(alg, omega)?;
    let inv = k_invariants(&irrep, alg);
    let samples = exactness_threshold(&irrep, alg);
    let vector = match (inv.as_slice(), flavor) {
        ([v], Flavor::K0) => Some(v),
        ([v], Flavor::KZ) if fixed_by_component_group(&irrep, alg, v) => Some(v),
        _ => None,
    };
    let (support, reynolds) = match vector {
        Some(v) => (Some(support_of(&irrep, v)?), Some(reynolds_ra(&irrep, alg, v, v, samples).norm())),
        None => (None, None),
    };
    Ok(Observation { k_invariants: inv.len(), spherical: vector.is_some(), support, reynolds, samples })
}
