//! Numerical great-circle (Funk) transform on the 2-sphere.
//!
//! Real spherical harmonics are orthonormal for the surface measure of total
//! mass `4 pi`, without the Condon-Shortley phase:
//! `Y_l^0 = N_l0 P_l`, `Y_l^m = sqrt2 N_lm P_l^m cos(m phi)` and
//! `Y_l^-m = sqrt2 N_lm P_l^m sin(m phi)` for `m > 0`.
//! Circle integrals use the normalized measure, so constants integrate to themselves.

use std::f64::consts::PI;

use gauss_quad::legendre::GaussLegendre;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, UnitSphere};
use thiserror::Error;

pub const MAX_DEGREE: u32 = 12;

#[derive(Debug, Error, PartialEq)]
pub enum FunkError {
    #[error("point {0:?} is not on the unit sphere")]
    NotUnit([f64; 3]),
    #[error("order {m} is out of range for degree {l}")]
    BadOrder { l: u32, m: i32 },
    #[error("degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeTooLarge(u32),
    #[error("circle normal must be non-zero")]
    ZeroNormal,
    #[error("at least {min} samples are required, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("at least 10 trial circles are required, got {0}")]
    TooFewTrials(usize),
    #[error("trial circles are degenerate")]
    DegenerateTrials,
}

/// Real harmonic of degree `l` and order `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarmonicSpec {
    l: u32,
    m: i32,
}

impl HarmonicSpec {
    pub fn new(l: u32, m: i32) -> Result<Self, FunkError> {
        if l > MAX_DEGREE {
            return Err(FunkError::DegreeTooLarge(l));
        }
        if m.unsigned_abs() > l {
            return Err(FunkError::BadOrder { l, m });
        }
        Ok(HarmonicSpec { l, m })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// All orders `-l..=l` of degree `l`.
    pub fn all_of_degree(l: u32) -> Result<Vec<Self>, FunkError> {
        let li = l as i32;
        (-li..=li).map(|m| HarmonicSpec::new(l, m)).collect()
    }
}

/// Normalized associated Legendre values `Nbar_lm P_l^m(x)` for `l <= lmax`,
/// indexed `[l][m]`, with `Nbar_lm = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!)`.
fn normalized_legendre(lmax: usize, x: f64) -> Vec<Vec<f64>> {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut p = vec![vec![0.0; lmax + 1]; lmax + 1];
    p[0][0] = 1.0 / (4.0 * PI).sqrt();
    for m in 1..=lmax {
        let mf = m as f64;
        p[m][m] = ((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * s * p[m - 1][m - 1];
    }
    for m in 0..lmax {
        p[m + 1][m] = (2.0 * m as f64 + 3.0).sqrt() * x * p[m][m];
    }
    for m in 0..=lmax {
        for l in m + 2..=lmax {
            let (lf, mf) = (l as f64, m as f64);
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
            p[l][m] = a * (x * p[l - 1][m] - b * p[l - 2][m]);
        }
    }
    p
}

fn harmonic_from_table(h: HarmonicSpec, table: &[Vec<f64>], phi: f64) -> f64 {
    let m = h.m.unsigned_abs() as usize;
    let plm = table[h.l as usize][m];
    if m == 0 {
        return plm;
    }
    let trig = if h.m > 0 { (m as f64 * phi).cos() } else { (m as f64 * phi).sin() };
    std::f64::consts::SQRT_2 * plm * trig
}

fn harmonic_unchecked(h: HarmonicSpec, p: [f64; 3]) -> f64 {
    let table = normalized_legendre(h.l as usize, p[2].clamp(-1.0, 1.0));
    harmonic_from_table(h, &table, p[1].atan2(p[0]))
}

fn norm3(p: [f64; 3]) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

pub fn eval_harmonic(h: HarmonicSpec, point: [f64; 3]) -> Result<f64, FunkError> {
    if (norm3(point) - 1.0).abs() > 1e-12 {
        return Err(FunkError::NotUnit(point));
    }
    Ok(harmonic_unchecked(h, point))
}

/// `P_l(0)` by the three-term recurrence.
pub fn legendre_at_zero(l: u32) -> f64 {
    let (mut prev, mut cur) = (1.0, 0.0); // P_0(0), P_1(0)
    if l == 0 {
        return prev;
    }
    for k in 1..l {
        let k = f64::from(k);
        let next = -k * prev / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Great circle `c(t) = cos(t) u + sin(t) v` orthogonal to a unit normal `n`,
/// with `{u, v, n}` right-handed and orthonormal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatCircle {
    normal: [f64; 3],
    u: [f64; 3],
    v: [f64; 3],
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalized(a: [f64; 3]) -> [f64; 3] {
    let n = norm3(a);
    [a[0] / n, a[1] / n, a[2] / n]
}

impl GreatCircle {
    /// Circle with the given normal; the normal is rescaled to unit length.
    pub fn new(normal: [f64; 3]) -> Result<Self, FunkError> {
        if norm3(normal) < 1e-300 {
            return Err(FunkError::ZeroNormal);
        }
        let n = normalized(normal);
        // seed with the coordinate axis least aligned with n
        let k = (0..3).min_by(|&i, &j| n[i].abs().total_cmp(&n[j].abs())).expect("three axes");
        let mut e = [0.0; 3];
        e[k] = 1.0;
        let d = dot(e, n);
        let u = normalized([e[0] - d * n[0], e[1] - d * n[1], e[2] - d * n[2]]);
        let v = cross(n, u);
        Ok(GreatCircle { normal: n, u, v })
    }

    pub fn normal(&self) -> [f64; 3] {
        self.normal
    }

    pub fn point(&self, t: f64) -> [f64; 3] {
        let (s, c) = t.sin_cos();
        [c * self.u[0] + s * self.v[0], c * self.u[1] + s * self.v[1], c * self.u[2] + s * self.v[2]]
    }
}

pub const MIN_CIRCLE_SAMPLES: usize = 4;

/// `(1/n) sum_k f(c(2 pi k / n))`, exact for trigonometric polynomials of degree below `n`.
pub fn funk_transform<F: Fn([f64; 3]) -> f64>(f: F, circle: &GreatCircle, n: usize) -> Result<f64, FunkError> {
    if n < MIN_CIRCLE_SAMPLES {
        return Err(FunkError::TooFewSamples { min: MIN_CIRCLE_SAMPLES, got: n });
    }
    let sum: f64 = (0..n).map(|k| f(circle.point(2.0 * PI * k as f64 / n as f64))).sum();
    Ok(sum / n as f64)
}

/// Seeded circles with normals uniform on the sphere.
pub fn random_circles(count: usize, seed: u64) -> Vec<GreatCircle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n: [f64; 3] = UnitSphere.sample(&mut rng);
            GreatCircle::new(n).expect("unit normal")
        })
        .collect()
}

/// Default sample count for degree `l`: comfortably above the exactness bound `2l`.
pub fn default_samples(l: u32) -> usize {
    (4 * l as usize + 8).max(MIN_CIRCLE_SAMPLES)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunkHeckeFit {
    pub l: u32,
    /// Least-squares `c` in `transform(Y)(C) = c * Y(normal(C))`.
    pub ratio: f64,
    /// Largest `|transform(Y)(C) - ratio * Y(normal(C))|` over the fitted data.
    pub residual: f64,
    /// Largest `|transform(Y)(C)|` over the fitted data.
    pub max_transform: f64,
}

fn fit(l: u32, orders: &[HarmonicSpec], circles: &[GreatCircle], samples: usize) -> Result<FunkHeckeFit, FunkError> {
    let mut pairs = Vec::with_capacity(orders.len() * circles.len());
    for &h in orders {
        for c in circles {
            let t = funk_transform(|p| harmonic_unchecked(h, p), c, samples)?;
            pairs.push((t, harmonic_unchecked(h, c.normal())));
        }
    }
    let syy: f64 = pairs.iter().map(|(_, y)| y * y).sum();
    if syy < 1e-20 {
        return Err(FunkError::DegenerateTrials);
    }
    let ratio = pairs.iter().map(|(t, y)| t * y).sum::<f64>() / syy;
    let residual = pairs.iter().map(|(t, y)| (t - ratio * y).abs()).fold(0.0, f64::max);
    let max_transform = pairs.iter().map(|(t, _)| t.abs()).fold(0.0, f64::max);
    Ok(FunkHeckeFit { l, ratio, residual, max_transform })
}

fn check_trials(circles: &[GreatCircle]) -> Result<(), FunkError> {
    if circles.len() < 10 {
        return Err(FunkError::TooFewTrials(circles.len()));
    }
    let first = circles[0].normal();
    if circles.iter().all(|c| dot(c.normal(), first).abs() > 1.0 - 1e-12) {
        return Err(FunkError::DegenerateTrials);
    }
    Ok(())
}

/// Funk-Hecke eigenvalue of degree `l`, fitted over `trials` seeded random
/// circles and every order `m`.
pub fn funk_hecke_ratio(l: u32, trials: usize, samples: usize, seed: u64) -> Result<FunkHeckeFit, FunkError> {
    let orders = HarmonicSpec::all_of_degree(l)?;
    let circles = random_circles(trials, seed);
    check_trials(&circles)?;
    fit(l, &orders, &circles, samples)
}

/// One row per `(l, m)`: the fitted ratio for that harmonic alone and its residual.
#[derive(Debug, Clone, PartialEq)]
pub struct FunkRow {
    pub l: u32,
    pub m: i32,
    pub ratio: f64,
    pub residual: f64,
    pub expected: f64,
}

pub fn funk_table(lmax: u32, trials: usize, samples: usize, seed: u64) -> Result<Vec<FunkRow>, FunkError> {
    if lmax > MAX_DEGREE {
        return Err(FunkError::DegreeTooLarge(lmax));
    }
    let circles = random_circles(trials, seed);
    check_trials(&circles)?;
    let mut rows = Vec::new();
    for l in 0..=lmax {
        for h in HarmonicSpec::all_of_degree(l)? {
            let f = fit(l, &[h], &circles, samples)?;
            rows.push(FunkRow { l, m: h.m, ratio: f.ratio, residual: f.residual, expected: legendre_at_zero(l) });
        }
    }
    Ok(rows)
}

/// Finite combination of real harmonics.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPoly {
    pub terms: Vec<(HarmonicSpec, f64)>,
}

impl HarmonicPoly {
    pub fn eval(&self, p: [f64; 3]) -> f64 {
        let table = normalized_legendre(self.degree() as usize, p[2].clamp(-1.0, 1.0));
        let phi = p[1].atan2(p[0]);
        self.terms.iter().map(|(h, c)| c * harmonic_from_table(*h, &table, phi)).sum()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(h, _)| h.l).max().unwrap_or(0)
    }

    /// Standard normal coefficients on every harmonic of degree at most `degree`.
    pub fn random(degree: u32, rng: &mut ChaCha8Rng) -> Result<Self, FunkError> {
        let mut terms = Vec::new();
        for l in 0..=degree {
            for h in HarmonicSpec::all_of_degree(l)? {
                let c: f64 = StandardNormal.sample(rng);
                terms.push((h, c));
            }
        }
        Ok(HarmonicPoly { terms })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Boundedness {
    /// `L2` norm of `f` on the sphere.
    pub norm_in: f64,
    /// Monte Carlo estimate of the `L2` norm of the transform on the space of circles.
    pub norm_out: f64,
    /// Standard error of `norm_out`: Monte Carlo sampling error combined with
    /// a floating-point rounding floor.
    pub stderr: f64,
}

impl Boundedness {
    pub fn holds(&self) -> bool {
        self.norm_out <= self.norm_in + 3.0 * self.stderr
    }
}

/// `L2` norm on the sphere by Gauss-Legendre in `cos(theta)` times the
/// trapezoid rule in `phi`, exact for polynomials of degree below `2 * nodes`.
pub fn sphere_norm<F: Fn([f64; 3]) -> f64>(f: F, nodes: usize) -> f64 {
    let gl = GaussLegendre::new(nodes.max(2)).expect("at least two nodes");
    let nphi = 2 * nodes + 2;
    let mut total = 0.0;
    for &(z, w) in gl.as_node_weight_pairs() {
        let s = (1.0 - z * z).max(0.0).sqrt();
        let ring: f64 = (0..nphi)
            .map(|k| {
                let phi = 2.0 * PI * k as f64 / nphi as f64;
                let v = f([s * phi.cos(), s * phi.sin(), z]);
                v * v
            })
            .sum();
        total += w * ring * 2.0 * PI / nphi as f64;
    }
    total.sqrt()
}

const ROUNDING_ULPS: f64 = 256.0;

/// Compares the `L2` norm of `f` with that of its circle transform, both for
/// the surface measure of mass `4 pi` (circles are indexed by their normals).
pub fn boundedness_check(f: &HarmonicPoly, n_circles: usize, seed: u64) -> Result<Boundedness, FunkError> {
    let l = f.degree();
    let norm_in = sphere_norm(|p| f.eval(p), l as usize + 2);
    let samples = default_samples(l);
    let circles = random_circles(n_circles, seed);
    let values: Vec<f64> = circles
        .iter()
        .map(|c| funk_transform(|p| f.eval(p), c, samples).map(|t| t * t))
        .collect::<Result<_, _>>()?;
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    let se_mean = (var / n).sqrt();
    let norm_out = (4.0 * PI * mean).sqrt();
    let sampling = if norm_out > 0.0 { 4.0 * PI * se_mean / (2.0 * norm_out) } else { (4.0 * PI * se_mean).sqrt() };
    // both norms are sums of O(100) rounded terms; without this floor an
    // exact equality case (f constant) can fail by a few ulps
    let rounding = ROUNDING_ULPS * f64::EPSILON * norm_in.max(norm_out);
    let stderr = sampling.hypot(rounding);
    Ok(Boundedness { norm_in, norm_out, stderr })
}
