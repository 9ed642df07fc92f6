use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use proptest::prelude::*;
use torus_radon::funk_numeric::{
    eval_harmonic, funk_hecke_ratio, funk_table, funk_transform, legendre_at_zero, sphere_norm, GreatCircle,
    HarmonicPoly, HarmonicSpec,
};

fn rotate(r: &Matrix3<f64>, p: [f64; 3]) -> [f64; 3] {
    let v = r * Vector3::from(p);
    [v.x, v.y, v.z]
}

fn rotation(axis: [f64; 3], angle: f64) -> Matrix3<f64> {
    Rotation3::from_axis_angle(&Unit::new_normalize(Vector3::from(axis)), angle).into_inner()
}

fn unit() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0).prop_filter("non-degenerate", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_intertwines_rotations(
        l in 0u32..=8, m_frac in 0.0f64..1.0, normal in unit(), axis in unit(), angle in 0.0f64..6.3,
    ) {
        let li = l as i32;
        let m = (-li + (m_frac * f64::from(2 * li + 1)) as i32).min(li);
        let h = HarmonicSpec::new(l, m).unwrap();
        let r = rotation(axis, angle);
        let circle = GreatCircle::new(normal).unwrap();
        let moved = GreatCircle::new(rotate(&r, circle.normal())).unwrap();
        let n = (2 * l as usize + 2).max(4);
        let lhs = funk_transform(|p| eval_harmonic(h, rotate(&r, p)).unwrap(), &circle, n).unwrap();
        let rhs = funk_transform(|p| eval_harmonic(h, p).unwrap(), &moved, n).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn transform_is_sample_count_independent(l in 0u32..=10, extra in 0usize..20, normal in unit()) {
        let circle = GreatCircle::new(normal).unwrap();
        for h in HarmonicSpec::all_of_degree(l).unwrap() {
            let f = |p| eval_harmonic(h, p).unwrap();
            let base = funk_transform(f, &circle, (2 * l as usize + 1).max(4)).unwrap();
            let more = funk_transform(f, &circle, 2 * l as usize + 1 + extra + 4).unwrap();
            prop_assert!((base - more).abs() <= 1e-12);
        }
    }
}

#[test]
fn harmonics_are_orthonormal() {
    let all: Vec<HarmonicSpec> = (0..=6).flat_map(|l| HarmonicSpec::all_of_degree(l).unwrap()).collect();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i..] {
            let (a, b) = (*a, *b);
            // polarization of the exact quadrature norm
            let plus = sphere_norm(|p| eval_harmonic(a, p).unwrap() + eval_harmonic(b, p).unwrap(), 10).powi(2);
            let minus = sphere_norm(|p| eval_harmonic(a, p).unwrap() - eval_harmonic(b, p).unwrap(), 10).powi(2);
            let inner = (plus - minus) / 4.0;
            let expected = if a == b { 1.0 } else { 0.0 };
            assert!((inner - expected).abs() < 1e-12, "{a:?} {b:?}: {inner}");
        }
    }
}

#[test]
fn even_ratios_follow_legendre_at_zero() {
    // P_l(0) = (-1)^(l/2) (l-1)!! / l!!
    let mut expected = 1.0;
    for l in (0..=12).step_by(2) {
        if l > 0 {
            expected *= -f64::from(l - 1) / f64::from(l);
        }
        assert!((legendre_at_zero(l) - expected).abs() < 1e-15);
        let fit = funk_hecke_ratio(l, 12, (2 * l as usize + 2).max(4), 5).unwrap();
        assert!((fit.ratio - expected).abs() < 1e-8, "l = {l}: {}", fit.ratio);
        assert!(fit.residual < 1e-10);
    }
}

#[test]
fn table_is_deterministic_and_complete() {
    let a = funk_table(4, 10, 16, 9).unwrap();
    assert_eq!(a, funk_table(4, 10, 16, 9).unwrap());
    assert_eq!(a.len(), 25);
    for row in &a {
        if row.l % 2 == 1 {
            assert!(row.ratio.abs() < 1e-10);
        } else {
            assert!((row.ratio - row.expected).abs() < 1e-8);
        }
    }
}

#[test]
fn random_polynomials_have_requested_degree() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let f = HarmonicPoly::random(5, &mut rng).unwrap();
    assert_eq!(f.degree(), 5);
    assert_eq!(f.terms.len(), 36);
}
