//! The matrix oracle and the lattice criteria must agree on every small case.

use num_complex::Complex64;
use torus_radon::radon_kernel::{in_kernel, is_spherical, support_of as predicted_support, KernelVerdict};
use torus_radon::rep_oracle::{
    build_algebra, build_irrep, exactness_threshold, k_invariants, observe, reynolds_ra, support_of,
    zero_restricted_projection,
    ExactSu2, MatrixAlgebra,
};
use torus_radon::root_core::Weight;
use torus_radon::space_catalog::{bundled_catalog, Space};

fn space(name: &str) -> Space {
    bundled_catalog().into_iter().find(|s| s.name() == name).unwrap()
}

fn check(alg: &MatrixAlgebra, space: &Space, labels: &[i64]) {
    let omega = alg.rs.weight_from_dynkin(labels).unwrap();
    let irrep = build_irrep(alg, &omega).unwrap();
    let inv = k_invariants(&irrep, alg);
    let spherical = is_spherical(space, &omega).unwrap();
    assert!(inv.len() <= 1, "{labels:?}: {} invariants", inv.len());
    assert_eq!(inv.len() == 1, spherical, "{labels:?}");
    if !spherical {
        return;
    }
    let v = &inv[0];
    assert_eq!(support_of(&irrep, v).unwrap(), predicted_support(space, &omega).unwrap(), "{labels:?}");

    let dual = space.rs().dual_highest_weight(&omega).unwrap();
    let verdict = in_kernel(space, &dual).unwrap();
    let n = exactness_threshold(&irrep, alg);
    let r = reynolds_ra(&irrep, alg, v, v, n);
    let exact = zero_restricted_projection(&irrep, alg, v, v);
    assert!((r - Complex64::new(exact, 0.0)).norm() <= 1e-10, "{labels:?}");
    let doubled = reynolds_ra(&irrep, alg, v, v, 2 * n);
    assert!((r - doubled).norm() < 1e-12, "{labels:?}");
    match verdict {
        KernelVerdict::InKernel { .. } => assert!(r.norm() <= 1e-10, "{labels:?}: {r}"),
        _ => assert!(r.norm() >= 1e-3, "{labels:?}: {r}"),
    }
}

#[test]
fn su2_sphere() {
    let alg = build_algebra("su2").unwrap();
    let s = space("sphere-2");
    for l in 0..=3 {
        check(&alg, &s, &[2 * l]);
    }
}

#[test]
fn su3_real_form() {
    let alg = build_algebra("su3").unwrap();
    let s = space("su3-mod-so3");
    for a in 0..=4 {
        for b in 0..=4 - a {
            check(&alg, &s, &[a, b]);
        }
    }
}

#[test]
fn so5_sphere() {
    let alg = build_algebra("so5").unwrap();
    let s = space("sphere-4");
    for labels in [[0, 0], [1, 0], [2, 0], [3, 0], [1, 2], [0, 2]] {
        check(&alg, &s, &labels);
    }
}

#[test]
fn group_manifold() {
    let alg = build_algebra("su2xsu2").unwrap();
    let s = space("group-su2");
    for a in 0..=3 {
        for b in 0..=3 - a {
            check(&alg, &s, &[a, b]);
        }
    }
}

#[test]
fn carrier_dimension_is_weyl_dimension() {
    for name in ["su2", "su3", "so5", "su2xsu2"] {
        let alg = build_algebra(name).unwrap();
        let rank = alg.rs.rank();
        let mut labels = vec![0i64; rank];
        labels[0] = 2;
        let omega = alg.rs.weight_from_dynkin(&labels).unwrap();
        let irrep = build_irrep(&alg, &omega).unwrap();
        assert_eq!(irrep.dim().to_string(), alg.rs.weyl_dimension(&omega).to_string());
    }
}

#[test]
fn irrep_matrices_respect_brackets() {
    let alg = build_algebra("su3").unwrap();
    let irrep = build_irrep(&alg, &alg.rs.weight_from_dynkin(&[1, 1]).unwrap()).unwrap();
    for (i, x) in alg.basis.iter().enumerate() {
        for (j, y) in alg.basis.iter().enumerate() {
            let c = alg.coordinates(&(x * y - y * x)).unwrap();
            let lhs = &irrep.matrices[i] * &irrep.matrices[j] - &irrep.matrices[j] * &irrep.matrices[i];
            let rhs = irrep.matrices.iter().zip(c.iter()).fold(lhs.clone() * 0.0, |acc, (m, k)| acc + m * *k);
            assert!((lhs - rhs).norm() < 1e-9);
        }
    }
}

#[test]
fn exact_and_float_su2_agree() {
    let alg = build_algebra("su2").unwrap();
    for n in 0..=6usize {
        let exact = ExactSu2::new(n);
        let ex_inv = exact.invariants();
        let irrep = build_irrep(&alg, &alg.rs.weight_from_dynkin(&[n as i64]).unwrap()).unwrap();
        let inv = k_invariants(&irrep, &alg);
        assert_eq!(ex_inv.len(), inv.len(), "n={n}");
        if let (Some(e), Some(v)) = (ex_inv.first(), inv.first()) {
            let labels: Vec<i64> = support_of(&irrep, v)
                .unwrap()
                .iter()
                .map(|w: &Weight| alg.rs.dynkin_labels(&w.0)[0].to_integer().try_into().unwrap())
                .collect();
            assert_eq!(labels, exact.support(e));
            let ratio = exact.zero_weight_projection(e, e) / exact.inner(e, e);
            let float = zero_restricted_projection(&irrep, &alg, v, v);
            assert!((torus_radon::rational::to_f64(&ratio) - float).abs() < 1e-10, "n={n}");
        }
    }
}

fn check_flavored(alg: &MatrixAlgebra, space: &Space, labels: &[i64]) {
    let omega = alg.rs.weight_from_dynkin(labels).unwrap();
    let seen = observe(alg, space.flavor(), &omega).unwrap();
    assert!(seen.k_invariants <= 1);
    assert_eq!(seen.spherical, is_spherical(space, &omega).unwrap(), "{} {labels:?}", space.name());
    if seen.spherical {
        assert_eq!(seen.support.unwrap(), predicted_support(space, &omega).unwrap());
        let dual = space.rs().dual_highest_weight(&omega).unwrap();
        let killed = matches!(in_kernel(space, &dual).unwrap(), KernelVerdict::InKernel { .. });
        let r = seen.reynolds.unwrap();
        assert!(if killed { r <= 1e-10 } else { r >= 1e-3 }, "{} {labels:?}: {r}", space.name());
    }
}

#[test]
fn adjoint_flavors_through_component_group() {
    let su2 = build_algebra("su2").unwrap();
    let rp2 = space("rp-2");
    for l in 0..=3 {
        check_flavored(&su2, &rp2, &[2 * l]);
    }
    let so5 = build_algebra("so5").unwrap();
    let rp4 = space("rp-4");
    for labels in [[0, 0], [1, 0], [2, 0], [3, 0], [4, 0], [0, 2], [1, 2]] {
        check_flavored(&so5, &rp4, &labels);
    }
}

#[test]
fn observation_matches_on_isotropy_flavor() {
    let alg = build_algebra("su3").unwrap();
    let s = space("su3-mod-so3");
    for labels in [[0, 0], [2, 0], [1, 1], [2, 2], [0, 4]] {
        check_flavored(&alg, &s, &labels);
    }
}
