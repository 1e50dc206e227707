//! Connection forms, flatness relations, curvature and Δ on model
//! representations.

use std::f64::consts::PI;

use ecl_core::connection::delta::{modular_delta_series, DerivationImages};
use ecl_core::connection::{
    ad_series, adjoint_kappa_rep, assemble_kzb_form, build_small_rep_cherednik, cherednik_finite_rep, commutator,
    curvature_residual, expected_finite_dimension, flatness_relations_check, max_abs, rational, CMat, ConnRep,
    Differential, Kernel, RelationToggles,
};
use ecl_core::elliptic::ThetaEngine;
use ecl_core::rootsys::RootSystem;
use ecl_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn type_a(n: usize) -> RootSystem {
    RootSystem::from_label("A", n - 1).unwrap()
}

fn point(n: usize) -> Vec<Complex64> {
    [c(0.05, 0.02), c(0.4, 0.3), c(-0.2, 0.6), c(0.27, -0.33)][..n].to_vec()
}

fn finite(n: usize) -> ConnRep {
    cherednik_finite_rep(n, rational(1, 1), rational(n as i64 - 1, n as i64))
        .unwrap()
        .to_conn_rep()
}

/// Jacobi's `θ₁(v | q)` with nome `q = e^{πiτ}`, summed directly.
fn jacobi_theta1(v: Complex64, tau: Complex64) -> Complex64 {
    let mut s = c(0.0, 0.0);
    for n in 0..30 {
        let e = (n as f64 + 0.5).powi(2);
        let qn = (c(0.0, PI) * tau * e).exp();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        s += qn * (v * (2.0 * n as f64 + 1.0)).sin() * sign;
    }
    s * 2.0
}

/// `θ'/θ(z) = π θ₁'(πz)/θ₁(πz)`, with θ₁' by a fourth-order difference.
fn logderiv_oracle(z: Complex64, tau: Complex64) -> Complex64 {
    let h = 1e-3;
    let f = |w: Complex64| jacobi_theta1(PI * w, tau);
    let d = (f(z - 2.0 * h) - f(z - h) * 8.0 + f(z + h) * 8.0 - f(z + 2.0 * h)) / (12.0 * h);
    d / f(z)
}

#[test]
fn finite_quotient_dimensions() {
    assert_eq!(expected_finite_dimension(3, 2), 4);
    assert_eq!(expected_finite_dimension(4, 3), 27);
    assert_eq!(finite(3).dim, 4);
    assert_eq!(finite(4).dim, 27);
}

#[test]
fn finite_quotient_satisfies_every_relation_and_is_flat() {
    let tau = c(0.3, 1.1);
    let e = ThetaEngine::new(tau, 40).unwrap();
    for n in [3, 4] {
        let rs = type_a(n);
        let rep = finite(n);
        let report = flatness_relations_check(&rep, &rs, RelationToggles::ALL).unwrap();
        assert!(report.passed(), "sl{n}: {report:?}");
        assert!(report.skipped().is_empty());
        report.require_complete().unwrap();
        let curv = curvature_residual(&rep, &rs, &point(n), Kernel::Elliptic(&e), 8, 1e-3).unwrap();
        assert!(curv < 1e-8, "sl{n}: {curv}");
    }
}

#[test]
fn nilpotent_x_terminates_the_ad_series() {
    let e = ThetaEngine::new(c(0.3, 1.1), 40).unwrap();
    let rs = type_a(3);
    let rep = finite(3);
    let a4 = assemble_kzb_form(&rep, &rs, &point(3), Kernel::Elliptic(&e), 4).unwrap();
    let a8 = assemble_kzb_form(&rep, &rs, &point(3), Kernel::Elliptic(&e), 8).unwrap();
    assert_eq!(a4.max_diff(&a8), 0.0);
    let x = rep.x_of(&[c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.0)]).unwrap();
    let k = e.k_series(c(0.2, 0.1), 8).unwrap();
    let s = ad_series(&k, Some(&x), &rep.t[0], 8);
    assert!(s.terminated_at.is_some());
    assert_eq!(s.tail_estimate, 0.0);
}

#[test]
fn trigonometric_limit_of_the_form() {
    let tau = c(0.0, 20.0);
    let e = ThetaEngine::new(tau, 40).unwrap();
    let rs = type_a(3);
    let rep = finite(3);
    let z = point(3);
    let ell = assemble_kzb_form(&rep, &rs, &z, Kernel::Elliptic(&e), 8).unwrap();
    let trig = assemble_kzb_form(&rep, &rs, &z, Kernel::Trigonometric, 8).unwrap();
    assert!(ell.max_diff(&trig) < 1e-7, "{}", ell.max_diff(&trig));
}

#[test]
fn log_derivative_matches_jacobi_theta() {
    for tau in [c(0.3, 1.1), c(-0.4, 0.9)] {
        let e = ThetaEngine::new(tau, 40).unwrap();
        for z in [c(0.17, 0.23), c(-0.35, 0.4)] {
            let got = Kernel::Elliptic(&e).logderiv(z).unwrap();
            assert!((got - logderiv_oracle(z, tau)).norm() < 1e-9, "{tau} {z}");
        }
    }
}

#[test]
fn central_representation_gives_a_scalar_form() {
    // t_α = s·1, no x or y: A = s Σ_α θ'/θ(α(z)) dα.
    let tau = c(0.3, 1.1);
    let e = ThetaEngine::new(tau, 40).unwrap();
    let rs = type_a(3);
    let s = c(0.7, -0.2);
    let rep = ConnRep {
        x: None,
        y: None,
        kappa: None,
        weyl: None,
        ..ConnRep::zero(&rs, 1)
    };
    let rep = ConnRep {
        t: rep.t.iter().map(|_| CMat::identity(1, 1) * s).collect(),
        ..rep
    };
    let z = point(3);
    let form = assemble_kzb_form(&rep, &rs, &z, Kernel::Elliptic(&e), 8).unwrap();
    assert!(!form.warnings.is_empty());
    let w = [c(0.3, 0.1), c(-0.2, 0.5), c(0.1, -0.4)];
    let mut expect = c(0.0, 0.0);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        expect += s * logderiv_oracle(z[i] - z[j], tau) * (w[i] - w[j]);
    }
    assert!((form.contract(&w)[(0, 0)] - expect).norm() < 1e-8);
}

#[test]
fn form_is_independent_of_the_choice_of_positive_roots() {
    // Replacing α by −α negates the argument, the coroot and dα; since
    // k(−a, −x) = −k(a, x), each summand is unchanged.
    let e = ThetaEngine::new(c(-0.4, 0.9), 40).unwrap();
    let rs = type_a(3);
    let rep = finite(3);
    let z = point(3);
    for (alpha, t) in rs.positive_roots().iter().zip(&rep.t) {
        let a: Complex64 = alpha.0.iter().zip(&z).map(|(&r, &w)| w * r as f64).sum();
        let half: Vec<Complex64> = rs
            .coroot(alpha)
            .iter()
            .map(|r| c(*r.numer() as f64 / *r.denom() as f64 / 2.0, 0.0))
            .collect();
        let neg: Vec<Complex64> = half.iter().map(|v| -v).collect();
        let plus = ad_series(
            &Kernel::Elliptic(&e).series(a, 8).unwrap(),
            rep.x_of(&half).as_ref(),
            t,
            8,
        );
        let minus = ad_series(
            &Kernel::Elliptic(&e).series(-a, 8).unwrap(),
            rep.x_of(&neg).as_ref(),
            t,
            8,
        );
        assert!(max_abs(&(plus.value + minus.value)) < 1e-10);
    }
}

#[test]
fn small_representation_kappa() {
    let rs = type_a(4);
    let rep = build_small_rep_cherednik(&rs, c(1.0, 0.0), c(1.0 / 3.0, 0.0)).unwrap();
    assert_eq!(rep.dim, 3);
    for k in rep.kappa.as_ref().unwrap() {
        assert!(max_abs(&(k * k - k * c(4.0, 0.0))) < 1e-12);
        assert!((k.trace() - 4.0).norm() < 1e-12);
    }
    for s in rep.weyl.as_ref().unwrap() {
        assert!(max_abs(&(s * s - CMat::identity(3, 3))) < 1e-12);
    }
    let report = flatness_relations_check(&rep, &rs, RelationToggles::ALL).unwrap();
    assert!(report.passed());
    assert!(!report.skipped().is_empty());
    assert!(matches!(report.require_complete(), Err(Error::Capability(_))));
    let e = ThetaEngine::new(c(0.3, 1.1), 40).unwrap();
    assert!(matches!(
        curvature_residual(&rep, &rs, &point(4), Kernel::Elliptic(&e), 8, 1e-3),
        Err(Error::Capability(_))
    ));
}

#[test]
fn scaling_t_scales_the_form_without_x() {
    let e = ThetaEngine::new(c(0.3, 1.1), 40).unwrap();
    let rs = type_a(3);
    let rep = build_small_rep_cherednik(&rs, c(1.0, 0.0), c(1.0 / 3.0, 0.0)).unwrap();
    let z = point(3);
    let w = [c(0.3, 0.1), c(-0.2, 0.5), c(0.1, -0.4)];
    let s = c(-1.5, 0.75);
    let a = assemble_kzb_form(&rep, &rs, &z, Kernel::Elliptic(&e), 8)
        .unwrap()
        .contract(&w);
    let b = assemble_kzb_form(&rep.scale_t(s), &rs, &z, Kernel::Elliptic(&e), 8)
        .unwrap()
        .contract(&w);
    assert!(max_abs(&(b - a * s)) < 1e-12);
}

#[test]
fn adjoint_control_breaks_the_mixed_relation() {
    let rs = type_a(3);
    let rep = adjoint_kappa_rep(&rs).unwrap();
    let report = flatness_relations_check(&rep, &rs, RelationToggles::ALL).unwrap();
    assert!(!report.passed());
    let fam = |k: usize| report.relations.iter().find(|r| r.family == k).unwrap();
    assert!(fam(3).offender.is_some());
    assert!(fam(5).passed());
    let e = ThetaEngine::new(c(0.3, 1.1), 40).unwrap();
    let curv = curvature_residual(&rep, &rs, &point(3), Kernel::Elliptic(&e), 8, 1e-3).unwrap();
    assert!(curv > 1e-3, "{curv}");
    assert!(adjoint_kappa_rep(&RootSystem::from_label("B", 2).unwrap()).is_err());
}

#[test]
fn the_form_components_commute_on_the_finite_quotient() {
    let e = ThetaEngine::new(c(0.3, 1.1), 40).unwrap();
    let rs = type_a(3);
    let form = assemble_kzb_form(&finite(3), &rs, &point(3), Kernel::Elliptic(&e), 8).unwrap();
    let a = form.ambient_components();
    let scale = a.iter().map(max_abs).fold(1.0f64, f64::max);
    for i in 0..a.len() {
        for j in 0..a.len() {
            assert!(max_abs(&commutator(&a[i], &a[j])) < 1e-10 * scale * scale);
        }
    }
    assert!(form
        .components
        .iter()
        .any(|(d, _)| matches!(d, Differential::Coordinate(_))));
}

#[test]
fn divisor_points_are_rejected() {
    let e = ThetaEngine::new(c(0.3, 1.1), 40).unwrap();
    let rs = type_a(3);
    let z = vec![c(0.2, 0.1), c(0.2, 0.1), c(-0.3, 0.4)];
    assert!(matches!(
        assemble_kzb_form(&finite(3), &rs, &z, Kernel::Elliptic(&e), 8),
        Err(Error::Singularity { .. })
    ));
    assert!(assemble_kzb_form(&finite(3), &rs, &point(2), Kernel::Elliptic(&e), 8).is_err());
}

/// Central rep with `κ = 0`: `Δ = −(Z/h∨)(1/2πi) Σ_β k₁(β(z))`, where
/// `k₁ = θ''/(2θ) − θ'''(0)/6` is the linear coefficient of the kernel.
#[test]
fn delta_for_a_central_representation() {
    let tau = c(0.3, 1.1);
    let e = ThetaEngine::new(tau, 40).unwrap();
    let rs = type_a(3);
    let zs = c(0.9, 0.3);
    let rep = ConnRep::casimir_from_kappa(
        "central",
        1,
        3,
        vec![CMat::zeros(1, 1); 3],
        zs,
        c(1.0, 0.0),
        c(3.0, 0.0),
        None,
        None,
    )
    .unwrap();
    let z = point(3);
    let delta = modular_delta_series(&e, &rs, &rep, &z, &DerivationImages::default(), 8).unwrap();
    assert_eq!(delta.omitted.len(), 2);
    let h = 1e-3;
    let th = |w: Complex64| e.theta(w);
    let d2 = |w: Complex64| {
        (-th(w - 2.0 * h) + th(w - h) * 16.0 - th(w) * 30.0 + th(w + h) * 16.0 - th(w + 2.0 * h)) / (12.0 * h * h)
    };
    let zero = c(0.0, 0.0);
    let d3 = (th(zero + 2.0 * h) - th(zero + h) * 2.0 + th(zero - h) * 2.0 - th(zero - 2.0 * h)) / (2.0 * h * h * h);
    let mut sum = c(0.0, 0.0);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let b = z[i] - z[j];
        sum += d2(b) / (th(b) * 2.0) - d3 / 6.0;
    }
    let expect = -zs / 3.0 * sum / c(0.0, 2.0 * PI);
    assert!(
        (delta.matrix[(0, 0)] - expect).norm() < 1e-5,
        "{} vs {expect}",
        delta.matrix[(0, 0)]
    );
}

#[test]
fn delta_is_invariant_under_tau_shift() {
    let rs = type_a(3);
    let rep = finite(3);
    let z = point(3);
    let tau = c(0.3, 1.1);
    let ie = vec![CMat::identity(rep.dim, rep.dim)];
    let der = DerivationImages { ih: None, ie };
    let a = modular_delta_series(&ThetaEngine::new(tau, 40).unwrap(), &rs, &rep, &z, &der, 8).unwrap();
    let b = modular_delta_series(&ThetaEngine::new(tau + 1.0, 40).unwrap(), &rs, &rep, &z, &der, 8).unwrap();
    assert!(max_abs(&(a.matrix - b.matrix)) < 1e-9);
    let small = build_small_rep_cherednik(&rs, c(1.0, 0.0), c(0.5, 0.0)).unwrap();
    assert!(matches!(
        modular_delta_series(&ThetaEngine::new(tau, 40).unwrap(), &rs, &small, &z, &der, 8),
        Err(Error::Domain(_))
    ));
    assert!(modular_delta_series(
        &ThetaEngine::new(tau, 40).unwrap(),
        &rs,
        &small,
        &z,
        &DerivationImages::default(),
        8
    )
    .is_ok());
    let bare = ConnRep::zero(&rs, 2);
    assert!(matches!(
        modular_delta_series(&ThetaEngine::new(tau, 40).unwrap(), &rs, &bare, &z, &der, 8),
        Err(Error::Capability(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn finite_quotient_form_is_flat_at_random_points(
        a in -0.45..0.45f64, b in -0.45..0.45f64, d in 0.05..0.4f64, e_ in 0.45..0.8f64,
    ) {
        let engine = ThetaEngine::new(c(0.3, 1.1), 40).unwrap();
        let rs = type_a(3);
        let z = vec![c(a, d), c(b, e_), c(0.0, 0.0)];
        let r = curvature_residual(&finite(3), &rs, &z, Kernel::Elliptic(&engine), 8, 1e-3).unwrap();
        prop_assert!(r < 1e-8);
    }
}
