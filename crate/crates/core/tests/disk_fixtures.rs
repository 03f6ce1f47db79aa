//! Disk solver against frozen reference values.
//!
//! The fixtures were generated with 30-digit arithmetic (mpmath `legenq` of type 3 and
//! `findroot` on the boundary equation); they do not depend on this crate.

use hyrobin::disk_solver::{
    alpha_of_nu, alpha_star_disk, alpha_star_upper_bound, lambda1_disk, lambda_of_nu, nu_of_lambda, DiskSolver,
    SpectralKind,
};
use hyrobin::scalar::coth;

/// (α, R, λ)
const LAMBDA_FIXTURES: [(f64, f64, f64); 15] = [
    (-5.0, 0.5, -15.7192679213),
    (-5.0, 1.0, -18.7561697382),
    (-5.0, 2.0, -19.8478813915),
    (-5.0, 4.0, -19.9972545574),
    (-2.0, 0.5, -0.923698918835),
    (-2.0, 1.0, -1.65029724938),
    (-2.0, 2.0, -1.95560539136),
    (-2.0, 4.0, -1.99919474409),
    (-1.0, 0.5, 0.216092599084),
    (-1.0, 1.0, 0.0889627187397),
    (-1.0, 2.0, 0.012203347963),
    (-1.0, 4.0, 0.000223640072084),
    (-0.6, 1.0, 0.249535307827),
    (-0.6, 2.0, 0.241913347405),
    (-0.6, 4.0, 0.240036568041),
];

/// (R, α⋆)
const ALPHA_STAR_FIXTURES: [(f64, f64); 6] = [
    (0.25, -1.181882128),
    (0.5, -0.774350212),
    (1.0, -0.5768367271),
    (2.0, -0.5093071247),
    (5.0, -0.5000227009),
    (10.0, -0.500000001),
];

#[test]
fn lambda_matches_fixtures() {
    for (alpha, r, lambda) in LAMBDA_FIXTURES {
        let res = lambda1_disk(alpha, r).unwrap();
        assert_eq!(res.kind, SpectralKind::DiscreteEigenvalue);
        assert!((res.lambda - lambda).abs() <= 2e-10 * lambda.abs().max(1.0), "α={alpha} R={r}: {}", res.lambda);
        assert!(res.residual <= 1e-10 * alpha.abs().max(1.0));
    }
    let nu = lambda1_disk(-5.0_f64, 1.0).unwrap().nu.unwrap();
    assert!((nu - 3.8596066036).abs() < 1e-9);
}

#[test]
fn above_threshold_is_essential() {
    let res = lambda1_disk(-0.6_f64, 0.5).unwrap();
    assert_eq!(res.kind, SpectralKind::EssentialBottom);
    assert_eq!(res.lambda, 0.25);
    assert!(res.nu.is_none());
    for r in [0.1, 1.0, 7.0] {
        assert_eq!(lambda1_disk(0.0, r).unwrap().kind, SpectralKind::EssentialBottom);
    }
}

#[test]
fn alpha_star_matches_fixtures() {
    for (r, star) in ALPHA_STAR_FIXTURES {
        let got = alpha_star_disk(r).unwrap();
        assert!((got - star).abs() < 1e-9, "R={r}: {got}");
        assert!(got < 0.0);
    }
    let far = alpha_star_disk(20.0_f64).unwrap();
    assert!(far > -0.51 && far < -0.49);
}

#[test]
fn boundary_relation_fixtures() {
    assert!((alpha_of_nu(0.0_f64, 1.0).unwrap() + 1.102_315_749_122_578_3).abs() < 1e-12);
    assert!((alpha_of_nu(5.0_f64, 1.0).unwrap() + 6.143_133_178_9).abs() < 1e-9);
    assert!((alpha_of_nu(50.0_f64, 1.0).unwrap() + 51.154_770_570_684).abs() < 1e-9);
}

#[test]
fn closed_form_round_trip() {
    for nu in [-0.4_f64, 0.0, 0.5, 1.0, 3.0] {
        for r in [0.5, 1.0, 2.0] {
            let alpha = alpha_of_nu(nu, r).unwrap();
            let res = lambda1_disk(alpha, r).unwrap();
            let want = -nu * (nu + 1.0);
            let scale = if want == 0.0 { 1.0 } else { want.abs() };
            assert!((res.lambda - want).abs() <= 1e-10 * scale, "ν={nu} R={r}: {}", res.lambda);
        }
    }
    let res = lambda1_disk(alpha_of_nu(1.0_f64, 1.0).unwrap(), 1.0).unwrap();
    assert!((res.nu.unwrap() - 1.0).abs() < 1e-10 && res.residual <= 1e-10);
}

#[test]
fn degree_lambda_round_trip() {
    for nu in [-0.49, -0.3, 0.0, 0.7, 4.0, 30.0] {
        let back: f64 = nu_of_lambda(lambda_of_nu(nu));
        assert!((back - nu).abs() <= 1e-12 * nu.abs().max(1.0));
    }
}

#[test]
fn strongly_attractive_boundary() {
    let res = lambda1_disk(-10.0_f64, 1.0).unwrap();
    assert!(res.lambda < -20.0);
}

#[test]
fn ordering_in_alpha() {
    let r = 1.0;
    let alphas = [-6.0, -3.0, -1.5, -1.0, -0.7, -0.6];
    let lambdas: Vec<f64> = alphas.iter().map(|&a| lambda1_disk(a, r).unwrap().lambda).collect();
    assert!(lambdas.windows(2).all(|w| w[0] < w[1]), "{lambdas:?}");
}

#[test]
fn radius_ordering_and_critical_parameter() {
    let radii = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0];
    let lambdas: Vec<f64> = radii.iter().map(|&r| lambda1_disk(-2.0, r).unwrap().lambda).collect();
    assert!(lambdas.windows(2).all(|w| w[0] > w[1]));
    let stars: Vec<f64> = radii.iter().map(|&r| alpha_star_disk(r).unwrap()).collect();
    assert!(stars.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn published_bound_holds_from_radius_one() {
    // Below R ≈ 0.6 the published bound is smaller than α⋆; see the acceptance suite.
    for r in [1.0, 2.0, 5.0, 10.0] {
        assert!(alpha_star_disk(r).unwrap() <= alpha_star_upper_bound(r));
    }
    assert!(alpha_star_disk(0.5_f64).unwrap() > alpha_star_upper_bound(0.5));
    assert!((alpha_star_upper_bound(1.0_f64) + 0.472_577_9).abs() < 1e-7);
    assert!(alpha_star_upper_bound(1e-3_f64) < -400.0);
    assert!((alpha_star_upper_bound(40.0_f64) + 0.5).abs() < 1e-15);
}

#[test]
fn lower_bound_on_boundary_relation() {
    for nu in [-0.4, 0.0, 1.0, 3.0, 10.0] {
        for r in [0.1, 0.5, 1.0, 3.0] {
            assert!(alpha_of_nu(nu, r).unwrap() > -(nu + 1.0) * coth(r));
        }
    }
    // positive λ forces α > −coth R
    for (alpha, r, lambda) in LAMBDA_FIXTURES {
        if lambda > 0.0 {
            assert!(alpha > -coth(r));
        }
    }
}

#[test]
fn boundary_relation_is_monotone_on_a_grid() {
    let solver = DiskSolver::<f64>::default();
    let nus: Vec<f64> = (0..200).map(|i| -0.5 + 1e-6 + 0.05 * i as f64).collect();
    for r in [0.01, 0.3, 1.0, 4.0, 12.0] {
        assert!(solver.alpha_monotonicity_violations(r, &nus).unwrap().is_empty(), "R = {r}");
    }
}

#[test]
fn small_radius_rejected() {
    assert!(lambda1_disk(-1.0_f64, 5e-4).unwrap_err().is_input_error());
    assert!(alpha_star_disk(0.0_f64).is_err());
    assert!(lambda1_disk(f64::NAN, 1.0).is_err());
}
