use std::f64::consts::PI;

use proptest::prelude::*;
use susyhier::par::Execution;
use susyhier::sisw::{energy, potential, StateIndex, WellConfig};
use susyhier::verify::{
    composite_gauss_legendre, expectation_coefficients, expectation_t, expectation_t_with,
    expectation_v, expectation_v_with, gauss_legendre, half_virial, kinetic_by_parts,
    numerov_eigenvalue, orthonormality_matrix, orthonormality_matrix_with, residual_schrodinger,
    sisw_numerov_energy, sort_reports, virial_check, NumerovGrid, QuadratureKind, QuadratureRule,
    Subject, ToleranceKind, VerificationReport,
};
use susyhier::Error;

fn st(n: usize, s: usize) -> StateIndex {
    StateIndex::new(n, s).unwrap()
}

#[test]
fn numerov_isw_ground_state() {
    let cfg = WellConfig::default();
    let e0 = cfg.e0();
    let e = numerov_eigenvalue(|_| 0.0, (0.0, 1.0), (0.5 * e0, 2.0 * e0), 16384, cfg.kinetic_scale())
        .unwrap();
    assert!((e / e0 - 1.0).abs() < 1e-7);
}

#[test]
fn numerov_level_one_ground_state() {
    let cfg = WellConfig::default();
    let e = sisw_numerov_energy(st(0, 1), &cfg, 16384).unwrap();
    assert!((e / cfg.e0() - 4.0).abs() < 4e-7, "{}", e / cfg.e0());
}

#[test]
fn numerov_level_ten_state_five() {
    let cfg = WellConfig::default();
    let e = sisw_numerov_energy(st(5, 10), &cfg, 16384).unwrap();
    assert!((e / (256.0 * cfg.e0()) - 1.0).abs() < 1e-6);
}

#[test]
fn numerov_matches_closed_spectrum() {
    for cfg in [WellConfig::default(), WellConfig::new(2.0, 0.7, 1.3).unwrap()] {
        for s in 0..=4 {
            for n in 0..=3 {
                let want = energy(st(n, s), &cfg);
                let e = sisw_numerov_energy(st(n, s), &cfg, 16384).unwrap();
                assert!((e / want - 1.0).abs() < 1e-6, "(n={n}, S={s}): {e} vs {want}");
            }
        }
    }
}

#[test]
fn numerov_harmonic_oscillator_levels() {
    // x^2 / 2 on [-10, 10]: levels k + 1/2.
    let g = NumerovGrid::from_fn(|x| 0.5 * x * x, -10.0, 10.0, 8192, 0.5).unwrap();
    let low = g.lowest(5, Execution::Sequential).unwrap();
    for (k, e) in low.iter().enumerate() {
        assert!((e - (k as f64 + 0.5)).abs() < 1e-7, "k={k}: {e}");
    }
    assert_eq!(g.count_below(2.0), 2);
}

#[test]
fn numerov_bracket_errors() {
    let cfg = WellConfig::default();
    let e0 = cfg.e0();
    let flat = |_: f64| 0.0;
    let r = numerov_eigenvalue(flat, (0.0, 1.0), (1.5 * e0, 3.5 * e0), 4096, 0.5);
    assert!(matches!(r, Err(Error::NoSignChange { .. })), "{r:?}");
    let r = numerov_eigenvalue(flat, (0.0, 1.0), (0.5 * e0, 10.0 * e0), 4096, 0.5);
    assert!(matches!(r, Err(Error::MultipleStates { count: 3, .. })), "{r:?}");
    assert!(NumerovGrid::from_fn(flat, 0.0, 1.0, 4, 0.5).is_err());
    assert!(NumerovGrid::from_fn(flat, 1.0, 0.0, 64, 0.5).is_err());
    assert!(NumerovGrid::from_fn(flat, 0.0, 1.0, 64, 0.0).is_err());
}

#[test]
fn numerov_eigenstate_matches_closed_form() {
    let cfg = WellConfig::default();
    let n = 4096;
    let g = NumerovGrid::from_fn(|x| potential(2, x, &cfg).unwrap_or(0.0), 0.0, 1.0, n, 0.5).unwrap();
    let e0 = cfg.e0();
    let (e, psi) = g.eigenstate(12.0 * e0, 20.0 * e0).unwrap();
    assert!((e / (16.0 * e0) - 1.0).abs() < 1e-6);
    // Normalize on the grid and compare shapes up to sign.
    let h = g.step();
    let norm = (psi.iter().map(|v| v * v).sum::<f64>() * h).sqrt();
    let sign = psi[n / 8].signum();
    for i in (1..n).step_by(97) {
        let want = susyhier::sisw::eigenfunction(st(1, 2), g.x(i), &cfg).unwrap();
        assert!((sign * psi[i] / norm - want).abs() < 1e-5, "i={i}");
    }
}

#[test]
fn expectation_examples() {
    let cfg = WellConfig::default();
    let e0 = cfg.e0();
    let v = expectation_v(st(0, 1), &cfg).unwrap();
    let t = expectation_t(st(0, 1), &cfg).unwrap();
    assert!((v.closed_form - 8.0 / 3.0 * e0).abs() < 1e-13);
    assert!((t.closed_form - 4.0 / 3.0 * e0).abs() < 1e-13);
    assert!((v.closed_form + t.closed_form - 4.0 * e0).abs() < 1e-13);
    assert!(v.relative_gap() < 1e-8 && t.relative_gap() < 1e-8);

    for n in 0..6 {
        let v = expectation_v(st(n, 0), &cfg).unwrap();
        let t = expectation_t(st(n, 0), &cfg).unwrap();
        assert_eq!(v.closed_form, 0.0);
        assert_eq!(v.quadrature, 0.0);
        let want = e0 * ((n + 1) * (n + 1)) as f64;
        assert!((t.closed_form - want).abs() < 1e-12 * want);
        assert!(t.relative_gap() < 1e-10);
    }

    let v = expectation_v(st(3, 2), &cfg).unwrap();
    let t = expectation_t(st(3, 2), &cfg).unwrap();
    assert!(v.relative_gap() < 1e-8, "{}", v.relative_gap());
    assert!(t.relative_gap() < 1e-8, "{}", t.relative_gap());
}

#[test]
fn expectation_quadrature_agrees_across_table() {
    let cfg = WellConfig::new(1.4, 0.8, 2.0).unwrap();
    for s in 1..=6 {
        for n in 0..=8 {
            let v = expectation_v(st(n, s), &cfg).unwrap();
            let t = expectation_t(st(n, s), &cfg).unwrap();
            assert!(v.relative_gap() < 1e-8, "V (n={n}, S={s}): {}", v.relative_gap());
            assert!(t.relative_gap() < 1e-8, "T (n={n}, S={s}): {}", t.relative_gap());
        }
    }
}

#[test]
fn energy_sum_identity_in_rationals() {
    for s in 0..=20usize {
        for n in 0..=20usize {
            let (v, t, d) = expectation_coefficients(st(n, s));
            let k = (n + s + 1) as u64;
            assert_eq!(v + t, d * k * k, "(n={n}, S={s})");
        }
    }
}

#[test]
fn virial_examples() {
    let cfg = WellConfig::default();
    let r = virial_check(st(0, 1), &cfg).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(r.check, "virial");
    assert_eq!(r.tolerance_kind, ToleranceKind::Relative);
    assert!(virial_check(st(5, 3), &cfg).unwrap().pass);
    match virial_check(st(0, 0), &cfg) {
        Err(Error::Rejected(msg)) => assert!(msg.contains("S >= 1")),
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn virial_matches_closed_kinetic() {
    let cfg = WellConfig::default();
    let rule = QuadratureRule::gauss_legendre(400, 0.0, 1.0).unwrap();
    for s in 1..=6 {
        for n in 0..=6 {
            let w = half_virial(st(n, s), &cfg, &rule).unwrap();
            let t = expectation_t(st(n, s), &cfg).unwrap().closed_form;
            assert!((w / t - 1.0).abs() < 1e-8, "(n={n}, S={s})");
        }
    }
}

#[test]
fn residual_examples() {
    let cfg = WellConfig::default();
    assert!(residual_schrodinger(st(0, 0), &cfg, 1001).unwrap() < 1e-10);
    assert!(residual_schrodinger(st(4, 1), &cfg, 1001).unwrap() < 1e-8);
    assert!(residual_schrodinger(st(10, 6), &cfg, 1001).unwrap() < 1e-8);
    assert!(residual_schrodinger(st(1, 1), &cfg, 1).is_err());
}

#[test]
fn residual_detects_wrong_energy() {
    // A shifted level does not solve the equation; the residual must see it.
    let cfg = WellConfig::default();
    let good = residual_schrodinger(st(2, 3), &cfg, 501).unwrap();
    let e = susyhier::sisw::Eigenstate::new(st(2, 3), cfg);
    let mut worst = 0.0f64;
    for i in 1..100 {
        let y = PI * i as f64 / 100.0;
        let j = e.jet_in_angle(y);
        // use (n+S)^2 instead of (n+S+1)^2
        let r = j.d2 - 12.0 / y.sin().powi(2) * j.value + 25.0 * j.value;
        worst = worst.max(r.abs());
    }
    assert!(good < 1e-8 && worst > 1.0);
}

#[test]
fn gram_examples() {
    let cfg = WellConfig::default();
    let rule = QuadratureRule::gauss_legendre(200, 0.0, 1.0).unwrap();
    let g = orthonormality_matrix(0, 8, &cfg, &rule).unwrap();
    assert!(g.max_deviation < 1e-12);
    for s in [1, 8] {
        let g = orthonormality_matrix(s, 12, &cfg, &rule).unwrap();
        assert!(g.max_deviation < 1e-10, "S={s}: {}", g.max_deviation);
        assert!(g.refinement_change < 1e-11);
        assert_eq!(g.entries.len(), 13);
    }
    assert!(matches!(orthonormality_matrix(1, 17, &cfg, &rule), Err(Error::Parameter(_))));
}

#[test]
fn gram_parallel_equals_sequential() {
    let cfg = WellConfig::default();
    let rule = QuadratureRule::gauss_legendre(300, 0.0, 1.0).unwrap();
    let a = orthonormality_matrix_with(4, 12, &cfg, &rule, Execution::Sequential).unwrap();
    let b = orthonormality_matrix_with(4, 12, &cfg, &rule, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn gram_flags_under_resolution() {
    let cfg = WellConfig::default();
    let coarse = QuadratureRule::gauss_legendre(12, 0.0, 1.0).unwrap();
    assert!(matches!(orthonormality_matrix(3, 12, &cfg, &coarse), Err(Error::Resolution(_))));
}

#[test]
fn kinetic_by_parts_agrees() {
    let cfg = WellConfig::with_width(0.8).unwrap();
    let rule = QuadratureRule::gauss_legendre(400, 0.0, cfg.a).unwrap();
    for s in 1..=6 {
        for n in 0..=8 {
            let direct = expectation_t_with(st(n, s), &cfg, &rule).unwrap().quadrature;
            let parts = kinetic_by_parts(st(n, s), &cfg, &rule);
            assert!((direct - parts).abs() < 1e-9 * direct, "(n={n}, S={s})");
        }
    }
}

#[test]
fn quadrature_exact_on_polynomials() {
    for nodes in [1usize, 2, 5, 16, 64] {
        let rule = QuadratureRule::gauss_legendre(nodes, -0.5, 2.0).unwrap();
        let deg = (2 * nodes - 1).min(30) as i32;
        // int_{-0.5}^{2} x^d dx
        let exact = (2f64.powi(deg + 1) - (-0.5f64).powi(deg + 1)) / (deg + 1) as f64;
        let got = rule.integrate(|x| x.powi(deg));
        assert!((got - exact).abs() < 1e-12 * exact.abs().max(1.0), "nodes={nodes} deg={deg}");
    }
    let simpson = QuadratureRule::simpson(3, 0.0, 3.0).unwrap();
    assert!((simpson.integrate(|x| x * x * x) - 81.0 / 4.0).abs() < 1e-12);
    assert_eq!(simpson.nodes().len(), 7);
    assert_eq!(simpson.kind(), QuadratureKind::CompositeSimpson { panels: 3 });
}

#[test]
fn quadrature_reference_values() {
    let rule = QuadratureRule::gauss_legendre(64, 0.0, PI).unwrap();
    assert!((rule.integrate(f64::sin) - 2.0).abs() < 1e-14);
    let rule = QuadratureRule::gauss_legendre(40, 0.0, 1.0).unwrap();
    assert!((rule.integrate(|x| (-x * x).exp()) - 0.746_824_132_812_427_025).abs() < 1e-14);
    let (x, w) = gauss_legendre(5);
    assert!((x[0] + 0.906_179_845_938_663_993).abs() < 1e-15 || (x[4] + 0.906_179_845_938_663_993).abs() < 1e-15);
    let total: f64 = w.iter().sum();
    assert!((total - 2.0).abs() < 1e-14);
    let (x, w) = composite_gauss_legendre(8, 10, 0.0, 5.0);
    assert_eq!(x.len(), 80);
    let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.cos()).sum();
    assert!((v - 5f64.sin()).abs() < 1e-14);
}

#[test]
fn quadrature_rejects_bad_rules() {
    assert!(QuadratureRule::gauss_legendre(0, 0.0, 1.0).is_err());
    assert!(QuadratureRule::gauss_legendre(1025, 0.0, 1.0).is_err());
    assert!(QuadratureRule::gauss_legendre(10, 1.0, 1.0).is_err());
    assert!(QuadratureRule::simpson(0, 0.0, 1.0).is_err());
    assert!(QuadratureRule::gauss_legendre(1024, 0.0, 1.0).is_ok());
}

#[test]
fn doubling_nodes_changes_integrals_little() {
    let cfg = WellConfig::default();
    let rule = QuadratureRule::gauss_legendre(400, 0.0, 1.0).unwrap();
    let fine = rule.refined().unwrap();
    assert_eq!(fine.kind(), QuadratureKind::GaussLegendre { nodes: 800 });
    for s in 1..=6 {
        for n in [0, 4, 8] {
            let a = expectation_v_with(st(n, s), &cfg, &rule).unwrap().quadrature;
            let b = expectation_v_with(st(n, s), &cfg, &fine).unwrap().quadrature;
            assert!((a - b).abs() < 1e-11 * a.abs().max(1.0), "V (n={n}, S={s})");
            let a = expectation_t_with(st(n, s), &cfg, &rule).unwrap().quadrature;
            let b = expectation_t_with(st(n, s), &cfg, &fine).unwrap().quadrature;
            assert!((a - b).abs() < 1e-11 * a.abs().max(1.0), "T (n={n}, S={s})");
        }
    }
}

#[test]
fn report_pass_rules() {
    let r = VerificationReport::absolute("x", st(1, 2), 1.0 + 1e-9, 1.0, 1e-8);
    assert!(r.pass);
    assert_eq!(r.subject, Subject::State { n: 1, s: 2 });
    let r = VerificationReport::absolute("x", st(1, 2), 1.0 + 1e-7, 1.0, 1e-8);
    assert!(!r.pass);
    let r = VerificationReport::relative("x", st(0, 0), 200.0 + 1e-7, 200.0, 1e-9);
    assert!(r.pass);
    let r = VerificationReport::relative("x", Subject::params("ho"), f64::NAN, 1.0, 1.0);
    assert!(!r.pass);
    let r = VerificationReport::failed("x", Subject::params("ho"), 1e-3);
    assert!(!r.pass && r.measured.is_nan());
}

#[test]
fn reports_sort_by_check_then_state() {
    let mut v = vec![
        VerificationReport::absolute("virial", st(0, 2), 0.0, 0.0, 1.0),
        VerificationReport::absolute("gram", st(0, 3), 0.0, 0.0, 1.0),
        VerificationReport::absolute("virial", st(0, 1), 0.0, 0.0, 1.0),
        VerificationReport::absolute("gram", st(0, 1), 0.0, 0.0, 1.0),
        VerificationReport::absolute("virial", st(1, 1), 0.0, 0.0, 1.0),
    ];
    sort_reports(&mut v);
    let keys: Vec<(String, Subject)> = v.into_iter().map(|r| (r.check, r.subject)).collect();
    let want = [("gram", 0, 1), ("gram", 0, 3), ("virial", 0, 1), ("virial", 0, 2), ("virial", 1, 1)];
    for ((c, s), (wc, wn, ws)) in keys.iter().zip(want) {
        assert_eq!(c, wc);
        assert_eq!(*s, Subject::State { n: wn, s: ws });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_expectations_sum_to_energy(n in 0usize..40, s in 0usize..30) {
        let cfg = WellConfig::default();
        let (v, t, d) = expectation_coefficients(st(n, s));
        let sum = cfg.e0() * (v + t) as f64 / d as f64;
        let e = energy(st(n, s), &cfg);
        prop_assert!((sum - e).abs() <= 1e-12 * e);
    }

    #[test]
    fn prop_report_pass_matches_definition(m in -10f64..10.0, r in -10f64..10.0, tol in 0f64..5.0) {
        let a = VerificationReport::absolute("p", st(0, 0), m, r, tol);
        prop_assert_eq!(a.pass, (m - r).abs() <= tol);
        let b = VerificationReport::relative("p", st(0, 0), m, r, tol);
        prop_assert_eq!(b.pass, (m - r).abs() <= tol * r.abs());
    }
}
