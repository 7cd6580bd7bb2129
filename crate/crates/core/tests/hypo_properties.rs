use proptest::prelude::*;

use orbitalis_core::hypo::{
    self, chapman_kolmogorov_residual, diagonal_integral, flat_orbital, localization_profile, model_kernel, oracles, oscillator_trace,
    product_state_l1, vacuum_marginal,
};
use orbitalis_core::numerics::{integrate, QuadSettings};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn supertrace_is_b_independent(a in -3.0f64..3.0, b in 0.05f64..20.0, t in 0.1f64..5.0) {
        let v = hypo::hypo_supertrace(a, b, t).unwrap();
        prop_assert!((v - flat_orbital(a, t)).abs() < 1e-8);
    }

    #[test]
    fn diagonal_factorizes(a in -3.0f64..3.0, b in 0.1f64..10.0, t in 0.1f64..5.0) {
        let d = diagonal_integral(a, b, t).unwrap();
        let want = oscillator_trace(b, t).unwrap() * flat_orbital(a, t);
        prop_assert!((d - want).abs() < 1e-9 * want);
    }

    #[test]
    fn semigroup(b in 0.2f64..5.0, t in 0.05f64..3.0, s in 0.05f64..3.0,
                 p in proptest::collection::vec(-2.0f64..2.0, 4)) {
        let r = chapman_kolmogorov_residual(b, t, s, &[[p[0], p[1], p[2], p[3]]]).unwrap();
        prop_assert!(r < 1e-9, "{}", r);
    }

    #[test]
    fn kernel_positive_translation_invariant(b in 0.05f64..10.0, t in 0.05f64..5.0, shift in -5.0f64..5.0,
                                             p in proptest::collection::vec(-2.0f64..2.0, 4)) {
        let k = model_kernel(b, t).unwrap();
        let v = k.log_eval(p[0], p[1], p[2], p[3]);
        let w = k.log_eval(p[0] + shift, p[1], p[2] + shift, p[3]);
        prop_assert!(v.is_finite() && (v - w).abs() < 1e-9 * v.abs().max(1.0));
    }

    #[test]
    fn flip_adjoint_of_kernel(b in 0.1f64..5.0, t in 0.1f64..3.0, p in proptest::collection::vec(-2.0f64..2.0, 4)) {
        let k = model_kernel(b, t).unwrap();
        let v = k.log_eval(p[0], p[1], p[2], p[3]);
        let w = k.log_eval(p[2], -p[3], p[0], -p[1]);
        prop_assert!((v - w).abs() < 1e-10 * v.abs().max(1.0));
    }

    #[test]
    fn y_marginal_closed_form(y in -2.0f64..2.0, b in 0.3f64..3.0, t in 0.1f64..3.0) {
        let tau = t / (b * b);
        let want = (0.5 * tau).exp() * (-0.5 * y * y * tau.tanh()).exp() / tau.cosh().sqrt();
        let got = oracles::y_marginal(y, b, t).unwrap();
        prop_assert!((got - want).abs() < 1e-12 * want);
    }
}

/// Semigroup law by brute-force 2-D quadrature over the intermediate point,
/// independent of the Gaussian-form algebra.
#[test]
fn semigroup_by_quadrature() {
    let (b, t, s) = (1.0, 0.4, 0.6);
    let kt = model_kernel(b, t).unwrap();
    let ks = model_kernel(b, s).unwrap();
    let kts = model_kernel(b, t + s).unwrap();
    let (x, y, xp, yp) = (0.1, 0.3, -0.4, 0.5);
    let set = QuadSettings { abs_tol: 1e-15, rel_tol: 1e-11, max_intervals: 2000 };
    let inner = |x2: f64| integrate(|y2| kt.eval(x, y, x2, y2) * ks.eval(x2, y2, xp, yp), -12.0, 12.0, set).unwrap().value;
    let v = integrate(inner, -12.0, 12.0, set).unwrap().value;
    let want = kts.eval(x, y, xp, yp);
    assert!((v - want).abs() < 1e-9 * want, "{v} vs {want}");
}

/// Vacuum x-marginal relative error behaves like b²/2t and is below 1e-3 at
/// b = 0.05, t = 2.
#[test]
fn vacuum_marginal_tends_to_flat_kernel() {
    for t in [1.0, 2.0] {
        for b in [0.02, 0.05, 0.1] {
            let err = vacuum_marginal(0.0, b, t).unwrap() / flat_orbital(0.0, t) - 1.0;
            let ratio = err / (b * b / (2.0 * t));
            assert!((ratio - 1.0).abs() < 0.05, "t={t} b={b}: {err}");
        }
    }
    let err = (vacuum_marginal(0.0, 0.05, 2.0).unwrap() / flat_orbital(0.0, 2.0) - 1.0).abs();
    assert!(err < 1e-3, "{err}");
    for a in [0.5, 1.0] {
        let err = (vacuum_marginal(a, 0.02, 1.0).unwrap() / flat_orbital(a, 1.0) - 1.0).abs();
        assert!(err < 1e-3, "a={a}: {err}");
    }
}

#[test]
fn localization_diagnostics() {
    let p1 = localization_profile(1.0, 1.0, 1.0, 201, 6.0).unwrap();
    let p10 = localization_profile(1.0, 10.0, 1.0, 201, 6.0).unwrap();
    assert!(p10.second_moment < p1.second_moment);
    assert!(p1.rows.iter().all(|r| r.1.is_finite() && r.1 > 0.0));
    // L¹ distance to the product-state profile shrinks linearly with b
    let d: Vec<f64> = [0.1, 0.05, 0.025, 0.005].iter().map(|b| product_state_l1(1.0, *b, 1.0).unwrap()).collect();
    assert!(d.windows(2).all(|w| w[1] < w[0]));
    assert!((d[0] / d[1] - 2.0).abs() < 0.1);
    assert!(d[3] < 1e-2, "{d:?}");
}

#[test]
fn pde_oracle_converges_on_coarse_grids() {
    let coarse = oracles::pde_oracle(1.0, 0.5, oracles::PdeConfig { nodes: 64, dt: 1.0 / 50.0, ..Default::default() }).unwrap();
    let finer = oracles::pde_oracle(1.0, 0.5, oracles::PdeConfig { nodes: 128, dt: 1.0 / 100.0, ..Default::default() }).unwrap();
    assert!(finer.l2_residual < coarse.l2_residual);
    assert!(finer.l2_residual < 1e-3);
}

#[test]
fn monte_carlo_is_thread_count_independent() {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = one.install(|| oracles::feynman_kac_marginal(0.2, 1.0, 1.0, 30_000, 32, 5).unwrap());
    let b = oracles::feynman_kac_marginal(0.2, 1.0, 1.0, 30_000, 32, 5).unwrap();
    assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
}
