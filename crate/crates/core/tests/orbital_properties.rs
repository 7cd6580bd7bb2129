use proptest::prelude::*;

use orbitalis_core::lie::{centralizer_decomposition, laplacian_shift, LieAlgebraModel, SemisimpleElement};
use orbitalis_core::orbital::{heat_orbital_integral, j_gamma, rank_one_closed_form, HeatParameters, QuadratureConfig};

fn value(m: &LieAlgebraModel, g: &SemisimpleElement, t: f64, shift: f64) -> f64 {
    heat_orbital_integral(m, g, &HeatParameters::scalar(m, t, shift), QuadratureConfig::default()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn explicit_equals_rank_one_for_hyperbolic(a in 0.2f64..3.0, t in 0.2f64..3.0) {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_hyperbolic(&m, a).unwrap();
        let p = HeatParameters::scalar(&m, t, laplacian_shift(&m));
        let e = heat_orbital_integral(&m, &g, &p, QuadratureConfig::default()).unwrap().value;
        let r = rank_one_closed_form(&m, &g, &p).unwrap().value;
        prop_assert!((e - r).abs() < 1e-12 * r, "{} vs {}", e, r);
    }

    #[test]
    fn translation_sign_symmetry(a in 0.2f64..3.0, t in 0.3f64..3.0) {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_hyperbolic(&m, a).unwrap();
        let v = value(&m, &g, t, 0.125);
        let w = value(&m, &g.with_negated_a(), t, 0.125);
        prop_assert!((v - w).abs() < 1e-13 * v);
    }

    #[test]
    fn j_at_zero_positive_and_conjugate_symmetric(phi in 0.1f64..6.18, y in -20.0f64..20.0) {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_elliptic(&m, phi).unwrap();
        let d = centralizer_decomposition(&m, &g).unwrap();
        let j0 = j_gamma(&m, &d, &g, &[0.0]).unwrap();
        prop_assert!(j0.re > 0.0 && j0.im.abs() < 1e-14 * j0.re);
        let jp = j_gamma(&m, &d, &g, &[y]).unwrap();
        let jm = j_gamma(&m, &d, &g, &[-y]).unwrap();
        prop_assert!((jm - jp.conj()).norm() <= 1e-12 * jp.norm().max(1e-300));
        prop_assert!((jm.re - jp.re).abs() <= 1e-12 * jp.norm().max(1e-300));
    }

    #[test]
    fn j_grows_at_most_exponentially(phi in 0.1f64..6.18) {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_elliptic(&m, phi).unwrap();
        let d = centralizer_decomposition(&m, &g).unwrap();
        let log_c = j_gamma(&m, &d, &g, &[0.0]).unwrap().norm().ln();
        let mut rate = f64::MIN;
        for i in 1..=400 {
            let y = 0.05 * i as f64;
            for s in [y, -y] {
                let lj = j_gamma(&m, &d, &g, &[s]).unwrap().norm().ln();
                rate = rate.max((lj - log_c) / y);
            }
        }
        prop_assert!(rate.is_finite() && rate <= 1.0, "rate {}", rate);
    }

    #[test]
    fn euclidean_gaussian_scaling(
        a in proptest::collection::vec(-2.0f64..2.0, 1..4),
        t in 0.2f64..3.0,
        alpha in 0.3f64..4.0,
        shift in 0.0f64..1.0,
    ) {
        let m = LieAlgebraModel::abelian(a.len());
        let n = a.len() as f64;
        let g = SemisimpleElement::translation(&m, &a).unwrap();
        let scaled: Vec<f64> = a.iter().map(|x| x * alpha.sqrt()).collect();
        let gs = SemisimpleElement::translation(&m, &scaled).unwrap();
        let v = value(&m, &g, t, shift);
        let w = value(&m, &gs, alpha * t, shift / alpha);
        prop_assert!((w - alpha.powf(-n / 2.0) * v).abs() < 1e-13 * w);
    }
}
