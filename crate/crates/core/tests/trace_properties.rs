use num_complex::Complex64;
use proptest::prelude::*;

use orbitalis_core::lie::LieAlgebraModel;
use orbitalis_core::orbital::QuadratureConfig;
use orbitalis_core::trace::{
    self, circle_classes, circle_geometric_side, circle_length_spectrum, euler_product_check, fried_check_circle, ruelle_closed_form,
    ruelle_xi, selberg_assemble, surface_heat_trace, ClassEntry, LengthSpectrum, OrbitalEvaluator,
};

fn sorted_spectrum(raw: Vec<(f64, usize)>) -> LengthSpectrum {
    let mut cls: Vec<ClassEntry> = raw.into_iter().map(|(l, m)| ClassEntry::primitive(l, m)).collect();
    cls.sort_by(|a, b| a.length.total_cmp(&b.length));
    LengthSpectrum::new(cls, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poisson_sides_agree(t in 0.01f64..10.0) {
        let (s, g) = trace::poisson_both_sides(t).unwrap();
        prop_assert!((s - g).abs() < 1e-12);
    }

    #[test]
    fn plancherel_sides_agree(t in 0.25f64..4.0) {
        prop_assert!(trace::plancherel_identity_residual(t).unwrap() < 1e-8);
    }

    #[test]
    fn fried_closes(theta in 0.05f64..6.23) {
        prop_assert!(fried_check_circle(theta).unwrap().residual < 1e-10);
    }

    #[test]
    fn euler_product(raw in proptest::collection::vec((0.5f64..3.0, 1usize..4), 1..5), sigma in 2.0f64..6.0) {
        let s = sorted_spectrum(raw);
        prop_assert!(euler_product_check(&s, Complex64::new(sigma, 0.0)).unwrap() < 1e-10);
    }

    #[test]
    fn ruelle_series_matches_continuation(theta in 0.1f64..6.2, re in 0.2f64..3.0, im in -2.0f64..2.0) {
        let s = circle_length_spectrum(theta);
        let sigma = Complex64::new(re, im);
        let r = ruelle_xi(&s, sigma).unwrap().exp();
        let c = ruelle_closed_form(&s, sigma).unwrap();
        prop_assert!((r - c).norm() < 1e-12 * c.norm());
    }

    #[test]
    fn circle_selberg_is_poisson(t in 0.05f64..10.0) {
        let m = LieAlgebraModel::abelian(1);
        let v = selberg_assemble(&m, &circle_classes(&m, t).unwrap(), t, 0.0, OrbitalEvaluator::Explicit(QuadratureConfig::default())).unwrap();
        prop_assert!((v - circle_geometric_side(t).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn surface_trace_decreases_in_t(systole in 1.0f64..3.0, extra in proptest::collection::vec((0.0f64..4.0, 1usize..4), 0..6)) {
        let mut raw = vec![(systole, 1usize)];
        raw.extend(extra.into_iter().map(|(d, m)| (systole + d, m)));
        let s = sorted_spectrum(raw);
        let vol = 4.0 * std::f64::consts::PI;
        let ts: Vec<f64> = (0..=40).map(|i| 0.1 * 100f64.powf(i as f64 / 40.0)).collect();
        let vals: Vec<f64> = ts.iter().map(|t| surface_heat_trace(vol, &s, *t, 64).unwrap()).collect();
        prop_assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }
}
