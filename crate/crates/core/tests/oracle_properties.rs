use proptest::prelude::*;

use orbitalis_core::lie::{laplacian_shift, LieAlgebraModel, SemisimpleElement};
use orbitalis_core::oracle::{direct_orbital_integral, h2_heat_kernel, jacobian_r, IntegrationConfig};
use orbitalis_core::orbital::{heat_orbital_integral, HeatParameters, QuadratureConfig};

fn explicit(m: &LieAlgebraModel, g: &SemisimpleElement, t: f64) -> f64 {
    heat_orbital_integral(m, g, &HeatParameters::scalar(m, t, laplacian_shift(m)), QuadratureConfig::default()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hyperbolic_oracle_matches_formula(a in 0.3f64..2.5, t in 0.3f64..2.5) {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_hyperbolic(&m, a).unwrap();
        let o = direct_orbital_integral(&m, &g, t, IntegrationConfig::default()).unwrap().value;
        let e = explicit(&m, &g, t);
        prop_assert!((o - e).abs() <= (1e-6 * e.abs()).max(1e-10));
    }

    #[test]
    fn elliptic_oracle_matches_formula(phi in 0.8f64..5.4, t in 0.4f64..1.5) {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_elliptic(&m, phi).unwrap();
        let o = direct_orbital_integral(&m, &g, t, IntegrationConfig::default()).unwrap().value;
        let e = explicit(&m, &g, t);
        prop_assert!((o - e).abs() <= (1e-6 * e.abs()).max(1e-10), "{} vs {}", o, e);
    }

    #[test]
    fn oracle_decreases_with_translation(a in 0.3f64..2.0, da in 0.05f64..1.0, t in 0.3f64..2.0) {
        let m = LieAlgebraModel::sl2();
        let v1 = direct_orbital_integral(&m, &SemisimpleElement::sl2_hyperbolic(&m, a).unwrap(), t, IntegrationConfig::default()).unwrap().value;
        let v2 = direct_orbital_integral(&m, &SemisimpleElement::sl2_hyperbolic(&m, a + da).unwrap(), t, IntegrationConfig::default()).unwrap().value;
        prop_assert!(v2 < v1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integrand_is_positive(d in 0.0f64..12.0, t in 0.1f64..4.0, f in -4.0f64..4.0, a in 0.2f64..3.0) {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_hyperbolic(&m, a).unwrap();
        prop_assert!(h2_heat_kernel(d, t).unwrap() * jacobian_r(&g, &[f]).unwrap() > 0.0);
    }
}
