use std::f64::consts::PI;
use std::time::Instant;

use orbitalis_core::lie::{LieAlgebraModel, SemisimpleElement};
use orbitalis_core::oracle::{direct_orbital_integral, h2_heat_kernel, IntegrationConfig};
use orbitalis_core::orbital::{heat_orbital_integral, HeatParameters, QuadratureConfig};

#[test]
fn hyperbolic_formula_against_orbit_integral() {
    let m = LieAlgebraModel::sl2();
    let start = Instant::now();
    for a in [0.5, 1.0, 2.0] {
        for t in [0.5, 1.0, 2.0] {
            let g = SemisimpleElement::sl2_hyperbolic(&m, a).unwrap();
            let f = heat_orbital_integral(&m, &g, &HeatParameters::scalar(&m, t, 0.125), QuadratureConfig::default()).unwrap();
            let o = direct_orbital_integral(&m, &g, t, IntegrationConfig::default()).unwrap();
            let rel = (f.value - o.value).abs() / f.value;
            println!("a={a} t={t} formula={:.15e} oracle={:.15e} rel={rel:.2e}", f.value, o.value);
            assert!(rel < 1e-6);
        }
    }
    println!("elapsed {:?}", start.elapsed());
}

#[test]
fn elliptic_formula_against_orbit_integral() {
    let m = LieAlgebraModel::sl2();
    let start = Instant::now();
    for phi in [PI / 2.0, 2.0 * PI / 3.0] {
        for t in [0.5, 1.0] {
            let g = SemisimpleElement::sl2_elliptic(&m, phi).unwrap();
            let f = heat_orbital_integral(&m, &g, &HeatParameters::scalar(&m, t, 0.125), QuadratureConfig::default()).unwrap();
            let o = direct_orbital_integral(&m, &g, t, IntegrationConfig::default()).unwrap();
            let rel = (f.value - o.value).abs() / f.value;
            println!("phi={phi:.4} t={t} formula={:.15e} oracle={:.15e} rel={rel:.2e} err={:.1e}", f.value, o.value, f.abs_error_estimate);
            assert!(rel < 1e-4);
        }
    }
    println!("elapsed {:?}", start.elapsed());
}

#[test]
fn identity_formula_against_mckean() {
    let m = LieAlgebraModel::sl2();
    for t in [0.5, 1.0, 2.0] {
        let g = SemisimpleElement::identity(&m);
        let f = heat_orbital_integral(&m, &g, &HeatParameters::scalar(&m, t, 0.125), QuadratureConfig::default()).unwrap();
        let k = h2_heat_kernel(0.0, t).unwrap();
        println!("t={t} formula={:.15e} mckean={:.15e}", f.value, k);
        assert!((f.value - k).abs() < 1e-6 * k);
    }
}
