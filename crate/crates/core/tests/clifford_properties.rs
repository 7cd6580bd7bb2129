use nalgebra::DMatrix;
use proptest::prelude::*;
use std::sync::Arc;

use orbitalis_core::clifford::{
    adjoint_rep, bargmann_roundtrip, bargmann_transform, kostant_dirac, lambda_supertrace_identity, CliffordModel, KostantReport,
    Polynomial,
};
use orbitalis_core::lie::LieAlgebraModel;
use orbitalis_core::numerics::GaussHermite;

/// Homogeneous element Σ coef · (product of generators), parity = word length mod 2.
fn word_sum(gens: &[DMatrix<f64>], words: &[(Vec<usize>, f64)], odd: bool) -> DMatrix<f64> {
    let d = gens[0].nrows();
    let mut out = DMatrix::zeros(d, d);
    for (w, c) in words {
        let mut idx = w.clone();
        if (idx.len() % 2 == 1) != odd {
            idx.pop();
        }
        let mut m = DMatrix::identity(d, d);
        for &i in &idx {
            m *= &gens[i % gens.len()];
        }
        out += m * *c;
    }
    out
}

fn words() -> impl Strategy<Value = Vec<(Vec<usize>, f64)>> {
    proptest::collection::vec((proptest::collection::vec(0usize..6, 1..5), -1.0f64..1.0), 1..5)
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn supertrace_kills_supercommutators(wa in words(), wb in words(), pa: bool, pb: bool) {
        let cm = CliffordModel::new(&LieAlgebraModel::sl2());
        let gens: Vec<DMatrix<f64>> = cm.c.iter().chain(cm.c_hat.iter()).cloned().collect();
        let a = word_sum(&gens, &wa, pa);
        let b = word_sum(&gens, &wb, pb);
        let sign = if pa && pb { -1.0 } else { 1.0 };
        let comm = &a * &b - &b * &a * sign;
        let str = (cm.basis.parity() * comm).trace();
        prop_assert!(str.abs() < 1e-11);
    }

    #[test]
    fn kostant_residual_is_basis_independent(angle in 0.0f64..std::f64::consts::TAU) {
        let (s, c) = angle.sin_cos();
        let o = DMatrix::from_row_slice(3, 3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0]);
        let m = LieAlgebraModel::sl2();
        let rotated = m.change_basis(&o).unwrap();
        let r0 = KostantReport::for_adjoint(&m).unwrap().residual;
        let r1 = KostantReport::for_adjoint(&rotated).unwrap().residual;
        prop_assert!((r0 - r1).abs() < 1e-11);
    }

    #[test]
    fn lambda_identity_for_general_u(entries in proptest::collection::vec(-1.0f64..1.0, 16), n in 2usize..5) {
        let u = DMatrix::from_fn(n, n, |i, j| entries[i * 4 + j] + if i == j { 2.0 } else { 0.0 });
        prop_assume!(u.determinant().abs() > 0.1);
        let id = lambda_supertrace_identity(&u).unwrap();
        let scale = id.rhs.abs().max(1.0);
        prop_assert!((id.lhs - id.rhs).abs() < 1e-12 * scale);
        prop_assert!((id.lhs_n - id.rhs_n).abs() < 1e-11 * id.rhs_n.abs().max(1.0));
    }

    #[test]
    fn bargmann_roundtrip_random(coeffs in proptest::collection::vec(-2.0f64..2.0, 21)) {
        let mut p = Polynomial::zero(2, 5);
        let set = Arc::clone(&p.set);
        for (i, c) in coeffs.iter().enumerate().take(set.len()) {
            p.coeffs[i] = *c;
        }
        prop_assert!(bargmann_roundtrip(&p) < 1e-12);
    }
}

#[test]
fn kappa_and_dirac_are_odd() {
    let m = LieAlgebraModel::sl2();
    let cm = CliffordModel::new(&m);
    let par = cm.basis.parity();
    let k = cm.c_hat_kappa(&m);
    assert!((&par * &k * &par + &k).amax() < 1e-14);
    let rep = adjoint_rep(&m);
    let d = kostant_dirac(&m, &rep).unwrap();
    let big = par.kronecker(&DMatrix::identity(3, 3));
    assert!((&big * &d * &big + &d).amax() < 1e-14);
    assert!(d.amax() > 0.1);
}

/// The Bargmann images of monomials are orthogonal in L²(ℝ) with
/// ‖T(y^α)‖² = α!, checked with exact Gauss–Hermite quadrature.
#[test]
fn bargmann_is_unitary_on_monomials() {
    let gh = GaussHermite::new(24);
    let cap = 6;
    let images: Vec<Polynomial> =
        (0..=cap as u32).map(|k| bargmann_transform(&Polynomial::monomial(1, cap, &[k], 1.0))).collect();
    for (j, pj) in images.iter().enumerate() {
        for (k, pk) in images.iter().enumerate() {
            // weight e^{−x²} is the product of the two Gaussian factors
            let g: f64 = gh.nodes.iter().zip(&gh.weights).map(|(x, w)| w * pj.eval(&[*x]) * pk.eval(&[*x])).sum();
            let want = if j == k { factorial(j as u32) } else { 0.0 };
            assert!((g - want).abs() < 1e-11 * want.max(1.0), "({j},{k}): {g} vs {want}");
        }
    }
}
