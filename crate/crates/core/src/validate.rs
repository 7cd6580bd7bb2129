//! The invariant suite behind `orbitalis validate`: one named check per
//! module property, each with its tolerance.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::clifford::{bargmann_roundtrip, lambda_supertrace_identity, verify_weitzenbock, CliffordModel, KostantReport, Polynomial};
use crate::error::Result;
use crate::hypo::{self, oracles};
use crate::lie::{casimir_constants, centralizer_decomposition, laplacian_shift, LieAlgebraModel, SemisimpleElement};
use crate::oracle::{direct_orbital_integral, h2_heat_kernel, h2_total_mass, jacobian_r, jacobian_r_fd, IntegrationConfig};
use crate::orbital::{heat_orbital_integral, j_gamma, sl2_hyperbolic_closed_form, HeatParameters, QuadratureConfig};
use crate::trace;

use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub module: &'static str,
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub seconds: f64,
    pub detail: String,
}

fn check<F: FnOnce() -> Result<f64>>(module: &'static str, name: &str, tolerance: f64, f: F) -> CheckOutcome {
    let start = Instant::now();
    let (value, detail) = match f() {
        Ok(v) => (v, String::new()),
        Err(e) => (f64::NAN, e.to_string()),
    };
    CheckOutcome {
        module,
        name: name.to_string(),
        value,
        tolerance,
        passed: value.is_finite() && value <= tolerance,
        seconds: start.elapsed().as_secs_f64(),
        detail,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Haar-like random orthogonal matrix (QR of a Gaussian matrix, signs fixed).
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let signs = DVector::from_fn(n, |i, _| if r[(i, i)] < 0.0 { -1.0 } else { 1.0 });
    q * DMatrix::from_diagonal(&signs)
}

pub fn lie_checks() -> Vec<CheckOutcome> {
    let m = LieAlgebraModel::sl2();
    vec![
        check("lie_core", "sl2 structure residuals", 1e-12, || Ok(m.residuals().max())),
        check("lie_core", "sl2 Casimir traces (-2, 0)", 1e-14, || {
            let (p, k) = casimir_constants(&m);
            Ok((p + 2.0).abs().max(k.abs()))
        }),
        check("lie_core", "sl2 Laplacian shift 1/8", 1e-15, || Ok((laplacian_shift(&m) - 0.125).abs())),
        check("lie_core", "elliptic centralizer dims", 0.0, || {
            let g = SemisimpleElement::sl2_elliptic(&m, 2.0 * PI / 3.0)?;
            let d = centralizer_decomposition(&m, &g)?;
            Ok(if d.p == 0 && d.q == 1 && d.z0_perp.ncols() % 2 == 0 { 0.0 } else { 1.0 })
        }),
    ]
}

pub fn orbital_checks() -> Vec<CheckOutcome> {
    let m = LieAlgebraModel::sl2();
    let shift = laplacian_shift(&m);
    let quad = QuadratureConfig::default();
    vec![
        check("orbital_formula", "hyperbolic a=1 t=1: explicit vs closed form", 1e-10, || {
            let g = SemisimpleElement::sl2_hyperbolic(&m, 1.0)?;
            let v = heat_orbital_integral(&m, &g, &HeatParameters::scalar(&m, 1.0, shift), quad)?.value;
            Ok(rel(v, sl2_hyperbolic_closed_form(1.0, 1.0, shift).value))
        }),
        check("orbital_formula", "J(-Y) = conj J(Y) (elliptic, Y=0.7)", 1e-14, || {
            let g = SemisimpleElement::sl2_elliptic(&m, 1.0)?;
            let d = centralizer_decomposition(&m, &g)?;
            let a = j_gamma(&m, &d, &g, &[0.7])?;
            let b = j_gamma(&m, &d, &g, &[-0.7])?;
            Ok((a - b.conj()).norm() / a.norm())
        }),
        check("orbital_formula", "J(0) real positive (elliptic)", 0.0, || {
            let g = SemisimpleElement::sl2_elliptic(&m, 2.0)?;
            let d = centralizer_decomposition(&m, &g)?;
            let j = j_gamma(&m, &d, &g, &[0.0])?;
            Ok(if j.re > 0.0 && j.im.abs() < 1e-14 * j.re { 0.0 } else { 1.0 })
        }),
    ]
}

pub fn oracle_checks() -> Vec<CheckOutcome> {
    let m = LieAlgebraModel::sl2();
    let shift = laplacian_shift(&m);
    let cfg = IntegrationConfig::default();
    vec![
        check("heat_oracle", "stochastic completeness of H2 kernel (t=1)", 1e-9, || Ok((h2_total_mass(1.0)? - 1.0).abs())),
        check("heat_oracle", "normal-coordinate Jacobian vs finite differences", 1e-6, || {
            let g = SemisimpleElement::sl2_hyperbolic(&m, 1.3)?;
            let f = [0.8];
            Ok(rel(jacobian_r_fd(&g, &f)?, jacobian_r(&g, &f)?))
        }),
        check("heat_oracle", "hyperbolic a=1 t=1: oracle vs explicit", 1e-6, || {
            let g = SemisimpleElement::sl2_hyperbolic(&m, 1.0)?;
            Ok(rel(direct_orbital_integral(&m, &g, 1.0, cfg)?.value, sl2_hyperbolic_closed_form(1.0, 1.0, shift).value))
        }),
        check("heat_oracle", "elliptic phi=pi/2 t=1: oracle vs explicit", 1e-4, || {
            let g = SemisimpleElement::sl2_elliptic(&m, PI / 2.0)?;
            let explicit = heat_orbital_integral(&m, &g, &HeatParameters::scalar(&m, 1.0, shift), QuadratureConfig::default())?.value;
            Ok(rel(direct_orbital_integral(&m, &g, 1.0, cfg)?.value, explicit))
        }),
        check("heat_oracle", "identity t=1: McKean vs explicit", 1e-6, || {
            let g = SemisimpleElement::identity(&m);
            let explicit = heat_orbital_integral(&m, &g, &HeatParameters::scalar(&m, 1.0, shift), QuadratureConfig::default())?.value;
            Ok(rel(h2_heat_kernel(0.0, 1.0)?, explicit))
        }),
    ]
}

pub fn clifford_checks() -> Vec<CheckOutcome> {
    let m = LieAlgebraModel::sl2();
    let mut out = vec![
        check("clifford_dirac", "Kostant, adjoint (24x24)", 1e-11, || Ok(KostantReport::for_adjoint(&m)?.residual)),
        check("clifford_dirac", "Kostant, trivial (8x8)", 1e-11, || Ok(KostantReport::for_trivial(&m)?.residual)),
        check("clifford_dirac", "Clifford relations", 1e-13, || Ok(CliffordModel::new(&m).relations_residual())),
    ];
    for (n, d) in [(1usize, 6usize), (2, 5)] {
        out.push(check("clifford_dirac", &format!("Weitzenbock n={n} D={d}"), 1e-12, || {
            let r = verify_weitzenbock(n, d);
            Ok(if r.kernel_dim == 1 { r.residual.max(r.d_squared) } else { f64::INFINITY })
        }));
    }
    out.push(check("clifford_dirac", "Lambda supertrace, 50 random orthogonal u", 1e-12, || {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut worst = 0.0f64;
        for i in 0..50 {
            let u = random_orthogonal(2 + i % 3, &mut rng);
            worst = worst.max(lambda_supertrace_identity(&u)?.residual());
        }
        Ok(worst)
    }));
    out.push(check("clifford_dirac", "Bargmann round trip (n=2, D=5)", 1e-12, || {
        let p = Polynomial::monomial(2, 5, &[2, 1], 1.0);
        Ok(bargmann_roundtrip(&p))
    }));
    out
}

pub const HYPO_A: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
pub const HYPO_T: [f64; 3] = [0.25, 1.0, 4.0];
pub const HYPO_B: [f64; 5] = [0.1, 0.3, 1.0, 3.0, 10.0];

/// max over the (a, t, b) grid of |supertrace − e^{−a²/2t}/√(2πt)|.
pub fn b_independence_max() -> Result<f64> {
    let mut worst = 0.0f64;
    for a in HYPO_A {
        for t in HYPO_T {
            for b in HYPO_B {
                worst = worst.max((hypo::hypo_supertrace(a, b, t)? - hypo::flat_orbital(a, t)).abs());
            }
        }
    }
    Ok(worst)
}

pub fn hypo_checks(full: bool) -> Vec<CheckOutcome> {
    let mut out = vec![
        check("hypoelliptic_model", "b-independence grid 4x3x5", 1e-8, b_independence_max),
        check("hypoelliptic_model", "factorization diag = oscillator trace * flat", 1e-9, || {
            let mut worst = 0.0f64;
            for (a, b, t) in [(0.0, 0.5, 1.0), (1.0, 1.0, 1.0), (2.0, 3.0, 0.5)] {
                let want = hypo::oscillator_trace(b, t)? * hypo::flat_orbital(a, t);
                worst = worst.max(rel(hypo::diagonal_integral(a, b, t)?, want));
            }
            Ok(worst)
        }),
        check("hypoelliptic_model", "Chapman-Kolmogorov", 1e-9, || {
            let pts = [[0.0, 0.3, 0.5, -0.2], [1.0, -1.0, 0.2, 0.7], [0.0, 0.0, 0.0, 0.0]];
            let mut worst = 0.0f64;
            for (b, t, s) in [(1.0, 0.5, 0.7), (0.3, 1.0, 0.2), (2.0, 0.1, 1.5)] {
                worst = worst.max(hypo::chapman_kolmogorov_residual(b, t, s, &pts)?);
            }
            Ok(worst)
        }),
        check("hypoelliptic_model", "oscillator trace vs eigenvalue sum", 1e-13, || {
            Ok((hypo::oscillator_trace(1.0, 0.3)? - hypo::oscillator_trace_series(1.0, 0.3)?).abs())
        }),
        check("hypoelliptic_model", "flip adjoint on finite-difference grid", 1e-12, || Ok(oracles::flip_adjoint_residual(0.7, 12, 4.0))),
    ];
    if full {
        out.push(check("hypoelliptic_model", "PDE grid oracle L2 (b=1, t=1, 512^2)", 1e-4, || {
            Ok(oracles::pde_oracle(1.0, 1.0, oracles::PdeConfig::default())?.l2_residual)
        }));
        out.push(check("hypoelliptic_model", "Feynman-Kac 1e6 paths, |z| <= 3", 3.0, || {
            Ok(oracles::feynman_kac_marginal(0.5, 1.0, 1.0, 1_000_000, 128, 20240917)?.z_score().abs())
        }));
    }
    out
}

pub const POISSON_T: [f64; 4] = [0.01, 0.1, 1.0, 10.0];
pub const FRIED_THETA: [f64; 4] = [PI / 3.0, 1.0, PI, 2.5];

pub fn trace_checks() -> Vec<CheckOutcome> {
    let sl2 = LieAlgebraModel::sl2();
    let circle = LieAlgebraModel::abelian(1);
    vec![
        check("trace_zeta", "Poisson both sides", 1e-12, || {
            let mut worst = 0.0f64;
            for t in POISSON_T {
                let (s, g) = trace::poisson_both_sides(t)?;
                worst = worst.max((s - g).abs());
            }
            Ok(worst)
        }),
        check("trace_zeta", "Plancherel identity t in {0.25, 1, 4}", 1e-8, || {
            let mut worst = 0.0f64;
            for t in [0.25, 1.0, 4.0] {
                worst = worst.max(trace::plancherel_identity_residual(t)?);
            }
            Ok(worst)
        }),
        check("trace_zeta", "Fried identity on the circle", 1e-10, || {
            let mut worst = 0.0f64;
            for th in FRIED_THETA {
                worst = worst.max(trace::fried_check_circle(th)?.residual);
            }
            Ok(worst)
        }),
        check("trace_zeta", "torsion: Hurwitz vs Lerch", 1e-12, || {
            let mut worst = 0.0f64;
            for th in FRIED_THETA {
                worst = worst.max((trace::analytic_torsion_circle(th)?.log_t + 0.5 * trace::circle_log_det_lerch(th)?).abs());
            }
            Ok(worst)
        }),
        check("trace_zeta", "Euler product, l in {1, 1.3}, sigma=2.5", 1e-10, || {
            let s = trace::LengthSpectrum::new(vec![trace::ClassEntry::primitive(1.0, 1), trace::ClassEntry::primitive(1.3, 1)], 1)?;
            trace::euler_product_check(&s, Complex64::new(2.5, 0.0))
        }),
        check("trace_zeta", "Selberg on the circle = Poisson geometric side", 1e-14, || {
            let t = 0.7;
            let cls = trace::circle_classes(&circle, t)?;
            let v = trace::selberg_assemble(&circle, &cls, t, 0.0, trace::OrbitalEvaluator::Explicit(QuadratureConfig::default()))?;
            Ok((v - trace::circle_geometric_side(t)?).abs())
        }),
        check("trace_zeta", "Selberg sl2 assembly = surface trace", 1e-10, || {
            let spec = trace::synthetic_genus2_spectrum(5.0);
            let (vol, t) = (4.0 * PI, 1.0);
            let cls = trace::surface_classes(&sl2, vol, &spec, t, 64)?;
            let a = trace::selberg_assemble(&sl2, &cls, t, laplacian_shift(&sl2), trace::OrbitalEvaluator::Explicit(QuadratureConfig::default()))?;
            Ok(rel(a, trace::surface_heat_trace(vol, &spec, t, 64)?))
        }),
        check("trace_zeta", "surface trace small-t Weyl ratio (|ratio-1|/10t)", 1.0, || {
            let spec = trace::synthetic_genus2_spectrum(8.0);
            let vol = 4.0 * PI;
            let mut worst = 0.0f64;
            for t in [1e-2, 1e-3] {
                let ratio = trace::surface_heat_trace(vol, &spec, t, 64)? * 2.0 * PI * t / vol;
                worst = worst.max((ratio - 1.0).abs() / (10.0 * t));
            }
            Ok(worst)
        }),
    ]
}

/// Every check; `full` adds the slow kernel oracles (PDE grid, Monte Carlo).
pub fn run_all(full: bool) -> Vec<CheckOutcome> {
    let mut out = lie_checks();
    out.extend(orbital_checks());
    out.extend(oracle_checks());
    out.extend(clifford_checks());
    out.extend(hypo_checks(full));
    out.extend(trace_checks());
    out
}
