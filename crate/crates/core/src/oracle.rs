//! Brute-force orbital integrals: closed-form heat kernels integrated over
//! the orbit in normal coordinates around the minimizing set X(γ).

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie::{centralizer_decomposition, ElementKind, LieAlgebraModel, SemisimpleElement};
use crate::numerics::{integrate, periodic_trapezoid, QuadSettings};
use crate::orbital::{Method, OrbitalIntegralResult};

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceModel {
    Euclidean(usize),
    HyperbolicPlane,
}

impl SpaceModel {
    /// Symmetric space attached to a supported model.
    pub fn of(model: &LieAlgebraModel) -> Result<Self> {
        if model.dim_k == 0 && model.brackets().is_empty() {
            return Ok(SpaceModel::Euclidean(model.dim_p));
        }
        let sl2 = LieAlgebraModel::sl2();
        if model.dim_p == 2 && model.dim_k == 1 && model.brackets() == sl2.brackets() {
            return Ok(SpaceModel::HyperbolicPlane);
        }
        Err(Error::InvalidInput(format!("no orbit oracle for model '{}'", model.label)))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrationConfig {
    pub rel_tol: f64,
    /// Trapezoid nodes for the angular integral of elliptic orbits.
    pub angle_nodes: usize,
    /// Relative cutoff of the integrand defining the truncation radius.
    pub cutoff: f64,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig { rel_tol: 1e-10, angle_nodes: 16, cutoff: 1e-16 }
    }
}

/// (2πt)^{−n/2} e^{−|x−x′|²/2t}, the kernel of e^{tΔ/2} on ℝⁿ.
pub fn euclidean_heat_kernel(x: &[f64], xp: &[f64], t: f64) -> f64 {
    assert_eq!(x.len(), xp.len(), "points must share a dimension");
    let d2: f64 = x.iter().zip(xp).map(|(a, b)| (a - b) * (a - b)).sum();
    (2.0 * PI * t).powf(-(x.len() as f64) / 2.0) * (-d2 / (2.0 * t)).exp()
}

/// Kernel of e^{tΔ/2} on ℍ² (curvature −1) at geodesic distance `d`.
///
/// McKean: with s = t/2,
///   p = √2 e^{−s/4} (4πs)^{−3/2} ∫_d^∞ r e^{−r²/4s} (cosh r − cosh d)^{−1/2} dr.
/// Near r = d we substitute cosh r − cosh d = u², which turns the
/// inverse-square-root endpoint into the smooth integrand 2r e^{−r²/4s}/sinh r.
pub fn h2_heat_kernel(d: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) || !(d >= 0.0) {
        return Err(Error::InvalidInput(format!("h2 kernel needs t > 0 and d >= 0 (t={t}, d={d})")));
    }
    let s = 0.5 * t;
    let rho = d;
    let r_max = (rho * rho + 320.0 * s).sqrt();
    let r1 = (rho + 1.0).min(r_max);
    let settings = QuadSettings { abs_tol: 1e-300, rel_tol: 1e-13, max_intervals: 2000 };
    let base = 2.0 * (0.5 * rho).sinh().powi(2);
    // Gaussian factor measured relative to e^{−ρ²/4s}.
    let rel_gauss = |r: f64| (-(r - rho) * (r + rho) / (4.0 * s)).exp();
    let u1 = ((r1 - rho) * 0.5).sinh().sqrt() * ((r1 + rho) * 0.5).sinh().sqrt() * std::f64::consts::SQRT_2;
    let near = integrate(
        |u: f64| {
            let x = base + u * u;
            let sinh_r = (x * (2.0 + x)).sqrt();
            let r = (x + sinh_r).ln_1p();
            let ratio = if sinh_r < 1e-8 { 2.0 * (1.0 - r * r / 6.0) } else { 2.0 * r / sinh_r };
            ratio * rel_gauss(r)
        },
        0.0,
        u1,
        settings,
    )?;
    let far = if r_max > r1 {
        integrate(
            |r: f64| {
                let gap = 2.0 * (0.5 * (r + rho)).sinh() * (0.5 * (r - rho)).sinh();
                r * rel_gauss(r) / gap.sqrt()
            },
            r1,
            r_max,
            settings,
        )?
        .value
    } else {
        0.0
    };
    let pref = std::f64::consts::SQRT_2 * (-s / 4.0).exp() * (4.0 * PI * s).powf(-1.5);
    Ok(pref * (-rho * rho / (4.0 * s)).exp() * (near.value + far))
}

// --- ℍ² geometry -----------------------------------------------------------

type M2 = [[f64; 2]; 2];

/// Matrices of e1, e2, e3 in 𝔰𝔩₂(ℝ), orthonormal for B(u,v) = 2 tr(uv) up to sign.
pub const SL2_BASIS: [M2; 3] = [[[0.5, 0.0], [0.0, -0.5]], [[0.0, 0.5], [0.5, 0.0]], [[0.0, 0.5], [-0.5, 0.0]]];

fn lin_comb(c: &[f64]) -> M2 {
    let mut m = [[0.0; 2]; 2];
    for (k, ck) in c.iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] += ck * SL2_BASIS[k][i][j];
            }
        }
    }
    m
}

/// exp of a traceless 2×2 matrix via X² = −det(X)·1.
pub fn exp_sl2(x: &M2) -> M2 {
    let delta = -(x[0][0] * x[1][1] - x[0][1] * x[1][0]);
    let (c, s) = if delta > 1e-300 {
        let r = delta.sqrt();
        (r.cosh(), r.sinh() / r)
    } else if delta < -1e-300 {
        let r = (-delta).sqrt();
        (r.cos(), r.sin() / r)
    } else {
        (1.0, 1.0)
    };
    [[c + s * x[0][0], s * x[0][1]], [s * x[1][0], c + s * x[1][1]]]
}

fn mul(a: &M2, b: &M2) -> M2 {
    let mut m = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

pub fn mobius(g: &M2, z: Complex64) -> Complex64 {
    (z * g[0][0] + g[0][1]) / (z * g[1][0] + g[1][1])
}

/// Geodesic distance in the upper half-plane with metric (dx²+dy²)/y².
pub fn h2_distance(z: Complex64, w: Complex64) -> f64 {
    2.0 * ((z - w).norm() / (2.0 * (z.im * w.im).sqrt())).asinh()
}

/// γ = e^a k^{-1} as an SL₂ matrix, reading Ad(k) as a rotation of 𝔭.
fn sl2_matrix(gamma: &SemisimpleElement) -> M2 {
    let phi = gamma.sl2_angle();
    let ea = exp_sl2(&lin_comb(&[gamma.a[0], gamma.a[1]]));
    let k_inv = exp_sl2(&lin_comb(&[0.0, 0.0, -phi]));
    mul(&ea, &k_inv)
}

/// Unit direction of a and its normal in 𝔭 (hyperbolic case).
fn frame(gamma: &SemisimpleElement) -> ([f64; 2], [f64; 2]) {
    let n = gamma.a.norm();
    let u = [gamma.a[0] / n, gamma.a[1] / n];
    (u, [-u[1], u[0]])
}

/// Point x_f = exp(f)·i for f ∈ 𝔭^⊥(γ) written in the orbit chart.
fn orbit_point(gamma: &SemisimpleElement, f: &[f64]) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    match (gamma.kind, f.len()) {
        (ElementKind::Identity, 0) => Ok(i),
        (ElementKind::Hyperbolic, 1) => {
            let (_, nrm) = frame(gamma);
            Ok(mobius(&exp_sl2(&lin_comb(&[f[0] * nrm[0], f[0] * nrm[1]])), i))
        }
        (ElementKind::Elliptic, 2) => Ok(mobius(&exp_sl2(&lin_comb(&[f[0], f[1]])), i)),
        (kind, n) => Err(Error::InvalidInput(format!("no sl2 orbit chart for {kind} with {n} coordinates"))),
    }
}

/// d(x_f, γ x_f) on ℍ² via explicit matrices and the Möbius action.
pub fn displacement_sl2(gamma: &SemisimpleElement, f: &[f64]) -> Result<f64> {
    let z = orbit_point(gamma, f)?;
    Ok(h2_distance(z, mobius(&sl2_matrix(gamma), z)))
}

/// Closed-form normal-coordinate Jacobian: cosh f (hyperbolic), sinh|f|/|f| (elliptic).
pub fn jacobian_r(gamma: &SemisimpleElement, f: &[f64]) -> Result<f64> {
    match (gamma.kind, f.len()) {
        (ElementKind::Identity, 0) => Ok(1.0),
        (ElementKind::Hyperbolic, 1) => Ok(f[0].cosh()),
        (ElementKind::Elliptic, 2) => {
            let r = (f[0] * f[0] + f[1] * f[1]).sqrt();
            Ok(if r < 1e-8 { 1.0 + r * r / 6.0 } else { r.sinh() / r })
        }
        (kind, n) => Err(Error::InvalidInput(format!("no jacobian for {kind} with {n} coordinates"))),
    }
}

/// Finite-difference Jacobian of the chart (y, f) ↦ e^{y â} e^{f} · i
/// (hyperbolic) or f ↦ e^{f} · i (elliptic), against the area form dx dy / y².
pub fn jacobian_r_fd(gamma: &SemisimpleElement, f: &[f64]) -> Result<f64> {
    let h = 1e-5;
    let i = Complex64::new(0.0, 1.0);
    let chart: Box<dyn Fn(f64, f64) -> Complex64> = match (gamma.kind, f.len()) {
        (ElementKind::Hyperbolic, 1) => {
            let (u, nrm) = frame(gamma);
            Box::new(move |y, g| {
                let along = exp_sl2(&lin_comb(&[y * u[0], y * u[1]]));
                let across = exp_sl2(&lin_comb(&[g * nrm[0], g * nrm[1]]));
                mobius(&mul(&along, &across), i)
            })
        }
        (ElementKind::Elliptic, 2) => Box::new(move |a, b| mobius(&exp_sl2(&lin_comb(&[a, b])), i)),
        (kind, n) => return Err(Error::InvalidInput(format!("no chart for {kind} with {n} coordinates"))),
    };
    let (p0, p1) = match f.len() {
        1 => (0.0, f[0]),
        _ => (f[0], f[1]),
    };
    let dz0 = (chart(p0 + h, p1) - chart(p0 - h, p1)) / (2.0 * h);
    let dz1 = (chart(p0, p1 + h) - chart(p0, p1 - h)) / (2.0 * h);
    let z = chart(p0, p1);
    Ok((dz0.re * dz1.im - dz0.im * dz1.re).abs() / (z.im * z.im))
}

fn gate_jacobian(gamma: &SemisimpleElement) -> Result<()> {
    let samples: Vec<Vec<f64>> = match gamma.kind {
        ElementKind::Hyperbolic => vec![vec![0.0], vec![0.7], vec![-1.9]],
        ElementKind::Elliptic => vec![vec![0.0, 0.0], vec![0.6, -0.2], vec![-1.1, 1.4]],
        _ => return Ok(()),
    };
    for f in samples {
        let closed = jacobian_r(gamma, &f)?;
        let fd = jacobian_r_fd(gamma, &f)?;
        if (closed - fd).abs() > 1e-6 * closed {
            return Err(Error::PreconditionFailed(format!(
                "normal-coordinate jacobian mismatch at f={f:?}: closed {closed} vs numeric {fd}"
            )));
        }
    }
    Ok(())
}

/// Smallest radius beyond which `g` stays below `cutoff · g(0)` (checked on a
/// doubling sequence; the integrands decay like Gaussians in the radius).
fn truncation_radius<G: Fn(f64) -> Result<f64>>(g: G, cutoff: f64) -> Result<f64> {
    let peak = g(0.0)?;
    let mut r = 0.5;
    for _ in 0..60 {
        if g(r)? <= cutoff * peak && g(1.5 * r)? <= cutoff * peak {
            return Ok(r);
        }
        r *= 1.5;
    }
    Err(Error::QuadratureNotConverged { estimate: f64::INFINITY, tol: cutoff })
}

/// ∫_{𝔭^⊥(γ)} p_t(d_γ(x_f)) r(f) df by adaptive quadrature.
pub fn direct_orbital_integral(
    model: &LieAlgebraModel,
    gamma: &SemisimpleElement,
    t: f64,
    cfg: IntegrationConfig,
) -> Result<OrbitalIntegralResult> {
    if !(t > 0.0) {
        return Err(Error::InvalidInput(format!("t must be positive, got {t}")));
    }
    let space = SpaceModel::of(model)?;
    let settings = QuadSettings { abs_tol: 1e-300, rel_tol: cfg.rel_tol, max_intervals: 4000 };
    let done = |value: f64, error: f64, nodes: usize| OrbitalIntegralResult {
        value,
        abs_error_estimate: error,
        method: Method::Oracle,
        nodes_used: nodes,
    };
    match space {
        SpaceModel::Euclidean(n) => {
            if gamma.kind != ElementKind::Identity && gamma.kind != ElementKind::Hyperbolic {
                return Err(Error::InvalidInput("flat model only has translations".into()));
            }
            let zero = vec![0.0; n];
            Ok(done(euclidean_heat_kernel(&zero, gamma.a.as_slice(), t), 0.0, 1))
        }
        SpaceModel::HyperbolicPlane => {
            let dec = centralizer_decomposition(model, gamma)?;
            gate_jacobian(gamma)?;
            match gamma.kind {
                ElementKind::Identity => Ok(done(h2_heat_kernel(0.0, t)?, 0.0, 1)),
                ElementKind::Hyperbolic => {
                    debug_assert_eq!(dec.p_perp_gamma.ncols(), 1);
                    let g = |f: f64| -> Result<f64> {
                        Ok(h2_heat_kernel(displacement_sl2(gamma, &[f])?, t)? * jacobian_r(gamma, &[f])?)
                    };
                    let rp = truncation_radius(g, cfg.cutoff)?;
                    let rm = truncation_radius(|f| g(-f), cfg.cutoff)?;
                    let cell = std::cell::RefCell::new(None);
                    let out = integrate(
                        |f| match g(f) {
                            Ok(v) => v,
                            Err(e) => {
                                cell.borrow_mut().get_or_insert(e);
                                f64::NAN
                            }
                        },
                        -rm,
                        rp,
                        settings,
                    );
                    if let Some(e) = cell.into_inner() {
                        return Err(e);
                    }
                    let out = out?;
                    Ok(done(out.value, out.error, out.evaluations))
                }
                ElementKind::Elliptic => {
                    let n_ang = cfg.angle_nodes.max(4);
                    let failure = std::cell::RefCell::new(None);
                    // Angle-first: radial integrand is sinh ρ · ∫ p_t(d) dθ.
                    let radial = |rho: f64| -> f64 {
                        let ang = periodic_trapezoid(
                            |th| {
                                let f = [rho * th.cos(), rho * th.sin()];
                                match displacement_sl2(gamma, &f).and_then(|d| h2_heat_kernel(d, t)) {
                                    Ok(v) => v,
                                    Err(e) => {
                                        failure.borrow_mut().get_or_insert(e);
                                        f64::NAN
                                    }
                                }
                            },
                            n_ang,
                        );
                        // r(f)·|f| d|f| = sinh|f| d|f|
                        let jac = jacobian_r(gamma, &[rho, 0.0]).unwrap_or(f64::NAN) * rho;
                        ang * jac
                    };
                    let shape = |rho: f64| -> Result<f64> {
                        let d = displacement_sl2(gamma, &[rho, 0.0])?;
                        Ok(h2_heat_kernel(d, t)? * jacobian_r(gamma, &[rho, 0.0])?)
                    };
                    let big_r = truncation_radius(shape, cfg.cutoff)?;
                    let out = integrate(radial, 0.0, big_r, settings);
                    if let Some(e) = failure.into_inner() {
                        return Err(e);
                    }
                    let out = out?;
                    Ok(done(out.value, out.error, out.evaluations * n_ang))
                }
                ElementKind::Mixed => Err(Error::InvalidInput("sl2 has no mixed semisimple elements".into())),
            }
        }
    }
}

/// ∫_{ℍ²} p_t dvol = 2π ∫_0^∞ p_t(ρ) sinh ρ dρ (stochastic completeness).
pub fn h2_total_mass(t: f64) -> Result<f64> {
    let failure = std::cell::RefCell::new(None);
    let out = crate::numerics::integrate_tail(
        |rho| match h2_heat_kernel(rho, t) {
            Ok(v) => 2.0 * PI * v * rho.sinh(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        QuadSettings { abs_tol: 1e-300, rel_tol: 1e-12, max_intervals: 2000 },
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(out?.value)
}

/// Convenience: 𝔭-coordinates vector for an 𝔰𝔩₂ hyperbolic translation length.
pub fn sl2_axis(alpha: f64) -> DVector<f64> {
    DVector::from_column_slice(&[alpha, 0.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_examples() {
        assert!((euclidean_heat_kernel(&[0.3], &[0.3], 1.0) - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-16);
        let v = euclidean_heat_kernel(&[0.0, 0.0], &[1.0, 0.0], 2.0);
        assert!((v - (-0.25f64).exp() / (4.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn distance_right_triangle() {
        let z = Complex64::new(0.0, 1.0);
        let w = Complex64::new(0.0, 3.0f64.exp());
        assert!((h2_distance(z, w) - 3.0).abs() < 1e-13);
        let p = Complex64::new(1.3, 0.4);
        let q = Complex64::new(-0.2, 2.1);
        let cosh = 1.0 + (p - q).norm_sqr() / (2.0 * p.im * q.im);
        assert!((h2_distance(p, q).cosh() - cosh).abs() < 1e-12 * cosh);
    }

    #[test]
    fn hyperbolic_displacement_matches_fermi_identity() {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_hyperbolic(&m, 1.0).unwrap();
        assert!((displacement_sl2(&g, &[0.0]).unwrap() - 1.0).abs() < 1e-14);
        let d = displacement_sl2(&g, &[1.0]).unwrap();
        let want = 1.0 + (1.0f64.cosh() - 1.0) * 1.0f64.cosh().powi(2);
        assert!((d.cosh() - want).abs() < 1e-12);
    }

    #[test]
    fn elliptic_fixed_point() {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_elliptic(&m, 1.0).unwrap();
        assert!(displacement_sl2(&g, &[0.0, 0.0]).unwrap().abs() < 1e-7);
    }

    #[test]
    fn jacobian_closed_forms_match_finite_differences() {
        let m = LieAlgebraModel::sl2();
        let h = SemisimpleElement::sl2_hyperbolic(&m, 0.8).unwrap();
        assert!((jacobian_r_fd(&h, &[2.0]).unwrap() - 2.0f64.cosh()).abs() < 1e-6);
        let e = SemisimpleElement::sl2_elliptic(&m, 2.0).unwrap();
        assert!((jacobian_r_fd(&e, &[1.0, 0.0]).unwrap() - 1.0f64.sinh()).abs() < 1e-6);
        assert!((jacobian_r_fd(&e, &[0.0, 0.0]).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn h2_kernel_small_time_is_flat() {
        let t = 1e-3;
        let v = h2_heat_kernel(0.0, t).unwrap();
        assert!((2.0 * PI * t * v - 1.0).abs() < 1e-2);
    }

    #[test]
    fn h2_mass_is_one() {
        for t in [0.5, 1.0, 2.0] {
            let m = h2_total_mass(t).unwrap();
            assert!((m - 1.0).abs() < 1e-8, "t={t}: mass {m}");
        }
    }
}
