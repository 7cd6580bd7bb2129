//! Explicit formula for semisimple orbital integrals of heat kernels.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::{centralizer_decomposition, CentralizerDecomposition, LieAlgebraModel, SemisimpleElement};
use crate::numerics::{pairwise_sum_c, GaussHermite};

pub type CMatrix = DMatrix<Complex64>;

const PAIR_TOL: f64 = 1e-9;
const SINGULAR_TOL: f64 = 1e-12;
const IMAG_TOL: f64 = 1e-10;
/// Arbitrary irrational weight used to split joint eigenvalues of the
/// commuting pair (Ad(k^{-1}), ad(Y)) through a single normal matrix.
const MIX: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Explicit,
    RankOne,
    ClosedSl2,
    Oracle,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Explicit => "explicit",
            Method::RankOne => "rank_one",
            Method::ClosedSl2 => "closed_sl2",
            Method::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct OrbitalIntegralResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub method: Method,
    pub nodes_used: usize,
}

/// Unitary K-representation data on E: ρ(k^{-1}) and ρ(e_{m+i}) for the 𝔨 basis.
#[derive(Debug, Clone)]
pub struct Representation {
    pub rho_k_inv: CMatrix,
    pub rho_k: Vec<CMatrix>,
}

impl Representation {
    /// One-dimensional trivial representation for a model with `dim_k` 𝔨-vectors.
    pub fn trivial(dim_k: usize) -> Self {
        Representation {
            rho_k_inv: CMatrix::identity(1, 1),
            rho_k: vec![CMatrix::zeros(1, 1); dim_k],
        }
    }

    pub fn dim(&self) -> usize {
        self.rho_k_inv.nrows()
    }

    /// ρ(Y) for Y ∈ 𝔨 given in 𝔨-coordinates.
    pub fn rho_of(&self, y_k: &[f64]) -> CMatrix {
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for (c, m) in y_k.iter().zip(&self.rho_k) {
            if *c != 0.0 {
                out += m * Complex64::new(*c, 0.0);
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub enum Shift {
    Scalar(f64),
    Matrix(CMatrix),
}

#[derive(Debug, Clone)]
pub struct HeatParameters {
    pub t: f64,
    pub shift: Shift,
    pub rep: Representation,
}

impl HeatParameters {
    pub fn scalar(model: &LieAlgebraModel, t: f64, shift: f64) -> Self {
        HeatParameters { t, shift: Shift::Scalar(shift), rep: Representation::trivial(model.dim_k) }
    }

    pub fn validate(&self, model: &LieAlgebraModel) -> Result<()> {
        if !(self.t > 0.0 && self.t.is_finite()) {
            return Err(Error::InvalidInput(format!("t must be positive, got {}", self.t)));
        }
        let n = self.rep.dim();
        if self.rep.rho_k_inv.ncols() != n || self.rep.rho_k.len() != model.dim_k {
            return Err(Error::InvalidRepresentation("representation shape mismatch".into()));
        }
        for (i, r) in self.rep.rho_k.iter().enumerate() {
            if r.nrows() != n || r.ncols() != n {
                return Err(Error::InvalidRepresentation(format!("rho(e_{}) has wrong shape", model.dim_p + i + 1)));
            }
            let skew = (r + r.adjoint()).camax();
            if skew > 1e-10 {
                return Err(Error::InvalidRepresentation(format!("rho(e_{}) not skew-Hermitian ({skew:.2e})", model.dim_p + i + 1)));
            }
        }
        if let Shift::Matrix(a) = &self.shift {
            if a.nrows() != n || a.ncols() != n {
                return Err(Error::InvalidInput("shift matrix has wrong shape".into()));
            }
            if (a - a.adjoint()).camax() > 1e-10 {
                return Err(Error::InvalidInput("shift matrix is not Hermitian".into()));
            }
            let comm = |b: &CMatrix| (a * b - b * a).camax();
            if comm(&self.rep.rho_k_inv) > 1e-10 || self.rep.rho_k.iter().any(|r| comm(r) > 1e-10) {
                return Err(Error::InvalidInput("shift does not commute with the K-action".into()));
            }
        }
        Ok(())
    }

    /// −tA as a matrix on E.
    fn minus_t_a(&self) -> CMatrix {
        let n = self.rep.dim();
        match &self.shift {
            Shift::Scalar(s) => CMatrix::identity(n, n) * Complex64::new(-self.t * s, 0.0),
            Shift::Matrix(a) => a * Complex64::new(-self.t, 0.0),
        }
    }
}

/// Caps on the Gauss–Hermite rule per axis and on the tensor grid reached
/// by refinement.
pub const MAX_RULE_NODES: usize = 1024;
pub const MAX_TENSOR_NODES: usize = 1 << 22;

/// Starting rule size; with `refine` the rule is doubled until two
/// consecutive rules agree to `tol` (relative).
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    pub nodes: usize,
    pub refine: bool,
    pub tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { nodes: 64, refine: true, tol: 1e-8 }
    }
}

/// Â from the real spectrum of i·ad(Y)|_W, which must come in ± pairs.
pub fn a_hat(eigenvalues: &[f64]) -> Result<f64> {
    let mut pos: Vec<f64> = eigenvalues.iter().copied().filter(|x| *x > PAIR_TOL).collect();
    let mut neg: Vec<f64> = eigenvalues.iter().copied().filter(|x| *x < -PAIR_TOL).map(|x| -x).collect();
    pos.sort_by(f64::total_cmp);
    neg.sort_by(f64::total_cmp);
    if pos.len() != neg.len() || pos.iter().zip(&neg).any(|(p, n)| (p - n).abs() > PAIR_TOL) {
        return Err(Error::UnpairedSpectrum(format!("{eigenvalues:?}")));
    }
    Ok(pos.iter().map(|l| half_over_sinh(0.5 * l)).product())
}

/// x / sinh x with the removable singularity handled.
#[inline]
fn half_over_sinh(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0 + 7.0 * x.powi(4) / 360.0
    } else {
        x / x.sinh()
    }
}

/// Â(i S) for a real skew matrix S, without having to pair eigenvalues:
/// the eigenvalues λ² of −S² carry every ±λ pair twice.
pub fn a_hat_skew(s: &DMatrix<f64>) -> f64 {
    if s.ncols() == 0 {
        return 1.0;
    }
    let sym = -(s * s);
    let sym = (&sym + sym.transpose()) * 0.5;
    SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .map(|ev| half_over_sinh(0.5 * ev.max(0.0).sqrt()).sqrt())
        .product()
}

fn restrict(q: &DMatrix<f64>, m: &DMatrix<f64>) -> DMatrix<f64> {
    q.transpose() * m * q
}

fn det_one_minus(m: &DMatrix<f64>) -> f64 {
    if m.ncols() == 0 {
        return 1.0;
    }
    (DMatrix::identity(m.nrows(), m.ncols()) - m).determinant()
}

/// Blockwise square root of det(1 − Ad(k^{-1})) · det(1 − e^{−i ad Y} Ad(k^{-1}))
/// on an invariant subspace: for each joint eigenvector with
/// Ad(k^{-1})v = e^{iψ}v, ad(Y)v = iμv the factor is the principal root of
/// 4 sin(ψ/2) sin((ψ − iμ)/2). Conjugate partners carry the same factor, so
/// their roots multiply back to it exactly, and a lone ψ = π line gives 2.
fn branch_root(k_inv: &DMatrix<f64>, ad_y: &DMatrix<f64>) -> Complex64 {
    let n = k_inv.ncols();
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let k_c = k_inv.map(|x| Complex64::new(x, 0.0));
    let y_c = ad_y.map(|x| Complex64::new(x, 0.0));
    let normal = &k_c + &y_c * Complex64::new(MIX, 0.0);
    let (q, _) = nalgebra::Schur::new(normal).unpack();
    let mut prod = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let v = q.column(c);
        let ek = (v.adjoint() * &k_c * v)[(0, 0)];
        let ey = (v.adjoint() * &y_c * v)[(0, 0)];
        let psi = ek.arg();
        let mu = ey.im;
        let half = Complex64::new(0.5 * psi, -0.5 * mu);
        let s = Complex64::new(4.0 * (0.5 * psi).sin(), 0.0) * half.sin();
        prod *= s.sqrt();
    }
    prod
}

/// Precomputed, Y-independent pieces of J_γ.
#[derive(Debug, Clone)]
pub struct JGamma {
    prefactor: f64,
    det_k_perp: f64,
    k_inv_p_perp: DMatrix<f64>,
    k_inv_k_perp: DMatrix<f64>,
    /// ad of each 𝔨(γ) basis vector restricted to 𝔭(γ), 𝔨(γ), 𝔭₀^⊥(γ), 𝔨₀^⊥(γ).
    gens: Vec<[DMatrix<f64>; 4]>,
    /// 𝔨(γ) basis in 𝔨-coordinates (n × q).
    pub k_gamma_coords: DMatrix<f64>,
}

impl JGamma {
    pub fn new(model: &LieAlgebraModel, dec: &CentralizerDecomposition, gamma: &SemisimpleElement) -> Result<Self> {
        let ad_gamma = gamma.ad_gamma(model);
        let det_z0 = det_one_minus(&restrict(&dec.z0_perp, &ad_gamma));
        let prefactor = if dec.z0_perp.ncols() == 0 { 1.0 } else { det_z0.abs().powf(-0.5) };
        let k_inv = gamma.ad_k.transpose();
        let z0pg = dec.z0_perp_gamma();
        let det_reg = det_one_minus(&restrict(&z0pg, &k_inv));
        if det_reg.abs() < SINGULAR_TOL {
            return Err(Error::SingularCentralizer(det_reg));
        }
        let k_inv_p_perp = restrict(&dec.p0_perp_gamma, &k_inv);
        let k_inv_k_perp = restrict(&dec.k0_perp_gamma, &k_inv);
        let det_k_perp = det_one_minus(&k_inv_k_perp);
        let mut gens = Vec::with_capacity(dec.q);
        for c in dec.k_gamma.column_iter() {
            let ad = model.ad(&c.into_owned());
            gens.push([
                restrict(&dec.p_gamma, &ad),
                restrict(&dec.k_gamma, &ad),
                restrict(&dec.p0_perp_gamma, &ad),
                restrict(&dec.k0_perp_gamma, &ad),
            ]);
        }
        let k_gamma_coords = dec.k_gamma.rows(model.dim_p, model.dim_k).into_owned();
        Ok(JGamma { prefactor, det_k_perp, k_inv_p_perp, k_inv_k_perp, gens, k_gamma_coords })
    }

    pub fn q(&self) -> usize {
        self.gens.len()
    }

    /// |det(1 − Ad γ)|_{𝔷₀^⊥}|^{−1/2}.
    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    /// J_γ(Y) for Y given in the 𝔨(γ) basis.
    pub fn eval(&self, y: &[f64]) -> Complex64 {
        let mut blocks: [DMatrix<f64>; 4] = [
            DMatrix::zeros(0, 0),
            DMatrix::zeros(0, 0),
            DMatrix::zeros(0, 0),
            DMatrix::zeros(0, 0),
        ];
        for (slot, block) in blocks.iter_mut().enumerate() {
            let size = match self.gens.first() {
                Some(g) => g[slot].nrows(),
                None => 0,
            };
            let mut m = DMatrix::zeros(size, size);
            for (c, g) in y.iter().zip(&self.gens) {
                m += &g[slot] * *c;
            }
            *block = m;
        }
        let ratio = a_hat_skew(&blocks[0]) / a_hat_skew(&blocks[1]);
        let p_size = self.k_inv_p_perp.nrows();
        let k_size = self.k_inv_k_perp.nrows();
        let ad_p = if blocks[2].nrows() == p_size { blocks[2].clone() } else { DMatrix::zeros(p_size, p_size) };
        let ad_k = if blocks[3].nrows() == k_size { blocks[3].clone() } else { DMatrix::zeros(k_size, k_size) };
        let root_p = branch_root(&self.k_inv_p_perp, &ad_p);
        let root_k = branch_root(&self.k_inv_k_perp, &ad_k);
        root_k / (root_p * self.det_k_perp) * (self.prefactor * ratio)
    }
}

/// J_γ(Y) (analytic branch, complex in general; J(−Y) = conj J(Y)).
pub fn j_gamma(
    model: &LieAlgebraModel,
    dec: &CentralizerDecomposition,
    gamma: &SemisimpleElement,
    y: &[f64],
) -> Result<Complex64> {
    let j = JGamma::new(model, dec, gamma)?;
    if y.len() != j.q() {
        return Err(Error::InvalidInput(format!("Y needs {} coordinates in k(gamma)", j.q())));
    }
    Ok(j.eval(y))
}

/// tr^E[ρ(k^{-1}) exp(−iρ(Y) − tA)].
fn rep_trace(params: &HeatParameters, y_k: &[f64], minus_ta: &CMatrix) -> Complex64 {
    let rho_y = params.rep.rho_of(y_k);
    let expo = rho_y * Complex64::new(0.0, -1.0) + minus_ta;
    let e = if expo.nrows() == 1 { CMatrix::from_element(1, 1, expo[(0, 0)].exp()) } else { expo.exp() };
    (&params.rep.rho_k_inv * e).trace()
}

fn tensor_rule(rule: &GaussHermite, q: usize) -> Vec<(Vec<f64>, f64)> {
    let n = rule.len();
    let total = n.pow(q as u32);
    (0..total)
        .map(|mut idx| {
            let mut u = Vec::with_capacity(q);
            let mut w = 1.0;
            for _ in 0..q {
                let i = idx % n;
                idx /= n;
                u.push(rule.nodes[i]);
                w *= rule.weights[i];
            }
            (u, w)
        })
        .collect()
}

fn gaussian_average(
    j: &JGamma,
    params: &HeatParameters,
    n: usize,
    minus_ta: &CMatrix,
) -> Complex64 {
    let q = j.q();
    let rule = GaussHermite::shared(n);
    let scale = (2.0 * params.t).sqrt();
    let norm = std::f64::consts::PI.powf(-(q as f64) / 2.0);
    let terms: Vec<Complex64> = tensor_rule(&rule, q)
        .into_par_iter()
        .filter(|(_, w)| *w > 0.0)
        .map(|(u, w)| {
            let y: Vec<f64> = u.iter().map(|x| x * scale).collect();
            let y_k = &j.k_gamma_coords * nalgebra::DVector::from_column_slice(&y);
            j.eval(&y) * rep_trace(params, y_k.as_slice(), minus_ta) * w
        })
        .collect();
    pairwise_sum_c(&terms) * norm
}

/// tr^{[γ]}[e^{−t𝓛_A}] by the explicit formula with Gauss–Hermite quadrature
/// over 𝔨(γ) (Y = √(2t)·u per axis).
pub fn heat_orbital_integral(
    model: &LieAlgebraModel,
    gamma: &SemisimpleElement,
    params: &HeatParameters,
    quad: QuadratureConfig,
) -> Result<OrbitalIntegralResult> {
    params.validate(model)?;
    let dec = centralizer_decomposition(model, gamma)?;
    let j = JGamma::new(model, &dec, gamma)?;
    let q = j.q();
    if q > 3 {
        return Err(Error::InvalidInput(format!("dim k(gamma) = {q} exceeds the supported maximum of 3")));
    }
    let t = params.t;
    let gauss = (2.0 * std::f64::consts::PI * t).powf(-(dec.p as f64) / 2.0) * (-gamma.a.norm_squared() / (2.0 * t)).exp();
    let minus_ta = params.minus_t_a();
    if q == 0 {
        let v = j.eval(&[]) * rep_trace(params, &vec![0.0; model.dim_k], &minus_ta) * gauss;
        check_real(v)?;
        return Ok(OrbitalIntegralResult { value: v.re, abs_error_estimate: 0.0, method: Method::Explicit, nodes_used: 0 });
    }
    let mut n = quad.nodes;
    let coarse = gaussian_average(&j, params, n, &minus_ta) * gauss;
    if !quad.refine {
        check_real(coarse)?;
        return Ok(OrbitalIntegralResult { value: coarse.re, abs_error_estimate: 0.0, method: Method::Explicit, nodes_used: n.pow(q as u32) });
    }
    // double the rule until consecutive rules agree or the tensor grid hits its cap
    let mut prev = coarse;
    let mut value = gaussian_average(&j, params, 2 * n, &minus_ta) * gauss;
    while (value - prev).norm() > quad.tol * value.re.abs() 
        && 4 * n <= MAX_RULE_NODES
        && (4 * n).pow(q as u32) <= MAX_TENSOR_NODES
    {
        n *= 2;
        prev = value;
        value = gaussian_average(&j, params, 2 * n, &minus_ta) * gauss;
    }
    let err = (value - prev).norm();
    let used = (2 * n).pow(q as u32);
    check_real(value)?;
    let target = quad.tol * value.re.abs();
    if err > target {
        return Err(Error::QuadratureNotConverged { estimate: err, tol: target });
    }
    Ok(OrbitalIntegralResult { value: value.re, abs_error_estimate: err, method: Method::Explicit, nodes_used: used })
}

fn check_real(v: Complex64) -> Result<()> {
    if v.im.abs() > IMAG_TOL * v.re.abs().max(1.0) {
        return Err(Error::NonRealResult(v.im));
    }
    Ok(())
}

/// Closed form for nonelliptic γ with [𝔨(γ), 𝔭₀] = 0.
pub fn rank_one_closed_form(
    model: &LieAlgebraModel,
    gamma: &SemisimpleElement,
    params: &HeatParameters,
) -> Result<OrbitalIntegralResult> {
    params.validate(model)?;
    if gamma.a.norm() <= 1e-12 {
        return Err(Error::PreconditionFailed("rank-one closed form needs a != 0".into()));
    }
    let dec = centralizer_decomposition(model, gamma)?;
    for u in dec.k_gamma.column_iter() {
        for v in dec.p0.column_iter() {
            let br = model.bracket(&u.into_owned(), &v.into_owned()).amax();
            if br > 1e-12 {
                return Err(Error::PreconditionFailed(format!("[k(gamma), p0] != 0 (residual {br:.3e})")));
            }
        }
    }
    let t = params.t;
    let ad_gamma = gamma.ad_gamma(model);
    let det_z0 = det_one_minus(&restrict(&dec.z0_perp, &ad_gamma)).abs();
    let k_inv = gamma.ad_k.transpose();
    let det_p = det_one_minus(&restrict(&dec.p0_perp_gamma, &k_inv));
    if det_p.abs() < SINGULAR_TOL {
        return Err(Error::SingularCentralizer(det_p));
    }
    // tr^{𝔨₀}[C^{𝔨₀,𝔨₀}] and C^{𝔨₀,E}
    let mut tr_k0 = 0.0;
    let n_e = params.rep.dim();
    let mut c_e = CMatrix::zeros(n_e, n_e);
    for f in dec.k0.column_iter() {
        let f = f.into_owned();
        let ad = restrict(&dec.k0, &model.ad(&f));
        tr_k0 += (&ad * &ad).trace();
        let r = params.rep.rho_of(f.rows(model.dim_p, model.dim_k).as_slice());
        c_e += &r * &r;
    }
    let expo = params.minus_t_a()
        - CMatrix::identity(n_e, n_e) * Complex64::new(t * tr_k0 / 48.0, 0.0)
        - c_e * Complex64::new(0.5 * t, 0.0);
    let tr = (&params.rep.rho_k_inv * expo.exp()).trace();
    check_real(tr)?;
    let value = (-gamma.a.norm_squared() / (2.0 * t)).exp() * det_z0.powf(-0.5) / det_p
        * (2.0 * std::f64::consts::PI * t).powf(-(dec.p as f64) / 2.0)
        * tr.re;
    Ok(OrbitalIntegralResult { value, abs_error_estimate: 0.0, method: Method::RankOne, nodes_used: 0 })
}

/// e^{−a²/2t − tA} / (√(2πt) · 2 sinh(|a|/2)) for hyperbolic e^{a e1} in 𝔰𝔩₂.
pub fn sl2_hyperbolic_closed_form(a: f64, t: f64, shift: f64) -> OrbitalIntegralResult {
    let value = (-a * a / (2.0 * t) - t * shift).exp()
        / ((2.0 * std::f64::consts::PI * t).sqrt() * 2.0 * (0.5 * a.abs()).sinh());
    OrbitalIntegralResult { value, abs_error_estimate: 0.0, method: Method::ClosedSl2, nodes_used: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn refinement_gives_up_honestly() {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_elliptic(&m, 0.02).unwrap();
        let p = HeatParameters::scalar(&m, 4.0, 0.125);
        let r = heat_orbital_integral(&m, &g, &p, QuadratureConfig { tol: 1e-14, ..Default::default() });
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })), "{r:?}");
    }

    #[test]
    fn a_hat_examples() {
        let y0: f64 = 1.7;
        assert!((a_hat(&[y0, -y0]).unwrap() - (y0 / 2.0) / (y0 / 2.0).sinh()).abs() < 1e-15);
        assert_eq!(a_hat(&[]).unwrap(), 1.0);
        assert_eq!(a_hat(&[0.0, 0.0]).unwrap(), 1.0);
        assert!(matches!(a_hat(&[1.0, -1.5]), Err(Error::UnpairedSpectrum(_))));
    }

    #[test]
    fn a_hat_skew_agrees_with_paired_spectrum() {
        // block-diagonal rotation generators with angles 1 and 2
        let mut s = DMatrix::zeros(4, 4);
        s[(0, 1)] = 1.0;
        s[(1, 0)] = -1.0;
        s[(2, 3)] = 2.0;
        s[(3, 2)] = -2.0;
        let want = (0.5 / 0.5f64.sinh()) * (1.0 / 1.0f64.sinh());
        assert!((a_hat_skew(&s) - want).abs() < 1e-15);
        assert!((a_hat(&[1.0, -1.0, 2.0, -2.0]).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn sl2_elliptic_j_matches_rotation_formula() {
        let m = LieAlgebraModel::sl2();
        let phi = 2.0 * PI / 3.0;
        let g = SemisimpleElement::sl2_elliptic(&m, phi).unwrap();
        let dec = centralizer_decomposition(&m, &g).unwrap();
        for y in [0.0, 0.4, -1.3, 5.0] {
            let j = j_gamma(&m, &dec, &g, &[y]).unwrap();
            // φ is the rotation angle of Ad(k); Ad(k^{-1}) turns 𝔭 by −φ.
            let s = Complex64::new(4.0 * (phi / 2.0).sin(), 0.0) * Complex64::new(phi / 2.0, y / 2.0).sin();
            assert!((j - s.inv()).norm() < 1e-13, "y={y}: {j} vs {}", s.inv());
        }
    }

    #[test]
    fn hyperbolic_j_is_half_cosech() {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_hyperbolic(&m, 1.3).unwrap();
        let dec = centralizer_decomposition(&m, &g).unwrap();
        let j = j_gamma(&m, &dec, &g, &[]).unwrap();
        assert!((j.re - 1.0 / (2.0 * 0.65f64.sinh())).abs() < 1e-14);
        assert_eq!(j.im, 0.0);
    }

    #[test]
    fn abelian_orbital_is_gaussian() {
        let m = LieAlgebraModel::abelian(1);
        let g = SemisimpleElement::translation(&m, &[0.0]).unwrap();
        let r = heat_orbital_integral(&m, &g, &HeatParameters::scalar(&m, 1.0, 0.0), QuadratureConfig::default()).unwrap();
        assert!((r.value - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sl2_hyperbolic_matches_closed_form() {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_hyperbolic(&m, 1.0).unwrap();
        let r = heat_orbital_integral(&m, &g, &HeatParameters::scalar(&m, 1.0, 0.125), QuadratureConfig::default()).unwrap();
        let want = (-0.5f64 - 0.125).exp() / ((2.0 * PI).sqrt() * 2.0 * 0.5f64.sinh());
        assert!((r.value - want).abs() < 1e-15);
    }
}
