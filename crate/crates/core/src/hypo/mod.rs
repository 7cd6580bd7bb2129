//! One-dimensional hypoelliptic model
//!   M_b = (1/2b²)(−∂²_y + y² − 1) + (y/b) ∂_x
//! on ℝ_x × ℝ_y, its explicit Gaussian kernel and the b-independent supertrace.
//!
//! Derivation of the kernel (checked numerically in `oracles`): in the time
//! τ = t/b² the y-motion is the Feynman–Kac process of ½(−∂² + y² − 1),
//! whose kernel is Mehler's, while x moves by −b ∫ y dτ. Conditioning the
//! Mehler bridge on its endpoints makes this increment Gaussian with mean
//! −b tanh(τ/2)(y + y′) and variance b²(τ − 2 tanh(τ/2)). Hence, with
//! δ = x′ − x, q = e^{−τ}, h = tanh(τ/2), α = (b²/2)(τ − 2h):
//!   p = (4πα)^{−1/2} e^{−(δ + bh(y+y′))²/4α}
//!       · (π(1−q²))^{−1/2} e^{−½[coth τ (y²+y′²) − 2yy′/sinh τ]}.

mod gaussian;
pub mod oracles;

use nalgebra::{DMatrix, DVector, Matrix3};

pub use gaussian::GaussianForm;

use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadSettings};

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelOperator {
    pub b: f64,
    pub t: f64,
    pub a: f64,
}

impl ModelOperator {
    pub fn new(a: f64, b: f64, t: f64) -> Result<Self> {
        check_bt(b, t)?;
        Ok(ModelOperator { b, t, a })
    }
}

fn check_bt(b: f64, t: f64) -> Result<()> {
    if !(b > 0.0 && b.is_finite()) || !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("need b > 0 and t > 0 (b={b}, t={t})")));
    }
    Ok(())
}

/// τ − 2 tanh(τ/2), with its odd Taylor series for small τ.
fn defect(tau: f64) -> f64 {
    if tau < 0.1 {
        let t2 = tau * tau;
        tau * t2 * (1.0 / 12.0 - t2 * (1.0 / 120.0 - t2 * (17.0 / 20160.0 - t2 * 31.0 / 362880.0)))
    } else {
        tau - 2.0 * (0.5 * tau).tanh()
    }
}

/// Kernel of e^{−tM_b} as a Gaussian in z = (x′ − x, y, y′):
/// p = exp(log_norm − ½ zᵀ quad z).
///
/// Evaluation goes through the rotated variables (δ, u, w) = (x′ − x, y + y′,
/// y − y′), in which the form is (δ + bhu)²/2α + hu²/2 + w²/2h and no
/// coth τ − 1/sinh τ cancellation occurs for small τ.
#[derive(Debug, Clone, Copy)]
pub struct ModelKernel {
    pub b: f64,
    pub t: f64,
    pub quad: Matrix3<f64>,
    pub log_norm: f64,
    rotated: Matrix3<f64>,
}

fn rotation() -> Matrix3<f64> {
    Matrix3::new(1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, -1.0)
}

pub fn model_kernel(b: f64, t: f64) -> Result<ModelKernel> {
    check_bt(b, t)?;
    let tau = t / (b * b);
    let one_minus_q2 = -(-2.0 * tau).exp_m1();
    let h = (0.5 * tau).tanh();
    let alpha = 0.5 * b * b * defect(tau);
    let c = 1.0 / (2.0 * alpha);
    let rotated = Matrix3::new(c, c * b * h, 0.0, c * b * h, c * b * b * h * h + 0.5 * h, 0.0, 0.0, 0.0, 0.5 / h);
    let r = rotation();
    let quad = r.transpose() * rotated * r;
    let log_norm = -0.5 * (4.0 * PI * alpha).ln() - 0.5 * (PI * one_minus_q2).ln();
    Ok(ModelKernel { b, t, quad, log_norm, rotated })
}

impl ModelKernel {
    pub fn log_eval(&self, x: f64, y: f64, xp: f64, yp: f64) -> f64 {
        let z = nalgebra::Vector3::new(xp - x, y + yp, y - yp);
        self.log_norm - 0.5 * z.dot(&(self.rotated * z))
    }

    /// p_{b,t}((x,y),(x′,y′)).
    pub fn eval(&self, x: f64, y: f64, xp: f64, yp: f64) -> f64 {
        self.log_eval(x, y, xp, yp).exp()
    }

    /// The kernel as a Gaussian form over `n` variables, reading (x, y, x′, y′)
    /// from the given positions.
    pub fn as_form(&self, n: usize, x: usize, y: usize, xp: usize, yp: usize) -> GaussianForm {
        let mut a = DMatrix::zeros(3, n);
        a[(0, xp)] += 1.0;
        a[(0, x)] -= 1.0;
        a[(1, y)] += 1.0;
        a[(1, yp)] += 1.0;
        a[(2, y)] += 1.0;
        a[(2, yp)] -= 1.0;
        let q = DMatrix::from_fn(3, 3, |i, j| self.rotated[(i, j)]);
        GaussianForm::new(q, DVector::zeros(3), self.log_norm).substitute(&a, &DVector::zeros(3))
    }
}

/// ∫ p_{b,t}((0,Y),(a,Y)) dY in closed form. On the diagonal u = 2Y, w = 0
/// and the exponent is −(a + 2bhY)²/4α − hY²; completing the square leaves
/// curvature P = b²h²/α + h and the constant −a²/4(b²h + α) = −a²/2t, so no
/// large terms cancel even when τ is small.
pub fn diagonal_integral(a: f64, b: f64, t: f64) -> Result<f64> {
    let k = model_kernel(b, t)?;
    let tau = t / (b * b);
    let h = (0.5 * tau).tanh();
    let alpha = 0.5 * b * b * defect(tau);
    let p = b * b * h * h / alpha + h;
    Ok((k.log_norm + 0.5 * (PI / p).ln() - a * a / (2.0 * t)).exp())
}

/// Same integral through the generic Gaussian-form machinery; loses digits
/// when t/b² is small, kept as a cross-check.
pub fn diagonal_integral_generic(a: f64, b: f64, t: f64) -> Result<f64> {
    let k = model_kernel(b, t)?;
    // z = (a, Y, Y) = A·[Y] + z0
    let form = k.as_form(4, 0, 1, 2, 3);
    let sub = DMatrix::from_column_slice(4, 1, &[0.0, 1.0, 0.0, 1.0]);
    let z0 = DVector::from_column_slice(&[0.0, 0.0, a, 0.0]);
    Ok(form.substitute(&sub, &z0).log_total()?.exp())
}

/// (1 − e^{−t/b²}) ∫ p_{b,t}((0,Y),(a,Y)) dY.
pub fn hypo_supertrace(a: f64, b: f64, t: f64) -> Result<f64> {
    let tau = t / (b * b);
    Ok(-(-tau).exp_m1() * diagonal_integral(a, b, t)?)
}

/// tr e^{−(t/b²)·½(−∂² + y² − 1)} = 1/(1 − e^{−t/b²}).
pub fn oscillator_trace(b: f64, t: f64) -> Result<f64> {
    check_bt(b, t)?;
    Ok(-1.0 / (-t / (b * b)).exp_m1())
}

/// Σ_{k≤K} e^{−kt/b²}, with K chosen so that the geometric tail is < 1e-14.
pub fn oscillator_trace_series(b: f64, t: f64) -> Result<f64> {
    check_bt(b, t)?;
    let tau = t / (b * b);
    let tail_ratio = (-tau).exp();
    let mut sum = 0.0;
    let mut term = 1.0;
    let mut k = 0usize;
    loop {
        sum += term;
        term *= tail_ratio;
        k += 1;
        // remaining tail = term / (1 − r)
        if term / (-(-tau).exp_m1()) < 1e-14 * sum {
            break;
        }
        if k > 10_000_000 {
            return Err(Error::TruncationCap(k));
        }
    }
    Ok(sum)
}

/// Euclidean orbital integral e^{−a²/2t}/√(2πt).
pub fn flat_orbital(a: f64, t: f64) -> f64 {
    (-a * a / (2.0 * t)).exp() / (2.0 * PI * t).sqrt()
}

/// ∫∫ ψ₀(y) p_{b,t}((0,y),(a,y′)) ψ₀(y′) dy dy′ with ψ₀ = π^{−1/4} e^{−y²/2}.
pub fn vacuum_marginal(a: f64, b: f64, t: f64) -> Result<f64> {
    let k = model_kernel(b, t)?;
    // variables (y, y′); x = 0, x′ = a
    let form = k.as_form(4, 0, 1, 2, 3);
    let sub = DMatrix::from_row_slice(4, 2, &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    let z0 = DVector::from_column_slice(&[0.0, 0.0, a, 0.0]);
    let vac = GaussianForm::new(DMatrix::identity(2, 2), DVector::zeros(2), -0.5 * PI.ln());
    Ok(form.substitute(&sub, &z0).times(&vac).log_total()?.exp())
}

#[derive(Debug, Clone)]
pub struct LocalizationProfile {
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub rows: Vec<(f64, f64)>,
    pub argmax: f64,
    /// ∫ (Y − argmax)² p dY / ∫ p dY from the tabulated profile.
    pub second_moment: f64,
    /// Centre and variance of the exact Gaussian profile.
    pub center: f64,
    pub variance: f64,
}

/// Tabulates Y ↦ p_{b,t}((0,Y),(a,Y)) on `n` points spanning ±`width`
/// standard deviations around the centre of the profile.
pub fn localization_profile(a: f64, b: f64, t: f64, n: usize, width: f64) -> Result<LocalizationProfile> {
    if n < 3 {
        return Err(Error::InvalidInput("profile needs at least 3 points".into()));
    }
    let k = model_kernel(b, t)?;
    let form = k.as_form(4, 0, 1, 2, 3);
    let sub = DMatrix::from_column_slice(4, 1, &[0.0, 1.0, 0.0, 1.0]);
    let z0 = DVector::from_column_slice(&[0.0, 0.0, a, 0.0]);
    let diag = form.substitute(&sub, &z0);
    let variance = 1.0 / diag.q[(0, 0)];
    let center = diag.l[0] * variance;
    let sd = variance.sqrt();
    let lo = center - width * sd;
    let step = 2.0 * width * sd / (n - 1) as f64;
    let rows: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let y = lo + i as f64 * step;
            (y, k.eval(0.0, y, a, y))
        })
        .collect();
    let (argmax, _) = rows.iter().fold((rows[0].0, f64::MIN), |acc, r| if r.1 > acc.1 { (r.0, r.1) } else { acc });
    // trapezoid moments
    let mass: f64 = rows.iter().map(|r| r.1).sum::<f64>() * step;
    let m2: f64 = rows.iter().map(|r| (r.0 - argmax).powi(2) * r.1).sum::<f64>() * step;
    Ok(LocalizationProfile { a, b, t, rows, argmax, second_moment: m2 / mass, center, variance })
}

/// L¹ distance between the normalised diagonal profile and e^{−Y²}/√π,
/// the limit profile of the b → 0 product state.
pub fn product_state_l1(a: f64, b: f64, t: f64) -> Result<f64> {
    let prof = localization_profile(a, b, t, 3, 1.0)?;
    let (mu, var) = (prof.center, prof.variance);
    let g = |y: f64| (-(y - mu).powi(2) / (2.0 * var)).exp() / (2.0 * PI * var).sqrt();
    let h = |y: f64| (-y * y).exp() / PI.sqrt();
    let span = 12.0 * var.sqrt().max(1.0) + mu.abs();
    let out = integrate(|y| (g(y) - h(y)).abs(), -span, span, QuadSettings { abs_tol: 1e-13, rel_tol: 1e-10, max_intervals: 4000 })?;
    Ok(out.value)
}

/// Semigroup check: ∫ p_{b,t}(z, z″) p_{b,s}(z″, z′) dz″ against p_{b,t+s}(z, z′),
/// the intermediate integral done exactly on the Gaussian forms. Returns the
/// largest deviation of log p over `points` = [(x, y, x′, y′)], relative to
/// max(1, |log p|) (far from the drift ridge p underflows and only the
/// exponent is meaningful).
pub fn chapman_kolmogorov_residual(b: f64, t: f64, s: f64, points: &[[f64; 4]]) -> Result<f64> {
    let kt = model_kernel(b, t)?;
    let ks = model_kernel(b, s)?;
    let kts = model_kernel(b, t + s)?;
    // variables (x, y, x″, y″, x′, y′)
    let composed = kt.as_form(6, 0, 1, 2, 3).times(&ks.as_form(6, 2, 3, 4, 5)).integrate_out(&[2, 3])?;
    let mut worst = 0.0f64;
    for p in points {
        let direct = kts.log_eval(p[0], p[1], p[2], p[3]);
        let via = composed.log_eval(p);
        worst = worst.max((via - direct).abs() / direct.abs().max(1.0));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supertrace_examples() {
        assert!((hypo_supertrace(0.0, 0.7, 1.0).unwrap() - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-14);
        assert!((hypo_supertrace(1.0, 1.0, 1.0).unwrap() - (-0.5f64).exp() / (2.0 * PI).sqrt()).abs() < 1e-14);
        let vals: Vec<f64> = [0.1, 1.0, 10.0].iter().map(|b| hypo_supertrace(2.0, *b, 0.5).unwrap()).collect();
        assert!((vals[0] - vals[1]).abs() < 1e-10 && (vals[1] - vals[2]).abs() < 1e-10);
    }

    #[test]
    fn closed_and_generic_diagonal_agree() {
        for (a, b, t) in [(0.0, 1.0, 1.0), (1.5, 0.5, 2.0), (-1.0, 2.0, 0.7)] {
            let c = diagonal_integral(a, b, t).unwrap();
            assert!((c - diagonal_integral_generic(a, b, t).unwrap()).abs() < 1e-12 * c);
        }
    }

    #[test]
    fn oscillator_trace_examples() {
        let b = 1.0 / 2f64.ln().sqrt();
        assert!((oscillator_trace(b, 1.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((oscillator_trace(1.0, 1.0).unwrap() - 1.0 / (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!((oscillator_trace(0.01, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let s = oscillator_trace_series(1.0, 0.3).unwrap();
        assert!((s - oscillator_trace(1.0, 0.3).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn kernel_is_translation_invariant_and_positive() {
        let k = model_kernel(0.8, 1.3).unwrap();
        let p1 = k.eval(0.0, 0.3, 0.5, -0.2);
        let p2 = k.eval(2.0, 0.3, 2.5, -0.2);
        assert!((p1 - p2).abs() < 1e-15 * p1);
        assert!(p1 > 0.0);
    }

    #[test]
    fn small_b_kernel_is_finite() {
        let k = model_kernel(0.01, 1.0).unwrap();
        let v = k.eval(0.0, 0.0, 0.1, 0.0);
        assert!(v.is_finite() && v > 0.0);
        assert!(hypo_supertrace(0.5, 0.01, 1.0).unwrap().is_finite());
    }

    #[test]
    fn profile_is_even_at_zero_translation() {
        let p = localization_profile(0.0, 1.0, 1.0, 101, 6.0).unwrap();
        let n = p.rows.len();
        for i in 0..n / 2 {
            assert!((p.rows[i].1 - p.rows[n - 1 - i].1).abs() < 1e-14);
        }
        assert!(p.center.abs() < 1e-15);
    }
}
