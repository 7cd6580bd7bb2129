use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::numerics::zeta::{hurwitz_zeta, hurwitz_zeta_ds};

use super::spectrum::SpectralData;

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionMethod {
    HurwitzExact,
    HeatMellinApprox,
}

impl std::fmt::Display for TorsionMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TorsionMethod::HurwitzExact => "hurwitz_exact",
            TorsionMethod::HeatMellinApprox => "heat_mellin_approx",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorsionResult {
    pub log_t: f64,
    pub method: TorsionMethod,
    pub error_estimate: f64,
}

/// θ reduced to [0, 2π); rejects trivial holonomy.
fn reduced_fraction(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::InvalidInput("theta must be finite".into()));
    }
    let x = (theta / (2.0 * PI)).rem_euclid(1.0);
    if x.min(1.0 - x) < 1e-12 {
        return Err(Error::AcyclicityViolated(theta));
    }
    Ok(x)
}

/// ζ(s) and ζ′(s) of {((2πk + θ)/L)²: k ∈ ℤ}:
/// (2π/L)^{−2s} [ζ_H(2s, x) + ζ_H(2s, 1 − x)] with x = θ/2π.
pub fn circle_zeta(theta: f64, circumference: f64, s: f64) -> Result<(f64, f64)> {
    let x = reduced_fraction(theta)?;
    let scale = (2.0 * PI / circumference).ln();
    let h = hurwitz_zeta(2.0 * s, x) + hurwitz_zeta(2.0 * s, 1.0 - x);
    let dh = 2.0 * (hurwitz_zeta_ds(2.0 * s, x) + hurwitz_zeta_ds(2.0 * s, 1.0 - x));
    let pre = (-2.0 * s * scale).exp();
    Ok((pre * h, pre * (dh - 2.0 * scale * h)))
}

/// log T for the unit circle with holonomy e^{iθ}: ½ ζ′_{Δ₀}(0) via the
/// Hurwitz zeta continuation (Δ₁ ≅ Δ₀, so the weighted zeta is ζ_{Δ₀}).
/// With this sign T² = R(0) on the circle; T(π) = 1/2.
pub fn analytic_torsion_circle(theta: f64) -> Result<TorsionResult> {
    let (_, d0) = circle_zeta(theta, 1.0, 0.0)?;
    Ok(TorsionResult { log_t: 0.5 * d0, method: TorsionMethod::HurwitzExact, error_estimate: 0.0 })
}

/// log det Δ₀ = −ζ′(0) by Lerch's formula ζ_H′(0, x) = ln Γ(x) − ½ ln 2π;
/// independent of the Euler–Maclaurin continuation used above.
pub fn circle_log_det_lerch(theta: f64) -> Result<f64> {
    let x = reduced_fraction(theta)?;
    Ok(-2.0 * (ln_gamma(x) + ln_gamma(1.0 - x) - (2.0 * PI).ln()))
}

/// ζ′(0) for an eigenvalue list in dimension `dim`: the listed eigenvalues
/// plus a Weyl tail N(λ) ≈ Cλ^{d/2} beyond the last one, continued to s = 0.
pub fn weyl_zeta_prime(eigs: &[(f64, usize)], dim: f64) -> f64 {
    let positive: Vec<&(f64, usize)> = eigs.iter().filter(|(l, _)| *l > 0.0).collect();
    let (last_l, last_m) = *positive[positive.len() - 1];
    let count: f64 = positive.iter().map(|(_, m)| *m as f64).sum();
    let c = (count - 0.5 * last_m as f64) / last_l.powf(0.5 * dim);
    let head: f64 = positive[..positive.len() - 1].iter().map(|(l, m)| *m as f64 * l.ln()).sum();
    let tail = c * last_l.powf(0.5 * dim) * (last_l.ln() - 2.0 / dim);
    -head - 0.5 * last_m as f64 * last_l.ln() + tail
}

/// The single-cutoff estimate oscillates with the position of the last
/// eigenvalue inside a cluster; averaging over the last `positive/8`
/// cutoffs (at least 2) removes that sawtooth.
fn smoothed_zeta_prime(eigs: &[(f64, usize)], dim: f64) -> f64 {
    let first_pos = eigs.iter().position(|(l, _)| *l > 0.0).unwrap_or(0);
    let positive = eigs.len() - first_pos;
    let window = (positive / 8).max(2);
    let ests: Vec<f64> = (0..window).map(|w| weyl_zeta_prime(&eigs[..eigs.len() - w], dim)).collect();
    ests.iter().sum::<f64>() / window as f64
}

/// Approximate ζ′(0); the error estimate compares against the same
/// construction on the lower half of the list.
pub fn spectral_zeta_prime_approx(eigs: &[(f64, usize)], dim: usize) -> Result<(f64, f64)> {
    SpectralData::Eigenvalues(eigs.to_vec()).validate()?;
    let first_pos = eigs.iter().position(|(l, _)| *l > 0.0).unwrap_or(eigs.len());
    let positive = eigs.len() - first_pos;
    if positive < 16 || dim == 0 {
        return Err(Error::InvalidInput("need at least 16 positive eigenvalues and dim >= 1".into()));
    }
    let full = smoothed_zeta_prime(eigs, dim as f64);
    let half = smoothed_zeta_prime(&eigs[..first_pos + positive / 2], dim as f64);
    Ok((full, (full - half).abs()))
}

/// Torsion of a self-dual complex given by the Δ₀ spectrum (log T = ½ζ′(0)).
pub fn torsion_from_spectrum(data: &SpectralData, dim: usize) -> Result<TorsionResult> {
    match data {
        SpectralData::Circle { theta, circumference } => {
            let (_, d0) = circle_zeta(*theta, *circumference, 0.0)?;
            Ok(TorsionResult { log_t: 0.5 * d0, method: TorsionMethod::HurwitzExact, error_estimate: 0.0 })
        }
        SpectralData::Eigenvalues(e) => {
            if e.first().is_some_and(|(l, _)| *l == 0.0) {
                return Err(Error::AcyclicityViolated(0.0));
            }
            let (d, err) = spectral_zeta_prime_approx(e, dim)?;
            Ok(TorsionResult { log_t: 0.5 * d, method: TorsionMethod::HeatMellinApprox, error_estimate: 0.5 * err })
        }
    }
}

/// The eigenvalues of the twisted circle with |k| ≤ k_max, sorted.
pub fn circle_eigenvalues(theta: f64, k_max: usize) -> Vec<(f64, usize)> {
    let mut v: Vec<(f64, usize)> =
        (-(k_max as i64)..=(k_max as i64)).map(|k| ((2.0 * PI * k as f64 + theta).powi(2), 1)).collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_examples() {
        let r = analytic_torsion_circle(PI).unwrap();
        assert!((r.log_t.exp() - 0.5).abs() < 1e-13);
        assert_eq!(r.error_estimate, 0.0);
        let r = analytic_torsion_circle(2.0 * PI / 3.0).unwrap();
        assert!((r.log_t.exp() - 1.0 / 3f64.sqrt()).abs() < 1e-13);
        assert!(analytic_torsion_circle(1e-4).unwrap().log_t > analytic_torsion_circle(1e-2).unwrap().log_t);
        assert!(matches!(analytic_torsion_circle(0.0), Err(Error::AcyclicityViolated(_))));
        assert!(matches!(analytic_torsion_circle(2.0 * PI), Err(Error::AcyclicityViolated(_))));
    }

    #[test]
    fn lerch_route_agrees() {
        for th in [0.3, 1.0, PI, 2.5, 5.9] {
            let a = analytic_torsion_circle(th).unwrap().log_t;
            let b = -0.5 * circle_log_det_lerch(th).unwrap();
            let c = -(2.0 * (th / 2.0).sin()).abs().ln();
            assert!((a - b).abs() < 1e-12 && (a - c).abs() < 1e-12, "theta={th}: {a} {b} {c}");
        }
    }

    #[test]
    fn circumference_does_not_change_torsion() {
        let a = torsion_from_spectrum(&SpectralData::Circle { theta: 1.0, circumference: 3.0 }, 1).unwrap();
        assert!((a.log_t - analytic_torsion_circle(1.0).unwrap().log_t).abs() < 1e-12);
    }

    #[test]
    fn weyl_tail_approximation_is_close() {
        let eigs = circle_eigenvalues(1.0, 400);
        let r = torsion_from_spectrum(&SpectralData::Eigenvalues(eigs), 1).unwrap();
        let exact = analytic_torsion_circle(1.0).unwrap().log_t;
        assert_eq!(r.method, TorsionMethod::HeatMellinApprox);
        assert!((r.log_t - exact).abs() < 1e-3, "{} vs {exact}", r.log_t);
        assert!((r.log_t - exact).abs() <= 2.0 * r.error_estimate + 1e-12);
    }
}
