use crate::error::{Error, Result};
use crate::numerics::{integrate_tail, QuadSettings};

use std::f64::consts::PI;

pub const TAIL_REL: f64 = 1e-18;
pub const TERM_CAP: usize = 10_000_000;

/// Σ_{k∈ℤ} f(|k|) for f positive and decreasing in k, stopping once a term
/// falls below `TAIL_REL` of the running sum. Summed from the smallest term.
pub fn symmetric_sum<F: Fn(f64) -> f64>(f: F) -> Result<f64> {
    let mut terms = vec![f(0.0)];
    let mut total = terms[0];
    let mut k = 1usize;
    loop {
        let v = 2.0 * f(k as f64);
        terms.push(v);
        total += v;
        if v <= TAIL_REL * total {
            break;
        }
        k += 1;
        if k > TERM_CAP {
            return Err(Error::TruncationCap(k));
        }
    }
    Ok(terms.iter().rev().sum())
}

/// (Σ_k e^{−2π²k²t}, Σ_k e^{−k²/2t}/√(2πt)): the two sides of Poisson
/// summation for the heat trace of the unit circle.
pub fn poisson_both_sides(t: f64) -> Result<(f64, f64)> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("t must be positive (got {t})")));
    }
    let spectral = symmetric_sum(|k| (-2.0 * PI * PI * k * k * t).exp())?;
    let geometric = symmetric_sum(|k| (-k * k / (2.0 * t)).exp())? / (2.0 * PI * t).sqrt();
    Ok((spectral, geometric))
}

fn settings() -> QuadSettings {
    QuadSettings { abs_tol: 1e-300, rel_tol: 1e-13, max_intervals: 4000 }
}

fn y_over_sinh(y: f64) -> f64 {
    if y.abs() < 1e-6 {
        1.0 - y * y / 6.0
    } else {
        y / y.sinh()
    }
}

/// (1/t) ∫_ℝ e^{−y²/2t} (y/2)/sinh(y/2) dy/√(2πt).
pub fn plancherel_geometric(t: f64) -> Result<f64> {
    let half = integrate_tail(|y| (-y * y / (2.0 * t)).exp() * y_over_sinh(0.5 * y), 0.0, settings())?;
    Ok(2.0 * half.value / (t * (2.0 * PI * t).sqrt()))
}

/// ½ ∫_ℝ e^{−tρ²/2} ρ tanh(πρ) dρ.
pub fn plancherel_spectral(t: f64) -> Result<f64> {
    let half = integrate_tail(|r| (-t * r * r / 2.0).exp() * r * (PI * r).tanh(), 0.0, settings())?;
    Ok(half.value)
}

/// |geometric − spectral| for the Plancherel form of the identity orbital
/// integral on ℍ²; both sides by independent adaptive quadrature.
pub fn plancherel_identity_residual(t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("t must be positive (got {t})")));
    }
    Ok((plancherel_geometric(t)? - plancherel_spectral(t)?).abs())
}

/// Identity orbital integral of e^{tΔ/2} on ℍ² from the Plancherel density.
pub fn identity_orbital_plancherel(t: f64) -> Result<f64> {
    Ok((-t / 8.0).exp() / (2.0 * PI) * plancherel_spectral(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_examples() {
        for t in [0.01, 0.1, 1.0, 10.0] {
            let (s, g) = poisson_both_sides(t).unwrap();
            assert!((s - g).abs() < 1e-12, "t={t}: {s} vs {g}");
        }
        let (s, g) = poisson_both_sides(200.0).unwrap();
        assert!((s - 1.0).abs() < 1e-15 && (g - 1.0).abs() < 1e-15);
    }

    #[test]
    fn plancherel_examples() {
        for t in [0.25, 1.0, 4.0] {
            assert!(plancherel_identity_residual(t).unwrap() < 1e-8);
            assert!(plancherel_spectral(t).unwrap() > 0.0);
        }
    }
}
