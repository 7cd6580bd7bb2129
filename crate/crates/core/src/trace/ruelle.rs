use num_complex::Complex64;
use serde::Serialize;

use super::spectrum::{circle_length_spectrum, Holonomy, LengthSpectrum};
use super::torsion::analytic_torsion_circle;
use crate::error::{Error, Result};
use crate::numerics::pairwise_sum_c;

pub const RUELLE_TAIL: f64 = 1e-16;

fn check_region(spectrum: &LengthSpectrum, sigma: Complex64) -> Result<()> {
    let abscissa = spectrum.growth_abscissa();
    if sigma.re <= abscissa {
        return Err(Error::DivergentRegion { re: sigma.re, abscissa });
    }
    Ok(())
}

/// Ξ_ρ(σ) = Σ_{[γ]} Σ_{k≥1} tr ρ(γ^k)·(χ_orb/(k·n))·mult·e^{−σkℓ}.
pub fn ruelle_xi(spectrum: &LengthSpectrum, sigma: Complex64) -> Result<Complex64> {
    spectrum.validate()?;
    check_region(spectrum, sigma)?;
    let mut parts = Vec::with_capacity(spectrum.classes.len());
    for c in &spectrum.classes {
        let coef = c.chi() / c.n as f64 * c.multiplicity as f64;
        let decay = (-sigma.re * c.length).exp();
        // bound on the tail after term k: rank·|coef|·decay^{k+1}/((k+1)(1−decay))
        let bound = |k: usize| spectrum.rank as f64 * coef.abs() * decay.powi(k as i32 + 1) / ((k + 1) as f64 * (1.0 - decay));
        let mut terms = Vec::new();
        let mut k = 1usize;
        loop {
            let Some(tr) = c.holonomy.trace(k) else {
                return Err(Error::InvalidInput(format!(
                    "holonomy traces for length {} exhausted at power {k} before the series converged",
                    c.length
                )));
            };
            terms.push(tr * coef / k as f64 * (-sigma * k as f64 * c.length).exp());
            if bound(k) < RUELLE_TAIL {
                break;
            }
            k += 1;
            if k > super::poisson::TERM_CAP {
                return Err(Error::TruncationCap(k));
            }
        }
        parts.push(pairwise_sum_c(&terms));
    }
    Ok(pairwise_sum_c(&parts))
}

/// R_ρ(σ) = exp Ξ_ρ(σ) inside the convergence half-plane.
pub fn ruelle_zeta(spectrum: &LengthSpectrum, sigma: Complex64) -> Result<Complex64> {
    Ok(ruelle_xi(spectrum, sigma)?.exp())
}

/// Continuation of R_ρ class by class: each primitive class contributes
/// Π_j (1 − e^{iθ_j − σℓ})^{−mult·χ_orb/n}. Needs trivial or phase holonomy.
pub fn ruelle_closed_form(spectrum: &LengthSpectrum, sigma: Complex64) -> Result<Complex64> {
    spectrum.validate()?;
    let mut log_r = Complex64::new(0.0, 0.0);
    for c in &spectrum.classes {
        let phases: Vec<f64> = match &c.holonomy {
            Holonomy::Trivial(d) => vec![0.0; *d],
            Holonomy::Phases(p) => p.clone(),
            Holonomy::Traces(_) => {
                return Err(Error::PreconditionFailed("closed form needs holonomy phases, not traces".into()));
            }
        };
        let expo = c.multiplicity as f64 * c.chi() / c.n as f64;
        for th in phases {
            let z = (Complex64::new(-sigma.re * c.length, th - sigma.im * c.length)).exp();
            let w = Complex64::new(1.0, 0.0) - z;
            if w.norm() < 1e-14 {
                return Err(Error::AcyclicityViolated(th));
            }
            log_r -= expo * w.ln();
        }
    }
    Ok(log_r.exp())
}

/// |exp Ξ(σ) − Π(1 − e^{−σℓ})^{−mult}|; trivial one-dimensional ρ, χ_orb/n = 1.
pub fn euler_product_check(spectrum: &LengthSpectrum, sigma: Complex64) -> Result<f64> {
    for c in &spectrum.classes {
        if c.holonomy != Holonomy::Trivial(1) || c.chi_orb.0 != c.chi_orb.1 || c.n != 1 {
            return Err(Error::PreconditionFailed("Euler product check needs trivial rho and chi_orb/n = 1".into()));
        }
    }
    Ok((ruelle_zeta(spectrum, sigma)? - ruelle_closed_form(spectrum, sigma)?).norm())
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FriedCheck {
    pub theta: f64,
    pub r0: f64,
    pub t_squared: f64,
    pub residual: f64,
}

/// R_ρ(0) from the continued Ruelle zeta against T² from the Hurwitz torsion.
pub fn fried_check_circle(theta: f64) -> Result<FriedCheck> {
    let t = analytic_torsion_circle(theta)?;
    let r0 = ruelle_closed_form(&circle_length_spectrum(theta), Complex64::new(0.0, 0.0))?;
    if r0.im.abs() > 1e-12 * r0.re.abs() {
        return Err(Error::NonRealResult(r0.im));
    }
    let t_squared = (2.0 * t.log_t).exp();
    Ok(FriedCheck { theta, r0: r0.re, t_squared, residual: (r0.re - t_squared).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::spectrum::ClassEntry;
    use std::f64::consts::PI;

    #[test]
    fn circle_series_matches_closed_form() {
        let th = 1.1;
        let s = Complex64::new(0.7, 0.4);
        let spec = circle_length_spectrum(th);
        let xi = ruelle_xi(&spec, s).unwrap();
        let direct = -(Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, th) * (-s).exp()).ln()
            - (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -th) * (-s).exp()).ln();
        assert!((xi - direct).norm() < 1e-14);
        assert!((xi.exp() - ruelle_closed_form(&spec, s).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn euler_product_examples() {
        let one = LengthSpectrum::new(vec![ClassEntry::primitive(1.0, 1)], 1).unwrap();
        assert!(euler_product_check(&one, Complex64::new(3.0, 0.0)).unwrap() < 1e-12);
        let two = LengthSpectrum::new(vec![ClassEntry::primitive(1.0, 1), ClassEntry::primitive(1.3, 1)], 1).unwrap();
        assert!(euler_product_check(&two, Complex64::new(2.5, 0.0)).unwrap() < 1e-10);
        let far = ruelle_zeta(&two, Complex64::new(60.0, 0.0)).unwrap();
        assert!((far - 1.0).norm() < 1e-15);
        assert_eq!(ruelle_zeta(&LengthSpectrum::empty(), Complex64::new(0.1, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn divergent_region_is_reported() {
        let one = LengthSpectrum::new(vec![ClassEntry::primitive(1.0, 1)], 1).unwrap();
        assert!(matches!(ruelle_xi(&one, Complex64::new(-0.1, 0.0)), Err(Error::DivergentRegion { .. })));
    }

    #[test]
    fn fried_examples() {
        for th in [PI / 3.0, 1.0, PI, 2.5] {
            let f = fried_check_circle(th).unwrap();
            assert!(f.residual < 1e-10, "{f:?}");
        }
        assert!((fried_check_circle(PI).unwrap().r0 - 0.25).abs() < 1e-15);
        assert!((fried_check_circle(PI / 3.0).unwrap().r0 - 1.0).abs() < 1e-14);
        assert!(matches!(fried_check_circle(0.0), Err(Error::AcyclicityViolated(_))));
    }
}
