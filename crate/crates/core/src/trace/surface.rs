use rayon::prelude::*;

use super::poisson::{symmetric_sum, TAIL_REL, TERM_CAP};
use super::spectrum::LengthSpectrum;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebraModel, SemisimpleElement};
use crate::numerics::{integrate_tail, pairwise_sum, QuadSettings};
use crate::orbital::{heat_orbital_integral, rank_one_closed_form, HeatParameters, QuadratureConfig};

use std::f64::consts::PI;

/// ∫_ℝ ρ tanh(πρ) e^{−tρ²/2} dρ = 2/t − 4∫₀^∞ ρ e^{−tρ²/2}/(e^{2πρ} + 1) dρ;
/// the correction integrand decays like e^{−2πρ} whatever t is.
pub fn identity_spectral_integral(t: f64) -> Result<f64> {
    let s = QuadSettings { abs_tol: 1e-300, rel_tol: 1e-14, max_intervals: 4000 };
    let corr = integrate_tail(|r| r * (-t * r * r / 2.0).exp() * (-2.0 * PI * r).exp() / (1.0 + (-2.0 * PI * r).exp()), 0.0, s)?;
    Ok(2.0 / t - 4.0 * corr.value)
}

/// 1/(2 sinh x) without overflow.
fn half_csch(x: f64) -> f64 {
    (-x).exp() / (-(-2.0 * x).exp_m1())
}

/// Geometric side of the Selberg trace formula for e^{tΔ/2} on a compact
/// hyperbolic surface of area `vol`:
///   Σ_ℓ Σ_{k≥1} ℓ·mult·Re tr ρ(γ^k)·e^{−k²ℓ²/2t − t/8}/(√(2πt)·2 sinh(kℓ/2))
///   plus dim ρ·(vol/4π) e^{−t/8} ∫ ρ tanh(πρ) e^{−tρ²/2} dρ.
/// Powers stop at `k_max` or once a term drops below 1e-18 of the total.
pub fn surface_heat_trace(vol: f64, spectrum: &LengthSpectrum, t: f64, k_max: usize) -> Result<f64> {
    if !(t > 0.0) || !(vol > 0.0) || k_max == 0 {
        return Err(Error::InvalidInput("surface trace needs t > 0, vol > 0 and k_max >= 1".into()));
    }
    spectrum.validate()?;
    let identity = spectrum.rank as f64 * vol / (4.0 * PI) * (-t / 8.0).exp() * identity_spectral_integral(t)?;
    let pref = (-t / 8.0).exp() / (2.0 * PI * t).sqrt();
    let per_class: Vec<Result<f64>> = spectrum
        .classes
        .par_iter()
        .map(|c| {
            let mut terms = Vec::new();
            let kmax = c.holonomy.max_power().map_or(k_max, |m| m.min(k_max));
            for k in 1..=kmax {
                let a = k as f64 * c.length;
                let mag = c.length * c.multiplicity as f64 * pref * (-a * a / (2.0 * t)).exp() * half_csch(0.5 * a);
                let tr = c.holonomy.trace(k).expect("trace within max_power").re;
                terms.push(mag * tr);
                if mag * spectrum.rank as f64 <= TAIL_REL * identity {
                    break;
                }
            }
            Ok(pairwise_sum(&terms))
        })
        .collect();
    let mut parts = vec![identity];
    for p in per_class {
        parts.push(p?);
    }
    Ok(pairwise_sum(&parts))
}

/// A conjugacy class of the lattice: vol(Γ∩Z(γ)\X(γ)), Re tr ρ(γ) and a
/// representative.
#[derive(Debug, Clone)]
pub struct ClassDescriptor {
    pub volume: f64,
    pub weight: f64,
    pub element: SemisimpleElement,
}

#[derive(Debug, Clone, Copy)]
pub enum OrbitalEvaluator {
    /// Explicit formula with Gauss–Hermite quadrature for every class.
    Explicit(QuadratureConfig),
    /// Rank-one closed form where it applies, explicit formula otherwise.
    Auto(QuadratureConfig),
}

/// Σ_{[γ]} vol·weight·tr^{[γ]}[e^{−t𝓛_A}] with 𝓛_A = −Δ/2 + A (A scalar).
pub fn selberg_assemble(
    model: &LieAlgebraModel,
    classes: &[ClassDescriptor],
    t: f64,
    shift: f64,
    evaluator: OrbitalEvaluator,
) -> Result<f64> {
    let params = HeatParameters::scalar(model, t, shift);
    params.validate(model)?;
    let terms: Vec<Result<f64>> = classes
        .par_iter()
        .map(|c| {
            let v = match evaluator {
                OrbitalEvaluator::Explicit(q) => heat_orbital_integral(model, &c.element, &params, q)?,
                OrbitalEvaluator::Auto(q) => {
                    if c.element.a_norm() > 1e-12 {
                        match rank_one_closed_form(model, &c.element, &params) {
                            Ok(v) => v,
                            Err(Error::PreconditionFailed(_)) => heat_orbital_integral(model, &c.element, &params, q)?,
                            Err(e) => return Err(e),
                        }
                    } else {
                        heat_orbital_integral(model, &c.element, &params, q)?
                    }
                }
            };
            Ok(c.volume * c.weight * v.value)
        })
        .collect();
    let vals = terms.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(pairwise_sum(&vals))
}

/// Γ = ℤ acting on ℝ by translations, vol(S¹) = 1; classes k with
/// e^{−k²/2t} above the tail threshold.
pub fn circle_classes(model: &LieAlgebraModel, t: f64) -> Result<Vec<ClassDescriptor>> {
    if model.dim_p != 1 || model.dim_k != 0 {
        return Err(Error::InvalidModel("circle classes need the one-dimensional abelian model".into()));
    }
    let mut k_max = 0usize;
    while (-((k_max * k_max) as f64) / (2.0 * t)).exp() > TAIL_REL {
        k_max += 1;
        if k_max > TERM_CAP {
            return Err(Error::TruncationCap(k_max));
        }
    }
    let mut out = Vec::with_capacity(2 * k_max + 1);
    for k in -(k_max as i64)..=(k_max as i64) {
        out.push(ClassDescriptor { volume: 1.0, weight: 1.0, element: SemisimpleElement::translation(model, &[k as f64])? });
    }
    Ok(out)
}

/// Classes of a hyperbolic surface in the 𝔰𝔩₂ model: the identity with the
/// surface area, and every power γ^k of each primitive class as a
/// translation by kℓ with volume ℓ·mult.
pub fn surface_classes(model: &LieAlgebraModel, vol: f64, spectrum: &LengthSpectrum, t: f64, k_max: usize) -> Result<Vec<ClassDescriptor>> {
    spectrum.validate()?;
    let mut out = vec![ClassDescriptor { volume: vol, weight: spectrum.rank as f64, element: SemisimpleElement::identity(model) }];
    let identity_scale = vol / (2.0 * PI * t);
    for c in &spectrum.classes {
        let kmax = c.holonomy.max_power().map_or(k_max, |m| m.min(k_max));
        for k in 1..=kmax {
            let a = k as f64 * c.length;
            out.push(ClassDescriptor {
                volume: c.length * c.multiplicity as f64,
                weight: c.holonomy.trace(k).expect("trace within max_power").re,
                element: SemisimpleElement::sl2_hyperbolic(model, a)?,
            });
            let mag = c.length * c.multiplicity as f64 * (-a * a / (2.0 * t)).exp() * half_csch(0.5 * a) / (2.0 * PI * t).sqrt();
            if mag * spectrum.rank as f64 <= TAIL_REL * identity_scale {
                break;
            }
        }
    }
    Ok(out)
}

/// Geometric side of Poisson summation written as a lattice sum, used to
/// cross-check `selberg_assemble` on the circle.
pub fn circle_geometric_side(t: f64) -> Result<f64> {
    Ok(symmetric_sum(|k| (-k * k / (2.0 * t)).exp())? / (2.0 * PI * t).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::laplacian_shift;
    use crate::trace::spectrum::{ClassEntry, LengthSpectrum};

    #[test]
    fn identity_integral_matches_direct_quadrature() {
        for t in [0.3, 1.0, 3.0] {
            let s = QuadSettings { abs_tol: 1e-300, rel_tol: 1e-13, max_intervals: 4000 };
            let direct = 2.0 * integrate_tail(|r| r * (PI * r).tanh() * (-t * r * r / 2.0).exp(), 0.0, s).unwrap().value;
            assert!((direct - identity_spectral_integral(t).unwrap()).abs() < 1e-11 * direct);
        }
    }

    #[test]
    fn empty_spectrum_is_identity_term() {
        let v = surface_heat_trace(4.0 * PI, &LengthSpectrum::empty(), 1.0, 50).unwrap();
        let want = (-1.0f64 / 8.0).exp() * identity_spectral_integral(1.0).unwrap();
        assert!((v - want).abs() < 1e-15 * want);
    }

    #[test]
    fn single_geodesic_is_positive_and_smaller() {
        let spec = LengthSpectrum::new(vec![ClassEntry::primitive(2.0, 1)], 1).unwrap();
        let empty = surface_heat_trace(4.0 * PI, &LengthSpectrum::empty(), 0.5, 50).unwrap();
        let full = surface_heat_trace(4.0 * PI, &spec, 0.5, 50).unwrap();
        assert!(full > empty && full - empty < empty);
    }

    #[test]
    fn circle_assembly_is_poisson() {
        let m = LieAlgebraModel::abelian(1);
        for t in [0.1, 1.0, 10.0] {
            let cls = circle_classes(&m, t).unwrap();
            let v = selberg_assemble(&m, &cls, t, 0.0, OrbitalEvaluator::Explicit(QuadratureConfig::default())).unwrap();
            assert!((v - circle_geometric_side(t).unwrap()).abs() < 1e-14, "t={t}");
        }
        assert_eq!(selberg_assemble(&m, &[], 1.0, 0.0, OrbitalEvaluator::Explicit(QuadratureConfig::default())).unwrap(), 0.0);
    }

    #[test]
    fn sl2_assembly_matches_surface_trace() {
        let m = LieAlgebraModel::sl2();
        let spec = LengthSpectrum::new(vec![ClassEntry::primitive(1.5, 2), ClassEntry::primitive(2.2, 3)], 1).unwrap();
        let vol = 4.0 * PI;
        let t = 1.0;
        let cls = surface_classes(&m, vol, &spec, t, 50).unwrap();
        let a = selberg_assemble(&m, &cls, t, laplacian_shift(&m), OrbitalEvaluator::Explicit(QuadratureConfig::default())).unwrap();
        let b = surface_heat_trace(vol, &spec, t, 50).unwrap();
        assert!((a - b).abs() < 1e-10 * b, "{a} vs {b}");
    }
}
