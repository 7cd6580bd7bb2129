use nalgebra::{DMatrix, DVector};

use super::LieAlgebraModel;
use crate::error::{Error, Result};

const ELEM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Identity,
    Hyperbolic,
    Elliptic,
    Mixed,
}

impl std::fmt::Display for ElementKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ElementKind::Identity => "identity",
            ElementKind::Hyperbolic => "hyperbolic",
            ElementKind::Elliptic => "elliptic",
            ElementKind::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

/// γ = e^a k^{-1} with a ∈ 𝔭, Ad(k)a = a. Only Ad(k) is stored.
#[derive(Debug, Clone)]
pub struct SemisimpleElement {
    /// Coordinates of a in 𝔭 (length m).
    pub a: DVector<f64>,
    /// Ad(k) on 𝔤.
    pub ad_k: DMatrix<f64>,
    pub kind: ElementKind,
}

impl SemisimpleElement {
    /// Validates the invariants and classifies the element.
    pub fn new(model: &LieAlgebraModel, a: DVector<f64>, ad_k: DMatrix<f64>) -> Result<Self> {
        let d = model.dim();
        let m = model.dim_p;
        if a.len() != m || ad_k.nrows() != d || ad_k.ncols() != d {
            return Err(Error::InvalidInput(format!(
                "element shapes: |a|={} (want {m}), Ad(k) {}x{} (want {d}x{d})",
                a.len(),
                ad_k.nrows(),
                ad_k.ncols()
            )));
        }
        let s = model.form_matrix();
        let iso = (ad_k.transpose() * &s * &ad_k - &s).amax();
        if iso > 1e-10 {
            return Err(Error::InvalidInput(format!("Ad(k) does not preserve B (residual {iso:.3e})")));
        }
        for i in 0..d {
            for j in 0..d {
                if model.is_p(i) != model.is_p(j) && ad_k[(i, j)].abs() > 1e-10 {
                    return Err(Error::InvalidInput("Ad(k) mixes p and k".into()));
                }
            }
        }
        let a_full = model.embed_p(a.as_slice());
        let fix = (&ad_k * &a_full - &a_full).amax();
        if fix > ELEM_TOL {
            return Err(Error::NonCommutingData(fix));
        }
        let a_zero = a.amax() <= ELEM_TOL;
        let k_one = (&ad_k - DMatrix::identity(d, d)).amax() <= ELEM_TOL;
        let kind = match (a_zero, k_one) {
            (true, true) => ElementKind::Identity,
            (false, true) => ElementKind::Hyperbolic,
            (true, false) => ElementKind::Elliptic,
            (false, false) => ElementKind::Mixed,
        };
        Ok(SemisimpleElement { a, ad_k, kind })
    }

    pub fn identity(model: &LieAlgebraModel) -> Self {
        let d = model.dim();
        SemisimpleElement {
            a: DVector::zeros(model.dim_p),
            ad_k: DMatrix::identity(d, d),
            kind: ElementKind::Identity,
        }
    }

    /// γ = e^a with k = 1.
    pub fn translation(model: &LieAlgebraModel, a: &[f64]) -> Result<Self> {
        let d = model.dim();
        Self::new(model, DVector::from_column_slice(a), DMatrix::identity(d, d))
    }

    /// γ = e^a k^{-1} with k = exp(Y), Y ∈ 𝔨 given in 𝔨-coordinates.
    pub fn from_k_generator(model: &LieAlgebraModel, a: &[f64], y: &[f64]) -> Result<Self> {
        if y.len() != model.dim_k {
            return Err(Error::InvalidInput(format!("k-generator needs {} coordinates", model.dim_k)));
        }
        let ad_k = model.ad(&model.embed_k(y)).exp();
        Self::new(model, DVector::from_column_slice(a), ad_k)
    }

    /// 𝔰𝔩₂ elliptic element with Ad(k) = exp(φ ad e3), a rotation of 𝔭 by φ.
    pub fn sl2_elliptic(model: &LieAlgebraModel, phi: f64) -> Result<Self> {
        if model.dim_p != 2 || model.dim_k != 1 {
            return Err(Error::InvalidInput("sl2_elliptic needs an sl2-shaped model".into()));
        }
        Self::from_k_generator(model, &[0.0, 0.0], &[phi])
    }

    /// 𝔰𝔩₂ hyperbolic element e^{α e1}.
    pub fn sl2_hyperbolic(model: &LieAlgebraModel, alpha: f64) -> Result<Self> {
        if model.dim_p != 2 {
            return Err(Error::InvalidInput("sl2_hyperbolic needs dim p = 2".into()));
        }
        Self::translation(model, &[alpha, 0.0])
    }

    pub fn a_norm(&self) -> f64 {
        self.a.norm()
    }

    /// Ad(γ) = exp(ad a) · Ad(k)^{-1}.
    pub fn ad_gamma(&self, model: &LieAlgebraModel) -> DMatrix<f64> {
        let ea = model.ad(&model.embed_p(self.a.as_slice())).exp();
        ea * self.ad_k.transpose()
    }

    /// Rotation angle of Ad(k) on 𝔭 for 𝔰𝔩₂-shaped models, in (−π, π].
    pub fn sl2_angle(&self) -> f64 {
        (-self.ad_k[(1, 0)]).atan2(self.ad_k[(0, 0)])
    }

    /// Same element with a ↦ −a.
    pub fn with_negated_a(&self) -> Self {
        SemisimpleElement { a: -&self.a, ad_k: self.ad_k.clone(), kind: self.kind }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        let m = LieAlgebraModel::sl2();
        assert_eq!(SemisimpleElement::identity(&m).kind, ElementKind::Identity);
        assert_eq!(SemisimpleElement::sl2_hyperbolic(&m, 1.0).unwrap().kind, ElementKind::Hyperbolic);
        let e = SemisimpleElement::sl2_elliptic(&m, 1.2).unwrap();
        assert_eq!(e.kind, ElementKind::Elliptic);
        assert!((e.sl2_angle() - 1.2).abs() < 1e-14);
    }

    #[test]
    fn non_commuting_pair_rejected() {
        let m = LieAlgebraModel::sl2();
        let err = SemisimpleElement::from_k_generator(&m, &[1.0, 0.0], &[0.4]).unwrap_err();
        assert!(matches!(err, Error::NonCommutingData(_)));
    }

    #[test]
    fn rotation_by_pi_fixes_nothing_but_zero() {
        let m = LieAlgebraModel::sl2();
        let e = SemisimpleElement::sl2_elliptic(&m, std::f64::consts::PI).unwrap();
        assert!((e.ad_k[(0, 0)] + 1.0).abs() < 1e-14);
    }
}
