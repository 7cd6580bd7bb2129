use nalgebra::{DMatrix, SVD};

use super::{LieAlgebraModel, SemisimpleElement};
use crate::error::{Error, Result};

/// Absolute singular-value cutoff used for every kernel extraction.
pub const SVD_CUTOFF: f64 = 1e-9;

/// Orthonormal bases (as coordinate columns in 𝔤) of the pieces entering the
/// explicit formula.
#[derive(Debug, Clone)]
pub struct CentralizerDecomposition {
    pub p_gamma: DMatrix<f64>,
    pub k_gamma: DMatrix<f64>,
    pub z0: DMatrix<f64>,
    pub p0: DMatrix<f64>,
    pub k0: DMatrix<f64>,
    pub z0_perp: DMatrix<f64>,
    pub p0_perp_gamma: DMatrix<f64>,
    pub k0_perp_gamma: DMatrix<f64>,
    pub p_perp_gamma: DMatrix<f64>,
    pub p: usize,
    pub q: usize,
}

impl CentralizerDecomposition {
    /// 𝔷(γ) = 𝔭(γ) ⊕ 𝔨(γ).
    pub fn z_gamma(&self) -> DMatrix<f64> {
        hcat(&self.p_gamma, &self.k_gamma)
    }

    /// 𝔷₀^⊥(γ) = 𝔭₀^⊥(γ) ⊕ 𝔨₀^⊥(γ).
    pub fn z0_perp_gamma(&self) -> DMatrix<f64> {
        hcat(&self.p0_perp_gamma, &self.k0_perp_gamma)
    }
}

pub(crate) fn hcat(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let rows = a.nrows().max(b.nrows());
    let mut out = DMatrix::zeros(rows, a.ncols() + b.ncols());
    if a.ncols() > 0 {
        out.columns_mut(0, a.ncols()).copy_from(a);
    }
    if b.ncols() > 0 {
        out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    }
    out
}

/// Orthonormal basis (columns) of {Qx : M Q x = 0} where Q has orthonormal
/// columns spanning the ambient subspace.
pub fn null_space_in(m: &DMatrix<f64>, q: &DMatrix<f64>) -> DMatrix<f64> {
    let k = q.ncols();
    if k == 0 {
        return DMatrix::zeros(q.nrows(), 0);
    }
    let mq = m * q;
    // Thin SVD yields k right singular vectors only if rows >= k.
    let rows = mq.nrows().max(k);
    let mut padded = DMatrix::zeros(rows, k);
    if mq.nrows() > 0 {
        padded.rows_mut(0, mq.nrows()).copy_from(&mq);
    }
    let svd = SVD::new(padded, false, true);
    let vt = svd.v_t.expect("requested V^T");
    let mut cols = Vec::new();
    for (idx, s) in svd.singular_values.iter().enumerate() {
        if *s < SVD_CUTOFF {
            cols.push(vt.row(idx).transpose());
        }
    }
    let mut basis = DMatrix::zeros(k, cols.len());
    for (c, v) in cols.iter().enumerate() {
        basis.set_column(c, v);
    }
    canonicalize(q * basis)
}

/// Orthogonal complement of span(U) inside span(W) (both orthonormal).
fn complement_in(u: &DMatrix<f64>, w: &DMatrix<f64>) -> DMatrix<f64> {
    if u.ncols() == 0 {
        return w.clone();
    }
    null_space_in(&u.transpose(), w)
}

/// Deterministic representative: re-orthonormalize (Gram–Schmidt after a
/// pivot-free QR) and fix signs so the largest-magnitude entry of each
/// column is positive.
fn canonicalize(mut b: DMatrix<f64>) -> DMatrix<f64> {
    if b.ncols() == 0 {
        return b;
    }
    let qr = b.clone().qr();
    b = qr.q().columns(0, b.ncols()).into_owned();
    for mut col in b.column_iter_mut() {
        let (idx, _) = col.iter().enumerate().fold((0, 0.0), |acc, (i, v)| {
            if v.abs() > acc.1 + 1e-12 {
                (i, v.abs())
            } else {
                acc
            }
        });
        if col[idx] < 0.0 {
            col.neg_mut();
        }
    }
    b
}

fn unit_block(d: usize, start: usize, len: usize) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(d, len);
    for i in 0..len {
        b[(start + i, i)] = 1.0;
    }
    b
}

fn vstack(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(a.nrows() + b.nrows(), a.ncols());
    out.rows_mut(0, a.nrows()).copy_from(a);
    out.rows_mut(a.nrows(), b.nrows()).copy_from(b);
    out
}

pub fn centralizer_decomposition(
    model: &LieAlgebraModel,
    gamma: &SemisimpleElement,
) -> Result<CentralizerDecomposition> {
    let d = model.dim();
    let m = model.dim_p;
    let a_full = model.embed_p(gamma.a.as_slice());
    let fix = (&gamma.ad_k * &a_full - &a_full).amax();
    if fix > 1e-12 {
        return Err(Error::NonCommutingData(fix));
    }
    let ad_a = model.ad(&a_full);
    let k_minus = &gamma.ad_k - DMatrix::identity(d, d);
    let both = vstack(&ad_a, &k_minus);
    let p_basis = unit_block(d, 0, m);
    let k_basis = unit_block(d, m, model.dim_k);

    let p_gamma = null_space_in(&both, &p_basis);
    let k_gamma = null_space_in(&both, &k_basis);
    let p0 = null_space_in(&ad_a, &p_basis);
    let k0 = null_space_in(&ad_a, &k_basis);
    let z0 = hcat(&p0, &k0);
    let z0_perp = hcat(&complement_in(&p0, &p_basis), &complement_in(&k0, &k_basis));
    let p0_perp_gamma = complement_in(&p_gamma, &p0);
    let k0_perp_gamma = complement_in(&k_gamma, &k0);
    let p_perp_gamma = complement_in(&p_gamma, &p_basis);
    let (p, q) = (p_gamma.ncols(), k_gamma.ncols());
    Ok(CentralizerDecomposition {
        p_gamma,
        k_gamma,
        z0,
        p0,
        k0,
        z0_perp,
        p0_perp_gamma,
        k0_perp_gamma,
        p_perp_gamma,
        p,
        q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_hyperbolic_split() {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_hyperbolic(&m, 0.7).unwrap();
        let dec = centralizer_decomposition(&m, &g).unwrap();
        assert_eq!((dec.p, dec.q), (1, 0));
        assert!((dec.p_gamma[(0, 0)].abs() - 1.0).abs() < 1e-14);
        assert_eq!(dec.z0_perp.ncols(), 2);
        // spans e2, e3
        for c in dec.z0_perp.column_iter() {
            assert!(c[0].abs() < 1e-14);
        }
    }

    #[test]
    fn sl2_identity_split() {
        let m = LieAlgebraModel::sl2();
        let dec = centralizer_decomposition(&m, &SemisimpleElement::identity(&m)).unwrap();
        assert_eq!((dec.p, dec.q), (2, 1));
        assert_eq!(dec.z0_perp.ncols(), 0);
        assert_eq!(dec.p_perp_gamma.ncols(), 0);
    }

    #[test]
    fn sl2_elliptic_split() {
        let m = LieAlgebraModel::sl2();
        let g = SemisimpleElement::sl2_elliptic(&m, 1.1).unwrap();
        let dec = centralizer_decomposition(&m, &g).unwrap();
        assert_eq!((dec.p, dec.q), (0, 1));
        assert_eq!(dec.p0_perp_gamma.ncols(), 2);
        assert_eq!(dec.k0_perp_gamma.ncols(), 0);
    }
}
