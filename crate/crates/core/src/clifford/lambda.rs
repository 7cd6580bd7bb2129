use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ExteriorBasis;
use crate::error::{Error, Result};

/// Matrix of Λ•M on Λ•(ℝⁿ): entry (J, I) is the minor det M[J, I] when
/// |I| = |J|, in the lexicographic subset order of [`ExteriorBasis`].
pub fn induced_exterior_map(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let basis = ExteriorBasis::new(n);
    let d = basis.len();
    let idx = |mask: u32| -> Vec<usize> { (0..n).filter(|i| mask & (1 << i) != 0).collect() };
    let mut out = DMatrix::zeros(d, d);
    for (c, &mi) in basis.masks.iter().enumerate() {
        let cols = idx(mi);
        for (r, &mj) in basis.masks.iter().enumerate() {
            if mj.count_ones() != mi.count_ones() {
                continue;
            }
            let rows = idx(mj);
            let k = rows.len();
            out[(r, c)] = if k == 0 {
                1.0
            } else {
                DMatrix::from_fn(k, k, |a, b| m[(rows[a], cols[b])]).determinant()
            };
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct LambdaIdentity {
    /// tr_s of the induced action of u on Λ•(𝔭*).
    pub lhs: f64,
    /// det(1 − u^{-1}).
    pub rhs: f64,
    /// tr_s[N^Λ u].
    pub lhs_n: f64,
    /// ∂/∂s det(1 − u^{-1} e^s) at s = 0.
    pub rhs_n: f64,
}

impl LambdaIdentity {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs().max((self.lhs_n - self.rhs_n).abs())
    }
}

/// Compares the Λ-supertrace of u (acting on forms by (u^{-1})ᵀ) with
/// det(1 − u^{-1}), together with the number-operator weighted variant.
pub fn lambda_supertrace_identity(u: &DMatrix<f64>) -> Result<LambdaIdentity> {
    let n = u.nrows();
    if n == 0 || u.ncols() != n {
        return Err(Error::InvalidInput("u must be a non-empty square matrix".into()));
    }
    let scale = u.amax().max(1.0);
    let det = u.determinant();
    if det.abs() < 1e-14 * scale.powi(n as i32) {
        return Err(Error::SingularInput(format!("det u = {det:.3e}")));
    }
    let u_inv = u.clone().try_inverse().ok_or_else(|| Error::SingularInput("u not invertible".into()))?;
    let induced = induced_exterior_map(&u_inv.transpose());
    let basis = ExteriorBasis::new(n);
    let mut lhs = 0.0;
    let mut lhs_n = 0.0;
    for i in 0..basis.len() {
        let k = basis.degree(i);
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        lhs += sign * induced[(i, i)];
        lhs_n += sign * k as f64 * induced[(i, i)];
    }
    let rhs = (DMatrix::identity(n, n) - &u_inv).determinant();
    let mu: Vec<Complex64> = u_inv.complex_eigenvalues().iter().copied().collect();
    let one = Complex64::new(1.0, 0.0);
    let mut rhs_n = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let mut term = -mu[i];
        for (j, m) in mu.iter().enumerate() {
            if j != i {
                term *= one - m;
            }
        }
        rhs_n += term;
    }
    Ok(LambdaIdentity { lhs, rhs, lhs_n, rhs_n: rhs_n.re })
}
