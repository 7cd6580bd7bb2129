use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// exp(c + lᵀz − ½ zᵀQz) on ℝᵏ.
#[derive(Debug, Clone)]
pub struct GaussianForm {
    pub q: DMatrix<f64>,
    pub l: DVector<f64>,
    pub c: f64,
}

impl GaussianForm {
    pub fn new(q: DMatrix<f64>, l: DVector<f64>, c: f64) -> Self {
        GaussianForm { q, l, c }
    }

    pub fn dim(&self) -> usize {
        self.l.len()
    }

    pub fn log_eval(&self, z: &[f64]) -> f64 {
        let z = DVector::from_column_slice(z);
        self.c + self.l.dot(&z) - 0.5 * z.dot(&(&self.q * &z))
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        self.log_eval(z).exp()
    }

    /// Pull back along the affine map z = A w + z0.
    pub fn substitute(&self, a: &DMatrix<f64>, z0: &DVector<f64>) -> Self {
        let qz0 = &self.q * z0;
        GaussianForm {
            q: a.transpose() * &self.q * a,
            l: a.transpose() * (&self.l - &qz0),
            c: self.c + self.l.dot(z0) - 0.5 * z0.dot(&qz0),
        }
    }

    /// Product of two forms on the same variables.
    pub fn times(&self, other: &GaussianForm) -> Self {
        GaussianForm { q: &self.q + &other.q, l: &self.l + &other.l, c: self.c + other.c }
    }

    /// ∫ over the listed coordinates; the rest keep their order.
    pub fn integrate_out(&self, drop: &[usize]) -> Result<Self> {
        let k = self.dim();
        let keep: Vec<usize> = (0..k).filter(|i| !drop.contains(i)).collect();
        let s = drop.len();
        let qss = DMatrix::from_fn(s, s, |i, j| self.q[(drop[i], drop[j])]);
        let qrs = DMatrix::from_fn(keep.len(), s, |i, j| self.q[(keep[i], drop[j])]);
        let qrr = DMatrix::from_fn(keep.len(), keep.len(), |i, j| self.q[(keep[i], keep[j])]);
        let ls = DVector::from_fn(s, |i, _| self.l[drop[i]]);
        let lr = DVector::from_fn(keep.len(), |i, _| self.l[keep[i]]);
        let chol = qss
            .clone()
            .cholesky()
            .ok_or_else(|| Error::InvalidInput("Gaussian integral diverges (form not positive definite)".into()))?;
        let inv_ls = chol.solve(&ls);
        let inv_qsr = chol.solve(&qrs.transpose());
        let log_det: f64 = chol.l().diagonal().iter().map(|d| 2.0 * d.ln()).sum();
        Ok(GaussianForm {
            q: &qrr - &qrs * &inv_qsr,
            l: &lr - &qrs * &inv_ls,
            c: self.c + 0.5 * ls.dot(&inv_ls) + 0.5 * s as f64 * (2.0 * std::f64::consts::PI).ln() - 0.5 * log_det,
        })
    }

    /// Total integral (log) over all variables.
    pub fn log_total(&self) -> Result<f64> {
        let all: Vec<usize> = (0..self.dim()).collect();
        Ok(self.integrate_out(&all)?.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_normal_mass() {
        let g = GaussianForm::new(DMatrix::identity(2, 2), DVector::zeros(2), -(2.0 * std::f64::consts::PI).ln());
        assert!(g.log_total().unwrap().abs() < 1e-15);
    }

    #[test]
    fn marginal_of_correlated_pair() {
        // covariance [[2, 1], [1, 1]] → precision [[1, -1], [-1, 2]]
        let q = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 2.0]);
        let g = GaussianForm::new(q, DVector::zeros(2), 0.0);
        let m = g.integrate_out(&[1]).unwrap();
        assert!((m.q[(0, 0)] - 0.5).abs() < 1e-15);
    }
}
