use nalgebra::DMatrix;

use super::ExteriorBasis;
use crate::error::{Error, Result};
use crate::lie::{casimir_constants, LieAlgebraModel};

/// Clifford generators on Λ(𝔤*), with the conventions
///   c(e_i) = s_i e^i∧ − i_{e_i},   ĉ(e_i) = s_i e^i∧ + i_{e_i},
/// where s_i = B(e_i, e_i) = ±1 and B(e_i, ·) = s_i e^i.
#[derive(Debug, Clone)]
pub struct CliffordModel {
    pub basis: ExteriorBasis,
    pub signature: Vec<f64>,
    pub c: Vec<DMatrix<f64>>,
    pub c_hat: Vec<DMatrix<f64>>,
}

impl CliffordModel {
    pub fn new(model: &LieAlgebraModel) -> Self {
        Self::from_signature(&model.form_signature)
    }

    pub fn from_signature(signature: &[f64]) -> Self {
        let basis = ExteriorBasis::new(signature.len());
        let mut c = Vec::new();
        let mut c_hat = Vec::new();
        for (i, s) in signature.iter().enumerate() {
            let e = basis.ext(i) * *s;
            let int = basis.int(i);
            c.push(&e - &int);
            c_hat.push(&e + &int);
        }
        CliffordModel { basis, signature: signature.to_vec(), c, c_hat }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// ĉ(e_i*) with the B-dual basis e_i* = s_i e_i.
    pub fn c_hat_dual(&self, i: usize) -> DMatrix<f64> {
        &self.c_hat[i] * self.signature[i]
    }

    /// Max residual of [c(u),c(v)] = −2B(u,v), [ĉ(u),ĉ(v)] = 2B(u,v), [c(u),ĉ(v)] = 0
    /// (all brackets are anticommutators of odd operators).
    pub fn relations_residual(&self) -> f64 {
        let n = self.signature.len();
        let d = self.dim();
        let id = DMatrix::<f64>::identity(d, d);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let b = if i == j { self.signature[i] } else { 0.0 };
                let cc = &self.c[i] * &self.c[j] + &self.c[j] * &self.c[i] + &id * (2.0 * b);
                let hh = &self.c_hat[i] * &self.c_hat[j] + &self.c_hat[j] * &self.c_hat[i] - &id * (2.0 * b);
                let ch = &self.c[i] * &self.c_hat[j] + &self.c_hat[j] * &self.c[i];
                worst = worst.max(cc.amax()).max(hh.amax()).max(ch.amax());
            }
        }
        worst
    }

    /// ĉ(κ^𝔤) = (1/6) Σ κ(e_i*, e_j*, e_k*) ĉ(e_i) ĉ(e_j) ĉ(e_k), κ(a,b,c) = B([a,b],c).
    pub fn c_hat_kappa(&self, model: &LieAlgebraModel) -> DMatrix<f64> {
        let n = model.dim();
        let d = self.dim();
        let s = &model.form_signature;
        let mut out = DMatrix::zeros(d, d);
        for i in 0..n {
            for j in 0..n {
                let ij = &self.c_hat[i] * &self.c_hat[j];
                for k in 0..n {
                    // κ(e_i*, e_j*, e_k*) = s_i s_j s_k · c_ijk s_k
                    let kap = s[i] * s[j] * model.c(i, j, k);
                    if kap != 0.0 {
                        out += &ij * &self.c_hat[k] * (kap / 6.0);
                    }
                }
            }
        }
        out
    }
}

fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

fn check_rep(model: &LieAlgebraModel, rep: &[DMatrix<f64>]) -> Result<usize> {
    let n = model.dim();
    if rep.len() != n {
        return Err(Error::InvalidRepresentation(format!("need {n} matrices, got {}", rep.len())));
    }
    let e = rep[0].nrows();
    if rep.iter().any(|r| r.nrows() != e || r.ncols() != e) {
        return Err(Error::InvalidRepresentation("matrices must share a square shape".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let mut lhs = DMatrix::zeros(e, e);
            for l in 0..n {
                lhs += &rep[l] * model.c(i, j, l);
            }
            let rhs = &rep[i] * &rep[j] - &rep[j] * &rep[i];
            let r = (lhs - rhs).amax();
            if r > 1e-12 {
                return Err(Error::InvalidRepresentation(format!(
                    "rho([e{},e{}]) != [rho(e{}),rho(e{})] (residual {r:.3e})",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(e)
}

/// D̂ = Σ ĉ(e_i*) ⊗ ρ(e_i) − ½ ĉ(κ^𝔤) ⊗ 1 on Λ(𝔤*) ⊗ E.
pub fn kostant_dirac(model: &LieAlgebraModel, rep: &[DMatrix<f64>]) -> Result<DMatrix<f64>> {
    let e = check_rep(model, rep)?;
    let cl = CliffordModel::new(model);
    let mut d_hat = kron(&cl.c_hat_kappa(model), &DMatrix::identity(e, e)) * -0.5;
    for (i, r) in rep.iter().enumerate() {
        d_hat += kron(&cl.c_hat_dual(i), r);
    }
    Ok(d_hat)
}

#[derive(Debug, Clone, Copy)]
pub struct KostantReport {
    pub residual: f64,
    /// −(1/8) tr^𝔭[C^{𝔨,𝔭}] − (1/24) tr^𝔨[C^{𝔨,𝔨}]
    pub scalar: f64,
    pub dim: usize,
}

/// ‖D̂² − (−C^{𝔤,E} − (1/8)tr^𝔭[C^{𝔨,𝔭}] − (1/24)tr^𝔨[C^{𝔨,𝔨}]) ⊗ 1‖_max
/// with C^{𝔤,E} = −Σ_{i≤m} ρ(e_i)² + Σ_{i>m} ρ(e_i)².
pub fn kostant_dirac_residual(model: &LieAlgebraModel, rep: &[DMatrix<f64>]) -> Result<KostantReport> {
    let d_hat = kostant_dirac(model, rep)?;
    let e = rep[0].nrows();
    let mut casimir = DMatrix::zeros(e, e);
    for (i, r) in rep.iter().enumerate() {
        let sq = r * r;
        if model.is_p(i) {
            casimir -= sq;
        } else {
            casimir += sq;
        }
    }
    let (tr_p, tr_k) = casimir_constants(model);
    let scalar = -tr_p / 8.0 - tr_k / 24.0;
    let lam = 1usize << model.dim();
    let rhs = kron(&DMatrix::identity(lam, lam), &(-casimir + DMatrix::identity(e, e) * scalar));
    let residual = (&d_hat * &d_hat - rhs).amax();
    Ok(KostantReport { residual, scalar, dim: d_hat.nrows() })
}

/// Adjoint representation ρ(e_i) = ad(e_i).
pub fn adjoint_rep(model: &LieAlgebraModel) -> Vec<DMatrix<f64>> {
    (0..model.dim()).map(|i| model.ad_basis(i)).collect()
}

/// One-dimensional trivial representation.
pub fn trivial_rep(model: &LieAlgebraModel) -> Vec<DMatrix<f64>> {
    vec![DMatrix::zeros(1, 1); model.dim()]
}

impl KostantReport {
    pub fn for_adjoint(model: &LieAlgebraModel) -> Result<Self> {
        kostant_dirac_residual(model, &adjoint_rep(model))
    }

    pub fn for_trivial(model: &LieAlgebraModel) -> Result<Self> {
        kostant_dirac_residual(model, &trivial_rep(model))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_adjoint_and_trivial() {
        let m = LieAlgebraModel::sl2();
        let adj = KostantReport::for_adjoint(&m).unwrap();
        assert_eq!(adj.dim, 24);
        assert!(adj.residual < 1e-11, "{}", adj.residual);
        assert_eq!(adj.scalar, 0.25);
        let triv = KostantReport::for_trivial(&m).unwrap();
        assert_eq!(triv.dim, 8);
        assert!(triv.residual < 1e-11);
    }

    #[test]
    fn abelian_square_is_minus_casimir() {
        let m = LieAlgebraModel::abelian(2);
        let cl = CliffordModel::new(&m);
        assert_eq!(cl.c_hat_kappa(&m).amax(), 0.0);
        // a genuine (commuting) representation of ℝ²
        let r1 = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let r2 = DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 2.0]);
        let rep = kostant_dirac_residual(&m, &[r1, r2]).unwrap();
        assert!(rep.residual < 1e-14);
        assert_eq!(rep.scalar, 0.0);
    }

    #[test]
    fn clifford_relations_hold() {
        let cl = CliffordModel::new(&LieAlgebraModel::sl2());
        assert!(cl.relations_residual() < 1e-13);
    }

    #[test]
    fn bad_representation_rejected() {
        let m = LieAlgebraModel::sl2();
        let mut rep = adjoint_rep(&m);
        rep[0] *= 2.0;
        assert!(matches!(kostant_dirac_residual(&m, &rep), Err(Error::InvalidRepresentation(_))));
    }
}
