use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Tolerance for the structural checks (Jacobi, grading, invariance).
const STRUCT_TOL: f64 = 1e-12;

/// Finite-dimensional reductive Lie algebra on a basis e_1..e_{m+n} where the
/// first `dim_p` vectors span 𝔭 and the rest span 𝔨. The invariant form is
/// diagonal with entries `form_signature` (+1 on 𝔭, −1 on 𝔨), so the basis is
/// orthonormal for ⟨u,v⟩ = −B(u, θv), which is the Euclidean dot product on
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraModel {
    pub label: String,
    pub dim_p: usize,
    pub dim_k: usize,
    /// c[(i*d + j)*d + l] with [e_i, e_j] = Σ_l c_ijl e_l.
    structure: Vec<f64>,
    pub form_signature: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ModelResiduals {
    pub antisymmetry: f64,
    pub jacobi: f64,
    pub grading: f64,
    pub invariance: f64,
}

impl ModelResiduals {
    pub fn max(&self) -> f64 {
        self.antisymmetry.max(self.jacobi).max(self.grading).max(self.invariance)
    }
}

impl LieAlgebraModel {
    /// Builds a model from a list of brackets `[e_i, e_j] ∋ value · e_l`
    /// (0-based). Antisymmetric partners are filled in automatically; an
    /// explicitly given partner must agree.
    pub fn from_brackets(
        label: impl Into<String>,
        dim_p: usize,
        dim_k: usize,
        brackets: &[(usize, usize, usize, f64)],
    ) -> Result<Self> {
        let d = dim_p + dim_k;
        if d == 0 {
            return Err(Error::InvalidModel("empty algebra".into()));
        }
        let mut structure = vec![0.0; d * d * d];
        let mut seen = vec![false; d * d * d];
        for &(i, j, l, v) in brackets {
            if i >= d || j >= d || l >= d {
                return Err(Error::InvalidModel(format!("bracket index out of range: ({i},{j},{l})")));
            }
            if i == j && v != 0.0 {
                return Err(Error::InvalidModel(format!("[e{0},e{0}] must vanish", i + 1)));
            }
            let ij = (i * d + j) * d + l;
            let ji = (j * d + i) * d + l;
            for (idx, val) in [(ij, v), (ji, -v)] {
                if seen[idx] && (structure[idx] - val).abs() > STRUCT_TOL {
                    return Err(Error::InvalidModel(format!(
                        "inconsistent bracket data at ({},{},{})",
                        i + 1,
                        j + 1,
                        l + 1
                    )));
                }
                structure[idx] = val;
                seen[idx] = true;
            }
        }
        let mut form_signature = vec![1.0; dim_p];
        form_signature.extend(std::iter::repeat_n(-1.0, dim_k));
        let model = LieAlgebraModel { label: label.into(), dim_p, dim_k, structure, form_signature };
        let res = model.residuals();
        if res.max() > STRUCT_TOL {
            return Err(Error::InvalidModel(format!(
                "structure check failed (antisym {:.1e}, jacobi {:.1e}, grading {:.1e}, invariance {:.1e})",
                res.antisymmetry, res.jacobi, res.grading, res.invariance
            )));
        }
        Ok(model)
    }

    /// 𝔰𝔩₂(ℝ) with [e1,e2]=e3, [e2,e3]=−e1, [e3,e1]=−e2.
    pub fn sl2() -> Self {
        Self::sl2_scaled(1.0)
    }

    /// 𝔰𝔩₂ with all brackets multiplied by `s` (still a Lie algebra).
    pub fn sl2_scaled(s: f64) -> Self {
        let label = if s == 1.0 { "sl2".to_string() } else { format!("sl2x{s}") };
        Self::from_brackets(label, 2, 1, &[(0, 1, 2, s), (1, 2, 0, -s), (2, 0, 1, -s)])
            .expect("sl2 data is valid")
    }

    /// Flat ℝ^m with K trivial.
    pub fn abelian(m: usize) -> Self {
        assert!(m >= 1, "abelian model needs m >= 1");
        Self::from_brackets(format!("abelian{m}"), m, 0, &[]).expect("abelian data is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim_p + self.dim_k
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, l: usize) -> f64 {
        let d = self.dim();
        self.structure[(i * d + j) * d + l]
    }

    pub fn is_p(&self, i: usize) -> bool {
        i < self.dim_p
    }

    pub fn bracket(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        self.ad(u) * v
    }

    /// Matrix of ad(u): column j holds [u, e_j].
    pub fn ad(&self, u: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                for l in 0..d {
                    m[(l, j)] += u[i] * self.c(i, j, l);
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> DMatrix<f64> {
        let mut u = DVector::zeros(self.dim());
        u[i] = 1.0;
        self.ad(&u)
    }

    /// B(u, v) = Σ s_i u_i v_i.
    pub fn form(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        (0..self.dim()).map(|i| self.form_signature[i] * u[i] * v[i]).sum()
    }

    pub fn form_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(&self.form_signature))
    }

    /// Embeds 𝔭-coordinates (length m) into 𝔤.
    pub fn embed_p(&self, a: &[f64]) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        for (i, x) in a.iter().enumerate() {
            v[i] = *x;
        }
        v
    }

    /// Embeds 𝔨-coordinates (length n) into 𝔤.
    pub fn embed_k(&self, y: &[f64]) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        for (i, x) in y.iter().enumerate() {
            v[self.dim_p + i] = *x;
        }
        v
    }

    pub fn residuals(&self) -> ModelResiduals {
        let d = self.dim();
        let mut r = ModelResiduals::default();
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    r.antisymmetry = r.antisymmetry.max((self.c(i, j, l) + self.c(j, i, l)).abs());
                    let c = self.c(i, j, l);
                    if c != 0.0 {
                        // [𝔭,𝔭]⊂𝔨, [𝔨,𝔨]⊂𝔨, [𝔭,𝔨]⊂𝔭: the output lies in 𝔭 iff exactly one input does.
                        let want_p = self.is_p(i) != self.is_p(j);
                        if self.is_p(l) != want_p {
                            r.grading = r.grading.max(c.abs());
                        }
                    }
                    // B([e_i,e_j],e_l) + B(e_j,[e_i,e_l]) = c_ijl s_l + c_ilj s_j
                    let inv = self.c(i, j, l) * self.form_signature[l] + self.c(i, l, j) * self.form_signature[j];
                    r.invariance = r.invariance.max(inv.abs());
                }
            }
        }
        // Jacobi: [e_i,[e_j,e_k]] + cyclic = 0
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for out in 0..d {
                        let mut s = 0.0;
                        for m in 0..d {
                            s += self.c(j, k, m) * self.c(i, m, out)
                                + self.c(k, i, m) * self.c(j, m, out)
                                + self.c(i, j, m) * self.c(k, m, out);
                        }
                        r.jacobi = r.jacobi.max(s.abs());
                    }
                }
            }
        }
        r
    }

    pub fn validate(&self) -> Result<ModelResiduals> {
        let r = self.residuals();
        if r.max() > STRUCT_TOL {
            return Err(Error::InvalidModel(format!("residual {:.3e}", r.max())));
        }
        Ok(r)
    }

    /// Raw structure-constant list (0-based, nonzero entries with i < j).
    pub fn brackets(&self) -> Vec<(usize, usize, usize, f64)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for l in 0..d {
                    let c = self.c(i, j, l);
                    if c != 0.0 {
                        out.push((i, j, l, c));
                    }
                }
            }
        }
        out
    }

    /// Model obtained by the orthogonal change of basis e'_i = Σ_j o[(j,i)] e_j
    /// with `o` block-diagonal on 𝔭 ⊕ 𝔨.
    pub fn change_basis(&self, o: &DMatrix<f64>) -> Result<Self> {
        let d = self.dim();
        if o.nrows() != d || o.ncols() != d {
            return Err(Error::InvalidInput("basis change has wrong shape".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if self.is_p(i) != self.is_p(j) && o[(i, j)].abs() > 1e-14 {
                    return Err(Error::InvalidInput("basis change mixes p and k".into()));
                }
            }
        }
        let ot = o.transpose();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let v = self.bracket(&o.column(i).into_owned(), &o.column(j).into_owned());
                let coords = &ot * v;
                for l in 0..d {
                    if coords[l].abs() > 1e-15 {
                        brackets.push((i, j, l, coords[l]));
                    }
                }
            }
        }
        let mut m = LieAlgebraModel {
            label: format!("{}'", self.label),
            dim_p: self.dim_p,
            dim_k: self.dim_k,
            structure: vec![0.0; d * d * d],
            form_signature: self.form_signature.clone(),
        };
        for (i, j, l, v) in brackets {
            m.structure[(i * d + j) * d + l] = v;
            m.structure[(j * d + i) * d + l] = -v;
        }
        Ok(m)
    }
}

/// (tr^𝔭[C^{𝔨,𝔭}], tr^𝔨[C^{𝔨,𝔨}]) with C^{𝔨,V} = Σ_{i>m} ad(e_i)|_V².
/// For 𝔰𝔩₂ this is (−2, 0).
pub fn casimir_constants(model: &LieAlgebraModel) -> (f64, f64) {
    let m = model.dim_p;
    let d = model.dim();
    let mut tr_p = 0.0;
    let mut tr_k = 0.0;
    for i in m..d {
        let ad = model.ad_basis(i);
        let sq = &ad * &ad;
        for r in 0..d {
            if r < m {
                tr_p += sq[(r, r)];
            } else {
                tr_k += sq[(r, r)];
            }
        }
    }
    (tr_p, tr_k)
}

/// Scalar A for which the explicit orbital formula evaluates the orbital
/// integral of e^{tΔ/2} on functions: −tr_p/16 − tr_k/48 (1/8 for 𝔰𝔩₂).
pub fn laplacian_shift(model: &LieAlgebraModel) -> f64 {
    let (tp, tk) = casimir_constants(model);
    -tp / 16.0 - tk / 48.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_brackets_and_signature() {
        let m = LieAlgebraModel::sl2();
        assert_eq!(m.c(0, 1, 2), 1.0);
        assert_eq!(m.c(1, 2, 0), -1.0);
        assert_eq!(m.c(2, 0, 1), -1.0);
        assert_eq!(m.form_signature, vec![1.0, 1.0, -1.0]);
        assert_eq!(m.residuals().jacobi, 0.0);
    }

    #[test]
    fn casimirs() {
        assert_eq!(casimir_constants(&LieAlgebraModel::sl2()), (-2.0, 0.0));
        assert_eq!(casimir_constants(&LieAlgebraModel::abelian(1)), (0.0, 0.0));
        assert_eq!(laplacian_shift(&LieAlgebraModel::sl2()), 0.125);
    }

    #[test]
    fn doubled_brackets_casimir_matches_brute_force() {
        let m = LieAlgebraModel::sl2_scaled(2.0);
        // brute force: −Σ_{i≤m} Σ_{j>m} |[e_j,e_i]|²
        let mut brute = 0.0;
        for i in 0..m.dim_p {
            for j in m.dim_p..m.dim() {
                for l in 0..m.dim() {
                    brute -= m.c(j, i, l).powi(2);
                }
            }
        }
        assert_eq!(casimir_constants(&m).0, brute);
        assert_eq!(brute, -8.0);
    }

    #[test]
    fn rejects_non_jacobi_data() {
        // 𝔭 = span(e1,e2), 𝔨 = span(e3): a grading-violating bracket
        let bad = LieAlgebraModel::from_brackets("bad", 2, 1, &[(0, 1, 0, 1.0)]);
        assert!(bad.is_err());
    }

    #[test]
    fn inconsistent_partner_rejected() {
        let bad = LieAlgebraModel::from_brackets("bad", 2, 1, &[(0, 1, 2, 1.0), (1, 0, 2, 1.0)]);
        assert!(bad.is_err());
    }
}
