//! Koszul/de Rham complex on Λ(V*) ⊗ S(V*) truncated at polynomial degree D.
//!
//! The polynomial factor uses the Fock normalisation ‖Y^α‖² = α!, i.e. the
//! orthonormal vectors Y^α/√α!. In that basis multiplication by Y_j is the
//! raising operator a_j† and ∂/∂Y_j is the lowering operator a_j. After the
//! Bargmann transform the same vectors are the Hermite functions, on which
//! Y_j = (a_j + a_j†)/√2 and ∂_j = (a_j − a_j†)/√2, so
//!   d̄ = (1/√2) Σ e^j ∧ (∂_j + Y_j),   d̄* = (1/√2) Σ i_{e_j} (−∂_j + Y_j).

use nalgebra::{DMatrix, SymmetricEigen};

use super::ExteriorBasis;

/// All multi-indices α ∈ ℕⁿ with |α| ≤ D, graded then lexicographic.
#[derive(Debug, Clone)]
pub struct MultiIndexSet {
    pub n: usize,
    pub cap: usize,
    pub items: Vec<Vec<u32>>,
    lookup: std::collections::HashMap<Vec<u32>, usize>,
}

impl MultiIndexSet {
    pub fn new(n: usize, cap: usize) -> Self {
        let mut items = Vec::new();
        for deg in 0..=cap {
            let mut cur = vec![0u32; n];
            fill(&mut items, &mut cur, 0, deg as u32);
        }
        let lookup = items.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        MultiIndexSet { n, cap, items, lookup }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn index(&self, alpha: &[u32]) -> Option<usize> {
        self.lookup.get(alpha).copied()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.items[i].iter().sum::<u32>() as usize
    }

    /// Lowering operator a_j: a|α⟩ = √α_j |α − e_j⟩.
    pub fn lower(&self, j: usize) -> DMatrix<f64> {
        let d = self.len();
        let mut m = DMatrix::zeros(d, d);
        for (c, a) in self.items.iter().enumerate() {
            if a[j] > 0 {
                let mut b = a.clone();
                b[j] -= 1;
                m[(self.index(&b).unwrap(), c)] = (a[j] as f64).sqrt();
            }
        }
        m
    }

    /// Raising operator a_j†, truncated at the degree cap.
    pub fn raise(&self, j: usize) -> DMatrix<f64> {
        self.lower(j).transpose()
    }
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        fill(out, cur, pos + 1, left - k);
    }
    cur[pos] = 0;
}

#[derive(Debug, Clone)]
pub struct TruncatedWeylComplex {
    pub n: usize,
    pub cap: usize,
    pub lambda: ExteriorBasis,
    pub poly: MultiIndexSet,
    pub d_bar: DMatrix<f64>,
    pub d_bar_star: DMatrix<f64>,
    pub laplacian: DMatrix<f64>,
    pub y_squared: DMatrix<f64>,
    pub n_lambda: DMatrix<f64>,
    pub n_s: DMatrix<f64>,
}

impl TruncatedWeylComplex {
    /// Basis order: Λ index major, polynomial index minor.
    pub fn new(n: usize, cap: usize) -> Self {
        let lambda = ExteriorBasis::new(n);
        let poly = MultiIndexSet::new(n, cap);
        let (dl, dp) = (lambda.len(), poly.len());
        let il = DMatrix::<f64>::identity(dl, dl);
        let ip = DMatrix::<f64>::identity(dp, dp);
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        let mut d_bar = DMatrix::zeros(dl * dp, dl * dp);
        let mut d_bar_star = DMatrix::zeros(dl * dp, dl * dp);
        let mut lap = DMatrix::zeros(dp, dp);
        let mut ysq = DMatrix::zeros(dp, dp);
        for j in 0..n {
            let (a, ad) = (poly.lower(j), poly.raise(j));
            let y = (&a + &ad) * r2;
            let dy = (&a - &ad) * r2;
            d_bar += lambda.ext(j).kronecker(&((&dy + &y) * r2));
            d_bar_star += lambda.int(j).kronecker(&((&y - &dy) * r2));
            lap += &dy * &dy;
            ysq += &y * &y;
        }
        let n_s = DMatrix::from_fn(dp, dp, |r, c| if r == c { poly.degree(r) as f64 } else { 0.0 });
        TruncatedWeylComplex {
            n,
            cap,
            n_lambda: lambda.number().kronecker(&ip),
            laplacian: il.kronecker(&lap),
            y_squared: il.kronecker(&ysq),
            n_s: il.kronecker(&n_s),
            lambda,
            poly,
            d_bar,
            d_bar_star,
        }
    }

    pub fn dim(&self) -> usize {
        self.d_bar.nrows()
    }

    pub fn s_degree(&self, idx: usize) -> usize {
        self.poly.degree(idx % self.poly.len())
    }

    /// [d̄, d̄*] = d̄d̄* + d̄*d̄.
    pub fn laplacian_bracket(&self) -> DMatrix<f64> {
        &self.d_bar * &self.d_bar_star + &self.d_bar_star * &self.d_bar
    }

    /// ½(−Δ^V + |Y|² − n) + N^Λ.
    pub fn oscillator(&self) -> DMatrix<f64> {
        let id = DMatrix::<f64>::identity(self.dim(), self.dim());
        (-&self.laplacian + &self.y_squared - id * self.n as f64) * 0.5 + &self.n_lambda
    }

    /// Indices with S-degree ≤ D − 2, where |Y|² is not affected by truncation.
    pub fn exact_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.s_degree(i) + 2 <= self.cap).collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct WeitzenbockReport {
    pub residual: f64,
    pub d_squared: f64,
    pub d_star_squared: f64,
    pub adjoint_residual: f64,
    pub kernel_dim: usize,
    pub gap: f64,
    pub vacuum_residual: f64,
}

/// Checks [d̄,d̄*] = ½(−Δ^V + |Y|² − n) + N^Λ on S-degree ≤ D − 2 and the
/// spectrum of the truncated Laplacian there.
pub fn verify_weitzenbock(n: usize, cap: usize) -> WeitzenbockReport {
    assert!(n >= 1 && cap >= 3, "need n >= 1 and D >= 3");
    let w = TruncatedWeylComplex::new(n, cap);
    let lhs = w.laplacian_bracket();
    let rhs = w.oscillator();
    let keep = w.exact_indices();
    let mut residual: f64 = 0.0;
    for &c in &keep {
        for r in 0..w.dim() {
            residual = residual.max((lhs[(r, c)] - rhs[(r, c)]).abs());
        }
    }
    let sub = DMatrix::from_fn(keep.len(), keep.len(), |i, j| lhs[(keep[i], keep[j])]);
    let sub = (&sub + sub.transpose()) * 0.5;
    let mut evs: Vec<f64> = SymmetricEigen::new(sub).eigenvalues.iter().copied().collect();
    evs.sort_by(f64::total_cmp);
    let kernel_dim = evs.iter().filter(|e| e.abs() < 1e-9).count();
    let gap = evs.iter().copied().filter(|e| e.abs() >= 1e-9).fold(f64::INFINITY, f64::min);
    // vacuum 1 ∈ Λ⁰ ⊗ S⁰ is basis vector 0
    let vacuum_residual = lhs.column(0).amax();
    WeitzenbockReport {
        residual,
        d_squared: (&w.d_bar * &w.d_bar).amax(),
        d_star_squared: (&w.d_bar_star * &w.d_bar_star).amax(),
        adjoint_residual: (&w.d_bar_star - w.d_bar.transpose()).amax(),
        kernel_dim,
        gap,
        vacuum_residual,
    }
}

/// Polynomial in n variables with monomial coefficients up to degree D.
#[derive(Debug, Clone)]
pub struct Polynomial {
    pub set: std::sync::Arc<MultiIndexSet>,
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn zero(n: usize, cap: usize) -> Self {
        let set = std::sync::Arc::new(MultiIndexSet::new(n, cap));
        let len = set.len();
        Polynomial { set, coeffs: vec![0.0; len] }
    }

    pub fn monomial(n: usize, cap: usize, alpha: &[u32], c: f64) -> Self {
        let mut p = Self::zero(n, cap);
        let i = p.set.index(alpha).expect("monomial within degree cap");
        p.coeffs[i] = c;
        p
    }

    fn like(&self, coeffs: Vec<f64>) -> Self {
        Polynomial { set: self.set.clone(), coeffs }
    }

    pub fn eval(&self, y: &[f64]) -> f64 {
        self.set
            .items
            .iter()
            .zip(&self.coeffs)
            .map(|(a, c)| c * a.iter().zip(y).map(|(k, x)| x.powi(*k as i32)).product::<f64>())
            .sum()
    }

    /// Δ P with Δ Y^α = Σ_j α_j(α_j − 1) Y^{α − 2e_j}.
    pub fn laplacian(&self) -> Self {
        let mut out = vec![0.0; self.coeffs.len()];
        for (i, a) in self.set.items.iter().enumerate() {
            if self.coeffs[i] == 0.0 {
                continue;
            }
            for j in 0..a.len() {
                if a[j] >= 2 {
                    let mut b = a.clone();
                    b[j] -= 2;
                    out[self.set.index(&b).unwrap()] += self.coeffs[i] * (a[j] * (a[j] - 1)) as f64;
                }
            }
        }
        self.like(out)
    }

    /// e^{cΔ} P; the series terminates since Δ lowers degree by two.
    pub fn heat(&self, c: f64) -> Self {
        let mut term = self.clone();
        let mut acc = self.coeffs.clone();
        let mut k = 1.0;
        loop {
            term = term.laplacian();
            if term.coeffs.iter().all(|x| *x == 0.0) {
                break;
            }
            let scale_k = c / k;
            for x in term.coeffs.iter_mut() {
                *x *= scale_k;
            }
            for (a, t) in acc.iter_mut().zip(&term.coeffs) {
                *a += t;
            }
            k += 1.0;
        }
        self.like(acc)
    }

    /// P(λY).
    pub fn dilate(&self, lambda: f64) -> Self {
        let coeffs = self
            .set
            .items
            .iter()
            .zip(&self.coeffs)
            .map(|(a, c)| c * lambda.powi(a.iter().sum::<u32>() as i32))
            .collect();
        self.like(coeffs)
    }

    pub fn scaled(&self, s: f64) -> Self {
        self.like(self.coeffs.iter().map(|c| c * s).collect())
    }
}

/// T(P) = π^{−n/4} (e^{−Δ/2}P)(√2 Y) e^{−|Y|²/2}; returns the polynomial
/// factor in front of the Gaussian.
pub fn bargmann_transform(p: &Polynomial) -> Polynomial {
    let n = p.set.n as f64;
    p.heat(-0.5).dilate(std::f64::consts::SQRT_2).scaled(std::f64::consts::PI.powf(-n / 4.0))
}

/// Inverse of [`bargmann_transform`] on Gaussian-weighted polynomials.
pub fn inverse_bargmann(q: &Polynomial) -> Polynomial {
    let n = q.set.n as f64;
    q.scaled(std::f64::consts::PI.powf(n / 4.0)).dilate(std::f64::consts::FRAC_1_SQRT_2).heat(0.5)
}

/// Max coefficient residual of B(T(P)) − P.
pub fn bargmann_roundtrip(p: &Polynomial) -> f64 {
    let back = inverse_bargmann(&bargmann_transform(p));
    back.coeffs.iter().zip(&p.coeffs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_counts() {
        assert_eq!(MultiIndexSet::new(1, 6).len(), 7);
        assert_eq!(MultiIndexSet::new(2, 5).len(), 21);
        assert_eq!(MultiIndexSet::new(3, 2).len(), 10);
    }

    #[test]
    fn one_dimensional_identity() {
        let r = verify_weitzenbock(1, 6);
        assert!(r.residual < 1e-12);
        assert_eq!(r.kernel_dim, 1);
        assert_eq!(r.vacuum_residual, 0.0);
        assert_eq!(r.d_squared, 0.0);
    }

    #[test]
    fn vacuum_transform() {
        let one = Polynomial::monomial(2, 4, &[0, 0], 1.0);
        let t = bargmann_transform(&one);
        assert!((t.coeffs[0] - std::f64::consts::PI.powf(-0.5)).abs() < 1e-16);
        assert!(t.coeffs[1..].iter().all(|c| *c == 0.0));
        assert!(bargmann_roundtrip(&one) < 1e-15);
    }
}
