use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

/// Gauss–Hermite rule for the weight `exp(-x^2)` on the real line.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<GaussHermite>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussHermite>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Orthonormal Hermite functions p_{n-1}(x), p_n(x) (w.r.t. exp(-x^2)).
fn orthonormal_pair(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25);
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

impl GaussHermite {
    /// Shared, memoised rule with `n` nodes.
    pub fn shared(n: usize) -> Arc<GaussHermite> {
        let mut map = cache().lock().expect("hermite cache poisoned");
        map.entry(n).or_insert_with(|| Arc::new(GaussHermite::new(n))).clone()
    }

    /// Golub–Welsch for the starting nodes, then Newton on the three-term
    /// recurrence so that nodes are accurate to the last bit and the weights
    /// are taken from the Christoffel numbers instead of eigenvector entries.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "need at least one node");
        let jac = DMatrix::from_fn(n, n, |i, j| {
            if i + 1 == j || j + 1 == i {
                ((i.max(j)) as f64 / 2.0).sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let nf = n as f64;
        let mut weights = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            for _ in 0..8 {
                let (pm1, p) = orthonormal_pair(n, *x);
                let step = p / ((2.0 * nf).sqrt() * pm1);
                // far-out nodes of large rules overflow the recurrence;
                // their weights underflow to zero anyway
                if !step.is_finite() {
                    break;
                }
                *x -= step;
                if step.abs() < 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (pm1, _) = orthonormal_pair(n, *x);
            let w = 1.0 / (nf * pm1 * pm1);
            weights.push(if w.is_finite() { w } else { 0.0 });
        }
        // Enforce exact symmetry.
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let x = 0.5 * (nodes[j] - nodes[i]);
            let w = 0.5 * (weights[i] + weights[j]);
            nodes[i] = -x;
            nodes[j] = x;
            weights[i] = w;
            weights[j] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussHermite { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_of_gaussian() {
        let r = GaussHermite::new(20);
        let sp = std::f64::consts::PI.sqrt();
        let m0: f64 = r.weights.iter().sum();
        let m2: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x * x).sum();
        let m4: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(4)).sum();
        assert!((m0 - sp).abs() < 1e-14);
        assert!((m2 - sp / 2.0).abs() < 1e-14);
        assert!((m4 - 0.75 * sp).abs() < 1e-13);
    }

    #[test]
    fn large_rule_integrates_cosine() {
        // ∫ e^{-x²} cos(3x) dx = √π e^{-9/4}
        let r = GaussHermite::new(128);
        let v: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * (3.0 * x).cos()).sum();
        let exact = std::f64::consts::PI.sqrt() * (-2.25f64).exp();
        assert!((v - exact).abs() < 1e-14, "{v} vs {exact}");
    }
}
