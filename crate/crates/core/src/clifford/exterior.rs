use std::collections::HashMap;

use nalgebra::DMatrix;

/// Basis e^I of Λ(ℝⁿ*) indexed by subsets I ⊆ {0..n−1}, ordered
/// lexicographically by the increasing index sequence (∅, {0}, {0,1}, …).
#[derive(Debug, Clone)]
pub struct ExteriorBasis {
    pub n: usize,
    pub masks: Vec<u32>,
    pos: HashMap<u32, usize>,
}

/// Diagonal (−1)^{|I|} grading operator.
pub type Parity = DMatrix<f64>;

fn indices(mask: u32) -> Vec<u32> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Self {
        assert!(n <= 16, "exterior algebra too large");
        let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
        masks.sort_by_key(|m| indices(*m));
        let pos = masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        ExteriorBasis { n, masks, pos }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn position(&self, mask: u32) -> usize {
        self.pos[&mask]
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.masks[idx].count_ones() as usize
    }

    /// Left exterior multiplication e^i ∧ ·.
    pub fn ext(&self, i: usize) -> DMatrix<f64> {
        let d = self.len();
        let bit = 1u32 << i;
        let mut m = DMatrix::zeros(d, d);
        for (col, &mask) in self.masks.iter().enumerate() {
            if mask & bit == 0 {
                let sign = if (mask & (bit - 1)).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                m[(self.position(mask | bit), col)] = sign;
            }
        }
        m
    }

    /// Left interior multiplication i_{e_i}, the adjoint of e^i ∧.
    pub fn int(&self, i: usize) -> DMatrix<f64> {
        self.ext(i).transpose()
    }

    pub fn parity(&self) -> Parity {
        let d = self.len();
        DMatrix::from_fn(d, d, |r, c| if r == c { if self.degree(r).is_multiple_of(2) { 1.0 } else { -1.0 } } else { 0.0 })
    }

    /// Number operator N^Λ.
    pub fn number(&self) -> DMatrix<f64> {
        let d = self.len();
        DMatrix::from_fn(d, d, |r, c| if r == c { self.degree(r) as f64 } else { 0.0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let b = ExteriorBasis::new(3);
        let seq: Vec<Vec<u32>> = b.masks.iter().map(|m| indices(*m)).collect();
        assert_eq!(seq[0], Vec::<u32>::new());
        assert_eq!(seq[1], vec![0]);
        assert_eq!(seq[2], vec![0, 1]);
        assert_eq!(seq[3], vec![0, 1, 2]);
        assert_eq!(seq[4], vec![0, 2]);
        assert_eq!(seq[5], vec![1]);
    }

    #[test]
    fn canonical_anticommutators() {
        let b = ExteriorBasis::new(3);
        let id = DMatrix::<f64>::identity(8, 8);
        for i in 0..3 {
            for j in 0..3 {
                let ee = b.ext(i) * b.ext(j) + b.ext(j) * b.ext(i);
                let ei = b.ext(i) * b.int(j) + b.int(j) * b.ext(i);
                assert_eq!(ee.amax(), 0.0);
                let want = if i == j { id.clone() } else { DMatrix::zeros(8, 8) };
                assert_eq!((ei - want).amax(), 0.0);
            }
        }
    }
}
