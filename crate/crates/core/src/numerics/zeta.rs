//! Hurwitz zeta ζ(s, x) for real s ≠ 1 together with ∂ζ/∂s, by
//! Euler–Maclaurin summation. Forward-mode derivatives are carried by a
//! tiny dual-number type so value and derivative share one code path.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy)]
struct Dual {
    v: f64,
    d: f64,
}

impl Dual {
    fn var(v: f64) -> Self {
        Dual { v, d: 1.0 }
    }
    fn cst(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }
    /// base^(-self) for a constant positive base.
    fn neg_pow_of(self, base: f64) -> Dual {
        let val = base.powf(-self.v);
        Dual { v: val, d: -base.ln() * val * self.d }
    }
    fn recip(self) -> Dual {
        Dual { v: 1.0 / self.v, d: -self.d / (self.v * self.v) }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}
impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}
impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.v * o.d + self.d * o.v }
    }
}

// B_{2j} / (2j)!
const BERN_OVER_FACT: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
];

fn hurwitz_dual(s: f64, x: f64) -> Dual {
    assert!(x > 0.0, "Hurwitz zeta needs x > 0");
    assert!((s - 1.0).abs() > 1e-12, "pole at s = 1");
    let s_d = Dual::var(s);
    let n_terms = 30usize;
    let mut acc = Dual::cst(0.0);
    for k in 0..n_terms {
        acc = acc + s_d.neg_pow_of(k as f64 + x);
    }
    let big = n_terms as f64 + x;
    let s_minus_1 = s_d - Dual::cst(1.0);
    // (N+x)^{1-s}/(s-1)
    acc = acc + s_minus_1.neg_pow_of(big) * s_minus_1.recip();
    acc = acc + Dual::cst(0.5) * s_d.neg_pow_of(big);
    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · (N+x)^{−s−2j+1}
    let mut poch = s_d;
    for (j, coef) in BERN_OVER_FACT.iter().enumerate() {
        let jj = (j + 1) as f64;
        let expo = s_d + Dual::cst(2.0 * jj - 1.0);
        acc = acc + Dual::cst(*coef) * poch * expo.neg_pow_of(big);
        poch = poch * (s_d + Dual::cst(2.0 * jj - 1.0)) * (s_d + Dual::cst(2.0 * jj));
    }
    acc
}

/// ζ(s, x) = Σ_{k≥0} (k + x)^{-s}, analytically continued.
pub fn hurwitz_zeta(s: f64, x: f64) -> f64 {
    hurwitz_dual(s, x).v
}

/// ∂ζ(s, x)/∂s.
pub fn hurwitz_zeta_ds(s: f64, x: f64) -> f64 {
    hurwitz_dual(s, x).d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riemann_values() {
        let pi = std::f64::consts::PI;
        assert!((hurwitz_zeta(2.0, 1.0) - pi * pi / 6.0).abs() < 1e-14);
        assert!((hurwitz_zeta(0.0, 1.0) + 0.5).abs() < 1e-14);
        assert!((hurwitz_zeta(-1.0, 1.0) + 1.0 / 12.0).abs() < 1e-14);
        // ζ'(0) = −½ ln 2π
        assert!((hurwitz_zeta_ds(0.0, 1.0) + 0.5 * (2.0 * pi).ln()).abs() < 1e-13);
    }

    #[test]
    fn value_at_zero_is_half_minus_x() {
        for x in [0.1, 0.37, 0.5, 0.9] {
            assert!((hurwitz_zeta(0.0, x) - (0.5 - x)).abs() < 1e-13);
        }
    }
}
