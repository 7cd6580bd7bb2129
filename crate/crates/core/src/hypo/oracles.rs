//! Independent checks of the closed-form kernel: a Crank–Nicolson grid solve
//! of ∂_t u = −M_b u, Feynman–Kac Monte Carlo for the y-marginal, and the
//! flip-adjoint relation on a finite-difference matrix.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{model_kernel, GaussianForm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct PdeConfig {
    pub half_width: f64,
    pub nodes: usize,
    pub dt: f64,
    /// Initial datum exp(−(x² + y²)/2σ²).
    pub sigma: f64,
}

impl Default for PdeConfig {
    fn default() -> Self {
        PdeConfig { half_width: 8.0, nodes: 512, dt: 1.0 / 400.0, sigma: 1.0 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PdeReport {
    pub l2_residual: f64,
    pub l2_norm: f64,
    pub max_abs: f64,
    pub steps: usize,
}

/// Thomas algorithm for rows (lo, di, up); overwrites `rhs`.
fn thomas(lo: &[f64], di: &[f64], up: &[f64], rhs: &mut [f64], scratch: &mut [f64]) {
    let n = rhs.len();
    scratch[0] = up[0] / di[0];
    rhs[0] /= di[0];
    for i in 1..n {
        let m = di[i] - lo[i] * scratch[i - 1];
        scratch[i] = up[i] / m;
        rhs[i] = (rhs[i] - lo[i] * rhs[i - 1]) / m;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= scratch[i] * rhs[i + 1];
    }
}

fn tridiag_apply(lo: &[f64], di: &[f64], up: &[f64], u: &[f64], out: &mut [f64]) {
    let n = u.len();
    for i in 0..n {
        let mut s = di[i] * u[i];
        if i > 0 {
            s += lo[i] * u[i - 1];
        }
        if i + 1 < n {
            s += up[i] * u[i + 1];
        }
        out[i] = s;
    }
}

struct Tri {
    lhs: [Vec<f64>; 3],
    rhs: [Vec<f64>; 3],
}

impl Tri {
    fn step(&self, u: &mut [f64], tmp: &mut [f64], scratch: &mut [f64]) {
        tridiag_apply(&self.rhs[0], &self.rhs[1], &self.rhs[2], u, tmp);
        thomas(&self.lhs[0], &self.lhs[1], &self.lhs[2], tmp, scratch);
        u.copy_from_slice(tmp);
    }
}

/// y-direction Crank–Nicolson with the fourth-order compact (Numerov) second
/// difference: A u'' ≈ D₂u/h², A = tridiag(1/12, 10/12, 1/12).
fn y_operator(b: f64, ys: &[f64], h: f64, dt: f64) -> Tri {
    let n = ys.len();
    let diff = 1.0 / (2.0 * b * b * h * h);
    let pot: Vec<f64> = ys.iter().map(|y| (y * y - 1.0) / (2.0 * b * b)).collect();
    let mut lhs = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    let mut rhs = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for i in 0..n {
        // rows of  A·L_y = diff·D₂ − A·V
        let lo = if i > 0 { diff - pot[i - 1] / 12.0 } else { 0.0 };
        let up = if i + 1 < n { diff - pot[i + 1] / 12.0 } else { 0.0 };
        let di = -2.0 * diff - 10.0 * pot[i] / 12.0;
        let (alo, aup) = (if i > 0 { 1.0 / 12.0 } else { 0.0 }, if i + 1 < n { 1.0 / 12.0 } else { 0.0 });
        lhs[0][i] = alo - 0.5 * dt * lo;
        lhs[1][i] = 10.0 / 12.0 - 0.5 * dt * di;
        lhs[2][i] = aup - 0.5 * dt * up;
        rhs[0][i] = alo + 0.5 * dt * lo;
        rhs[1][i] = 10.0 / 12.0 + 0.5 * dt * di;
        rhs[2][i] = aup + 0.5 * dt * up;
    }
    Tri { lhs, rhs }
}

/// x-direction Crank–Nicolson for u_t = −(y/b) u_x with the Padé first
/// difference tridiag(1/6, 4/6, 1/6) u' ≈ (u₊ − u₋)/2h.
fn x_operator(speed: f64, n: usize, h: f64, dt: f64) -> Tri {
    let c = 0.5 * dt * speed / (2.0 * h);
    let mut lhs = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    let mut rhs = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for i in 0..n {
        let edge_lo = i > 0;
        let edge_up = i + 1 < n;
        lhs[0][i] = if edge_lo { 1.0 / 6.0 - c } else { 0.0 };
        lhs[1][i] = 4.0 / 6.0;
        lhs[2][i] = if edge_up { 1.0 / 6.0 + c } else { 0.0 };
        rhs[0][i] = if edge_lo { 1.0 / 6.0 + c } else { 0.0 };
        rhs[1][i] = 4.0 / 6.0;
        rhs[2][i] = if edge_up { 1.0 / 6.0 - c } else { 0.0 };
    }
    Tri { lhs, rhs }
}

fn transpose(src: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    out.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
        for (i, v) in row.iter_mut().enumerate() {
            *v = src[i * n + j];
        }
    });
    out
}

/// Exact solution of ∂_t u = −M_b u from exp(−(x²+y²)/2σ²), as a Gaussian
/// form in (x, y).
pub fn exact_gaussian_evolution(b: f64, t: f64, sigma: f64) -> Result<GaussianForm> {
    let k = model_kernel(b, t)?;
    // variables (x, y, x′, y′)
    let kernel = k.as_form(4, 0, 1, 2, 3);
    let mut q0 = DMatrix::zeros(4, 4);
    q0[(2, 2)] = 1.0 / (sigma * sigma);
    q0[(3, 3)] = 1.0 / (sigma * sigma);
    let init = GaussianForm::new(q0, DVector::zeros(4), 0.0);
    kernel.times(&init).integrate_out(&[2, 3])
}

/// Strang-split Crank–Nicolson solve on [−L, L]² with homogeneous Dirichlet
/// data, compared against the exact Gaussian evolution in discrete L².
pub fn pde_oracle(b: f64, t: f64, cfg: PdeConfig) -> Result<PdeReport> {
    if !(b > 0.0 && t > 0.0) || cfg.nodes < 8 || !(cfg.dt > 0.0) {
        return Err(Error::InvalidInput("pde oracle needs b, t, dt > 0 and at least 8 nodes".into()));
    }
    let n = cfg.nodes;
    let h = 2.0 * cfg.half_width / (n + 1) as f64;
    let grid: Vec<f64> = (1..=n).map(|i| -cfg.half_width + i as f64 * h).collect();
    let steps = (t / cfg.dt).round().max(1.0) as usize;
    let dt = t / steps as f64;

    let s2 = cfg.sigma * cfg.sigma;
    // u[iy * n + ix]
    let mut u: Vec<f64> = (0..n * n)
        .map(|k| {
            let (x, y) = (grid[k % n], grid[k / n]);
            (-(x * x + y * y) / (2.0 * s2)).exp()
        })
        .collect();

    let yop = y_operator(b, &grid, h, dt);
    let xops: Vec<Tri> = grid.iter().map(|y| x_operator(y / b, n, h, 0.5 * dt)).collect();

    let x_half = |u: &mut Vec<f64>| {
        u.par_chunks_mut(n).zip(xops.par_iter()).for_each(|(row, op)| {
            let mut tmp = vec![0.0; n];
            let mut scratch = vec![0.0; n];
            op.step(row, &mut tmp, &mut scratch);
        });
    };
    for _ in 0..steps {
        x_half(&mut u);
        let mut ut = transpose(&u, n);
        ut.par_chunks_mut(n).for_each(|col| {
            let mut tmp = vec![0.0; n];
            let mut scratch = vec![0.0; n];
            yop.step(col, &mut tmp, &mut scratch);
        });
        u = transpose(&ut, n);
        x_half(&mut u);
    }

    let exact = exact_gaussian_evolution(b, t, cfg.sigma)?;
    let (mut err2, mut norm2, mut max_abs) = (0.0f64, 0.0f64, 0.0f64);
    for (k, v) in u.iter().enumerate() {
        let e = exact.eval(&[grid[k % n], grid[k / n]]);
        let d = v - e;
        err2 += d * d;
        norm2 += e * e;
        max_abs = max_abs.max(d.abs());
    }
    Ok(PdeReport { l2_residual: (err2 * h * h).sqrt(), l2_norm: (norm2 * h * h).sqrt(), max_abs, steps })
}

#[derive(Debug, Clone, Copy)]
pub struct MonteCarloReport {
    pub estimate: f64,
    pub std_error: f64,
    pub exact: f64,
    pub paths: usize,
}

impl MonteCarloReport {
    pub fn z_score(&self) -> f64 {
        (self.estimate - self.exact) / self.std_error
    }
}

/// ∫ p_{b,t}((0,y),(x′,y′)) dx′ dy′ = e^{τ/2} e^{−y² tanh(τ)/2}/√(cosh τ), τ = t/b².
pub fn y_marginal(y: f64, b: f64, t: f64) -> Result<f64> {
    let k = model_kernel(b, t)?;
    let form = k.as_form(4, 0, 1, 2, 3);
    let sub = DMatrix::from_row_slice(4, 2, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
    let z0 = DVector::from_column_slice(&[0.0, y, 0.0, 0.0]);
    Ok(form.substitute(&sub, &z0).log_total()?.exp())
}

pub const MC_CHUNK: usize = 10_000;

/// Feynman–Kac estimate of the y-marginal: in time τ = t/b² the y-motion is a
/// standard Brownian motion weighted by exp(−∫ (Y² − 1)/2 dτ); the x-drift
/// integrates out. Chunk c uses ChaCha8 seeded with `seed + c`; chunks are
/// reduced in order, so the result does not depend on the thread count.
pub fn feynman_kac_marginal(y: f64, b: f64, t: f64, paths: usize, steps: usize, seed: u64) -> Result<MonteCarloReport> {
    if paths < 2 || steps == 0 {
        return Err(Error::InvalidInput("Monte Carlo needs at least 2 paths and 1 step".into()));
    }
    let exact = y_marginal(y, b, t)?;
    let tau = t / (b * b);
    let dtau = tau / steps as f64;
    let sq = dtau.sqrt();
    let pot = |z: f64| 0.5 * (z * z - 1.0);
    let chunks = paths.div_ceil(MC_CHUNK);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(c as u64));
            let count = MC_CHUNK.min(paths - c * MC_CHUNK);
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                let mut z = y;
                let mut action = 0.5 * pot(z);
                for k in 0..steps {
                    let xi: f64 = rng.sample(StandardNormal);
                    z += sq * xi;
                    action += if k + 1 == steps { 0.5 * pot(z) } else { pot(z) };
                }
                let w = (-dtau * action).exp();
                s1 += w;
                s2 += w * w;
            }
            (s1, s2)
        })
        .collect();
    let (s1, s2) = partial.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let n = paths as f64;
    let mean = s1 / n;
    let var = (s2 / n - mean * mean).max(0.0) * n / (n - 1.0);
    Ok(MonteCarloReport { estimate: mean, std_error: (var / n).sqrt(), exact, paths })
}

/// Central-difference matrix of M_b on an n×n grid of [−L, L]² (Dirichlet).
pub fn fd_matrix(b: f64, n: usize, half_width: f64) -> DMatrix<f64> {
    let h = 2.0 * half_width / (n + 1) as f64;
    let grid: Vec<f64> = (1..=n).map(|i| -half_width + i as f64 * h).collect();
    let idx = |ix: usize, iy: usize| iy * n + ix;
    let mut m = DMatrix::zeros(n * n, n * n);
    let diff = 1.0 / (2.0 * b * b * h * h);
    for iy in 0..n {
        let y = grid[iy];
        for ix in 0..n {
            let r = idx(ix, iy);
            m[(r, r)] += 2.0 * diff + (y * y - 1.0) / (2.0 * b * b);
            if iy > 0 {
                m[(r, idx(ix, iy - 1))] -= diff;
            }
            if iy + 1 < n {
                m[(r, idx(ix, iy + 1))] -= diff;
            }
            let drift = y / (b * 2.0 * h);
            if ix > 0 {
                m[(r, idx(ix - 1, iy))] -= drift;
            }
            if ix + 1 < n {
                m[(r, idx(ix + 1, iy))] += drift;
            }
        }
    }
    m
}

/// max |F Mᵀ F − M| where F is the flip y → −y; zero means the adjoint of
/// M_b is M_b conjugated by the flip (equivalently, with ∂_x reversed).
pub fn flip_adjoint_residual(b: f64, n: usize, half_width: f64) -> f64 {
    let m = fd_matrix(b, n, half_width);
    let flip = |r: usize| (n - 1 - r / n) * n + r % n;
    let mut worst = 0.0f64;
    for r in 0..n * n {
        for c in 0..n * n {
            worst = worst.max((m[(c, r)] - m[(flip(r), flip(c))]).abs());
        }
    }
    worst
}
