use std::sync::Arc;

use num::complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::profile::DiscreteProfile;
use crate::error::{bail, Result};

/// `G(x) = x²/2 · log|x| − 3x²/4`, the second antiderivative of `log|x|` with `G(0) = 0`.
fn big_g(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        0.5 * x * x * x.abs().ln() - 0.75 * x * x
    }
}

/// Exact cell-pair integrals of `log(t − s)` on a uniform grid and fast products with them.
pub(crate) struct LogKernel {
    n: usize,
    /// `∫∫_{s<t, both in one cell} log(t − s)`.
    pub(crate) self_term: f64,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    w_hat: Vec<Complex64>,
    len: usize,
}

impl LogKernel {
    pub(crate) fn new(n: usize, h: f64) -> Self {
        // W_k = ∫_cell_0 ∫_cell_k log(t − s) for k ≥ 1, W_0 := 0
        let w: Vec<f64> = (0..n)
            .map(|k| {
                if k == 0 {
                    0.0
                } else {
                    let k = k as f64;
                    big_g((k + 1.0) * h) - 2.0 * big_g(k * h) + big_g((k - 1.0) * h)
                }
            })
            .collect();
        let len = (2 * n).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(len);
        let ifft = planner.plan_fft_inverse(len);
        let mut w_hat: Vec<Complex64> = w.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        w_hat.resize(len, Complex64::new(0.0, 0.0));
        fft.process(&mut w_hat);
        LogKernel { n, self_term: big_g(h), fft, ifft, w_hat, len }
    }

    /// `out_j = Σ_{i<j} v_i W_{j−i}`.
    pub(crate) fn lower(&self, v: &[f64]) -> Vec<f64> {
        let mut buf: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        buf.resize(self.len, Complex64::new(0.0, 0.0));
        self.fft.process(&mut buf);
        for (b, w) in buf.iter_mut().zip(&self.w_hat) {
            *b *= w;
        }
        self.ifft.process(&mut buf);
        let scale = 1.0 / self.len as f64;
        buf[..self.n].iter().map(|c| c.re * scale).collect()
    }

    /// `out_k = Σ_{j>k} v_j W_{j−k}`.
    pub(crate) fn upper(&self, v: &[f64]) -> Vec<f64> {
        let rev: Vec<f64> = v.iter().rev().copied().collect();
        let mut out = self.lower(&rev);
        out.reverse();
        out
    }

    /// `E` for cell slopes `a`.
    pub(crate) fn energy(&self, a: &[f64]) -> f64 {
        let b: Vec<f64> = a.iter().map(|x| 1.0 + x).collect();
        let lb = self.lower(&b);
        let cross: f64 = a.iter().zip(&lb).map(|(x, l)| (1.0 - x) * l).sum();
        let diag: f64 = a.iter().map(|x| (1.0 + x) * (1.0 - x)).sum::<f64>() * self.self_term;
        0.5 * (cross + diag)
    }

    /// `∂E/∂a_k`.
    pub(crate) fn gradient(&self, a: &[f64]) -> Vec<f64> {
        let b: Vec<f64> = a.iter().map(|x| 1.0 + x).collect();
        let c: Vec<f64> = a.iter().map(|x| 1.0 - x).collect();
        let up = self.upper(&c);
        let lo = self.lower(&b);
        (0..self.n).map(|k| 0.5 * (up[k] - lo[k]) - self.self_term * a[k]).collect()
    }

    /// Hessian-vector product of `E`.
    pub(crate) fn hessian_apply(&self, v: &[f64]) -> Vec<f64> {
        let (lo, up) = (self.lower(v), self.upper(v));
        (0..self.n).map(|k| -0.5 * (lo[k] + up[k]) - self.self_term * v[k]).collect()
    }
}

/// `E(f) = ½ ∬_{s<t} (1 + f'(s))(1 − f'(t)) log(t − s) ds dt`, exact for a
/// piecewise-constant slope. `E(|x|) = 0` and the limit shape has `E = −1`.
pub fn hook_energy(f: &DiscreteProfile) -> f64 {
    LogKernel::new(f.cells(), f.step()).energy(&f.slopes)
}

/// `E` of a profile given by its height function on `[lo, hi]` (slope ±1 outside),
/// doubling the grid from 256 cells until the relative change is below `rel_tol`.
pub fn hook_energy_refined(height: impl Fn(f64) -> f64, lo: f64, hi: f64, rel_tol: f64) -> Result<f64> {
    let mut cells = 256;
    let mut prev = hook_energy(&DiscreteProfile::from_heights(lo, hi, cells, &height)?);
    while cells < 1 << 21 {
        cells *= 2;
        let cur = hook_energy(&DiscreteProfile::from_heights(lo, hi, cells, &height)?);
        if (cur - prev).abs() <= rel_tol * cur.abs().max(1e-300) {
            return Ok(cur);
        }
        prev = cur;
    }
    bail!(Numeric, "hook energy did not reach relative accuracy {rel_tol} by grid refinement (last value {prev})")
}
