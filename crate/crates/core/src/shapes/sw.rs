use std::f64::consts::PI;

use num::complex::Complex64;
use serde::Serialize;

use super::action::maximize_action;
use super::profile::DiscreteProfile;
use crate::error::{bail, Result};
use crate::special::{integrate, poly_eval, real_roots};

/// The curve `w + 1/w = B(z)` with `B` real, monic of degree `N` and without a `z^{N−1}` term,
/// such that `B² − 4` has `2N` real roots (all `N` bands real).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwCurve {
    /// Coefficients of `B` in increasing degree.
    coeffs: Vec<f64>,
    /// Roots `e_1 < … < e_2N` of `B² − 4`; bands are `[e_1, e_2], [e_3, e_4], …`.
    roots: Vec<f64>,
}

impl SwCurve {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let n = coeffs.len().saturating_sub(1);
        if n == 0 || coeffs[n] != 1.0 {
            bail!(Argument, "B must be monic of degree at least 1");
        }
        if n >= 2 && coeffs[n - 1] != 0.0 {
            bail!(Argument, "B must have no z^(N-1) term");
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            bail!(Argument, "B has non-finite coefficients");
        }
        let mut roots = Vec::with_capacity(2 * n);
        for shift in [2.0, -2.0] {
            let mut c = coeffs.clone();
            c[0] -= shift;
            roots.extend(real_roots(&c, 1e-9)?);
        }
        roots.sort_by(f64::total_cmp);
        if roots.len() != 2 * n {
            bail!(Domain, "B^2 - 4 has {} real roots, a real curve of degree {n} needs {}", roots.len(), 2 * n);
        }
        Ok(SwCurve { coeffs, roots })
    }

    /// `z^N + c_{N−2} z^{N−2} + … + c_0` from `lower = [c_0, …, c_{N−2}]`.
    pub fn from_lower(lower: &[f64]) -> Result<Self> {
        let mut coeffs = lower.to_vec();
        if !coeffs.is_empty() {
            coeffs.push(0.0);
        }
        coeffs.push(1.0);
        Self::new(coeffs)
    }

    /// `ρ^N·2T_N(z/(2ρ))`, a curve whose gaps are all open when `ρ > 1`.
    pub fn chebyshev(n: usize, rho: f64) -> Result<Self> {
        if n == 0 {
            bail!(Argument, "degree must be at least 1");
        }
        // T_{k+1} = 2x T_k − T_{k−1}
        let (mut prev, mut cur) = (vec![1.0], vec![0.0, 1.0]);
        for _ in 1..n {
            let mut next = vec![0.0; cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += 2.0 * c;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= c;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        let coeffs = cur
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let v = 2.0 * c * rho.powi(n as i32) / (2.0 * rho).powi(k as i32);
                if k == n { 1.0 } else { v }
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// The free coefficients `c_0, …, c_{N−2}`.
    pub fn lower(&self) -> &[f64] {
        &self.coeffs[..self.degree().saturating_sub(1)]
    }

    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn bands(&self) -> Vec<(f64, f64)> {
        self.roots.chunks(2).map(|p| (p[0], p[1])).collect()
    }

    pub fn gaps(&self) -> Vec<(f64, f64)> {
        self.roots[1..self.roots.len() - 1].chunks(2).map(|p| (p[0], p[1])).collect()
    }

    fn b(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// `(Re Φ, Im Φ, arg w)` at `x + i0`.
    fn boundary(&self, x: f64) -> (f64, f64, f64) {
        let n = self.degree() as f64;
        let right = self.roots.iter().filter(|&&r| r > x).count();
        let j = (right / 2) as f64;
        let b = self.b(x);
        let (theta, log_abs) = if right % 2 == 1 {
            let sign = if right / 2 % 2 == 0 { 1.0 } else { -1.0 };
            (j * PI + (sign * b / 2.0).clamp(-1.0, 1.0).acos(), 0.0)
        } else {
            (j * PI, (b.abs() / 2.0).max(1.0).acosh())
        };
        (1.0 - 2.0 * theta / (PI * n), 2.0 / (PI * n) * log_abs, theta)
    }
}

/// `Φ(z) = 1 + (2i/(πN)) log w`; see [`sw_map`].
fn phi_of(n: usize, w: Complex64, arg: f64) -> Complex64 {
    let log_w = Complex64::new(w.norm().ln(), arg);
    Complex64::new(1.0, 0.0) + Complex64::new(0.0, 2.0 / (PI * n as f64)) * log_w
}

/// The root of `w + 1/w = B(z)` with `|w| ≥ 1`.
fn big_root(b: Complex64) -> Complex64 {
    let s = (b * b - 4.0).sqrt();
    let (w1, w2) = ((b + s) / 2.0, (b - s) / 2.0);
    if w1.norm() >= w2.norm() { w1 } else { w2 }
}

/// `(w, Φ)` at `z` in the closed upper half-plane: `w ~ z^N` at infinity with `|w| ≥ 1`,
/// `Φ = 1 + (2i/(πN)) log w` with `Re Φ(x + i0)` running from −1 to 1 and equal to
/// `−1 + 2k/N` on the `k`-th gap. Off the real axis `arg w` is continued down a
/// vertical path from far above `z`.
pub fn sw_map(curve: &SwCurve, z: Complex64) -> Result<(Complex64, Complex64)> {
    if !(z.im >= 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        bail!(Domain, "sw_map needs z in the closed upper half-plane, got {z}");
    }
    let n = curve.degree();
    if z.im == 0.0 {
        let (re, im, theta) = curve.boundary(z.re);
        let modulus = (im * PI * n as f64 / 2.0).exp();
        return Ok((Complex64::from_polar(modulus, theta), Complex64::new(re, im)));
    }
    let reach = curve.roots.iter().fold(z.norm(), |m, r| m.max(r.abs()));
    let top = Complex64::new(z.re, z.im + 20.0 * (1.0 + reach));
    let w_top = big_root(poly_eval(&curve.coeffs, top));
    let zn = top.powu(n as u32);
    let mut arg = n as f64 * top.arg() + (w_top / zn).arg();
    let steps = 4096;
    let mut prev = w_top;
    for k in 1..=steps {
        let s = Complex64::new(z.re, top.im + (z.im - top.im) * k as f64 / steps as f64);
        let w = big_root(poly_eval(&curve.coeffs, s));
        let d = (w / prev).arg();
        if d.abs() > 0.5 {
            bail!(Numeric, "branch tracking of w jumped by {d} rad near z = {s}");
        }
        arg += d;
        prev = w;
    }
    Ok((prev, phi_of(n, prev, arg)))
}

/// Cell averages of `Re Φ(x + i0)` on a uniform grid, integrated piecewise between band edges.
pub fn maximizer_from_map(curve: &SwCurve, lo: f64, hi: f64, cells: usize) -> Result<DiscreteProfile> {
    if !(lo < hi) || cells == 0 {
        bail!(Argument, "need lo < hi and at least one cell");
    }
    let h = (hi - lo) / cells as f64;
    let re = |x: f64| curve.boundary(x).0;
    let mut slopes = Vec::with_capacity(cells);
    for i in 0..cells {
        let (a, b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
        let mut cuts = vec![a];
        cuts.extend(curve.roots.iter().copied().filter(|&r| r > a && r < b));
        cuts.push(b);
        let mut total = 0.0;
        for p in cuts.windows(2) {
            total += integrate(re, p[0], p[1], 1e-13)?;
        }
        slopes.push((total / h).clamp(-1.0, 1.0));
    }
    DiscreteProfile::new(lo, hi, slopes)
}

/// `P_k = ∫_{gap k} Im Φ(x + i0) dx` for the gaps from left to right, so that
/// `∫_{gap k} z dΦ = −i P_k`.
pub fn sw_periods(curve: &SwCurve) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (a, b) in curve.gaps() {
        if !(b - a > 1e-12 * (1.0 + a.abs().max(b.abs()))) {
            bail!(Domain, "bands touch near x = {a}; the curve is degenerate");
        }
        out.push(integrate(|x| curve.boundary(x).1, a, b, 1e-12)?);
    }
    Ok(out)
}

/// The constant `C` in `C·P_k = κ(u_{k−½} − u_{k+½})`, fitted on a reference potential.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodCalibration {
    pub constant: f64,
    /// Reference potential and coupling.
    pub u: Vec<f64>,
    pub kappa: f64,
    /// `B = z² − c` that best fits the direct maximizer.
    pub c: f64,
    /// Largest slope difference between the two solvers at the fit.
    pub residual: f64,
}

/// Fits `B = z² − c` to the direct maximizer for `u = (½, −½)`, `κ = 1` by golden-section
/// search on the L² slope distance, and reads off `C = κ(u_1 − u_2)/P_1`.
pub fn calibrate_period_constant(lo: f64, hi: f64, cells: usize) -> Result<PeriodCalibration> {
    let (u, kappa) = (vec![0.5, -0.5], 1.0);
    let direct = maximize_action(&u, kappa, lo, hi, cells)?.profile;
    let misfit = |c: f64| -> Result<f64> {
        let curve = SwCurve::new(vec![-c, 0.0, 1.0])?;
        let map = maximizer_from_map(&curve, lo, hi, cells)?;
        Ok(map.slopes.iter().zip(&direct.slopes).map(|(a, b)| (a - b) * (a - b)).sum())
    };
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (2.0 + 1e-6, ((hi.min(-lo)).powi(2) - 2.0).max(3.0));
    let mut x1 = b - golden * (b - a);
    let mut x2 = a + golden * (b - a);
    let (mut f1, mut f2) = (misfit(x1)?, misfit(x2)?);
    while b - a > 1e-7 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - golden * (b - a);
            f1 = misfit(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + golden * (b - a);
            f2 = misfit(x2)?;
        }
    }
    let c = 0.5 * (a + b);
    let curve = SwCurve::new(vec![-c, 0.0, 1.0])?;
    let period = sw_periods(&curve)?[0];
    let residual = maximizer_from_map(&curve, lo, hi, cells)?.slope_distance(&direct, lo, hi)?;
    Ok(PeriodCalibration { constant: kappa * (u[0] - u[1]) / period, u, kappa, c, residual })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodMatch {
    pub curve: SwCurve,
    pub constant: f64,
    pub periods: Vec<f64>,
    /// Largest violation of the period conditions at the solution.
    pub residual: f64,
    pub iterations: usize,
}

/// Solves `C·P_k = κ·(jump of σ_U' at slope −1 + 2k/N)` for the free coefficients of `B`,
/// i.e. `κ(u_{k−½} − u_{k+½})` with the gaps read from right to left, starting from
/// the Chebyshev curve with `ρ = 1.2`.
pub fn match_periods(u: &[f64], kappa: f64, constant: f64) -> Result<PeriodMatch> {
    match_periods_from(u, kappa, constant, &SwCurve::chebyshev(u.len(), 1.2)?)
}

/// [`match_periods`] from a given initial curve.
pub fn match_periods_from(u: &[f64], kappa: f64, constant: f64, start: &SwCurve) -> Result<PeriodMatch> {
    let n = u.len();
    if n < 2 {
        bail!(Argument, "period matching needs N >= 2 values of u");
    }
    if u.windows(2).any(|p| !(p[0] > p[1])) {
        bail!(Argument, "u must be strictly decreasing");
    }
    if !(kappa > 0.0) || !(constant > 0.0) {
        bail!(Argument, "kappa and the period constant must be positive");
    }
    if start.degree() != n {
        bail!(Argument, "initial curve has degree {}, expected {n}", start.degree());
    }
    // gap k sits at slope −1 + 2k/N, where σ_U switches between the k-th and (k+1)-th smallest u
    let target: Vec<f64> = u.windows(2).rev().map(|p| kappa * (p[0] - p[1]) / constant).collect();
    let residual = |x: &[f64]| -> Result<Vec<f64>> {
        let p = sw_periods(&SwCurve::from_lower(x)?)?;
        Ok(p.iter().zip(&target).map(|(a, b)| a - b).collect())
    };
    let size = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>().sqrt();
    let scale = target.iter().fold(0.0f64, |m, v| m.max(*v));
    let mut x = start.lower().to_vec();
    let mut r = residual(&x)?;
    let mut trace = Vec::new();
    for iteration in 0..100 {
        trace.push(size(&r));
        if size(&r) < 1e-11 * scale.max(1.0) {
            let curve = SwCurve::from_lower(&x)?;
            let periods = sw_periods(&curve)?;
            let worst = r.iter().fold(0.0f64, |m, v| m.max(v.abs())) * constant;
            return Ok(PeriodMatch { curve, constant, periods, residual: worst, iterations: iteration });
        }
        let m = n - 1;
        let mut jac = nalgebra::DMatrix::zeros(m, m);
        for j in 0..m {
            let step = 1e-6 * (1.0 + x[j].abs());
            let mut xp = x.clone();
            xp[j] += step;
            let mut xm = x.clone();
            xm[j] -= step;
            let (rp, rm) = match (residual(&xp), residual(&xm)) {
                (Ok(rp), Ok(rm)) => (rp, rm),
                _ => bail!(Numeric, "period Jacobian left the space of real curves at {x:?} (residual trace {trace:?})"),
            };
            for i in 0..m {
                jac[(i, j)] = (rp[i] - rm[i]) / (2.0 * step);
            }
        }
        let rhs = nalgebra::DVector::from_vec(r.iter().map(|v| -v).collect());
        let Some(delta) = jac.lu().solve(&rhs) else {
            bail!(Numeric, "singular period Jacobian at {x:?} (residual trace {trace:?})");
        };
        let mut t = 1.0;
        loop {
            let trial: Vec<f64> = x.iter().zip(delta.iter()).map(|(a, d)| a + t * d).collect();
            if let Ok(rt) = residual(&trial) {
                if size(&rt) < size(&r) {
                    x = trial;
                    r = rt;
                    break;
                }
            }
            t /= 2.0;
            if t < 1e-10 {
                bail!(Numeric, "period matching stalled at {x:?} (residual trace {trace:?})");
            }
        }
    }
    bail!(Numeric, "period matching did not converge in 100 Newton steps (residual trace {trace:?})")
}
