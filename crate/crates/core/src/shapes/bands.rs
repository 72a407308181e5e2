use std::f64::consts::PI;

use num::complex::Complex64;
use serde::Serialize;

use crate::error::{bail, Result};
use crate::kernels::{kernel_eval, KernelSpec};
use crate::special::bisect;
use crate::HalfInt;

/// `g(φ) = Σ k t_k e^{ikφ} + Σ k t̄_k e^{−ikφ}`; entry `k−1` holds `t_k`.
/// Requires `t̄ = conj(t)` so that `g` is real.
pub fn g_of_phi(t: &[Complex64], t_bar: &[Complex64], phi: f64) -> Result<f64> {
    check_conjugate(t, t_bar)?;
    Ok(g_unchecked(t, t_bar, phi))
}

fn check_conjugate(t: &[Complex64], t_bar: &[Complex64]) -> Result<()> {
    let n = t.len().max(t_bar.len());
    let zero = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let a = t.get(k).copied().unwrap_or(zero);
        let b = t_bar.get(k).copied().unwrap_or(zero);
        if (a.conj() - b).norm() > 1e-12 * (1.0 + a.norm()) {
            bail!(Domain, "g(φ) is real only for t̄ = conj(t); mismatch at k = {}", k + 1);
        }
    }
    Ok(())
}

fn g_unchecked(t: &[Complex64], t_bar: &[Complex64], phi: f64) -> f64 {
    let mut s = Complex64::new(0.0, 0.0);
    for (k, c) in t.iter().enumerate() {
        s += (k + 1) as f64 * c * Complex64::from_polar(1.0, (k + 1) as f64 * phi);
    }
    for (k, c) in t_bar.iter().enumerate() {
        s += (k + 1) as f64 * c * Complex64::from_polar(1.0, -((k + 1) as f64) * phi);
    }
    s.re
}

/// The arcs `{φ : g(φ) ≥ x̄}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandGapStructure {
    pub level: f64,
    /// Disjoint `[α_i, β_i]` with `α_i ∈ [0, 2π)` and `β_i = α_i + length` (so `β_i` may exceed `2π`).
    pub intervals: Vec<(f64, f64)>,
    /// Set when the level is within `10⁻¹²` of a critical value of `g`.
    pub warning: Option<String>,
}

impl BandGapStructure {
    /// `Σ |β_i − α_i| / 2π`.
    pub fn density(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum::<f64>() / (2.0 * PI)
    }
}

fn samples_for(t: &[Complex64], t_bar: &[Complex64]) -> usize {
    4096 * t.len().max(t_bar.len()).max(1)
}

/// Arcs where `g ≥ x̄`, found by a fine scan and bisection of the sign changes of `g − x̄`.
pub fn bands_at_level(t: &[Complex64], t_bar: &[Complex64], level: f64) -> Result<BandGapStructure> {
    check_conjugate(t, t_bar)?;
    let g = |phi: f64| g_unchecked(t, t_bar, phi);
    let m = samples_for(t, t_bar);
    let step = 2.0 * PI / m as f64;
    let vals: Vec<f64> = (0..m).map(|i| g(i as f64 * step)).collect();
    let warning = critical_values(&g, &vals, step)
        .into_iter()
        .find(|c| (c - level).abs() < 1e-12)
        .map(|c| format!("level {level} is a critical value of g ({c}): edge of the limit shape"));
    let Some(start) = vals.iter().position(|&v| v < level) else {
        return Ok(BandGapStructure { level, intervals: vec![(0.0, 2.0 * PI)], warning });
    };
    // walk once around the circle from a point below the level
    let mut intervals = Vec::new();
    let mut open: Option<f64> = None;
    for k in 1..=m {
        let (i0, i1) = ((start + k - 1) % m, (start + k) % m);
        let (p0, p1) = (start as f64 * step + (k - 1) as f64 * step, start as f64 * step + k as f64 * step);
        let (below0, below1) = (vals[i0] < level, vals[i1] < level);
        if below0 && !below1 {
            open = Some(bisect(|p| g(p) - level, p0, p1, 1e-15)?);
        } else if !below0 && below1 {
            let end = bisect(|p| g(p) - level, p0, p1, 1e-15)?;
            let a = open.take().expect("an arc closes only after it opens");
            let shift = (a / (2.0 * PI)).floor() * 2.0 * PI;
            intervals.push((a - shift, end - shift));
        }
    }
    intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
    for (a, b) in &intervals {
        let mid = g(0.5 * (a + b));
        if mid < level - 1e-9 {
            bail!(Numeric, "band orientation check failed at level {level}: g(mid) = {mid}");
        }
    }
    Ok(BandGapStructure { level, intervals, warning })
}

/// Local extreme values of `g`, refined by golden-section search around scan extrema.
fn critical_values(g: &impl Fn(f64) -> f64, vals: &[f64], step: f64) -> Vec<f64> {
    let m = vals.len();
    let mut out = Vec::new();
    for i in 0..m {
        let (a, b, c) = (vals[(i + m - 1) % m], vals[i], vals[(i + 1) % m]);
        let is_max = b >= a && b > c;
        let is_min = b <= a && b < c;
        if !(is_max || is_min) {
            continue;
        }
        let sign = if is_max { -1.0 } else { 1.0 };
        let (mut lo, mut hi) = ((i as f64 - 1.0) * step, (i as f64 + 1.0) * step);
        let r = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let x1 = hi - r * (hi - lo);
            let x2 = lo + r * (hi - lo);
            if sign * g(x1) < sign * g(x2) {
                hi = x2;
            } else {
                lo = x1;
            }
        }
        out.push(g(0.5 * (lo + hi)));
    }
    out
}

/// Limiting density `Σ |β_i − α_i| / 2π` at level `x̄`.
pub fn limit_density(t: &[Complex64], t_bar: &[Complex64], level: f64) -> Result<f64> {
    Ok(bands_at_level(t, t_bar, level)?.density())
}

/// Limiting kernel at level `x̄` and lattice distance `Δx`: the multi-band kernel of the arcs.
pub fn limit_kernel(t: &[Complex64], t_bar: &[Complex64], level: f64, dx: i64) -> Result<f64> {
    let bands = bands_at_level(t, t_bar, level)?;
    kernel_eval(&KernelSpec::MultiBand { intervals: bands.intervals }, HalfInt::from_floor(dx), HalfInt::from_floor(0))
}
