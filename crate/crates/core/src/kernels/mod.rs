//! Determinantal correlation kernels on `(Z + 1/2)²`, correlation functions,
//! gap probabilities and the brute-force oracle behind them.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num::complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{bail, Result};
use crate::measures::{schur_partition_function, weight, weight_table, MeasureSpec};
use crate::partition::{partitions_up_to, HalfInt, Partition};
use crate::special::bessel_j_orders;

/// Largest `|x|` accepted by the Bessel kernel.
pub const MAX_BESSEL_ORDER: i64 = 100_000;

/// A correlation kernel.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelSpec {
    /// The Schur-measure kernel as a double contour integral with
    /// `T(z) = Σ t_k z^k − Σ t̄_k z^{−k}`, evaluated by the trapezoid rule on
    /// `|z| = r_z > |w| = r_w`, doubling nodes up to `max_nodes`.
    SchurContour { t: Vec<f64>, t_bar: Vec<f64>, r_z: f64, r_w: f64, max_nodes: usize },
    /// The discrete Bessel kernel of the poissonized Plancherel measure.
    Bessel { xi: f64 },
    /// `sin(a(x − y))/(π(x − y))`.
    Sine { a: f64 },
    /// Real Fourier transform of the indicator of a union of arcs `[α_i, β_i]`.
    MultiBand { intervals: Vec<(f64, f64)> },
}

impl KernelSpec {
    /// Contour kernel with default radii `1.2` and `1/1.2` and a node cap of 4096.
    pub fn schur_contour(t: Vec<f64>, t_bar: Vec<f64>) -> Self {
        KernelSpec::SchurContour { t, t_bar, r_z: 1.2, r_w: 1.0 / 1.2, max_nodes: 4096 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            KernelSpec::SchurContour { t, t_bar, r_z, r_w, .. } => {
                if !(*r_w > 0.0 && r_z > r_w && r_z.is_finite()) {
                    bail!(Argument, "contour radii need r_z > r_w > 0, got r_z = {r_z}, r_w = {r_w}");
                }
                if t.iter().chain(t_bar).any(|v| !v.is_finite()) {
                    bail!(Domain, "kernel parameters must be finite");
                }
            }
            KernelSpec::Bessel { xi } => {
                if !(*xi >= 0.0 && xi.is_finite()) {
                    bail!(Argument, "Bessel kernel needs ξ ≥ 0, got {xi}");
                }
            }
            KernelSpec::Sine { a } => {
                if !(0.0..=PI).contains(a) {
                    bail!(Argument, "sine kernel needs a ∈ [0, π], got {a}");
                }
            }
            KernelSpec::MultiBand { intervals } => {
                let mut iv = intervals.clone();
                if iv.iter().any(|(a, b)| !(a <= b) || !a.is_finite() || !b.is_finite()) {
                    bail!(Argument, "bands must be finite intervals with α ≤ β");
                }
                iv.sort_by(|x, y| x.0.total_cmp(&y.0));
                let total: f64 = iv.iter().map(|(a, b)| b - a).sum();
                if iv.windows(2).any(|w| w[0].1 > w[1].0) || total > 2.0 * PI + 1e-12 {
                    bail!(Argument, "bands must be disjoint arcs of total length at most 2π");
                }
            }
        }
        Ok(())
    }
}

/// `K(x, y)`.
pub fn kernel_eval(k: &KernelSpec, x: HalfInt, y: HalfInt) -> Result<f64> {
    k.validate()?;
    match k {
        KernelSpec::SchurContour { t, t_bar, r_z, r_w, max_nodes } => {
            Ok(contour_kernel(t, t_bar, *r_z, *r_w, *max_nodes, x, y)?.value)
        }
        KernelSpec::Bessel { xi } => bessel_kernel(*xi, x, y),
        KernelSpec::Sine { a } => {
            let d = (x - y) as f64;
            Ok(if d == 0.0 { a / PI } else { (a * d).sin() / (PI * d) })
        }
        KernelSpec::MultiBand { intervals } => {
            let d = (x - y) as f64;
            Ok(intervals
                .iter()
                .map(|(a, b)| if d == 0.0 { (b - a) / (2.0 * PI) } else { ((b * d).sin() - (a * d).sin()) / (2.0 * PI * d) })
                .sum())
        }
    }
}

/// `√ξ (J_{x−½} J_{y+½} − J_{x+½} J_{y−½})/(x − y)` with `J_n = J_n(2√ξ)`; on the
/// diagonal, `Σ_{s≥0} J_{x+½+s} J_{y+½+s}`.
pub fn bessel_kernel(xi: f64, x: HalfInt, y: HalfInt) -> Result<f64> {
    if x.floor().abs() > MAX_BESSEL_ORDER || y.floor().abs() > MAX_BESSEL_ORDER {
        bail!(Domain, "Bessel order beyond {MAX_BESSEL_ORDER}");
    }
    let arg = 2.0 * xi.sqrt();
    // x ± ½ are the integers floor(x) + 1 and floor(x)
    let (nx, ny) = (x.floor() + 1, y.floor() + 1);
    let reach = nx.abs().max(ny.abs()) as usize + arg as usize + 60;
    let js = bessel_j_orders(arg, reach + 1);
    let j = |n: i64| -> f64 {
        let m = n.unsigned_abs() as usize;
        let v = if m < js.len() { js[m] } else { 0.0 };
        if n < 0 && m % 2 == 1 {
            -v
        } else {
            v
        }
    };
    if x == y {
        return Ok(bessel_series(nx, ny, reach as i64, &j));
    }
    let d = (x - y) as f64;
    Ok(xi.sqrt() * (j(nx - 1) * j(ny) - j(nx) * j(ny - 1)) / d)
}

/// `Σ_{s≥0} J_{a+s} J_{b+s}`, summed while the orders are below `reach`.
pub fn bessel_series(a: i64, b: i64, reach: i64, j: &impl Fn(i64) -> f64) -> f64 {
    let mut s = 0.0;
    let mut k = 0;
    while a + k <= reach && b + k <= reach {
        s += j(a + k) * j(b + k);
        k += 1;
    }
    s
}

/// A contour-integral value with the node count it converged at.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourValue {
    pub value: f64,
    pub nodes: usize,
    pub last_change: f64,
}

fn laurent_t(t: &[f64], t_bar: &[f64], z: Complex64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for (k, &c) in t.iter().enumerate() {
        s += c * z.powi(k as i32 + 1);
    }
    for (k, &c) in t_bar.iter().enumerate() {
        s -= c * z.powi(-(k as i32 + 1));
    }
    s
}

fn contour_at(t: &[f64], t_bar: &[f64], r_z: f64, r_w: f64, n: usize, x: HalfInt, y: HalfInt) -> Complex64 {
    let px = (x.floor() + 1) as i32; // x + ½
    let py = y.floor() as i32; // y − ½, so w^{−y+½} = w^{−py}
    let node = |r: f64, j: usize| Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64);
    let a: Vec<(Complex64, Complex64)> = (0..n)
        .map(|j| {
            let z = node(r_z, j);
            (z, laurent_t(t, t_bar, z).exp() * z.powi(1 - px))
        })
        .collect();
    let b: Vec<(Complex64, Complex64)> = (0..n)
        .map(|k| {
            let w = node(r_w, k);
            (w, (-laurent_t(t, t_bar, w)).exp() * w.powi(1 + py))
        })
        .collect();
    let mut s = Complex64::new(0.0, 0.0);
    for (z, fz) in &a {
        for (w, fw) in &b {
            s += fz * fw / (z - w);
        }
    }
    s / (n * n) as f64
}

/// The double contour integral by trapezoid rule, doubling nodes from 16 until
/// successive values differ by less than `10⁻¹²`.
pub fn contour_kernel(t: &[f64], t_bar: &[f64], r_z: f64, r_w: f64, max_nodes: usize, x: HalfInt, y: HalfInt) -> Result<ContourValue> {
    let mut n = 16;
    let mut prev = contour_at(t, t_bar, r_z, r_w, n, x, y);
    loop {
        if 2 * n > max_nodes {
            bail!(Numeric, "contour quadrature for K({x}, {y}) did not converge with {n} nodes (last value {prev})");
        }
        n *= 2;
        let cur = contour_at(t, t_bar, r_z, r_w, n, x, y);
        let change = (cur - prev).norm();
        if change < 1e-12 {
            return Ok(ContourValue { value: cur.re, nodes: n, last_change: change });
        }
        prev = cur;
    }
}

/// The matrix `[K(x_i, x_j)]`, assembled in parallel.
pub fn kernel_matrix(k: &KernelSpec, xs: &[HalfInt]) -> Result<DMatrix<f64>> {
    k.validate()?;
    let m = xs.len();
    let entries: Vec<f64> = (0..m * m)
        .into_par_iter()
        .map(|idx| kernel_eval(k, xs[idx / m], xs[idx % m]))
        .collect::<Result<_>>()?;
    Ok(DMatrix::from_row_slice(m, m, &entries))
}

/// A probability computed from a determinant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Probability {
    pub value: f64,
    /// True if the raw determinant was within `10⁻¹⁰` outside `[0, 1]` and was clamped.
    pub clamped: bool,
}

fn as_probability(raw: f64, what: &str) -> Result<Probability> {
    const SLACK: f64 = 1e-10;
    if !raw.is_finite() || raw < -SLACK || raw > 1.0 + SLACK {
        bail!(Invariant, "{what} = {raw} lies outside [0, 1]");
    }
    let value = raw.clamp(0.0, 1.0);
    Ok(Probability { value, clamped: value != raw })
}

fn check_distinct(xs: &[HalfInt]) -> Result<()> {
    let mut s = xs.to_vec();
    s.sort();
    if s.windows(2).any(|w| w[0] == w[1]) {
        bail!(Argument, "query points must be distinct");
    }
    Ok(())
}

/// `Prob{X ⊂ 𝔖(λ)} = det[K(x_i, x_j)]`, for `|X| ≤ 12`.
pub fn correlation(k: &KernelSpec, xs: &[HalfInt]) -> Result<Probability> {
    check_distinct(xs)?;
    if xs.len() > 12 {
        bail!(Argument, "correlation queries are limited to 12 points, got {}", xs.len());
    }
    as_probability(kernel_matrix(k, xs)?.determinant(), "correlation")
}

/// `Prob{no particle in B} = det(I − K_B)`, for `|B| ≤ 400`.
pub fn gap_probability(k: &KernelSpec, b: &[HalfInt]) -> Result<Probability> {
    check_distinct(b)?;
    if b.len() > 400 {
        bail!(Argument, "gap sets are limited to 400 points, got {}", b.len());
    }
    let m = kernel_matrix(k, b)?;
    let id = DMatrix::<f64>::identity(b.len(), b.len());
    as_probability((id - m).determinant(), "gap probability")
}

/// `Prob{λ₁ ≤ h}` under the poissonized Plancherel measure, as the gap probability
/// of `{h + ½, h + 3/2, …}` cut where `K(x, x) < 10⁻¹⁶`.
pub fn lambda1_cdf(xi: f64, h: u32) -> Result<Probability> {
    let k = KernelSpec::Bessel { xi };
    let mut b = Vec::new();
    let mut x = HalfInt::from_floor(h as i64);
    loop {
        if b.len() >= 400 {
            bail!(Numeric, "density did not drop below 1e-16 within 400 sites above {h}");
        }
        if bessel_kernel(xi, x, x)? < 1e-16 {
            break;
        }
        b.push(x);
        x = x + 1;
    }
    gap_probability(&k, &b)
}

/// A truncated direct sum with a bound on the neglected mass.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BruteForce {
    pub value: f64,
    pub tail_bound: f64,
}

/// `Σ_{|λ| ≤ E_max, X ⊂ 𝔖(λ)} 𝔐(λ)` for several queries at once.
pub fn brute_force_correlations(spec: &MeasureSpec, queries: &[Vec<HalfInt>], e_max: usize) -> Result<Vec<BruteForce>> {
    let (weights, tail) = positive_weights(spec, e_max)?;
    let values = queries
        .par_iter()
        .map(|xs| {
            weights
                .iter()
                .filter(|(l, _)| {
                    let p = l.particles();
                    xs.iter().all(|&x| p.contains(x))
                })
                .map(|(_, w)| w)
                .sum::<f64>()
        })
        .collect::<Vec<f64>>();
    Ok(values.into_iter().map(|value| BruteForce { value, tail_bound: tail }).collect())
}

/// Single-query form of [`brute_force_correlations`].
pub fn brute_force_correlation(spec: &MeasureSpec, xs: &[HalfInt], e_max: usize) -> Result<BruteForce> {
    check_distinct(xs)?;
    Ok(brute_force_correlations(spec, &[xs.to_vec()], e_max)?[0])
}

/// `Σ_{|λ| ≤ E_max, λ₁ ≤ h} 𝔐(λ)`.
pub fn brute_force_lambda1_cdf(spec: &MeasureSpec, h: u32, e_max: usize) -> Result<BruteForce> {
    let (weights, tail) = positive_weights(spec, e_max)?;
    let value = weights.iter().filter(|(l, _)| l.part(1) <= h).map(|(_, w)| w).sum();
    Ok(BruteForce { value, tail_bound: tail })
}

/// Weights of `|λ| ≤ E_max` and a bound on `Prob{|λ| > E_max}`.
fn positive_weights(spec: &MeasureSpec, e_max: usize) -> Result<(Vec<(Partition, f64)>, f64)> {
    if e_max > 60 {
        bail!(Resource, "brute force is limited to E_max ≤ 60, got {e_max}");
    }
    match spec {
        MeasureSpec::PoissonizedPlancherel { xi } => {
            let all: Vec<Partition> = partitions_up_to(e_max)?.into_iter().flatten().collect();
            let weights = all
                .into_par_iter()
                .map(|l| weight(spec, &l).map(|w| (l, w.to_f64())))
                .collect::<Result<Vec<_>>>()?;
            Ok((weights, poisson_tail(*xi, e_max)))
        }
        MeasureSpec::Schur { t, t_bar } if !spec.is_formal() => {
            let weights = weight_table(spec, e_max)?.into_iter().map(|(l, w)| (l, w.to_f64())).collect();
            Ok((weights, schur_size_tail(t, t_bar, e_max)?))
        }
        _ => bail!(Argument, "brute force needs a poissonized Plancherel or a positive Schur measure"),
    }
}

/// `Prob{Poisson(ξ) > E}`, summed termwise.
fn poisson_tail(xi: f64, e: usize) -> f64 {
    let mut ln_term = -xi + (1..=e + 1).map(|k| xi.ln() - (k as f64).ln()).sum::<f64>();
    let mut total = 0.0;
    for n in e + 1.. {
        let term = ln_term.exp();
        total += term;
        if (n as f64) > xi && term < 1e-20 * total.max(1e-300) {
            break;
        }
        ln_term += xi.ln() - ((n + 1) as f64).ln();
    }
    total
}

/// Chernoff bound `Prob{|λ| > E} ≤ min_{q>1} exp(Σ k t_k t̄_k (q^k − 1)) q^{−(E+1)}`.
fn schur_size_tail(t: &[f64], t_bar: &[f64], e: usize) -> Result<f64> {
    schur_partition_function(t, t_bar)?;
    let log_bound = |q: f64| -> f64 {
        let s: f64 = t.iter().zip(t_bar).enumerate().map(|(k, (a, b))| (k + 1) as f64 * a * b * (q.powi(k as i32 + 1) - 1.0)).sum();
        s - (e + 1) as f64 * q.ln()
    };
    let best = (1..=2000).map(|i| log_bound(1.0 + i as f64 * 0.01)).fold(0.0, f64::min);
    Ok(best.exp().min(1.0))
}
