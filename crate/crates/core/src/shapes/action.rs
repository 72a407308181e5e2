use serde::Serialize;

use super::energy::LogKernel;
use super::profile::{sign, DiscreteProfile};
use crate::error::{bail, Result};

/// Convex piecewise-linear `σ_U` on `[−1, 1]`, linear on each `[−1 + 2k/N, −1 + 2(k+1)/N]`,
/// with the `u_k` as slopes in increasing order and `σ_U(−1) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceTension {
    slopes: Vec<f64>,
}

impl SurfaceTension {
    pub fn new(u: &[f64]) -> Result<Self> {
        if u.is_empty() || u.iter().any(|x| !x.is_finite()) {
            bail!(Argument, "surface tension needs a nonempty list of finite u_k");
        }
        let sum: f64 = u.iter().sum();
        let scale = u.iter().map(|x| x.abs()).fold(1.0, f64::max);
        if sum.abs() > 1e-12 * scale * u.len() as f64 {
            bail!(Argument, "the u_k must sum to zero (sum is {sum})");
        }
        let mut slopes = u.to_vec();
        slopes.sort_by(f64::total_cmp);
        Ok(SurfaceTension { slopes })
    }

    pub fn segments(&self) -> usize {
        self.slopes.len()
    }

    /// Segment slopes, nondecreasing.
    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// `−1, −1 + 2/N, …, 1`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let n = self.segments();
        (0..=n).map(|k| -1.0 + 2.0 * k as f64 / n as f64).collect()
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        if !(s.abs() <= 1.0 + 1e-12) {
            bail!(Domain, "surface tension is defined on [-1, 1], got {s}");
        }
        let width = 2.0 / self.segments() as f64;
        let mut value = 0.0;
        for (k, m) in self.slopes.iter().enumerate() {
            let left = -1.0 + k as f64 * width;
            if s <= left {
                break;
            }
            value += m * (s.min(left + width) - left);
        }
        Ok(value)
    }

    /// `argmin_a (a − y)²/2 + τσ(a)` over `[−1, 1]`.
    fn prox(&self, y: f64, tau: f64) -> f64 {
        let width = 2.0 / self.segments() as f64;
        for (k, m) in self.slopes.iter().enumerate() {
            let (left, right) = (-1.0 + k as f64 * width, -1.0 + (k + 1) as f64 * width);
            let a = y - tau * m;
            if a < left {
                return left;
            }
            if a <= right {
                return a;
            }
        }
        1.0
    }
}

pub fn surface_tension(u: &[f64]) -> Result<SurfaceTension> {
    SurfaceTension::new(u)
}

/// `S(f) = −E(f) − κ∫σ_U(f'(t)) dt`.
pub fn action(sigma: &SurfaceTension, kappa: f64, f: &DiscreteProfile) -> Result<f64> {
    let kernel = LogKernel::new(f.cells(), f.step());
    action_with(&kernel, sigma, kappa, f.step(), &f.slopes)
}

fn action_with(kernel: &LogKernel, sigma: &SurfaceTension, kappa: f64, h: f64, a: &[f64]) -> Result<f64> {
    let mut tension = 0.0;
    for s in a {
        tension += sigma.eval(s.clamp(-1.0, 1.0))?;
    }
    Ok(-kernel.energy(a) - kappa * h * tension)
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionMaximizer {
    pub profile: DiscreteProfile,
    pub action: f64,
    pub iterations: usize,
    /// Sup norm of the gradient mapping divided by the cell width.
    pub gradient_norm: f64,
}

const MAX_ITERATIONS: usize = 200_000;
const TOLERANCE: f64 = 1e-8;

/// The maximizer of `S` over slopes in `[−1, 1]` on a uniform grid of `[lo, hi]`,
/// with slope −1 to the left, +1 to the right and zero charge, by accelerated
/// proximal gradient with adaptive restart.
pub fn maximize_action(u: &[f64], kappa: f64, lo: f64, hi: f64, cells: usize) -> Result<ActionMaximizer> {
    let sigma = SurfaceTension::new(u)?;
    if !(kappa > 0.0 && kappa.is_finite()) {
        bail!(Argument, "kappa must be positive, got {kappa}");
    }
    if cells < 64 {
        bail!(Argument, "the grid needs at least 64 cells, got {cells}");
    }
    if !(lo < 0.0 && hi > 0.0) {
        bail!(Argument, "the window [{lo}, {hi}] must contain 0");
    }
    let h = (hi - lo) / cells as f64;
    let kernel = LogKernel::new(cells, h);
    let lipschitz = spectral_radius(&kernel, cells);
    let eta = 1.0 / lipschitz;
    let tau = eta * kappa * h;
    let target: f64 = (0..cells).map(|i| sign(lo + (i as f64 + 0.5) * h)).sum();
    let project = |v: &[f64]| constrained_prox(&sigma, v, tau, eta, target);

    let start = DiscreteProfile::vkls(lo, hi, cells)?;
    let mut x = project(&start.slopes);
    let mut y = x.clone();
    let mut t = 1.0f64;
    let mut norm = f64::INFINITY;
    for iteration in 1..=MAX_ITERATIONS {
        let grad = kernel.gradient(&y);
        let step: Vec<f64> = y.iter().zip(&grad).map(|(a, g)| a - eta * g).collect();
        let next = project(&step);
        norm = y.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / eta / h;
        if norm < TOLERANCE {
            return finish(&kernel, &sigma, kappa, lo, hi, next, iteration, norm);
        }
        // restart when the momentum points uphill
        let uphill: f64 = y.iter().zip(&next).zip(next.iter().zip(&x)).map(|((yi, ni), (n2, xi))| (yi - ni) * (n2 - xi)).sum();
        let t_next = if uphill > 0.0 { 1.0 } else { (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0 };
        let beta = if uphill > 0.0 { 0.0 } else { (t - 1.0) / t_next };
        y = next.iter().zip(&x).map(|(n, o)| n + beta * (n - o)).collect();
        x = next;
        t = t_next;
    }
    bail!(
        Numeric,
        "action maximization did not converge in {MAX_ITERATIONS} iterations (gradient mapping norm {norm:e}, tolerance {TOLERANCE:e})"
    )
}

#[allow(clippy::too_many_arguments)]
fn finish(
    kernel: &LogKernel,
    sigma: &SurfaceTension,
    kappa: f64,
    lo: f64,
    hi: f64,
    slopes: Vec<f64>,
    iterations: usize,
    gradient_norm: f64,
) -> Result<ActionMaximizer> {
    let (first, last) = (slopes[0], slopes[slopes.len() - 1]);
    if first > -1.0 + 1e-9 || last < 1.0 - 1e-9 {
        bail!(
            Numeric,
            "the maximizer is not saturated at the window edges (slopes {first}, {last}); widen [{lo}, {hi}]"
        );
    }
    let h = (hi - lo) / slopes.len() as f64;
    let action = action_with(kernel, sigma, kappa, h, &slopes)?;
    Ok(ActionMaximizer { profile: DiscreteProfile::new(lo, hi, slopes)?, action, iterations, gradient_norm })
}

/// Largest absolute eigenvalue of the energy Hessian, with a safety margin.
fn spectral_radius(kernel: &LogKernel, n: usize) -> f64 {
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64).collect();
    let mut lambda = 0.0;
    for _ in 0..200 {
        let w = kernel.hessian_apply(&v);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let prev = lambda;
        lambda = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v = w.iter().map(|x| x / norm).collect();
        if (lambda - prev).abs() < 1e-6 * lambda {
            break;
        }
    }
    1.05 * lambda
}

/// Prox of `τσ` per coordinate plus the box, with `Σ a = target` enforced by a multiplier.
fn constrained_prox(sigma: &SurfaceTension, v: &[f64], tau: f64, eta: f64, target: f64) -> Vec<f64> {
    let apply = |mu: f64| -> Vec<f64> { v.iter().map(|y| sigma.prox(y - eta * mu, tau)).collect() };
    let excess = |mu: f64| apply(mu).iter().sum::<f64>() - target;
    // the sum is nonincreasing in mu
    let mut span = 1.0;
    while excess(-span) < 0.0 || excess(span) > 0.0 {
        span *= 2.0;
    }
    let (mut a, mut b) = (-span, span);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        if excess(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    apply(0.5 * (a + b))
}
