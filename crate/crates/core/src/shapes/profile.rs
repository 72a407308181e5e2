use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{bail, Result};
use crate::partition::{Partition, Profile};
use crate::special::integrate;

/// Limit-shape slope `(2/π) arcsin(x/2)` on `[−2, 2]`, `sign(x)` outside.
pub fn vkls_slope(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        x.signum()
    } else {
        2.0 / PI * (x / 2.0).asin()
    }
}

/// Limit shape `Ω(x) = (2/π)(x arcsin(x/2) + √(4 − x²))` on `[−2, 2]`, `|x|` outside.
pub fn vkls_height(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        x.abs()
    } else {
        2.0 / PI * (x * (x / 2.0).asin() + (4.0 - x * x).sqrt())
    }
}

/// A profile with constant slope on each cell of a uniform grid over `[lo, hi]`;
/// slope −1 to the left and +1 to the right, `f(lo) = |lo|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteProfile {
    pub lo: f64,
    pub hi: f64,
    pub slopes: Vec<f64>,
}

impl DiscreteProfile {
    pub fn new(lo: f64, hi: f64, slopes: Vec<f64>) -> Result<Self> {
        if !(lo < hi) || slopes.is_empty() {
            bail!(Argument, "a discrete profile needs lo < hi and at least one cell");
        }
        if slopes.iter().any(|s| !(s.abs() <= 1.0 + 1e-12)) {
            bail!(Argument, "profile slopes must lie in [-1, 1]");
        }
        Ok(DiscreteProfile { lo, hi, slopes })
    }

    /// Cell-averaged slopes of `f` given its height function, `(f(b) − f(a))/h`.
    pub fn from_heights(lo: f64, hi: f64, cells: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let h = (hi - lo) / cells as f64;
        let slopes = (0..cells)
            .map(|i| {
                let (a, b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
                ((f(b) - f(a)) / h).clamp(-1.0, 1.0)
            })
            .collect();
        Self::new(lo, hi, slopes)
    }

    /// The limit shape averaged over the cells of the grid.
    pub fn vkls(lo: f64, hi: f64, cells: usize) -> Result<Self> {
        Self::from_heights(lo, hi, cells, vkls_height)
    }

    /// The profile of `λ` scaled by `1/√|λ|` in both directions.
    pub fn of_partition(lambda: &Partition, lo: f64, hi: f64, cells: usize) -> Result<Self> {
        let n = lambda.size().max(1) as f64;
        let p = Profile::of_partition(lambda, 1.0 / n.sqrt())?;
        Self::from_heights(lo, hi, cells, |x| p.eval(x))
    }

    pub fn cells(&self) -> usize {
        self.slopes.len()
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / self.cells() as f64
    }

    /// Grid nodes `lo, lo + h, …, hi`.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        (0..=self.cells()).map(|i| self.lo + i as f64 * h).collect()
    }

    pub fn centers(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.cells()).map(|i| self.lo + (i as f64 + 0.5) * h).collect()
    }

    /// Heights at the nodes, integrated from `f(lo) = |lo|`.
    pub fn heights(&self) -> Vec<f64> {
        let h = self.step();
        let mut out = Vec::with_capacity(self.cells() + 1);
        out.push(self.lo.abs());
        for s in &self.slopes {
            let last = *out.last().unwrap();
            out.push(last + s * h);
        }
        out
    }

    pub fn slope_at(&self, x: f64) -> f64 {
        if x < self.lo {
            return -1.0;
        }
        if x >= self.hi {
            return 1.0;
        }
        let i = (((x - self.lo) / self.step()) as usize).min(self.cells() - 1);
        self.slopes[i]
    }

    pub fn height_at(&self, x: f64) -> f64 {
        let hs = self.heights();
        if x <= self.lo {
            return hs[0] + (self.lo - x);
        }
        if x >= self.hi {
            return hs[self.cells()] + (x - self.hi);
        }
        let h = self.step();
        let i = (((x - self.lo) / h) as usize).min(self.cells() - 1);
        hs[i] + self.slopes[i] * (x - (self.lo + i as f64 * h))
    }

    /// `∫ (f' − sign x) dx`, zero when the profile returns to `|x|` on the right.
    pub fn charge(&self) -> f64 {
        let h = self.step();
        self.centers().iter().zip(&self.slopes).map(|(x, s)| (s - sign(*x)) * h).sum()
    }

    /// Largest slope difference over cells inside `[a, b]`; grids must coincide.
    pub fn slope_distance(&self, other: &DiscreteProfile, a: f64, b: f64) -> Result<f64> {
        if self.cells() != other.cells() || (self.lo - other.lo).abs() > 1e-12 || (self.hi - other.hi).abs() > 1e-12 {
            bail!(Argument, "slope comparison needs identical grids");
        }
        let h = self.step();
        Ok((0..self.cells())
            .filter(|&i| self.lo + i as f64 * h >= a - 1e-12 && self.lo + (i + 1) as f64 * h <= b + 1e-12)
            .map(|i| (self.slopes[i] - other.slopes[i]).abs())
            .fold(0.0, f64::max))
    }
}

pub(crate) fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Heights of a slope function by numeric integration from `−R`, for cross-checking closed forms.
pub fn integrate_slope(slope: impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    let r = x.abs().max(3.0).ceil() + 1.0;
    let mut total = r;
    let mut a = -r;
    while a < x {
        let b = (a + 1.0).min(x);
        total += integrate(&slope, a, b, 1e-13)?;
        a = b;
    }
    Ok(total)
}
