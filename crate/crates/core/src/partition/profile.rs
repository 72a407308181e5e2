use super::Partition;
use crate::error::{bail, Result};

/// A 1-Lipschitz piecewise-linear function equal to `|x|` far away
/// (slope −1 to the left of the first breakpoint, +1 right of the last).
///
/// Diagram profiles use the rotated convention where each box has area 2,
/// so `∫ (f_λ(x) − |x|) dx = 2|λ|`.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    breakpoints: Vec<f64>,
    slopes: Vec<f64>,
    base: f64,
}

impl Profile {
    pub fn new(breakpoints: Vec<f64>, slopes: Vec<f64>, base: f64) -> Result<Self> {
        if breakpoints.is_empty() || slopes.len() + 1 != breakpoints.len() {
            bail!(Argument, "profile needs one more breakpoint than slopes");
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            bail!(Argument, "profile breakpoints must increase strictly");
        }
        if slopes.iter().any(|s| s.abs() > 1.0 + 1e-12) {
            bail!(Argument, "profile slopes must lie in [-1, 1]");
        }
        Ok(Profile { breakpoints, slopes, base })
    }

    /// Profile of `λ` with both axes divided by `1/scale`, i.e. `x ↦ scale·f_λ(x/scale)`.
    pub fn of_partition(lambda: &Partition, scale: f64) -> Result<Self> {
        if !(scale > 0.0) {
            bail!(Argument, "profile scale must be positive, got {scale}");
        }
        let lo = -(lambda.len() as i64);
        let hi = lambda.part(1) as i64;
        if lo == hi {
            return Ok(Profile { breakpoints: vec![0.0], slopes: vec![], base: 0.0 });
        }
        let particles = lambda.particles();
        let mut breakpoints = vec![lo as f64 * scale];
        let mut slopes: Vec<f64> = Vec::new();
        for k in lo..hi {
            let s = if particles.contains(super::HalfInt::from_floor(k)) { -1.0 } else { 1.0 };
            if slopes.last() == Some(&s) {
                *breakpoints.last_mut().unwrap() = (k + 1) as f64 * scale;
            } else {
                slopes.push(s);
                breakpoints.push((k + 1) as f64 * scale);
            }
        }
        Ok(Profile { breakpoints, slopes, base: -lo as f64 * scale })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// Heights at the breakpoints.
    pub fn heights(&self) -> Vec<f64> {
        let mut h = Vec::with_capacity(self.breakpoints.len());
        h.push(self.base);
        for (i, s) in self.slopes.iter().enumerate() {
            let prev = h[i];
            h.push(prev + s * (self.breakpoints[i + 1] - self.breakpoints[i]));
        }
        h
    }

    pub fn eval(&self, x: f64) -> f64 {
        let b0 = self.breakpoints[0];
        if x <= b0 {
            return self.base + (b0 - x);
        }
        let mut y = self.base;
        for (i, s) in self.slopes.iter().enumerate() {
            let (a, b) = (self.breakpoints[i], self.breakpoints[i + 1]);
            if x <= b {
                return y + s * (x - a);
            }
            y += s * (b - a);
        }
        y + (x - self.breakpoints[self.breakpoints.len() - 1])
    }

    /// Slope at `x` (right derivative).
    pub fn slope(&self, x: f64) -> f64 {
        if x < self.breakpoints[0] {
            return -1.0;
        }
        for (i, s) in self.slopes.iter().enumerate() {
            if x < self.breakpoints[i + 1] {
                return *s;
            }
        }
        1.0
    }

    /// `∫ (f(x) − |x|) dx`, exact for the piecewise-linear profile.
    pub fn excess_area(&self) -> f64 {
        let mut xs = self.breakpoints.clone();
        let (lo, hi) = (xs[0], xs[xs.len() - 1]);
        if lo < 0.0 && hi > 0.0 && !xs.contains(&0.0) {
            xs.push(0.0);
            xs.sort_by(f64::total_cmp);
        }
        // outside [lo, hi] f − |x| is constant; it vanishes for genuine profiles
        xs.windows(2)
            .map(|w| {
                let d0 = self.eval(w[0]) - w[0].abs();
                let d1 = self.eval(w[1]) - w[1].abs();
                0.5 * (d0 + d1) * (w[1] - w[0])
            })
            .sum()
    }

    /// `sup_x |f(x) − g(x)|`, sampled at the breakpoints and on a uniform grid over `[lo, hi]`.
    pub fn sup_distance(&self, g: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> f64 {
        let grid = (0..=samples).map(|i| lo + (hi - lo) * i as f64 / samples as f64);
        self.breakpoints
            .iter()
            .copied()
            .chain(grid)
            .map(|x| (self.eval(x) - g(x)).abs())
            .fold(0.0, f64::max)
    }
}
