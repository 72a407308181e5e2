use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::{bail, Error, Result};

/// A point of the lattice `Z + 1/2`, stored as `floor + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt {
    floor: i64,
}

impl HalfInt {
    /// The half-integer `floor + 1/2`.
    pub const fn from_floor(floor: i64) -> Self {
        HalfInt { floor }
    }

    /// The half-integer `num / 2`; `num` must be odd.
    pub fn from_twice(num: i64) -> Result<Self> {
        if num.rem_euclid(2) != 1 {
            bail!(Argument, "{num}/2 is not a half-integer");
        }
        Ok(HalfInt { floor: num.div_euclid(2) })
    }

    /// Nearest lattice point to a real number (ties go up).
    pub fn nearest(x: f64) -> Self {
        let f = x.floor() as i64;
        let up = HalfInt::from_floor(f);
        let down = HalfInt::from_floor(f - 1);
        if (up.value() - x).abs() <= (x - down.value()).abs() {
            up
        } else {
            down
        }
    }

    pub fn floor(self) -> i64 {
        self.floor
    }

    /// `2x` as an (odd) integer.
    pub fn twice(self) -> i64 {
        2 * self.floor + 1
    }

    pub fn value(self) -> f64 {
        self.floor as f64 + 0.5
    }

    pub fn is_positive(self) -> bool {
        self.floor >= 0
    }

    /// Representative of `x mod n` in `{1/2, …, n − 1/2}`.
    pub fn residue(self, n: usize) -> usize {
        self.floor.rem_euclid(n as i64) as usize
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt { floor: self.floor + rhs }
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt { floor: self.floor - rhs }
    }
}

impl Sub for HalfInt {
    type Output = i64;
    fn sub(self, rhs: HalfInt) -> i64 {
        self.floor - rhs.floor
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.twice())
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"15/2"`, `"-1/2"` or decimal `"7.5"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(num) = s.strip_suffix("/2") {
            let num: i64 = num.trim().parse().map_err(|_| Error::Argument(format!("bad half-integer {s:?}")))?;
            return HalfInt::from_twice(num);
        }
        let x: f64 = s.parse().map_err(|_| Error::Argument(format!("bad half-integer {s:?}")))?;
        let twice = 2.0 * x;
        if twice.fract() != 0.0 {
            bail!(Argument, "{s} is not a half-integer");
        }
        HalfInt::from_twice(twice as i64)
    }
}

/// The fermionic coordinates `𝔖(λ) = {λ_i − i + 1/2}` as a finite excitation
/// of the Dirac sea: occupied positive sites and empty negative sites.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParticleSet {
    positives: BTreeSet<HalfInt>,
    negative_holes: BTreeSet<HalfInt>,
}

impl ParticleSet {
    pub fn new(positives: BTreeSet<HalfInt>, negative_holes: BTreeSet<HalfInt>) -> Result<Self> {
        if positives.iter().any(|x| !x.is_positive()) {
            bail!(Argument, "positive particles must lie above zero");
        }
        if negative_holes.iter().any(|x| x.is_positive()) {
            bail!(Argument, "holes must lie below zero");
        }
        if positives.len() != negative_holes.len() {
            bail!(
                Invariant,
                "unbalanced particle set: {} particles vs {} holes",
                positives.len(),
                negative_holes.len()
            );
        }
        Ok(ParticleSet { positives, negative_holes })
    }

    pub fn positives(&self) -> &BTreeSet<HalfInt> {
        &self.positives
    }

    pub fn negative_holes(&self) -> &BTreeSet<HalfInt> {
        &self.negative_holes
    }

    pub fn contains(&self, x: HalfInt) -> bool {
        if x.is_positive() {
            self.positives.contains(&x)
        } else {
            !self.negative_holes.contains(&x)
        }
    }

    /// Lowest hole, or `-1/2` for the vacuum; every site below it is occupied.
    pub fn floor_site(&self) -> HalfInt {
        self.negative_holes.iter().next().copied().unwrap_or(HalfInt::from_floor(-1))
    }
}

impl Partition {
    /// `𝔖(λ)` in particle/hole form.
    pub fn particles(&self) -> ParticleSet {
        let mut positives = BTreeSet::new();
        let mut occupied_neg = BTreeSet::new();
        for i in 1..=self.len() {
            let x = HalfInt::from_floor(self.part(i) as i64 - i as i64);
            if x.is_positive() {
                positives.insert(x);
            } else {
                occupied_neg.insert(x);
            }
        }
        // sites -i+1/2 with i > ℓ are all occupied; holes lie in {-1/2, …, -ℓ+1/2}
        let negative_holes = (1..=self.len() as i64)
            .map(|i| HalfInt::from_floor(-i))
            .filter(|x| !occupied_neg.contains(x))
            .collect();
        ParticleSet { positives, negative_holes }
    }

    /// Descending list of the first `count` elements of `𝔖(λ)`.
    pub fn coordinates(&self, count: usize) -> Vec<HalfInt> {
        (1..=count).map(|i| HalfInt::from_floor(self.part(i) as i64 - i as i64)).collect()
    }

    /// Inverse of [`Partition::particles`].
    pub fn from_particles(p: &ParticleSet) -> Result<Partition> {
        if p.positives.len() != p.negative_holes.len() {
            bail!(
                Invariant,
                "unbalanced particle set: {} particles vs {} holes",
                p.positives.len(),
                p.negative_holes.len()
            );
        }
        let depth = p.negative_holes.iter().next().map(|h| -h.floor()).unwrap_or(0);
        let mut occupied: Vec<HalfInt> = p.positives.iter().rev().copied().collect();
        for k in 1..=depth {
            let x = HalfInt::from_floor(-k);
            if !p.negative_holes.contains(&x) {
                occupied.push(x);
            }
        }
        let mut parts = Vec::with_capacity(occupied.len());
        for (i, x) in occupied.iter().enumerate() {
            let part = x.floor() + i as i64 + 1;
            if part < 0 {
                bail!(Invariant, "particle set is not a partition");
            }
            parts.push(part as u32);
        }
        Partition::from_parts(parts.into_iter().filter(|&x| x > 0).collect())
    }
}
