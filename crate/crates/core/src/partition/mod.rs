//! Partitions and their exact combinatorics.
//!
//! A [`Partition`] stores its parts weakly decreasing with no trailing zeros.
//! The text format used everywhere (CLI included) is comma separated parts,
//! `"8,5,4,2,2,1"`, with the empty string for the empty partition.

mod characters;
mod particles;
mod power;
mod profile;

pub use characters::{central_character, character, class_size};
pub use particles::{HalfInt, ParticleSet};
pub use power::{bernoulli, e_eigenvalue, e_eigenvalue_series, power_sum, zeta_negative};
pub use profile::Profile;

use std::fmt;
use std::str::FromStr;

use num::bigint::BigUint;
use num::{One, ToPrimitive};

use crate::error::{bail, Error, Result};

/// Default bound on `n` for [`enumerate_partitions`]; p(60) is just under 10^6.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A conjugacy class of `S(d)`, labelled by its cycle type.
pub type CycleType = Partition;

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts in any order; zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Builds a partition from parts that must already be weakly decreasing and positive.
    pub fn from_parts(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            bail!(Argument, "partition parts must be positive: {parts:?}");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            bail!(Argument, "partition parts must be weakly decreasing: {parts:?}");
        }
        Ok(Partition { parts })
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        Partition::new(vec![n])
    }

    /// The one-column partition `(1,…,1)`, i.e. the identity class of `S(n)`.
    pub fn column(n: u32) -> Self {
        Partition { parts: vec![1; n as usize] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with 1-based `i`; zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Conjugate partition.
    pub fn transpose(&self) -> Partition {
        let first = self.part(1) as usize;
        let mut cols = Vec::with_capacity(first);
        for c in 1..=first as u32 {
            cols.push(self.parts.iter().take_while(|&&p| p >= c).count() as u32);
        }
        Partition { parts: cols }
    }

    /// All partitions obtained by adding one box, ordered by the row receiving it.
    pub fn grow(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.parts.len() {
            let prev = if i == 0 { u32::MAX } else { self.parts[i - 1] };
            let cur = self.parts.get(i).copied().unwrap_or(0);
            if cur < prev {
                let mut parts = self.parts.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push(Partition { parts });
            }
        }
        out
    }

    /// All partitions obtained by removing one box, ordered by the row losing it.
    pub fn shrink(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            let next = self.parts.get(i + 1).copied().unwrap_or(0);
            if self.parts[i] > next {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                out.push(Partition { parts });
            }
        }
        out
    }

    /// Hook length, arm and leg of the cell at 1-based `(row, col)`.
    pub fn hook_arm_leg(&self, row: usize, col: usize) -> Result<(u32, u32, u32)> {
        if row == 0 || col == 0 || col > self.part(row) as usize {
            bail!(Argument, "cell ({row},{col}) is outside the diagram of ({self})");
        }
        let arm = self.part(row) - col as u32;
        let leg = self.parts.iter().skip(row).take_while(|&&p| p as usize >= col).count() as u32;
        Ok((1 + arm + leg, arm, leg))
    }

    /// Arms and legs of every cell, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let conj = self.transpose();
        self.parts.iter().enumerate().flat_map(move |(r, &len)| {
            let conj = conj.clone();
            (1..=len).map(move |c| (len - c, conj.part(c as usize) - (r as u32 + 1)))
        })
    }

    /// Product of all hook lengths.
    pub fn hook_product(&self) -> BigUint {
        self.cells().map(|(a, l)| BigUint::from(1 + a + l)).product()
    }

    /// Number of distinct part values.
    pub fn distinct_parts(&self) -> usize {
        let mut n = 0;
        let mut last = 0;
        for &p in &self.parts {
            if p != last {
                n += 1;
                last = p;
            }
        }
        n
    }

    /// Side of the Durfee square: number of `i` with `λ_i ≥ i`.
    pub fn durfee(&self) -> usize {
        self.parts.iter().enumerate().take_while(|(i, &p)| p as usize > *i).count()
    }

    /// `z_η = ∏ m_i! i^{m_i}`, the centralizer order of the class with this cycle type.
    pub fn centralizer_order(&self) -> BigUint {
        let mut z = BigUint::one();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut m = 0u32;
            while i < self.parts.len() && self.parts[i] == p {
                m += 1;
                i += 1;
                z *= BigUint::from(p) * BigUint::from(m);
            }
        }
        z
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Argument(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_parts(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_partitions_with_limit(n: usize, limit: usize) -> Result<Vec<Partition>> {
    if n > limit {
        bail!(Resource, "enumerating partitions of {n} exceeds the limit {limit}");
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition::empty());
        return Ok(out);
    }
    // Standard successor rule on the descending sequence of parts.
    let mut a: Vec<u32> = vec![n as u32];
    loop {
        out.push(Partition { parts: a.clone() });
        let mut rem = 0u32;
        while let Some(&1) = a.last() {
            a.pop();
            rem += 1;
        }
        let Some(last) = a.last_mut() else { break };
        *last -= 1;
        let k = *last;
        rem += 1;
        while rem > k {
            a.push(k);
            rem -= k;
        }
        a.push(rem);
    }
    Ok(out)
}

/// Every partition with `|λ| ≤ e_max`, grouped by size.
pub fn partitions_up_to(e_max: usize) -> Result<Vec<Vec<Partition>>> {
    (0..=e_max).map(enumerate_partitions).collect()
}

/// `dim λ`, the number of standard Young tableaux, by the hook-length formula.
pub fn dimension(lambda: &Partition) -> BigUint {
    let dim = factorial(lambda.size()) / lambda.hook_product();
    #[cfg(debug_assertions)]
    if lambda.size() <= 8 {
        debug_assert_eq!(dim, dimension_by_differences(lambda));
        debug_assert_eq!(dim, growth_paths(lambda));
    }
    dim
}

/// `dim λ = |λ|! ∏_{i<j≤k} (λ_i − λ_j + j − i) / ∏_i (λ_i + k − i)!` with `k = ℓ(λ)`.
pub fn dimension_by_differences(lambda: &Partition) -> BigUint {
    let k = lambda.len();
    let mut num = factorial(lambda.size());
    let mut den = BigUint::one();
    for i in 1..=k {
        den *= factorial(lambda.part(i) as usize + k - i);
        for j in i + 1..=k {
            num *= BigUint::from(lambda.part(i) as usize - lambda.part(j) as usize + j - i);
        }
    }
    num / den
}

/// Number of ways to grow `λ` from `∅` one box at a time.
pub fn growth_paths(lambda: &Partition) -> BigUint {
    use std::collections::HashMap;
    fn count(l: &Partition, memo: &mut HashMap<Partition, BigUint>) -> BigUint {
        if l.is_empty() {
            return BigUint::one();
        }
        if let Some(v) = memo.get(l) {
            return v.clone();
        }
        let v: BigUint = l.shrink().iter().map(|m| count(m, memo)).sum();
        memo.insert(l.clone(), v.clone());
        v
    }
    count(lambda, &mut HashMap::new())
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `dim λ` as a float, via `log dim`; usable far beyond the exact range.
pub fn log_dimension(lambda: &Partition) -> f64 {
    let n = lambda.size();
    let log_fact: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    let log_hooks: f64 = lambda.cells().map(|(a, l)| ((1 + a + l) as f64).ln()).sum();
    log_fact - log_hooks
}

/// `(dim λ / |λ|!)²` in floating point.
pub fn plancherel_factor(lambda: &Partition) -> f64 {
    let log_hooks: f64 = lambda.cells().map(|(a, l)| ((1 + a + l) as f64).ln()).sum();
    (-2.0 * log_hooks).exp()
}

pub(crate) fn biguint_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// p(n) by Euler's pentagonal recurrence.
    fn partition_count(n: usize) -> usize {
        let mut t = vec![0i64; n + 1];
        t[0] = 1;
        for i in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let s = if k % 2 == 1 { 1 } else { -1 };
                t[i] += s * t[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    t[i] += s * t[i - g2];
                }
                k += 1;
            }
        }
        t[n] as usize
    }

    #[test]
    fn enumeration_counts_match_pentagonal_recurrence() {
        assert_eq!(enumerate_partitions(0).unwrap(), vec![Partition::empty()]);
        for n in 0..=25 {
            assert_eq!(enumerate_partitions(n).unwrap().len(), partition_count(n), "n = {n}");
        }
        assert_eq!(enumerate_partitions(4).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(10).unwrap().len(), 42);
    }

    #[test]
    fn enumeration_is_reverse_lexicographic_and_distinct() {
        let all = enumerate_partitions(12).unwrap();
        for w in all.windows(2) {
            assert!(w[0] > w[1], "{} then {}", w[0], w[1]);
        }
        assert_eq!(all[0], p("12"));
        assert_eq!(*all.last().unwrap(), Partition::column(12));
        let four: Vec<String> = enumerate_partitions(4).unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(four, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        assert!(matches!(enumerate_partitions(61), Err(Error::Resource(_))));
        assert!(enumerate_partitions_with_limit(5, 4).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p(""), Partition::empty());
        assert_eq!(p("8,5,4,2,2,1").to_string(), "8,5,4,2,2,1");
        assert!("2,3".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&p("2,2")), BigUint::from(2u32));
        assert_eq!(dimension(&p("7")), BigUint::one());
        assert_eq!(dimension(&p("2,1")), BigUint::from(2u32));
        assert_eq!(dimension(&p("3,2")), BigUint::from(5u32));
        assert_eq!(dimension(&Partition::empty()), BigUint::one());
    }

    #[test]
    fn dimension_routes_agree() {
        for n in 0..=8 {
            for l in enumerate_partitions(n).unwrap() {
                let d = dimension(&l);
                assert_eq!(d, dimension_by_differences(&l));
                assert_eq!(d, growth_paths(&l), "{l}");
            }
        }
    }

    #[test]
    fn burnside_sum_of_squares() {
        for n in 0..=12 {
            let s: BigUint = enumerate_partitions(n).unwrap().iter().map(|l| dimension(l).pow(2)).sum();
            assert_eq!(s, factorial(n));
        }
    }

    #[test]
    fn dimension_invariant_under_transpose() {
        for n in 0..=10 {
            for l in enumerate_partitions(n).unwrap() {
                assert_eq!(dimension(&l), dimension(&l.transpose()));
            }
        }
    }

    #[test]
    fn hooks() {
        assert_eq!(p("1").hook_arm_leg(1, 1).unwrap(), (1, 0, 0));
        assert_eq!(p("2,2").hook_arm_leg(1, 1).unwrap(), (3, 1, 1));
        assert_eq!(p("8,5,4,2,2,1").hook_arm_leg(1, 1).unwrap().0, 13);
        assert!(p("2,2").hook_arm_leg(3, 1).is_err());
        assert!(p("2,2").hook_arm_leg(1, 3).is_err());
        assert!(p("2,2").hook_arm_leg(0, 1).is_err());
        for n in 0..=12 {
            for l in enumerate_partitions(n).unwrap() {
                for r in 1..=l.len() {
                    for c in 1..=l.part(r) as usize {
                        let (h, a, g) = l.hook_arm_leg(r, c).unwrap();
                        assert_eq!(h, 1 + a + g);
                    }
                }
                let from_cells: Vec<(u32, u32)> = l.cells().collect();
                assert_eq!(from_cells.len(), n);
            }
        }
    }

    #[test]
    fn grow_and_shrink() {
        assert_eq!(Partition::empty().grow(), vec![p("1")]);
        assert_eq!(p("2,1").grow(), vec![p("3,1"), p("2,2"), p("2,1,1")]);
        assert_eq!(p("2,2").shrink(), vec![p("2,1")]);
        assert!(Partition::empty().shrink().is_empty());
        for n in 0..=10 {
            for l in enumerate_partitions(n).unwrap() {
                assert_eq!(l.grow().len(), l.distinct_parts() + 1);
                for m in l.grow() {
                    assert_eq!(m.size(), n + 1);
                    assert!(m.shrink().contains(&l));
                }
            }
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p("3").transpose(), p("1,1,1"));
        assert_eq!(p("2,2").transpose(), p("2,2"));
        assert_eq!(p("8,5,4,2,2,1").transpose(), p("6,5,3,3,2,1,1,1"));
        for n in 0..=10 {
            for l in enumerate_partitions(n).unwrap() {
                assert_eq!(l.transpose().transpose(), l);
            }
        }
    }

    #[test]
    fn centralizer() {
        assert_eq!(p("1,1,1").centralizer_order(), BigUint::from(6u32));
        assert_eq!(p("2,1").centralizer_order(), BigUint::from(2u32));
        assert_eq!(p("3").centralizer_order(), BigUint::from(3u32));
        assert_eq!(p("2,2").centralizer_order(), BigUint::from(8u32));
    }

    #[test]
    fn float_dimension_matches_exact() {
        for l in enumerate_partitions(14).unwrap() {
            let exact = biguint_to_f64(&dimension(&l));
            assert!((log_dimension(&l) - exact.ln()).abs() < 1e-12);
        }
    }
}
