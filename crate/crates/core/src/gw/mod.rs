//! Stationary Gromov-Witten invariants of curves and Hurwitz numbers as exact
//! sums over partitions, with independent cross-checks.

use std::collections::HashMap;

use num::bigint::{BigInt, BigUint};
use num::complex::Complex64;
use num::{One, Zero};
use rayon::prelude::*;

use crate::error::{bail, Error, Result};
use crate::fock::{apply_alpha, formal_eigenvalue, FockVector, MultiSeries, QSeries};
use crate::partition::{biguint_to_f64, central_character, class_size, dimension, enumerate_partitions, factorial, power_sum, CycleType, Partition};
use crate::Rational;

pub const MAX_GW_DEGREE: usize = 14;
pub const MAX_GW_INSERTIONS: usize = 4;
pub const MAX_GENERATING_DEGREE: usize = 8;
pub const MAX_HURWITZ_DEGREE: usize = 10;
pub const MAX_BRANCH_POINTS: usize = 6;
pub const MAX_BRUTE_DEGREE: usize = 5;
pub const MAX_BRUTE_TUPLES: f64 = 1e8;
pub const MAX_Q_ORDER: usize = 40;

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn ratio_power(base: &Rational, exponent: i64) -> Rational {
    if exponent >= 0 {
        num::pow(base.clone(), exponent as usize)
    } else {
        num::pow(base.recip(), exponent.unsigned_abs() as usize)
    }
}

/// `(dim λ / d!)^{2 − 2g_X}`.
fn plancherel_power(lambda: &Partition, target_genus: usize) -> Rational {
    let ratio = Rational::new(BigInt::from(dimension(lambda)), BigInt::from(factorial(lambda.size())));
    ratio_power(&ratio, 2 - 2 * target_genus as i64)
}

/// A stationary invariant `⟨τ_{k_1}(pt) ⋯ τ_{k_n}(pt)⟩_d` of a genus-`g_X` target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwQuery {
    pub degree: usize,
    pub insertions: Vec<usize>,
    pub target_genus: usize,
}

impl GwQuery {
    pub fn new(degree: usize, insertions: Vec<usize>, target_genus: usize) -> Self {
        GwQuery { degree, insertions, target_genus }
    }

    /// Domain genus `g` from `Σ k_i = 2d(1 − g_X) + 2g − 2`, if it is a nonnegative integer.
    pub fn domain_genus(&self) -> Option<usize> {
        let k: i64 = self.insertions.iter().map(|&k| k as i64).sum();
        let twice = k + 2 - 2 * self.degree as i64 * (1 - self.target_genus as i64);
        (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as usize)
    }

    /// `(1/∏(k_i+1)!) Σ_{|λ|=d} (dim λ/d!)^{2−2g_X} ∏ p_{k_i+1}(λ)`, possibly disconnected domains.
    pub fn evaluate(&self) -> Result<Rational> {
        evaluate(self, true)
    }
}

fn evaluate(q: &GwQuery, parallel: bool) -> Result<Rational> {
    if q.degree > MAX_GW_DEGREE {
        bail!(Resource, "degree {} exceeds the limit {MAX_GW_DEGREE}", q.degree);
    }
    if q.insertions.len() > MAX_GW_INSERTIONS {
        bail!(Resource, "{} insertions exceed the limit {MAX_GW_INSERTIONS}", q.insertions.len());
    }
    let term = |lambda: &Partition| -> Result<Rational> {
        let mut t = plancherel_power(lambda, q.target_genus);
        for &k in &q.insertions {
            t *= power_sum(k + 1, lambda)?;
        }
        Ok(t)
    };
    let partitions = enumerate_partitions(q.degree)?;
    let sum = if parallel {
        partitions
            .par_iter()
            .map(term)
            .try_reduce(Rational::zero, |a, b| Ok(a + b))?
    } else {
        partitions.iter().try_fold(Rational::zero(), |acc, l| Ok::<_, Error>(acc + term(l)?))?
    };
    let norm: BigUint = q.insertions.iter().map(|&k| factorial(k + 1)).product();
    Ok(sum / int(norm))
}

/// `⟨∏ τ_{k_i}(pt)⟩_d` for the target `P¹`.
pub fn gw_stationary(degree: usize, insertions: &[usize]) -> Result<Rational> {
    GwQuery::new(degree, insertions.to_vec(), 0).evaluate()
}

/// [`gw_stationary`] for a target of genus `g_X`.
pub fn gw_stationary_target(degree: usize, insertions: &[usize], target_genus: usize) -> Result<Rational> {
    GwQuery::new(degree, insertions.to_vec(), target_genus).evaluate()
}

/// Single-threaded evaluation, for checking that the parallel reduction is order independent.
pub fn gw_stationary_serial(q: &GwQuery) -> Result<Rational> {
    evaluate(q, false)
}

/// `⟨α_1^d ℰ(z_1) ⋯ ℰ(z_n) α_{−1}^d⟩ / (d!)²` as a Laurent series through `z_i^order`,
/// computed with operators on the truncated Fock space.
pub fn gw_generating(degree: usize, n_insertions: usize, order: i32) -> Result<MultiSeries> {
    if degree > MAX_GENERATING_DEGREE {
        bail!(Resource, "degree {degree} exceeds the limit {MAX_GENERATING_DEGREE}");
    }
    let mut v: FockVector<MultiSeries> = FockVector::vacuum(degree);
    for _ in 0..degree {
        v = apply_alpha(-1, &v)?;
    }
    v = v.apply_diagonal(|l| Ok(formal_eigenvalue(l, n_insertions, order)))?;
    for _ in 0..degree {
        v = apply_alpha(1, &v)?;
    }
    let d_fact = int(factorial(degree));
    let scale = MultiSeries::constant((&d_fact * &d_fact).recip());
    Ok(crate::fock::Coeff::mul(&v.coefficient(&Partition::empty()), &scale))
}

/// Taylor coefficients of `𝒮(z)^{2d−1}/(d!)²` in `z²`, `𝒮(z) = sinh(z/2)/(z/2)`, through `z^{2 g_max}`.
pub fn one_point_series(degree: usize, g_max: usize) -> Vec<Rational> {
    // 𝒮 = Σ_m (z²)^m / (4^m (2m+1)!)
    let s: Vec<Rational> = (0..=g_max)
        .map(|m| Rational::new(BigInt::one(), BigInt::from(4u32).pow(m as u32) * BigInt::from(factorial(2 * m + 1))))
        .collect();
    let mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        (0..=g_max)
            .map(|n| (0..=n).map(|i| &a[i] * &b[n - i]).fold(Rational::zero(), |x, y| x + y))
            .collect()
    };
    let exponent = 2 * degree as i64 - 1;
    let base = if exponent >= 0 {
        s
    } else {
        // 1/𝒮 by the recursion for the reciprocal of a series with constant term 1
        let mut inv = vec![Rational::zero(); g_max + 1];
        inv[0] = Rational::one();
        for n in 1..=g_max {
            inv[n] = -(1..=n).map(|i| &s[i] * &inv[n - i]).fold(Rational::zero(), |x, y| x + y);
        }
        inv
    };
    let mut out = vec![Rational::zero(); g_max + 1];
    out[0] = Rational::one();
    for _ in 0..exponent.unsigned_abs() {
        out = mul(&out, &base);
    }
    let d_fact = int(factorial(degree));
    let norm = &d_fact * &d_fact;
    out.into_iter().map(|c| c / &norm).collect()
}

/// A connected one-point invariant `⟨τ_k(pt)⟩°_d` with `k = 2g − 2 + 2d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectedOnePoint {
    pub genus: usize,
    pub insertion: usize,
    pub value: Rational,
}

/// `⟨τ_k⟩°_d` from the disconnected sums: `⟨τ_k⟩_d = Σ_{d' ≤ d} ⟨τ_k⟩°_{d'} / (d − d')!`.
pub fn connected_from_disconnected(degree: usize, insertion: usize) -> Result<Rational> {
    let mut connected: Vec<Rational> = Vec::with_capacity(degree + 1);
    for d in 0..=degree {
        let mut value = gw_stationary(d, &[insertion])?;
        for (dp, c) in connected.iter().enumerate() {
            value -= c / int(factorial(d - dp));
        }
        connected.push(value);
    }
    Ok(connected.pop().expect("degree + 1 entries"))
}

/// `⟨τ_{2g−2+2d}(pt)⟩°_d` for `g ≤ g_max` (and `2g − 2 + 2d ≥ 0`), by two routes: the
/// closed form `𝒮(z)^{2d−1}/(d!)²` and the disconnected partition sums. The routes must agree.
pub fn connected_1pt(degree: usize, g_max: usize) -> Result<Vec<ConnectedOnePoint>> {
    let series = one_point_series(degree, g_max);
    let mut out = Vec::new();
    for (genus, closed) in series.into_iter().enumerate() {
        let k = 2 * genus as i64 - 2 + 2 * degree as i64;
        if k < 0 {
            continue;
        }
        let insertion = k as usize;
        let summed = connected_from_disconnected(degree, insertion)?;
        if summed != closed {
            bail!(
                Invariant,
                "connected <tau_{insertion}>_{degree}: closed form gives {closed}, partition sums give {summed}"
            );
        }
        out.push(ConnectedOnePoint { genus, insertion, value: closed });
    }
    Ok(out)
}

/// A Hurwitz count of degree-`d` covers of a genus-`g_X` curve with prescribed branching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzQuery {
    pub degree: usize,
    pub base_genus: usize,
    pub branch_data: Vec<CycleType>,
}

impl HurwitzQuery {
    pub fn new(degree: usize, base_genus: usize, branch_data: Vec<CycleType>) -> Result<Self> {
        if degree == 0 {
            bail!(Argument, "Hurwitz degree must be at least 1");
        }
        for eta in &branch_data {
            if eta.size() != degree {
                bail!(Argument, "branch cycle type {eta} has size {}, expected {degree}", eta.size());
            }
        }
        Ok(HurwitzQuery { degree, base_genus, branch_data })
    }
}

/// Burnside's formula `Σ_{|λ|=d} (dim λ/d!)^{2−2g_X} ∏ f_{η^(i)}(λ)`.
pub fn hurwitz_count(q: &HurwitzQuery) -> Result<Rational> {
    if q.degree > MAX_HURWITZ_DEGREE {
        bail!(Resource, "degree {} exceeds the limit {MAX_HURWITZ_DEGREE}", q.degree);
    }
    if q.branch_data.len() > MAX_BRANCH_POINTS {
        bail!(Resource, "{} branch points exceed the limit {MAX_BRANCH_POINTS}", q.branch_data.len());
    }
    enumerate_partitions(q.degree)?
        .par_iter()
        .map(|lambda| {
            let mut t = plancherel_power(lambda, q.base_genus);
            for eta in &q.branch_data {
                t *= central_character(eta, lambda)?;
            }
            Ok(t)
        })
        .try_reduce(Rational::zero, |a, b| Ok(a + b))
}

type Perm = Vec<u8>;

fn all_permutations(d: usize) -> Vec<Perm> {
    let mut out = vec![Vec::new()];
    for n in 0..d as u8 {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=p.len()).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, n);
                    q
                })
            })
            .collect();
    }
    out
}

fn cycle_type(p: &Perm) -> Partition {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for start in 0..p.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    Partition::new(parts)
}

/// `|{(a_j, b_j, σ_i) : ∏[a_j, b_j] ∏ σ_i = 1, σ_i ∈ C_{η^(i)}}| / d!`, counted in the
/// group algebra of `S_d` without characters.
pub fn hurwitz_brute(q: &HurwitzQuery) -> Result<Rational> {
    let d = q.degree;
    if d > MAX_BRUTE_DEGREE {
        bail!(Resource, "brute-force Hurwitz counting is limited to degree {MAX_BRUTE_DEGREE}");
    }
    let perms = all_permutations(d);
    let n = perms.len();
    let tuples = (n as f64).powi(2 * q.base_genus as i32)
        * q.branch_data.iter().map(|e| biguint_to_f64(&class_size(e))).product::<f64>();
    if tuples > MAX_BRUTE_TUPLES {
        bail!(Resource, "{tuples:e} tuples exceed the enumeration bound {MAX_BRUTE_TUPLES:e}");
    }
    let index: HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let compose = |a: &Perm, b: &Perm| -> Perm { b.iter().map(|&x| a[x as usize]).collect() };
    let inverse = |a: &Perm| -> Perm {
        let mut inv = vec![0u8; a.len()];
        for (i, &x) in a.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        inv
    };
    let table: Vec<Vec<usize>> = perms.iter().map(|a| perms.iter().map(|b| index[&compose(a, b)]).collect()).collect();
    let convolve = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n];
        for (i, &cx) in x.iter().enumerate().filter(|(_, c)| **c > 0) {
            for (j, &cy) in y.iter().enumerate().filter(|(_, c)| **c > 0) {
                out[table[i][j]] += cx * cy;
            }
        }
        out
    };
    let mut commutators = vec![0u64; n];
    for a in &perms {
        let ai = inverse(a);
        for b in &perms {
            let c = compose(&compose(a, b), &compose(&ai, &inverse(b)));
            commutators[index[&c]] += 1;
        }
    }
    let identity = index[&(0..d as u8).collect::<Perm>()];
    let mut acc = vec![0u64; n];
    acc[identity] = 1;
    for _ in 0..q.base_genus {
        acc = convolve(&acc, &commutators);
    }
    for eta in &q.branch_data {
        let class: Vec<u64> = perms.iter().map(|p| u64::from(cycle_type(p) == *eta)).collect();
        acc = convolve(&acc, &class);
    }
    Ok(Rational::new(BigInt::from(acc[identity]), BigInt::from(factorial(d))))
}

/// `tr q^{L_0} ∏ ℰ(z_i)` through `q^{q_order}`: stationary invariants of an elliptic target.
pub fn elliptic_series(z: &[Complex64], q_order: usize) -> Result<QSeries<Complex64>> {
    if q_order > MAX_Q_ORDER {
        bail!(Resource, "q order {q_order} exceeds the limit {MAX_Q_ORDER}");
    }
    crate::fock::trace_weighted(z, q_order)
}
