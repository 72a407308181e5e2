//! The five measures on partitions: exact weights, normalizations and samplers.

mod sampling;

pub use sampling::{longest_increasing_subsequence, random_permutation, rsk_shape, sample_plancherel, sample_poisson, sample_poissonized, MAX_SAMPLE_SIZE};

use std::fmt;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{bail, Result};
use crate::fock::{schur_function, schur_vector, FockVector};
use crate::partition::{dimension, enumerate_partitions, factorial, partitions_up_to, Partition};
use crate::Rational;

/// One of the measures, with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasureSpec {
    /// `(dim λ)²/n!` on partitions of `n`.
    Plancherel { n: usize },
    /// `e^{−ξ} ξ^{|λ|} (dim λ/|λ|!)²`.
    PoissonizedPlancherel { xi: f64 },
    /// `s_λ(t) s_λ(t̄)/𝒵`; entry `k−1` holds `t_k`. Signed ("formal") unless `t = t̄`.
    Schur { t: Vec<f64>, t_bar: Vec<f64> },
    /// `∏_□ 1/(((1+a)ε₁ + lε₂)(aε₁ + (1+l)ε₂))` on partitions of `d`, unnormalized.
    Jack { eps1: Rational, eps2: Rational, d: usize },
    /// `ξ^{|λ|} e^{U(λ)/ħ} (dim λ/|λ|!)²`, unnormalized; `u` has period `N = u.len()`.
    PeriodicPlancherel { u: Vec<Rational>, xi: f64, hbar: f64 },
}

impl MeasureSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::Plancherel { .. } => {}
            MeasureSpec::PoissonizedPlancherel { xi } => {
                if !(*xi > 0.0 && xi.is_finite()) {
                    bail!(Argument, "poissonized Plancherel needs ξ > 0, got {xi}");
                }
            }
            MeasureSpec::Schur { t, t_bar } => {
                if t.iter().chain(t_bar).any(|x| !x.is_finite()) {
                    bail!(Domain, "Schur parameters must be finite");
                }
            }
            MeasureSpec::Jack { eps1, eps2, .. } => {
                if eps1.is_zero() || eps2.is_zero() {
                    bail!(Argument, "Jack measure needs ε₁ε₂ ≠ 0");
                }
            }
            MeasureSpec::PeriodicPlancherel { u, xi, hbar } => {
                check_potential(u)?;
                if !(*xi > 0.0 && xi.is_finite()) || !(*hbar > 0.0 && hbar.is_finite()) {
                    bail!(Argument, "periodic Plancherel needs ξ > 0 and ħ > 0");
                }
            }
        }
        Ok(())
    }

    /// True for a Schur measure whose weights need not be nonnegative.
    pub fn is_formal(&self) -> bool {
        matches!(self, MeasureSpec::Schur { t, t_bar } if t != t_bar)
    }

    /// The partitions a table of this measure runs over: the fixed size for
    /// Plancherel and Jack, otherwise every `|λ| ≤ truncation`.
    pub fn support(&self, truncation: usize) -> Result<Vec<Partition>> {
        match self {
            MeasureSpec::Plancherel { n } => enumerate_partitions(*n),
            MeasureSpec::Jack { d, .. } => enumerate_partitions(*d),
            _ => Ok(partitions_up_to(truncation)?.into_iter().flatten().collect()),
        }
    }
}

fn check_potential(u: &[Rational]) -> Result<()> {
    if u.is_empty() {
        bail!(Argument, "the potential needs period N ≥ 1");
    }
    if !u.iter().sum::<Rational>().is_zero() {
        bail!(Argument, "the potential values must sum to 0");
    }
    Ok(())
}

/// A measure value: exact when the measure allows it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Weight {
    Exact(#[serde(serialize_with = "ser_rational")] Rational),
    Real(f64),
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Weight {
    pub fn to_f64(&self) -> f64 {
        match self {
            Weight::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Weight::Real(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Weight::Exact(r) => Some(r),
            Weight::Real(_) => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Exact(r) => write!(f, "{r}"),
            Weight::Real(x) => write!(f, "{x}"),
        }
    }
}

fn ln_hook_product(lambda: &Partition) -> f64 {
    lambda.cells().map(|(a, l)| ((1 + a + l) as f64).ln()).sum()
}

fn size_mismatch(name: &str, want: usize, lambda: &Partition) -> Result<Weight> {
    bail!(Argument, "{name} measure lives on partitions of {want}, got |λ| = {}", lambda.size())
}

/// `s_λ(t)` for real `t`.
fn schur_real(lambda: &Partition, t: &[f64]) -> Result<f64> {
    let t: Vec<Complex64> = t.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    Ok(schur_function(lambda, &t)?.re)
}

/// `𝒵 = exp(Σ k t_k t̄_k)`.
pub fn schur_partition_function(t: &[f64], t_bar: &[f64]) -> Result<f64> {
    let s: f64 = t.iter().zip(t_bar).enumerate().map(|(k, (a, b))| (k + 1) as f64 * a * b).sum();
    let z = s.exp();
    if !z.is_finite() {
        bail!(Domain, "Schur partition function overflows: Σ k t_k t̄_k = {s}");
    }
    Ok(z)
}

/// The weight of `λ`: normalized for Plancherel, poissonized Plancherel and
/// Schur; unnormalized for Jack and the periodic potential.
pub fn weight(spec: &MeasureSpec, lambda: &Partition) -> Result<Weight> {
    spec.validate()?;
    match spec {
        MeasureSpec::Plancherel { n } => {
            if lambda.size() != *n {
                return size_mismatch("Plancherel", *n, lambda);
            }
            let d = BigInt::from(dimension(lambda));
            Ok(Weight::Exact(Rational::new(&d * &d, BigInt::from(factorial(*n)))))
        }
        MeasureSpec::PoissonizedPlancherel { xi } => {
            let n = lambda.size() as f64;
            Ok(Weight::Real((n * xi.ln() - xi - 2.0 * ln_hook_product(lambda)).exp()))
        }
        MeasureSpec::Schur { t, t_bar } => {
            let z = schur_partition_function(t, t_bar)?;
            Ok(Weight::Real(schur_real(lambda, t)? * schur_real(lambda, t_bar)? / z))
        }
        MeasureSpec::Jack { eps1, eps2, d } => {
            if lambda.size() != *d {
                return size_mismatch("Jack", *d, lambda);
            }
            jack_weight(lambda, eps1, eps2).map(Weight::Exact)
        }
        MeasureSpec::PeriodicPlancherel { u, xi, hbar } => {
            let e = energy_u(u, lambda, 0)?.to_f64().unwrap_or(f64::NAN);
            let n = lambda.size() as f64;
            Ok(Weight::Real((n * xi.ln() + e / hbar - 2.0 * ln_hook_product(lambda)).exp()))
        }
    }
}

fn jack_weight(lambda: &Partition, eps1: &Rational, eps2: &Rational) -> Result<Rational> {
    let mut denom = Rational::one();
    for (a, l) in lambda.cells() {
        let (a, l) = (Rational::from_integer(a.into()), Rational::from_integer(l.into()));
        let one = Rational::one();
        let f1 = (&one + &a) * eps1 + &l * eps2;
        let f2 = &a * eps1 + (&one + &l) * eps2;
        if f1.is_zero() || f2.is_zero() {
            bail!(Domain, "Jack weight of {lambda} has a vanishing factor at ε₁ = {eps1}, ε₂ = {eps2}");
        }
        denom *= f1 * f2;
    }
    Ok(denom.recip())
}

/// Weights of every partition in `spec.support(truncation)`, computing shared data once.
pub fn weight_table(spec: &MeasureSpec, truncation: usize) -> Result<Vec<(Partition, Weight)>> {
    spec.validate()?;
    let support = spec.support(truncation)?;
    if let MeasureSpec::Schur { t, t_bar } = spec {
        let z = schur_partition_function(t, t_bar)?;
        let vec_of = |t: &[f64]| -> Result<FockVector<Complex64>> {
            schur_vector(&t.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>(), truncation)
        };
        let (a, b) = (vec_of(t)?, vec_of(t_bar)?);
        return Ok(support
            .into_iter()
            .map(|l| {
                let w = a.coefficient(&l).re * b.coefficient(&l).re / z;
                (l, Weight::Real(w))
            })
            .collect());
    }
    support.into_iter().map(|l| weight(spec, &l).map(|w| (l, w))).collect()
}

/// A normalizing constant with diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Normalization {
    pub value: Weight,
    /// Upper bound on the mass beyond the truncation (0 for closed forms).
    pub tail_bound: f64,
    /// Independent closed form, where one exists, for cross-checking `value`.
    pub closed_form: Option<Weight>,
}

/// Total mass of the measure. Closed form for Plancherel, poissonized Plancherel
/// and Schur; exact finite sum for Jack (with `1/(d!(ε₁ε₂)^d)` as `closed_form`);
/// truncated sum with a tail bound for the periodic potential.
pub fn partition_function(spec: &MeasureSpec, truncation: usize) -> Result<Normalization> {
    spec.validate()?;
    let closed = |value: Weight| Normalization { value, tail_bound: 0.0, closed_form: None };
    match spec {
        MeasureSpec::Plancherel { .. } => Ok(closed(Weight::Exact(Rational::one()))),
        MeasureSpec::PoissonizedPlancherel { .. } => Ok(closed(Weight::Real(1.0))),
        MeasureSpec::Schur { t, t_bar } => Ok(closed(Weight::Real(schur_partition_function(t, t_bar)?))),
        MeasureSpec::Jack { eps1, eps2, d } => {
            let mut sum = Rational::zero();
            for l in enumerate_partitions(*d)? {
                sum += jack_weight(&l, eps1, eps2)?;
            }
            let norm = Rational::from_integer(BigInt::from(factorial(*d))) * num::pow(eps1 * eps2, *d);
            Ok(Normalization { value: Weight::Exact(sum), tail_bound: 0.0, closed_form: Some(Weight::Exact(norm.recip())) })
        }
        MeasureSpec::PeriodicPlancherel { u, xi, hbar } => {
            let mut sum = 0.0;
            for l in partitions_up_to(truncation)?.into_iter().flatten() {
                sum += weight(spec, &l)?.to_f64();
            }
            Ok(Normalization { value: Weight::Real(sum), tail_bound: periodic_tail(u, *xi, *hbar, truncation), closed_form: None })
        }
    }
}

/// `Σ_{n > T} ξ^n/n! · e^{(max u − min u)√n/ħ}`, which bounds the mass of `|λ| > T`
/// because `|U(λ)| ≤ (max u − min u)·(Durfee rank) ≤ (max u − min u)√n` and
/// `Σ_{|λ|=n} (dim λ/n!)² = 1/n!`.
fn periodic_tail(u: &[Rational], xi: f64, hbar: f64, truncation: usize) -> f64 {
    let to_f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
    let spread = u.iter().map(to_f).fold(f64::NEG_INFINITY, f64::max) - u.iter().map(to_f).fold(f64::INFINITY, f64::min);
    let mut total = 0.0;
    let mut log_term_prev = f64::NEG_INFINITY;
    let mut ln_fact: f64 = (2..=truncation).map(|k| (k as f64).ln()).sum();
    for n in truncation + 1.. {
        ln_fact += (n as f64).ln();
        let log_term = n as f64 * xi.ln() - ln_fact + spread * (n as f64).sqrt() / hbar;
        total += log_term.exp();
        // terms decrease once n is past ξ·e^{spread/ħ}; stop when negligible
        if log_term < log_term_prev && log_term < (total.ln() - 40.0).max(-745.0) {
            break;
        }
        log_term_prev = log_term;
    }
    total
}

/// `⟨|λ|⟩ = Σ k² t_k t̄_k` under the Schur measure.
pub fn expected_size_schur(t: &[f64], t_bar: &[f64]) -> f64 {
    t.iter().zip(t_bar).enumerate().map(|(k, (a, b))| ((k + 1) * (k + 1)) as f64 * a * b).sum()
}

/// `U(λ) = Σ_{x ∈ 𝔖(λ), x > −MN} u(x mod N)` with residues in `{1/2, …, N − 1/2}`
/// (`u[k]` is the value at `k + 1/2`). `M` is raised as needed so that `−MN`
/// lies below every hole; the result does not depend on `M`, and `U(∅) = 0`.
pub fn energy_u(u: &[Rational], lambda: &Partition, m: usize) -> Result<Rational> {
    check_potential(u)?;
    let n = u.len();
    let m = m.max(lambda.len().div_ceil(n) + 1);
    let at = |m: usize| -> Rational {
        lambda.coordinates(m * n).iter().map(|x| &u[x.residue(n)]).sum()
    };
    let e = at(m);
    debug_assert_eq!(e, at(m + 1), "U(λ) depends on the cutoff");
    Ok(e)
}

/// Largest `|U(λ)|` allowed by the potential: `(max u − min u)` times the Durfee rank.
pub fn energy_bound(u: &[Rational], lambda: &Partition) -> Rational {
    let max = u.iter().max().cloned().unwrap_or_else(Rational::zero);
    let min = u.iter().min().cloned().unwrap_or_else(Rational::zero);
    (max - min).abs() * Rational::from_integer(lambda.durfee().into())
}

#[cfg(test)]
mod tests;
