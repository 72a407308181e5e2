use std::sync::{OnceLock, RwLock};

use num::bigint::BigInt;
use num::complex::Complex64;
use num::{One, Zero};

use super::{factorial, Partition};
use crate::error::{bail, Result};
use crate::Rational;

static BERNOULLI: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

/// Bernoulli number `B_n` (with `B_1 = −1/2`), cached across calls.
pub fn bernoulli(n: usize) -> Rational {
    let cache = BERNOULLI.get_or_init(|| RwLock::new(vec![Rational::one()]));
    if let Some(b) = cache.read().unwrap().get(n) {
        return b.clone();
    }
    let mut b = cache.write().unwrap();
    while b.len() <= n {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let m = b.len();
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b[n].clone()
}

/// `ζ(−k) = −B_{k+1}/(k+1)` for `k ≥ 1`.
pub fn zeta_negative(k: usize) -> Rational {
    assert!(k >= 1, "zeta_negative needs k >= 1");
    -bernoulli(k + 1) / Rational::from_integer(BigInt::from(k + 1))
}

fn half_power(twice: i64, k: usize) -> Rational {
    Rational::new(BigInt::from(twice).pow(k as u32), BigInt::from(2).pow(k as u32))
}

/// The ζ-regularized power sum `p_k(λ) = Σ_i [(λ_i−i+½)^k − (−i+½)^k] + (1−2^{−k}) ζ(−k)`.
pub fn power_sum(k: usize, lambda: &Partition) -> Result<Rational> {
    if k == 0 {
        bail!(Argument, "power sums are defined for k >= 1");
    }
    let mut s = Rational::zero();
    for i in 1..=lambda.len() as i64 {
        let x = 2 * (lambda.part(i as usize) as i64 - i) + 1;
        s += half_power(x, k) - half_power(1 - 2 * i, k);
    }
    let weight = Rational::one() - Rational::new(BigInt::one(), BigInt::from(2).pow(k as u32));
    Ok(s + weight * zeta_negative(k))
}

/// Eigenvalue of `ℰ(z)` on `v_λ`: the regularized `Σ_i e^{z(λ_i − i + ½)}`,
/// summed as a finite head plus the closed-form geometric tail.
pub fn e_eigenvalue(lambda: &Partition, z: Complex64) -> Result<Complex64> {
    let denom = Complex64::new(1.0, 0.0) - (-z).exp();
    if denom.norm() < 1e-14 {
        bail!(Pole, "ℰ(z) has a pole at z = {z} (e^z = 1)");
    }
    let l = lambda.len() as i64;
    let head: Complex64 = (1..=l)
        .map(|i| (z * (lambda.part(i as usize) as f64 - i as f64 + 0.5)).exp())
        .sum();
    let tail = (-z * (l as f64 + 0.5)).exp() / denom;
    Ok(head + tail)
}

/// Laurent coefficients of the `ℰ(z)` eigenvalue around `z = 0`:
/// entry `j` is the coefficient of `z^{j−1}`, for exponents `−1..=order`.
/// The coefficient of `z^k` (`k ≥ 1`) is `p_k(λ)/k!` and the constant term vanishes.
pub fn e_eigenvalue_series(lambda: &Partition, order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order + 2);
    out.push(Rational::one());
    out.push(Rational::zero());
    for k in 1..=order {
        let p = power_sum(k, lambda).expect("k >= 1");
        out.push(p / Rational::from_integer(BigInt::from(factorial(k))));
    }
    out
}
