use std::collections::HashMap;

use num::bigint::{BigInt, BigUint};

use super::{dimension, factorial, Partition};
use crate::error::{bail, Result};
use crate::Rational;

/// Beta-set `{λ_i + ℓ − i}` of `λ` padded to `len` entries.
fn beta_set(lambda: &Partition, len: usize) -> Vec<i64> {
    (1..=len).map(|i| lambda.part(i) as i64 + (len - i) as i64).collect()
}

fn from_beta(beta: &mut [i64]) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    Partition::new(beta.iter().enumerate().map(|(i, &b)| (b - (len - 1 - i) as i64) as u32).collect())
}

/// Irreducible character `χ^λ(η)` by the Murnaghan-Nakayama rule.
pub fn character(lambda: &Partition, eta: &Partition) -> Result<i64> {
    if lambda.size() != eta.size() {
        bail!(Argument, "character needs |λ| = |η|, got {} and {}", lambda.size(), eta.size());
    }
    let mut memo = HashMap::new();
    Ok(mn(lambda, eta.parts(), &mut memo))
}

fn mn(lambda: &Partition, eta: &[u32], memo: &mut HashMap<(Partition, usize), i64>) -> i64 {
    let Some((&r, rest)) = eta.split_first() else {
        return 1;
    };
    if let Some(&v) = memo.get(&(lambda.clone(), eta.len())) {
        return v;
    }
    let r = r as i64;
    let len = lambda.len();
    let beta = beta_set(lambda, len);
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let target = b - r;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        // removing a border strip of size r; height = number of beta numbers jumped over
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        let mu = from_beta(&mut moved);
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&mu, rest, memo);
    }
    memo.insert((lambda.clone(), eta.len()), total);
    total
}

/// Size of the conjugacy class with cycle type `η`: `|η|!/z_η`.
pub fn class_size(eta: &Partition) -> BigUint {
    factorial(eta.size()) / eta.centralizer_order()
}

/// Central character `f_η(λ) = |C_η| χ^λ(η) / dim λ`.
pub fn central_character(eta: &Partition, lambda: &Partition) -> Result<Rational> {
    let chi = character(lambda, eta)?;
    Ok(Rational::new(
        BigInt::from(class_size(eta)) * BigInt::from(chi),
        BigInt::from(dimension(lambda)),
    ))
}
