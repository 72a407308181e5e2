use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{bail, Result};
use crate::partition::Partition;

/// Largest `n` the samplers accept.
pub const MAX_SAMPLE_SIZE: usize = 1_000_000;

/// A uniformly random permutation of `1..=n` (Fisher-Yates).
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<u32> {
    let mut p: Vec<u32> = (1..=n as u32).collect();
    p.shuffle(rng);
    p
}

/// Shape of the RSK insertion tableau of a sequence of distinct values (row insertion).
pub fn rsk_shape(seq: &[u32]) -> Partition {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &v in seq {
        let mut x = v;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![x]);
                break;
            }
            let row = &mut rows[r];
            let pos = row.partition_point(|&y| y < x);
            if pos == row.len() {
                row.push(x);
                break;
            }
            x = std::mem::replace(&mut row[pos], x);
            r += 1;
        }
    }
    Partition::new(rows.iter().map(|r| r.len() as u32).collect())
}

/// Length of the longest increasing subsequence, by patience sorting.
pub fn longest_increasing_subsequence(seq: &[u32]) -> usize {
    let mut tails: Vec<u32> = Vec::new();
    for &v in seq {
        let pos = tails.partition_point(|&y| y < v);
        if pos == tails.len() {
            tails.push(v);
        } else {
            tails[pos] = v;
        }
    }
    tails.len()
}

/// A Plancherel-distributed partition of `n`: the RSK shape of a uniform permutation
/// drawn from ChaCha8 seeded with `seed`.
pub fn sample_plancherel(n: usize, seed: u64) -> Result<Partition> {
    if n > MAX_SAMPLE_SIZE {
        bail!(Resource, "sample size {n} exceeds the bound {MAX_SAMPLE_SIZE}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(rsk_shape(&random_permutation(n, &mut rng)))
}

/// Poisson(ξ) by inversion, visiting outcomes outward from the mode so the
/// pmf never underflows.
pub fn sample_poisson<R: Rng + ?Sized>(xi: f64, rng: &mut R) -> Result<usize> {
    if !(xi > 0.0 && xi.is_finite()) {
        bail!(Argument, "Poisson parameter must be positive, got {xi}");
    }
    let mode = xi.floor() as usize;
    let ln_fact: f64 = (2..=mode).map(|k| (k as f64).ln()).sum();
    let p_mode = (mode as f64 * xi.ln() - xi - ln_fact).exp();
    let u: f64 = rng.gen();
    let mut acc = p_mode;
    if u < acc {
        return Ok(mode);
    }
    let (mut up, mut p_up) = (mode, p_mode);
    let (mut down, mut p_down) = (mode, p_mode);
    loop {
        let next_up = p_up * xi / (up + 1) as f64;
        let next_down = if down > 0 { p_down * down as f64 / xi } else { 0.0 };
        if next_up == 0.0 && next_down == 0.0 {
            // rounding left u above the accumulated mass; return the mode side reached
            return Ok(up);
        }
        if next_up >= next_down {
            up += 1;
            p_up = next_up;
            acc += p_up;
            if u < acc {
                return Ok(up);
            }
        } else {
            down -= 1;
            p_down = next_down;
            acc += p_down;
            if u < acc {
                return Ok(down);
            }
        }
    }
}

/// A poissonized-Plancherel partition: `n ~ Poisson(ξ)`, then [`sample_plancherel`]'s
/// procedure continued on the same generator.
pub fn sample_poissonized(xi: f64, seed: u64) -> Result<Partition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sample_poisson(xi, &mut rng)?;
    if n > MAX_SAMPLE_SIZE {
        bail!(Resource, "sampled size {n} exceeds the bound {MAX_SAMPLE_SIZE}");
    }
    Ok(rsk_shape(&random_permutation(n, &mut rng)))
}
