use num::complex::Complex64;
use rayon::prelude::*;

use super::{Coeff, MultiSeries};
use crate::error::Result;
use crate::partition::{e_eigenvalue, e_eigenvalue_series, enumerate_partitions, Partition};
use crate::Rational;

/// Truncated power series `Σ_{d ≤ E_max} c_d q^d`; entry `d` is the coefficient of `q^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C> {
    pub coefficients: Vec<C>,
}

impl QSeries<Complex64> {
    /// Evaluates the truncated series at `q`.
    pub fn eval(&self, q: Complex64) -> Complex64 {
        self.coefficients.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * q + c)
    }
}

fn trace_with<C: Coeff>(e_max: usize, eig: impl Fn(&Partition) -> Result<C> + Sync) -> Result<QSeries<C>> {
    let coefficients = (0..=e_max)
        .into_par_iter()
        .map(|d| {
            let mut acc = C::nil();
            for l in enumerate_partitions(d)? {
                acc = acc.add(&eig(&l)?);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<C>>>()?;
    Ok(QSeries { coefficients })
}

/// `tr q^{L_0} ∏_i ℰ(z_i)` as a series in `q` through `q^{E_max}`.
pub fn trace_weighted(insertions: &[Complex64], e_max: usize) -> Result<QSeries<Complex64>> {
    trace_with(e_max, |l| {
        insertions
            .iter()
            .try_fold(Complex64::new(1.0, 0.0), |acc, &z| Ok(acc * e_eigenvalue(l, z)?))
    })
}

/// Formal version of [`trace_weighted`] with `n_vars` insertions `ℰ(z_1) ⋯ ℰ(z_n)`,
/// each expanded as a Laurent series in its own `z_i` through `z_i^order`.
pub fn trace_weighted_formal(n_vars: usize, order: i32, e_max: usize) -> Result<QSeries<MultiSeries>> {
    trace_with(e_max, |l| Ok(formal_eigenvalue(l, n_vars, order)))
}

/// `∏_i` (Laurent expansion of the ℰ(z_i) eigenvalue on `v_λ`).
pub(crate) fn formal_eigenvalue(lambda: &Partition, n_vars: usize, order: i32) -> MultiSeries {
    let series = e_eigenvalue_series(lambda, order.max(0) as usize);
    let mut acc = MultiSeries::from_rational(&Rational::from_integer(1.into()));
    for var in 0..n_vars {
        let factor = MultiSeries::univariate(
            var,
            n_vars,
            series.iter().enumerate().map(|(j, c)| (j as i32 - 1, c.clone())),
            order,
        );
        acc = acc.mul(&factor);
    }
    acc
}
