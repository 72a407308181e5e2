//! The charge-zero part of the infinite wedge, truncated by energy.
//!
//! Basis vectors `v_λ` are indexed by partitions and are orthonormal; the
//! energy of `v_λ` is `|λ|`. Every operator here acts on a [`FockVector`]
//! and drops (and flags) components above the vector's truncation energy.

mod series;
mod trace;
mod word;

pub use series::MultiSeries;
pub(crate) use trace::formal_eigenvalue;
pub use trace::{trace_weighted, trace_weighted_formal, QSeries};
pub use word::{parse_coefficient, vacuum_expectation, Atom, Coefficient, Expectation, OperatorWord};

use std::collections::BTreeMap;
use std::fmt::Debug;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::{ToPrimitive, Zero};

use crate::error::{bail, Result};
use crate::partition::{e_eigenvalue, HalfInt, Partition};
use crate::Rational;

/// Scalars a [`FockVector`] can carry.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn nil() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_nil(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }
}

impl Coeff for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Coeff for Complex64 {
    fn nil() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn is_nil(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

/// A finite combination of basis vectors `v_λ` with `|λ| ≤ truncation`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector<C> {
    coeffs: BTreeMap<Partition, C>,
    truncation: usize,
    truncated: bool,
}

impl<C: Coeff> FockVector<C> {
    pub fn zero(truncation: usize) -> Self {
        FockVector { coeffs: BTreeMap::new(), truncation, truncated: false }
    }

    pub fn vacuum(truncation: usize) -> Self {
        Self::basis(Partition::empty(), truncation)
    }

    /// `v_λ`; the zero vector (flagged) if `|λ|` exceeds the truncation.
    pub fn basis(lambda: Partition, truncation: usize) -> Self {
        let mut v = Self::zero(truncation);
        v.add_term(lambda, C::from_i64(1));
        v
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// True if some component was dropped for exceeding the truncation energy.
    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    pub fn coefficient(&self, lambda: &Partition) -> C {
        self.coeffs.get(lambda).cloned().unwrap_or_else(C::nil)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c·v_λ`, dropping it (and setting the truncation flag) if `|λ|` is too large.
    pub fn add_term(&mut self, lambda: Partition, c: C) {
        if c.is_nil() {
            return;
        }
        if lambda.size() > self.truncation {
            self.truncated = true;
            return;
        }
        match self.coeffs.entry(lambda) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_nil() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.truncation);
        out.truncated = self.truncated;
        for (l, x) in &self.coeffs {
            out.add_term(l.clone(), x.mul(c));
        }
        out
    }

    /// `(self, other) = Σ conj(self_λ)·other_λ`.
    pub fn inner(&self, other: &Self) -> C {
        self.coeffs
            .iter()
            .filter_map(|(l, a)| other.coeffs.get(l).map(|b| a.conj().mul(b)))
            .fold(C::nil(), |acc, x| acc.add(&x))
    }

    /// Applies the diagonal operator `v_λ ↦ d(λ)·v_λ`.
    pub fn apply_diagonal(&self, d: impl Fn(&Partition) -> Result<C>) -> Result<Self> {
        let mut out = Self::zero(self.truncation);
        out.truncated = self.truncated;
        for (l, c) in &self.coeffs {
            out.add_term(l.clone(), c.mul(&d(l)?));
        }
        Ok(out)
    }
}

/// `α_n v_λ` as a signed list of basis vectors: the particle at `x` moves to
/// `x − n`, with sign `(−1)^{#occupied sites strictly between}`.
pub fn alpha_on_basis(n: i64, lambda: &Partition) -> Result<Vec<(Partition, i64)>> {
    if n == 0 {
        bail!(Argument, "α_0 is not part of the operator set (n must be nonzero)");
    }
    // below this window every site, and every target of a move, is occupied
    let window = lambda.len() + n.unsigned_abs() as usize + 1;
    let coords = lambda.coordinates(window);
    let lowest = *coords.last().expect("window is nonempty");
    let occupied = |x: HalfInt| x < lowest || coords.binary_search_by(|c| x.cmp(c)).is_ok();
    let mut out = Vec::new();
    for (i, &x) in coords.iter().enumerate() {
        let y = x - n;
        if occupied(y) {
            continue;
        }
        let (lo, hi) = if y < x { (y, x) } else { (x, y) };
        let between = coords.iter().filter(|&&c| c > lo && c < hi).count();
        let mut moved = coords.clone();
        moved[i] = y;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = moved
            .iter()
            .enumerate()
            .map(|(j, c)| (c.floor() + j as i64 + 1) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((Partition::from_parts(parts)?, sign));
    }
    Ok(out)
}

/// `α_n v`, extended linearly.
pub fn apply_alpha<C: Coeff>(n: i64, v: &FockVector<C>) -> Result<FockVector<C>> {
    let mut out = FockVector::zero(v.truncation);
    out.truncated = v.truncated;
    for (l, c) in &v.coeffs {
        for (mu, sign) in alpha_on_basis(n, l)? {
            let term = if sign > 0 { c.clone() } else { c.neg() };
            out.add_term(mu, term);
        }
    }
    Ok(out)
}

/// `ℰ(z) v`: each `v_λ` is scaled by the regularized `Σ_i e^{z(λ_i − i + ½)}`.
pub fn apply_e(z: Complex64, v: &FockVector<Complex64>) -> Result<FockVector<Complex64>> {
    v.apply_diagonal(|l| e_eigenvalue(l, z))
}

/// `exp(c·α_{−n}) v`, summed until every new term lies above the truncation.
pub fn apply_exp_alpha<C: Coeff>(c: &C, n: i64, v: &FockVector<C>) -> Result<FockVector<C>> {
    if n <= 0 {
        bail!(Argument, "exp(c·α_{{-n}}) needs n > 0, got {n}");
    }
    let mut total = v.clone();
    let mut term = v.clone();
    let mut k = 1i64;
    loop {
        // term_k = c^k α_{-n}^k v / k!
        let inv_k = C::from_rational(&Rational::new(BigInt::from(1), BigInt::from(k)));
        term = apply_alpha(-n, &term)?.scale(&c.mul(&inv_k));
        if term.is_empty() {
            total.truncated |= term.truncated;
            break;
        }
        total = total.add(&term);
        k += 1;
    }
    Ok(total)
}

/// `exp(Σ_n t_n α_{−n}) v_∅` up to energy `truncation`; the `α_{−n}` commute,
/// so the exponential factorizes. Entry `n−1` of `t` is `t_n`.
pub fn schur_vector<C: Coeff>(t: &[C], truncation: usize) -> Result<FockVector<C>> {
    let mut v = FockVector::vacuum(truncation);
    for (i, tn) in t.iter().enumerate() {
        if !tn.is_nil() {
            v = apply_exp_alpha(tn, i as i64 + 1, &v)?;
        }
    }
    Ok(v)
}

/// `s_λ(t) = (exp(Σ t_n α_{−n}) v_∅, v_λ)`, exact when `t` is rational.
pub fn schur_function<C: Coeff>(lambda: &Partition, t: &[C]) -> Result<C> {
    Ok(schur_vector(t, lambda.size())?.coefficient(lambda))
}

/// Probability measure `|(v, v_λ)|² / ‖v‖²` induced by a vector.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorMeasure<P> {
    pub probabilities: BTreeMap<Partition, P>,
    /// `‖v‖²` of the truncated vector used for normalization.
    pub norm_sqr: P,
    /// True if `v` lost components to truncation, so the normalization is partial.
    pub truncated: bool,
}

pub fn measure_from_vector(v: &FockVector<Complex64>) -> Result<VectorMeasure<f64>> {
    let norm_sqr: f64 = v.iter().map(|(_, c)| c.norm_sqr()).sum();
    if norm_sqr == 0.0 {
        bail!(Argument, "cannot normalize the zero vector");
    }
    Ok(VectorMeasure {
        probabilities: v.iter().map(|(l, c)| (l.clone(), c.norm_sqr() / norm_sqr)).collect(),
        norm_sqr,
        truncated: v.was_truncated(),
    })
}

pub fn measure_from_vector_exact(v: &FockVector<Rational>) -> Result<VectorMeasure<Rational>> {
    let norm_sqr: Rational = v.iter().map(|(_, c)| c * c).sum();
    if Zero::is_zero(&norm_sqr) {
        bail!(Argument, "cannot normalize the zero vector");
    }
    Ok(VectorMeasure {
        probabilities: v.iter().map(|(l, c)| (l.clone(), c * c / &norm_sqr)).collect(),
        norm_sqr,
        truncated: v.was_truncated(),
    })
}

#[cfg(test)]
mod tests;
