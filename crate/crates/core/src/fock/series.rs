use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::Coeff;
use crate::Rational;

/// Truncated multivariate Laurent series with exact rational coefficients.
///
/// Monomials are exponent vectors; any monomial with an exponent above
/// `order` in some variable is dropped on multiplication.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MultiSeries {
    terms: BTreeMap<Vec<i32>, Rational>,
    order: Option<i32>,
}

impl MultiSeries {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiSeries { terms, order: None }
    }

    /// Univariate series in variable `var` of `vars`, from `(exponent, coefficient)` pairs.
    pub fn univariate(var: usize, vars: usize, coeffs: impl IntoIterator<Item = (i32, Rational)>, order: i32) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in coeffs {
            if e <= order && !c.is_zero() {
                let mut key = vec![0; vars];
                key[var] = e;
                terms.insert(trimmed(key), c);
            }
        }
        MultiSeries { terms, order: Some(order) }
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coefficient(&self, exponents: &[i32]) -> Rational {
        self.terms.get(&trimmed(exponents.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn order(&self) -> Option<i32> {
        self.order
    }

    fn combine(a: &[i32], b: &[i32]) -> Vec<i32> {
        let n = a.len().max(b.len());
        trimmed((0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect())
    }
}

/// Monomial keys carry no trailing zero exponents, so `[]` is the constant term.
fn trimmed(mut key: Vec<i32>) -> Vec<i32> {
    while key.last() == Some(&0) {
        key.pop();
    }
    key
}

impl Coeff for MultiSeries {
    fn nil() -> Self {
        MultiSeries::default()
    }

    fn from_rational(r: &Rational) -> Self {
        MultiSeries::constant(r.clone())
    }

    fn is_nil(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let e = terms.entry(k.clone()).or_insert_with(Rational::zero);
            *e += v;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        MultiSeries { terms, order: min_order(self.order, other.order) }
    }

    fn mul(&self, other: &Self) -> Self {
        let order = min_order(self.order, other.order);
        let mut terms: BTreeMap<Vec<i32>, Rational> = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let key = Self::combine(ka, kb);
                if let Some(o) = order {
                    if key.iter().any(|&e| e > o) {
                        continue;
                    }
                }
                let e = terms.entry(key).or_insert_with(Rational::zero);
                *e += va * vb;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        MultiSeries { terms, order }
    }

    fn neg(&self) -> Self {
        MultiSeries { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(), order: self.order }
    }

    fn conj(&self) -> Self {
        self.clone()
    }
}

fn min_order(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{v}")?;
            for (i, e) in k.iter().enumerate() {
                if *e != 0 {
                    if e.is_one() {
                        write!(f, "·z{i}")?;
                    } else {
                        write!(f, "·z{i}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
