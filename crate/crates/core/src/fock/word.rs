use std::fmt;
use std::str::FromStr;

use num::complex::Complex64;
use num::ToPrimitive;

use super::{apply_alpha, apply_e, apply_exp_alpha, FockVector};
use crate::error::{bail, Error, Result};
use crate::partition::Partition;
use crate::Rational;

/// A scalar that is exact when possible.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(Rational),
    Float(Complex64),
}

impl Coefficient {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Coefficient::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Coefficient::Float(c) => *c,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coefficient::Exact(_))
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Exact(r) => write!(f, "{r}"),
            Coefficient::Float(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Coefficient::Float(c) => write!(f, "{c}"),
        }
    }
}

/// One factor of an [`OperatorWord`].
#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    /// `α_n`, `n ≠ 0`.
    Alpha(i64),
    /// The diagonal operator `ℰ(z)`.
    E(Complex64),
    /// `exp(c·α_{−n})`, `n > 0`.
    ScalarExp(Coefficient, i64),
}

/// Product of atoms, applied right to left.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct OperatorWord {
    pub atoms: Vec<Atom>,
}

impl OperatorWord {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            match a {
                Atom::Alpha(0) => bail!(Argument, "α_0 is not allowed in an operator word"),
                Atom::ScalarExp(_, n) if *n <= 0 => bail!(Argument, "exp(c·α_{{-n}}) needs n > 0, got {n}"),
                _ => {}
            }
        }
        Ok(OperatorWord { atoms })
    }

    fn is_exact(&self) -> bool {
        self.atoms.iter().all(|a| match a {
            Atom::Alpha(_) => true,
            Atom::E(_) => false,
            Atom::ScalarExp(c, _) => c.is_exact(),
        })
    }

    fn apply_exact(&self, e_max: usize) -> Result<Rational> {
        let mut v = FockVector::<Rational>::vacuum(e_max);
        for a in self.atoms.iter().rev() {
            v = match a {
                Atom::Alpha(n) => apply_alpha(*n, &v)?,
                Atom::ScalarExp(Coefficient::Exact(c), n) => apply_exp_alpha(c, *n, &v)?,
                _ => unreachable!("exact mode only holds rational atoms"),
            };
        }
        Ok(v.coefficient(&Partition::empty()))
    }

    fn apply_float(&self, e_max: usize) -> Result<Complex64> {
        let mut v = FockVector::<Complex64>::vacuum(e_max);
        for a in self.atoms.iter().rev() {
            v = match a {
                Atom::Alpha(n) => apply_alpha(*n, &v)?,
                Atom::E(z) => apply_e(*z, &v)?,
                Atom::ScalarExp(c, n) => apply_exp_alpha(&c.to_complex(), *n, &v)?,
            };
        }
        Ok(v.coefficient(&Partition::empty()))
    }
}

/// Text form: atoms separated by whitespace, `a<n>` for `α_n`, `E<z>` for `ℰ(z)`
/// (`z` real or `re+imi`), `exp<c>:<n>` for `exp(c·α_{−n})`; e.g. `"a1 a1 a-1 a-1"`.
impl FromStr for OperatorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let atoms = s
            .split_whitespace()
            .map(|tok| {
                if let Some(rest) = tok.strip_prefix("exp") {
                    let (c, n) = rest
                        .split_once(':')
                        .ok_or_else(|| Error::Argument(format!("bad atom {tok:?}: expected exp<c>:<n>")))?;
                    let n = n.parse().map_err(|_| Error::Argument(format!("bad index in {tok:?}")))?;
                    Ok(Atom::ScalarExp(parse_coefficient(c)?, n))
                } else if let Some(rest) = tok.strip_prefix('a') {
                    Ok(Atom::Alpha(rest.parse().map_err(|_| Error::Argument(format!("bad atom {tok:?}")))?))
                } else if let Some(rest) = tok.strip_prefix('E') {
                    Ok(Atom::E(parse_coefficient(rest)?.to_complex()))
                } else {
                    bail!(Argument, "unknown atom {tok:?}")
                }
            })
            .collect::<Result<Vec<_>>>()?;
        OperatorWord::new(atoms)
    }
}

/// Parses `"3/4"` or `"2"` exactly, otherwise as a complex float.
pub fn parse_coefficient(s: &str) -> Result<Coefficient> {
    if let Ok(r) = s.parse::<Rational>() {
        return Ok(Coefficient::Exact(r));
    }
    s.parse::<Complex64>()
        .map(Coefficient::Float)
        .map_err(|_| Error::Argument(format!("cannot parse coefficient {s:?}")))
}

/// A vacuum expectation with its truncation diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct Expectation {
    pub value: Coefficient,
    /// `|value(E_max) − value(E_max + 5)|`.
    pub stability_gap: f64,
    pub warning: Option<String>,
}

/// `⟨word⟩ = (word · v_∅, v_∅)` with every intermediate vector truncated at energy `e_max`.
pub fn vacuum_expectation(word: &OperatorWord, e_max: usize) -> Result<Expectation> {
    const TOL: f64 = 1e-10;
    if word.is_exact() {
        let a = word.apply_exact(e_max)?;
        let b = word.apply_exact(e_max + 5)?;
        let gap = (&a - &b).to_f64().unwrap_or(f64::INFINITY).abs();
        let warning = (a != b).then(|| format!("value changed by {gap:e} when E_max went from {e_max} to {}", e_max + 5));
        Ok(Expectation { value: Coefficient::Exact(a), stability_gap: gap, warning })
    } else {
        let a = word.apply_float(e_max)?;
        let b = word.apply_float(e_max + 5)?;
        let gap = (a - b).norm();
        let warning = (gap > TOL * (1.0 + a.norm()))
            .then(|| format!("value changed by {gap:e} when E_max went from {e_max} to {}", e_max + 5));
        Ok(Expectation { value: Coefficient::Float(a), stability_gap: gap, warning })
    }
}
