use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{FareyError, Fraction};

/// A partial fraction decomposition `[b1,...,bk]`, read as
/// `1/(b1 - 1/(b2 - ... - 1/bk))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Expansion(Vec<i64>);

impl Expansion {
    pub fn new(terms: Vec<i64>) -> Result<Self, FareyError> {
        if terms.is_empty() {
            return Err(FareyError::EmptyExpansion);
        }
        if terms.contains(&0) {
            return Err(FareyError::ZeroTerm);
        }
        Ok(Expansion(terms))
    }

    pub fn terms(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_all_even(&self) -> bool {
        self.0.iter().all(|b| b.is_even())
    }

    pub fn evaluate(&self) -> Result<Fraction, FareyError> {
        evaluate(self)
    }
}

impl TryFrom<Vec<i64>> for Expansion {
    type Error = FareyError;

    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Expansion::new(v)
    }
}

impl From<Expansion> for Vec<i64> {
    fn from(e: Expansion) -> Self {
        e.0
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Expansion {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| FareyError::Parse(format!("`{s}` is not a bracketed expansion")))?;
        let terms = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| FareyError::Parse(format!("bad expansion term `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Expansion::new(terms)
    }
}

/// Exact value of an expansion.
///
/// Works on the vector `(n, d)` with the step `(n, d) -> (d, b*d - n)`, which is
/// `v -> 1/(b - v)`. A zero second coordinate anywhere means some partial
/// denominator vanished.
pub fn evaluate(e: &Expansion) -> Result<Fraction, FareyError> {
    let (mut n, mut d): (i128, i128) = (0, 1);
    for &b in e.terms().iter().rev() {
        let next = (b as i128)
            .checked_mul(d)
            .and_then(|x| x.checked_sub(n))
            .ok_or(FareyError::Overflow)?;
        if next == 0 {
            return Err(FareyError::DegenerateExpansion(e.to_string()));
        }
        (n, d) = (d, next);
        if n.unsigned_abs() > i64::MAX as u128 || d.unsigned_abs() > i64::MAX as u128 {
            return Err(FareyError::Overflow);
        }
    }
    Fraction::from_i128(n, d)
}

/// The expansion of `p/q` (p even, q odd, 0 < p < q) in which every term is even.
///
/// Greedy: invert, take the even integer within distance 1, recurse on the
/// remainder. With p even and q odd the reciprocal is never an odd integer, so
/// the choice is unique and the remainder is strictly inside (-1, 1).
pub fn even_expansion(f: Fraction) -> Result<Expansion, FareyError> {
    if f.is_infinite() || f.num().is_odd() || f.den().is_even() {
        return Err(FareyError::BadParity(f));
    }
    if f.num() <= 0 || f.num() >= f.den() {
        return Err(FareyError::OutOfRange(f));
    }
    let mut terms = Vec::new();
    let mut v = f;
    while !v.is_zero() {
        let x = v.recip()?;
        // round(x/2) = floor((x + 1)/2), no ties possible here
        let a =
            2 * Integer::div_floor(&(x.num() as i128 + x.den() as i128), &(2 * x.den() as i128));
        let a = i64::try_from(a).map_err(|_| FareyError::Overflow)?;
        terms.push(a);
        v = Fraction::integer(a).checked_sub(x)?;
    }
    Expansion::new(terms)
}
