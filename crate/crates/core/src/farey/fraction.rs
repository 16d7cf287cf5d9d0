use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::FareyError;

/// Parity class of a reduced fraction, read off the numerator and denominator.
///
/// A reduced fraction never has both terms even, so these three classes are
/// exhaustive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    OddOdd,
    OddEven,
    EvenOdd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::OddOdd => "o/o",
            Parity::OddEven => "o/e",
            Parity::EvenOdd => "e/o",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Parity {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "o/o" => Ok(Parity::OddOdd),
            "o/e" => Ok(Parity::OddEven),
            "e/o" => Ok(Parity::EvenOdd),
            other => Err(FareyError::Parse(format!("unknown parity `{other}`"))),
        }
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Parity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A reduced rational number `num/den` with `den >= 0`.
///
/// The single value with `den == 0` is `1/0`, the point at infinity. It is a
/// legitimate vertex label and slope name, but arithmetic on it is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: i64,
    den: i64,
}

fn narrow(v: i128) -> Result<i64, FareyError> {
    i64::try_from(v).map_err(|_| FareyError::Overflow)
}

impl Fraction {
    pub const INFINITY: Fraction = Fraction { num: 1, den: 0 };
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms. Any `n/0` with `n != 0` is infinity.
    pub fn new(num: i64, den: i64) -> Result<Self, FareyError> {
        Self::from_i128(num as i128, den as i128)
    }

    /// Like [`Fraction::new`] but rejects inputs that are not already reduced.
    pub fn new_reduced(num: i64, den: i64) -> Result<Self, FareyError> {
        if num.gcd(&den) != 1 {
            return Err(FareyError::NotReduced { num, den });
        }
        Self::new(num, den)
    }

    pub(crate) fn from_i128(num: i128, den: i128) -> Result<Self, FareyError> {
        if num == 0 && den == 0 {
            return Err(FareyError::ZeroOverZero);
        }
        if den == 0 {
            return Ok(Self::INFINITY);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Ok(Fraction {
            num: narrow(n)?,
            den: narrow(d)?,
        })
    }

    /// Projective point of a primitive integer vector; `(n, d)` and `(-n, -d)`
    /// name the same fraction.
    pub(crate) fn from_vector(v: (i64, i64)) -> Self {
        let (mut n, mut d) = v;
        if d < 0 || (d == 0 && n < 0) {
            n = -n;
            d = -d;
        }
        Fraction { num: n, den: d }
    }

    pub const fn integer(n: i64) -> Self {
        Fraction { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn signum(&self) -> i64 {
        self.num.signum()
    }

    pub fn parity(&self) -> Parity {
        match (self.num.is_odd(), self.den.is_odd()) {
            (true, true) => Parity::OddOdd,
            (true, false) => Parity::OddEven,
            (false, true) => Parity::EvenOdd,
            (false, false) => unreachable!("reduced fraction with two even terms"),
        }
    }

    fn finite(self) -> Result<Self, FareyError> {
        if self.is_infinite() {
            Err(FareyError::InfiniteArithmetic)
        } else {
            Ok(self)
        }
    }

    pub fn checked_neg(self) -> Result<Self, FareyError> {
        let a = self.finite()?;
        Self::from_i128(-(a.num as i128), a.den as i128)
    }

    pub fn checked_add(self, other: Self) -> Result<Self, FareyError> {
        let (a, b) = (self.finite()?, other.finite()?);
        Self::from_i128(
            a.num as i128 * b.den as i128 + b.num as i128 * a.den as i128,
            a.den as i128 * b.den as i128,
        )
    }

    pub fn checked_sub(self, other: Self) -> Result<Self, FareyError> {
        self.checked_add(other.checked_neg()?)
    }

    pub fn checked_mul(self, other: Self) -> Result<Self, FareyError> {
        let (a, b) = (self.finite()?, other.finite()?);
        Self::from_i128(a.num as i128 * b.num as i128, a.den as i128 * b.den as i128)
    }

    pub fn checked_div(self, other: Self) -> Result<Self, FareyError> {
        self.checked_mul(other.recip()?)
    }

    /// `1/x`; zero has no reciprocal here since `1/0` only names a slope.
    pub fn recip(self) -> Result<Self, FareyError> {
        let a = self.finite()?;
        if a.num == 0 {
            return Err(FareyError::DivisionByZero);
        }
        Self::from_i128(a.den as i128, a.num as i128)
    }

    /// Largest integer not exceeding a finite fraction.
    pub fn floor(&self) -> Result<i64, FareyError> {
        let a = self.finite()?;
        Ok(Integer::div_floor(&a.num, &a.den))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            self.num as f64 / self.den as f64
        }
    }
}

impl Ord for Fraction {
    /// Finite values compare numerically; `1/0` sorts above everything.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
            }
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Fraction::integer(n)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Splits `"p/q"`, `"p"` or `"inf"` into raw integer terms without reducing.
pub(crate) fn parse_terms(s: &str) -> Result<(i64, i64), FareyError> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("inf") || s == "1/0" {
        return Ok((1, 0));
    }
    let bad = || FareyError::Parse(format!("`{s}` is not a fraction"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse::<i64>().map_err(|_| bad())?;
            let d = d.trim().parse::<i64>().map_err(|_| bad())?;
            Ok((n, d))
        }
        None => Ok((s.parse::<i64>().map_err(|_| bad())?, 1)),
    }
}

impl FromStr for Fraction {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = parse_terms(s)?;
        Fraction::new(n, d)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Inverse of `p` modulo `q`, as the representative in `(0, q)`.
pub fn mod_inverse(p: i64, q: i64) -> Result<i64, FareyError> {
    if q < 2 {
        return Err(FareyError::InvalidModulus(q));
    }
    let e = (p as i128).extended_gcd(&(q as i128));
    if e.gcd != 1 {
        return Err(FareyError::NotCoprime { p, q });
    }
    Ok(e.x.rem_euclid(q as i128) as i64)
}
