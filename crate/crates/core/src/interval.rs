//! Slope intervals `J = { r + A x/(x+1) + B x : x > 0 }` with exact endpoints.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::farey::{FareyError, Fraction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error("twist parameter {0} gives a trivial knot or a trefoil")]
    BadTwist(i64),
    #[error("boundary slope must be finite")]
    InfiniteSlope,
}

/// Boundary slope and arc-type counts on the boundary torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobertsData {
    pub r: Fraction,
    pub p1: u32,
    pub p2: u32,
    pub n1: u32,
    pub n2: u32,
}

impl RobertsData {
    pub fn a(&self) -> i64 {
        self.p1 as i64 - self.n1 as i64
    }

    pub fn b(&self) -> i64 {
        self.p2 as i64 - self.n2 as i64
    }

    /// `f(x)` in floating point, for sampling checks.
    pub fn eval(&self, x: f64) -> f64 {
        self.r.to_f64() + self.a() as f64 * x / (x + 1.0) + self.b() as f64 * x
    }
}

/// `a + b * sqrt(m)` with `m` square-free; `m == 1` only when `b == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub a: Fraction,
    pub b: Fraction,
    pub m: u64,
}

fn square_part(n: u64) -> (u64, u64) {
    // n = s^2 * m with m square-free
    let (mut s, mut m) = (1, n);
    let mut d = 2;
    while d * d <= m {
        while m % (d * d) == 0 {
            m /= d * d;
            s *= d;
        }
        d += 1;
    }
    (s, m)
}

impl QuadSurd {
    pub fn rational(a: Fraction) -> Self {
        QuadSurd {
            a,
            b: Fraction::ZERO,
            m: 1,
        }
    }

    /// `a + b * sqrt(k)` for a non-negative rational `k`.
    pub fn new(a: Fraction, b: Fraction, k: Fraction) -> Result<Self, FareyError> {
        if k.signum() < 0 || k.is_infinite() {
            return Err(FareyError::Parse(format!("sqrt of {k}")));
        }
        if k.is_zero() || b.is_zero() {
            return Ok(QuadSurd::rational(a));
        }
        // sqrt(u/v) = sqrt(u v) / v
        let uv = (k.num() as u64)
            .checked_mul(k.den() as u64)
            .ok_or(FareyError::Overflow)?;
        let (s, m) = square_part(uv);
        let coeff = b.checked_mul(Fraction::new(s as i64, k.den())?)?;
        if m == 1 {
            return Ok(QuadSurd::rational(a.checked_add(coeff)?));
        }
        Ok(QuadSurd { a, b: coeff, m })
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.m as f64).sqrt()
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, g: Fraction) -> Ordering {
        // sign of (a - g) + b sqrt(m)
        let x = self.a.checked_sub(g).expect("finite surd");
        let sx = x.signum();
        let sb = self.b.signum();
        if sb == 0 || sx == sb || sx == 0 {
            let s = if sx != 0 { sx } else { sb };
            return s.cmp(&0);
        }
        // opposite signs: compare x^2 with b^2 m
        let lhs = x.checked_mul(x).expect("overflow");
        let rhs = self
            .b
            .checked_mul(self.b)
            .and_then(|b2| b2.checked_mul(Fraction::integer(self.m as i64)))
            .expect("overflow");
        match lhs.cmp(&rhs) {
            Ordering::Greater => sx.cmp(&0),
            Ordering::Less => sb.cmp(&0),
            Ordering::Equal => Ordering::Equal,
        }
    }
}

fn compact(f: Fraction) -> String {
    if f.is_integer() {
        f.num().to_string()
    } else {
        f.to_string()
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&compact(self.a));
        }
        let b = self.b;
        let mag = compact(Fraction::new(b.num().abs(), b.den()).unwrap());
        let coef = if mag == "1" {
            String::new()
        } else {
            format!("{mag}*")
        };
        if self.a.is_zero() {
            let sign = if b.signum() < 0 { "-" } else { "" };
            write!(f, "{sign}{coef}sqrt({})", self.m)
        } else {
            let sign = if b.signum() < 0 { '-' } else { '+' };
            write!(f, "{}{sign}{coef}sqrt({})", compact(self.a), self.m)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    Finite(QuadSurd),
    PosInf,
}

impl Bound {
    fn rational(f: Fraction) -> Self {
        Bound::Finite(QuadSurd::rational(f))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Bound::NegInf => f64::NEG_INFINITY,
            Bound::Finite(s) => s.to_f64(),
            Bound::PosInf => f64::INFINITY,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::Finite(s) => s.fmt(f),
            Bound::PosInf => f.write_str("inf"),
        }
    }
}

/// A real interval of slopes; infinite ends are always open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlopeInterval {
    pub lo: Bound,
    pub hi: Bound,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl SlopeInterval {
    fn open(lo: Bound, hi: Bound) -> Self {
        SlopeInterval {
            lo,
            hi,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi && !self.lo_open && !self.hi_open
    }

    /// Exact membership of a rational slope.
    pub fn contains(&self, g: Fraction) -> bool {
        if g.is_infinite() {
            return false;
        }
        let above_lo = match self.lo {
            Bound::NegInf => true,
            Bound::PosInf => false,
            Bound::Finite(s) => match s.cmp_rational(g) {
                Ordering::Less => true,
                Ordering::Equal => !self.lo_open,
                Ordering::Greater => false,
            },
        };
        let below_hi = match self.hi {
            Bound::PosInf => true,
            Bound::NegInf => false,
            Bound::Finite(s) => match s.cmp_rational(g) {
                Ordering::Greater => true,
                Ordering::Equal => !self.hi_open,
                Ordering::Less => false,
            },
        };
        above_lo && below_hi
    }
}

impl fmt::Display for SlopeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{},{}{r}", self.lo, self.hi)
    }
}

impl Serialize for SlopeInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Image of `f(x) = r + A x/(x+1) + B x` over `x > 0`.
///
/// `f(0+) = r` is never attained. For large `x` the linear term wins unless
/// `B = 0`, where `f` tends to `r + A`. An interior extremum exists only when
/// `A` and `B` have opposite signs and `k = -A/B > 1`: then `x* = sqrt(k) - 1`
/// and `f(x*) = r + A - B + 2 B sqrt(k)`, which is attained.
pub fn surgery_interval(d: &RobertsData) -> Result<SlopeInterval, IntervalError> {
    if d.r.is_infinite() {
        return Err(IntervalError::InfiniteSlope);
    }
    let (a, b, r) = (d.a(), d.b(), d.r);
    let rb = Bound::rational(r);
    if b == 0 {
        if a == 0 {
            return Ok(SlopeInterval {
                lo: rb,
                hi: rb,
                lo_open: false,
                hi_open: false,
            });
        }
        let other = Bound::rational(r.checked_add(Fraction::integer(a))?);
        return Ok(if a > 0 {
            SlopeInterval::open(rb, other)
        } else {
            SlopeInterval::open(other, rb)
        });
    }
    let k = Fraction::new(-a, b)?;
    if a == 0 || a.signum() == b.signum() || k <= Fraction::ONE {
        return Ok(if b > 0 {
            SlopeInterval::open(rb, Bound::PosInf)
        } else {
            SlopeInterval::open(Bound::NegInf, rb)
        });
    }
    let base = r.checked_add(Fraction::integer(a - b))?;
    let ext = QuadSurd::new(base, Fraction::integer(2 * b), k)?;
    Ok(if b > 0 {
        SlopeInterval {
            lo: Bound::Finite(ext),
            hi: Bound::PosInf,
            lo_open: false,
            hi_open: true,
        }
    } else {
        SlopeInterval {
            lo: Bound::NegInf,
            hi: Bound::Finite(ext),
            lo_open: true,
            hi_open: false,
        }
    })
}

/// Which spanning surface an interval comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceSource {
    /// Punctured Klein bottle, boundary slope -4, arc types P1 and N2.
    KleinBottle,
    /// Seifert surface, boundary slope 0, arc types P2 and N1.
    SeifertSurface,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistInterval {
    pub interval: SlopeInterval,
    pub source: SurfaceSource,
    pub data: RobertsData,
    /// Times the cusp of the complementary solid torus runs along its longitude.
    pub cusp_winding: u64,
}

/// Intervals of slopes `g` on `K[2n, 2]` for which `K(g)` is not small Seifert fibered.
pub fn twist_knot_intervals(n: i64) -> Result<Vec<TwistInterval>, IntervalError> {
    if n == 0 || n == 1 {
        return Err(IntervalError::BadTwist(n));
    }
    let klein = RobertsData {
        r: Fraction::integer(-4),
        p1: 1,
        p2: 0,
        n1: 0,
        n2: 1,
    };
    let mut out = vec![TwistInterval {
        interval: surgery_interval(&klein)?,
        source: SurfaceSource::KleinBottle,
        data: klein,
        cusp_winding: (2 * n - 1).unsigned_abs(),
    }];
    if n.abs() > 2 {
        let seifert = RobertsData {
            r: Fraction::ZERO,
            p1: 0,
            p2: 1,
            n1: 1,
            n2: 0,
        };
        out.push(TwistInterval {
            interval: surgery_interval(&seifert)?,
            source: SurfaceSource::SeifertSurface,
            data: seifert,
            cusp_winding: (2 * n).unsigned_abs(),
        });
    }
    Ok(out)
}
