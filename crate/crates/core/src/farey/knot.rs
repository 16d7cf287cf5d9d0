use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{evaluate, parse_terms, Expansion, FareyError, Fraction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Trivial,
    /// The (2, q) torus knot.
    TorusKnot2q {
        q: i64,
    },
    /// `K[2n, 2*sign]` with |n| > 1.
    TwistKnot {
        n: i64,
        sign: i64,
    },
    /// `K[b1, b2]` with both |bi| > 2, stored with `b2` even.
    TwoTermGeneric {
        b1: i64,
        b2: i64,
    },
    FigureEight,
    Generic,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Trivial => "Trivial",
            Family::TorusKnot2q { .. } => "TorusKnot2q",
            Family::TwistKnot { .. } => "TwistKnot",
            Family::TwoTermGeneric { .. } => "TwoTermGeneric",
            Family::FigureEight => "FigureEight",
            Family::Generic => "Generic",
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        !matches!(self, Family::Trivial | Family::TorusKnot2q { .. })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::TorusKnot2q { q } => write!(f, "TorusKnot2q({q})"),
            Family::TwistKnot { n, sign } => {
                write!(f, "TwistKnot({n},{})", if *sign > 0 { '+' } else { '-' })
            }
            Family::TwoTermGeneric { b1, b2 } => write!(f, "TwoTermGeneric({b1},{b2})"),
            other => f.write_str(other.name()),
        }
    }
}

/// A 2-bridge knot in canonical form.
///
/// For hyperbolic knots `p` is even with `1 < p < q`. Torus knots are stored
/// as `1/q` and the trivial knot as `0/1`. When `mirrored` is set the input
/// was the mirror image, so slope `g` on the input is slope `-g` here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnotClass {
    pub p: i64,
    pub q: i64,
    pub mirrored: bool,
    pub family: Family,
}

impl KnotClass {
    pub fn fraction(&self) -> Fraction {
        Fraction::new(self.p, self.q).expect("canonical knot fraction")
    }

    /// Maps a slope on the input knot to a slope on the canonical knot, and back.
    pub fn to_canonical_slope(&self, g: Fraction) -> Result<Fraction, FareyError> {
        if self.mirrored {
            g.checked_neg()
        } else {
            Ok(g)
        }
    }
}

/// Reads a knot given as `p/q` or as an expansion `[b1,...,bk]`.
///
/// The denominator's parity is checked before reduction so that `4/6` is
/// reported as a link rather than as the unreduced knot `2/3`.
pub fn parse_knot_terms(s: &str) -> Result<Fraction, FareyError> {
    let t = s.trim();
    if t.starts_with('[') {
        let f = evaluate(&t.parse::<Expansion>()?)?;
        if f.den().is_even() {
            return Err(FareyError::IsLink(t.to_string()));
        }
        return Ok(f);
    }
    let (num, den) = parse_terms(t)?;
    if den.is_even() {
        return Err(FareyError::IsLink(t.to_string()));
    }
    Fraction::new_reduced(num, den)
}

/// Canonical representative of the knot `K(f)`.
///
/// Order of moves: reduce `p` mod `q`, then if `p` is odd replace it by `q - p`
/// (the mirror). Since `q` is odd exactly one of `p`, `q - p` is even, so the
/// inverse move is never needed to reach an even numerator.
pub fn normalize_knot(f: Fraction) -> Result<KnotClass, FareyError> {
    let q = f.den();
    if q.is_even() {
        return Err(FareyError::IsLink(f.to_string()));
    }
    if q == 1 {
        return Ok(KnotClass {
            p: 0,
            q: 1,
            mirrored: false,
            family: Family::Trivial,
        });
    }
    let p = f.num().rem_euclid(q);
    if p == 1 || p == q - 1 {
        return Ok(KnotClass {
            p: 1,
            q,
            mirrored: p == q - 1,
            family: Family::TorusKnot2q { q },
        });
    }
    let (p, mirrored) = if p.is_even() {
        (p, false)
    } else {
        (q - p, true)
    };
    let forms = forms_for(p, q);
    Ok(KnotClass {
        p,
        q,
        mirrored,
        family: detect_family(&forms)?,
    })
}

/// Length-two expansions `[b1,b2]` whose value is `p/q` up to `p mod q`.
///
/// `[b1,b2] = b2/(b1*b2 - 1)` is always reduced, so `b1*b2 = 1 + q` or `1 - q`
/// and `b2` runs over the divisors of that product.
pub fn two_term_forms(k: &KnotClass) -> Vec<Expansion> {
    match k.family {
        Family::Trivial => Vec::new(),
        _ => forms_for(k.p, k.q),
    }
}

fn forms_for(p: i64, q: i64) -> Vec<Expansion> {
    let mut out = Vec::new();
    for m in [1 + q, 1 - q] {
        for d in divisors(m.unsigned_abs()) {
            for b2 in [d as i64, -(d as i64)] {
                let b1 = m / b2;
                // value is b2/q when b1*b2 - 1 = q and -b2/q otherwise
                let num = if m - 1 == q { b2 } else { -b2 };
                if (num - p).rem_euclid(q) == 0 {
                    out.push(Expansion::new(vec![b1, b2]).expect("nonzero terms"));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Puts a form with a `±2` entry into the shape `[2n, 2s]`.
fn twist_shape(b1: i64, b2: i64) -> Option<(i64, i64)> {
    let (b, t) = if b2.abs() == 2 {
        (b1, b2)
    } else if b1.abs() == 2 {
        (b2, b1)
    } else {
        return None;
    };
    // [b, 2] = [b - 1, -2] and [b, -2] = [b + 1, 2]
    let (b, t) = if b.is_odd() { (b - t / 2, -t) } else { (b, t) };
    Some((b / 2, t / 2))
}

fn detect_family(forms: &[Expansion]) -> Result<Family, FareyError> {
    let inconsistent = || {
        let shown: Vec<String> = forms.iter().map(|e| e.to_string()).collect();
        FareyError::InternalInconsistency(format!("two-term forms {} disagree", shown.join(" ")))
    };
    let twists: Vec<(i64, i64)> = forms
        .iter()
        .filter_map(|e| twist_shape(e.terms()[0], e.terms()[1]))
        .collect();
    if let Some(&(n, s)) = twists.first() {
        if n.abs() == 1 {
            if twists.iter().any(|&(m, _)| m.abs() != 1) {
                return Err(inconsistent());
            }
            return Ok(Family::FigureEight);
        }
        if twists.iter().any(|&t| t != (n, s)) {
            return Err(inconsistent());
        }
        return Ok(Family::TwistKnot { n, sign: s });
    }
    let mut generic = forms.iter().map(|e| {
        let (b1, b2) = (e.terms()[0], e.terms()[1]);
        if b2.is_odd() {
            (b2, b1)
        } else {
            (b1, b2)
        }
    });
    match generic.next() {
        None => Ok(Family::Generic),
        Some((b1, b2)) => {
            let slope = |b1: i64, b2: i64| if b1.is_even() { 0 } else { 2 * b2 };
            let s0 = slope(b1, b2);
            if generic.any(|(c1, c2)| slope(c1, c2) != s0) {
                return Err(inconsistent());
            }
            Ok(Family::TwoTermGeneric { b1, b2 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    fn forms(s: &str) -> Vec<String> {
        let k = normalize_knot(frac(s)).unwrap();
        two_term_forms(&k).iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn normal_forms() {
        let k = normalize_knot(frac("2/5")).unwrap();
        assert_eq!((k.p, k.q, k.mirrored), (2, 5, false));
        assert_eq!(k.family, Family::FigureEight);

        let k = normalize_knot(frac("3/5")).unwrap();
        assert_eq!((k.p, k.q, k.mirrored), (2, 5, true));

        let k = normalize_knot(frac("1/3")).unwrap();
        assert_eq!(k.family, Family::TorusKnot2q { q: 3 });
        let k = normalize_knot(frac("2/3")).unwrap();
        assert!(k.mirrored);
        assert_eq!(k.family, Family::TorusKnot2q { q: 3 });

        assert_eq!(normalize_knot(frac("5")).unwrap().family, Family::Trivial);
        assert!(matches!(
            normalize_knot(frac("3/8")),
            Err(FareyError::IsLink(_))
        ));
        assert!(matches!(
            normalize_knot(Fraction::INFINITY),
            Err(FareyError::IsLink(_))
        ));
    }

    #[test]
    fn negative_and_large_numerators_reduce_mod_q() {
        let k = normalize_knot(frac("-2/5")).unwrap();
        assert_eq!((k.p, k.mirrored), (2, true));
        let k = normalize_knot(frac("18/7")).unwrap();
        assert_eq!((k.p, k.mirrored), (4, false));
    }

    #[test]
    fn families() {
        let fam = |s| normalize_knot(frac(s)).unwrap().family;
        assert_eq!(fam("2/7"), Family::TwistKnot { n: 2, sign: 1 });
        assert_eq!(fam("4/15"), Family::TwoTermGeneric { b1: 4, b2: 4 });
        assert_eq!(fam("4/11"), Family::TwoTermGeneric { b1: 3, b2: 4 });
        assert_eq!(fam("16/41"), Family::Generic);
    }

    #[test]
    fn two_term_examples() {
        assert_eq!(forms("2/7"), ["[3,-2]", "[4,2]"]);
        assert_eq!(forms("4/11"), ["[3,4]"]);
        assert!(forms("16/41").is_empty());
        assert_eq!(forms("2/5"), ["[-2,-3]", "[2,-2]", "[3,2]"]);
    }

    #[test]
    fn knot_specs() {
        assert_eq!(parse_knot_terms("[3,4]").unwrap(), frac("4/11"));
        assert_eq!(parse_knot_terms(" 2/7").unwrap(), frac("2/7"));
        assert!(matches!(
            parse_knot_terms("4/6"),
            Err(FareyError::IsLink(_))
        ));
        assert!(matches!(
            parse_knot_terms("[2,2,-2]"),
            Err(FareyError::IsLink(_))
        ));
        assert!(matches!(
            parse_knot_terms("3/9"),
            Err(FareyError::NotReduced { .. })
        ));
        assert!(matches!(parse_knot_terms("x"), Err(FareyError::Parse(_))));
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), [1]);
        assert_eq!(divisors(9), [1, 3, 9]);
    }
}
