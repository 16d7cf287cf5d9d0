//! Exact rationals, continued-fraction expansions and 2-bridge knot normal forms.

mod expansion;
mod fraction;
mod knot;

pub use expansion::{evaluate, even_expansion, Expansion};
pub use fraction::{mod_inverse, Fraction, Parity};
pub use knot::{normalize_knot, parse_knot_terms, two_term_forms, Family, KnotClass};

pub(crate) use fraction::parse_terms;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("0/0 is not a fraction")]
    ZeroOverZero,
    #[error("{num}/{den} is not in lowest terms")]
    NotReduced { num: i64, den: i64 },
    #[error("integer overflow")]
    Overflow,
    #[error("arithmetic on inf")]
    InfiniteArithmetic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} must be at least 2")]
    InvalidModulus(i64),
    #[error("{p} and {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("expansion must have at least one term")]
    EmptyExpansion,
    #[error("expansion terms must be nonzero")]
    ZeroTerm,
    #[error("degenerate expansion {0}: a partial denominator vanishes")]
    DegenerateExpansion(String),
    #[error("{0} needs an even numerator and odd denominator")]
    BadParity(Fraction),
    #[error("{0} must lie strictly between 0 and 1")]
    OutOfRange(Fraction),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("{0} has even denominator: it is a 2-bridge link, not a knot")]
    IsLink(String),
}
