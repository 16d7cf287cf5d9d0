use serde::{Deserialize, Serialize};

use crate::farey::{Expansion, Family, Fraction};
use crate::interval::SlopeInterval;
use crate::paths::PathSummary;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurgeryKind {
    Reducible,
    Toroidal,
    SmallSeifertFibered,
    NonExceptional,
    /// A torus-knot slope other than the reducible one; not classified here.
    TorusKnotSurgery,
}

impl SurgeryKind {
    pub fn is_exceptional(&self) -> bool {
        matches!(
            self,
            SurgeryKind::Reducible | SurgeryKind::Toroidal | SurgeryKind::SmallSeifertFibered
        )
    }

    pub fn letter(&self) -> char {
        match self {
            SurgeryKind::Reducible => 'R',
            SurgeryKind::Toroidal => 'T',
            SurgeryKind::SmallSeifertFibered => 'S',
            SurgeryKind::NonExceptional => 'N',
            SurgeryKind::TorusKnotSurgery => 'K',
        }
    }
}

/// Facts a verdict can rest on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Source {
    /// Reducible fillings of 2-bridge knots: only 2q on the (2, q) torus knot.
    ReducibleClassification,
    /// Toroidal fillings, read off the two-term forms.
    ToroidalClassification,
    /// Twist-knot fillings seen as fillings of the Whitehead link.
    WhiteheadSeifertFilling,
    /// An allowable path with a corner above 2 rules out small Seifert fillings.
    AllowablePathObstruction,
    /// Two-channel path in the twisted Whitehead link, for two-term knots.
    TwistedWhiteheadObstruction,
    /// Same two-channel path, for non-integral slopes on twist knots.
    NonIntegralObstruction,
    /// Interval from the punctured Klein bottle: slopes below -4.
    KleinBottleInterval,
    /// Interval from the Seifert surface: positive slopes, needs |n| > 2.
    SeifertSurfaceInterval,
    /// The figure-eight knot is its own mirror image.
    Amphicheirality,
    /// The classification theorem as stated, with no constructive argument here.
    CensusStatement,
}

impl Source {
    pub fn is_constructive(&self) -> bool {
        !matches!(self, Source::CensusStatement)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    /// Census row for the knot's family.
    TableRow {
        family: Family,
        slope: Fraction,
        kind: SurgeryKind,
    },
    TwoTermForm {
        form: Expansion,
    },
    AllowablePath {
        summary: PathSummary,
    },
    WhiteheadPath {
        r: i64,
        link: Fraction,
        expansion: Expansion,
        summary: PathSummary,
    },
    /// `slope` lies in `interval`, computed for the twist knot `knot`.
    IntervalMembership {
        knot: Expansion,
        slope: Fraction,
        interval: SlopeInterval,
        cusp_winding: u64,
    },
    /// The slope was negated before applying the remaining evidence.
    MirrorSlope {
        from: Fraction,
        to: Fraction,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub sources: Vec<Source>,
    pub evidence: Vec<Evidence>,
    /// Set when no constructive source covers the slope.
    pub incomplete_derivation: bool,
    /// Set for torus-knot slopes that are outside what is classified here.
    pub out_of_scope: bool,
}

impl Certificate {
    pub fn new(sources: Vec<Source>, evidence: Vec<Evidence>) -> Self {
        let incomplete = !sources.iter().any(Source::is_constructive);
        Certificate {
            sources,
            evidence,
            incomplete_derivation: incomplete,
            out_of_scope: false,
        }
    }

    pub fn has_constructive_source(&self) -> bool {
        self.sources.iter().any(Source::is_constructive)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryVerdict {
    pub slope: Fraction,
    pub kind: SurgeryKind,
    pub certificate: Certificate,
}
