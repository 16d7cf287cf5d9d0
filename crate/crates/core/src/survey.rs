//! One row per knot for bulk surveys, cross-checked against the path search.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::classify::{ClassifyError, KnotAnalysis, SurgeryKind, SurgeryVerdict};
use crate::diagram::build_diagram;
use crate::farey::{even_expansion, Family, Fraction};
use crate::paths::{constructive_path, search_obstruction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub p: i64,
    pub q: i64,
    pub family: String,
    pub census: String,
    /// Largest corner on the first path with a corner above 2, otherwise the
    /// largest corner over all allowable paths.
    pub max_corner_found: Option<usize>,
    pub oracle_agreement: bool,
}

/// Knot fractions `p/q` with `p` even, `2 <= p < q` and `3 <= q <= max_q`.
pub fn survey_fractions(max_q: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for q in 3..=max_q {
        if q.is_even() {
            continue;
        }
        for p in (2..q).step_by(2) {
            if p.gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

/// `T:-4,0 S:-3,-2,-1`, grouped by kind in R, T, S order; `-` when empty.
pub fn compact_census(census: &[SurgeryVerdict]) -> String {
    let mut parts = Vec::new();
    for kind in [
        SurgeryKind::Reducible,
        SurgeryKind::Toroidal,
        SurgeryKind::SmallSeifertFibered,
    ] {
        let slopes: Vec<String> = census
            .iter()
            .filter(|v| v.kind == kind)
            .map(|v| {
                if v.slope.is_integer() {
                    v.slope.num().to_string()
                } else {
                    v.slope.to_string()
                }
            })
            .collect();
        if !slopes.is_empty() {
            parts.push(format!("{}:{}", kind.letter(), slopes.join(",")));
        }
    }
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

pub fn survey_row(p: i64, q: i64, bound: Option<usize>) -> Result<SurveyRow, ClassifyError> {
    let f = Fraction::new(p, q)?;
    let a = KnotAnalysis::new(f)?;
    let family = a.class().family;
    let d = build_diagram(&even_expansion(f)?)?;
    let search = search_obstruction(&d, bound)?;
    let max_corner_found = match &search.found {
        Some(c) => Some(c.max_corner),
        None => search.max_corner_seen,
    };
    let oracle_agreement = match family {
        Family::Generic => {
            search.found.is_some() && constructive_path(&d).is_ok_and(|c| c.max_corner > 2)
        }
        Family::TwistKnot { .. } | Family::FigureEight => search.found.is_none(),
        _ => true,
    };
    Ok(SurveyRow {
        p,
        q,
        family: family.to_string(),
        census: compact_census(a.census()),
        max_corner_found,
        oracle_agreement,
    })
}
