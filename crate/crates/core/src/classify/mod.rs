//! Exceptional-surgery census and per-slope verdicts for 2-bridge knots.

mod certificate;

pub use certificate::{Certificate, Evidence, Source, SurgeryKind, SurgeryVerdict};

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{build_diagram, DiagramError};
use crate::farey::{
    even_expansion, normalize_knot, parse_knot_terms, two_term_forms, Expansion, Family,
    FareyError, Fraction, KnotClass,
};
use crate::interval::{twist_knot_intervals, IntervalError, SurfaceSource};
use crate::paths::{constructive_path, whitehead_two_channel_path, PathError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("{0} is the trivial knot")]
    TrivialKnot(String),
    #[error("slope inf is the trivial filling")]
    TrivialSlope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Canonical {
    pub p: i64,
    pub q: i64,
    pub mirrored: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotReport {
    pub input: String,
    pub canonical: Canonical,
    pub family: Family,
    pub census: Vec<SurgeryVerdict>,
    pub diagnostics: Vec<String>,
}

/// Everything needed to answer slope queries about one knot.
///
/// Path certificates are only built when a verdict needs them, then reused.
pub struct KnotAnalysis {
    input: String,
    class: KnotClass,
    forms: Vec<Expansion>,
    census: Vec<SurgeryVerdict>,
    obstruction: OnceLock<Result<Evidence, ClassifyError>>,
}

fn int(n: i64) -> Fraction {
    Fraction::integer(n)
}

impl KnotAnalysis {
    /// Accepts `p/q` or `[b1,...,bk]`.
    pub fn parse(spec: &str) -> Result<Self, ClassifyError> {
        let f = parse_knot_terms(spec)?;
        Self::build(spec.trim().to_string(), f)
    }

    pub fn new(f: Fraction) -> Result<Self, ClassifyError> {
        Self::build(f.to_string(), f)
    }

    fn build(input: String, f: Fraction) -> Result<Self, ClassifyError> {
        let class = normalize_knot(f)?;
        if class.family == Family::Trivial {
            return Err(ClassifyError::TrivialKnot(input));
        }
        let forms = if class.family.is_hyperbolic() {
            two_term_forms(&class)
        } else {
            Vec::new()
        };
        let mut a = KnotAnalysis {
            input,
            class,
            forms,
            census: Vec::new(),
            obstruction: OnceLock::new(),
        };
        a.census = a.build_census()?;
        Ok(a)
    }

    pub fn class(&self) -> &KnotClass {
        &self.class
    }

    pub fn forms(&self) -> &[Expansion] {
        &self.forms
    }

    /// Exceptional slopes of the input knot, sorted by slope.
    pub fn census(&self) -> &[SurgeryVerdict] {
        &self.census
    }

    /// The canonical twist form `[2n, 2s]` when the knot is a twist knot.
    fn twist_form(&self) -> Option<(i64, i64)> {
        match self.class.family {
            Family::TwistKnot { n, sign } => Some((n, sign)),
            Family::FigureEight => Some((1, -1)),
            _ => None,
        }
    }

    fn to_input_slope(&self, g: i64) -> Fraction {
        int(if self.class.mirrored { -g } else { g })
    }

    fn build_census(&self) -> Result<Vec<SurgeryVerdict>, ClassifyError> {
        use SurgeryKind::*;
        let fam = self.class.family;
        let rows: Vec<(i64, SurgeryKind)> = match fam {
            Family::Trivial | Family::Generic => Vec::new(),
            Family::TorusKnot2q { q } => vec![(2 * q, Reducible)],
            Family::TwistKnot { sign: s, .. } => vec![
                (0, Toroidal),
                (-4 * s, Toroidal),
                (-s, SmallSeifertFibered),
                (-2 * s, SmallSeifertFibered),
                (-3 * s, SmallSeifertFibered),
            ],
            Family::FigureEight => {
                let mut v = vec![(0, Toroidal), (4, Toroidal), (-4, Toroidal)];
                for g in [1, 2, 3] {
                    v.push((g, SmallSeifertFibered));
                    v.push((-g, SmallSeifertFibered));
                }
                v
            }
            Family::TwoTermGeneric { b1, b2 } => {
                vec![(if b1 % 2 == 0 { 0 } else { 2 * b2 }, Toroidal)]
            }
        };
        let mut out: Vec<SurgeryVerdict> = rows
            .into_iter()
            .map(|(g, kind)| {
                let source = match kind {
                    Reducible => Source::ReducibleClassification,
                    Toroidal => Source::ToroidalClassification,
                    _ => Source::WhiteheadSeifertFilling,
                };
                let mut evidence = vec![Evidence::TableRow {
                    family: fam,
                    slope: int(g),
                    kind,
                }];
                if let Some(form) = self.forms.first() {
                    evidence.push(Evidence::TwoTermForm { form: form.clone() });
                }
                SurgeryVerdict {
                    slope: self.to_input_slope(g),
                    kind,
                    certificate: Certificate::new(vec![source], evidence),
                }
            })
            .collect();
        out.sort_by_key(|v| v.slope);
        Ok(out)
    }

    /// Path evidence shared by every non-exceptional verdict that needs one.
    fn obstruction(&self) -> Result<Evidence, ClassifyError> {
        self.obstruction
            .get_or_init(|| {
                let whitehead = |r: i64| -> Result<Evidence, ClassifyError> {
                    let w = whitehead_two_channel_path(r)?;
                    Ok(Evidence::WhiteheadPath {
                        r,
                        link: w.link,
                        expansion: w.expansion.clone(),
                        summary: w.summary(),
                    })
                };
                match self.class.family {
                    Family::Generic => {
                        let d = build_diagram(&even_expansion(self.class.fraction())?)?;
                        let cert = constructive_path(&d)?;
                        Ok(Evidence::AllowablePath {
                            summary: cert.summary(&d),
                        })
                    }
                    Family::TwoTermGeneric { b1, b2 } => {
                        whitehead(if b1 % 2 == 0 { b2 } else { b1 })
                    }
                    Family::TwistKnot { n, .. } => whitehead(2 * n),
                    // [3, 2] is a figure-eight form with |b| > 2
                    Family::FigureEight => whitehead(3),
                    _ => unreachable!("no obstruction for non-hyperbolic knots"),
                }
            })
            .clone()
    }

    /// The verdict for slope `g` on the input knot.
    pub fn verdict(&self, g_in: Fraction) -> Result<SurgeryVerdict, ClassifyError> {
        if g_in.is_infinite() {
            return Err(ClassifyError::TrivialSlope);
        }
        if let Some(v) = self.census.iter().find(|v| v.slope == g_in) {
            return Ok(v.clone());
        }
        let g = self.class.to_canonical_slope(g_in)?;
        let mut evidence = Vec::new();
        if self.class.mirrored {
            evidence.push(Evidence::MirrorSlope { from: g_in, to: g });
        }
        let (kind, certificate) = match self.class.family {
            Family::TorusKnot2q { q } => {
                evidence.push(Evidence::TableRow {
                    family: self.class.family,
                    slope: int(2 * q),
                    kind: SurgeryKind::Reducible,
                });
                let mut c = Certificate::new(vec![Source::ReducibleClassification], evidence);
                c.out_of_scope = true;
                (SurgeryKind::TorusKnotSurgery, c)
            }
            Family::Generic => {
                evidence.push(self.obstruction()?);
                (
                    SurgeryKind::NonExceptional,
                    Certificate::new(vec![Source::AllowablePathObstruction], evidence),
                )
            }
            Family::TwoTermGeneric { .. } => {
                evidence.push(Evidence::TwoTermForm {
                    form: self.forms[0].clone(),
                });
                evidence.push(self.obstruction()?);
                (
                    SurgeryKind::NonExceptional,
                    Certificate::new(vec![Source::TwistedWhiteheadObstruction], evidence),
                )
            }
            Family::TwistKnot { .. } | Family::FigureEight => (
                SurgeryKind::NonExceptional,
                self.twist_certificate(g, evidence)?,
            ),
            Family::Trivial => unreachable!("trivial knots are rejected on construction"),
        };
        Ok(SurgeryVerdict {
            slope: g_in,
            kind,
            certificate,
        })
    }

    /// Non-census slope on `K[2n, 2s]`, argued on the mirror `K[2ns, 2]` when `s < 0`.
    fn twist_certificate(
        &self,
        g: Fraction,
        mut evidence: Vec<Evidence>,
    ) -> Result<Certificate, ClassifyError> {
        let (n, s) = self.twist_form().expect("twist family");
        if !g.is_integer() {
            evidence.push(self.obstruction()?);
            return Ok(Certificate::new(
                vec![Source::NonIntegralObstruction],
                evidence,
            ));
        }
        let (n2, mut g2) = (n * s, g.num() * s);
        if s < 0 {
            evidence.push(Evidence::MirrorSlope {
                from: g,
                to: int(g2),
            });
        }
        let knot = Expansion::new(vec![2 * n2, 2]).expect("nonzero terms");
        let mut sources = Vec::new();
        if self.class.family == Family::FigureEight && g2 > 4 {
            // its own mirror: move the slope below -4
            sources.push(Source::Amphicheirality);
            evidence.push(Evidence::MirrorSlope {
                from: int(g2),
                to: int(-g2),
            });
            g2 = -g2;
        }
        let intervals = twist_knot_intervals(n2)?;
        let hit = intervals.iter().find(|t| t.interval.contains(int(g2)));
        match hit {
            Some(t) => {
                sources.push(match t.source {
                    SurfaceSource::KleinBottle => Source::KleinBottleInterval,
                    SurfaceSource::SeifertSurface => Source::SeifertSurfaceInterval,
                });
                evidence.push(Evidence::IntervalMembership {
                    knot,
                    slope: int(g2),
                    interval: t.interval,
                    cusp_winding: t.cusp_winding,
                });
            }
            None => {
                sources.push(Source::CensusStatement);
                evidence.push(Evidence::TableRow {
                    family: self.class.family,
                    slope: g,
                    kind: SurgeryKind::NonExceptional,
                });
            }
        }
        Ok(Certificate::new(sources, evidence))
    }

    pub fn report(&self) -> Result<KnotReport, ClassifyError> {
        let mut diagnostics = Vec::new();
        if self.class.family.is_hyperbolic() {
            diagnostics.push(format!(
                "even expansion {}",
                even_expansion(self.class.fraction())?
            ));
        }
        if !self.forms.is_empty() {
            let shown: Vec<String> = self.forms.iter().map(|e| e.to_string()).collect();
            diagnostics.push(format!("two-term forms {}", shown.join(" ")));
        }
        match self.class.family {
            Family::Generic => {
                if let Evidence::AllowablePath { summary } = self.obstruction()? {
                    let vs: Vec<String> = summary
                        .path
                        .vertices
                        .iter()
                        .map(|v| v.to_string())
                        .collect();
                    diagnostics.push(format!(
                        "allowable path {} with {} channel(s), max corner {}",
                        vs.join(" "),
                        summary.channels,
                        summary.max_corner
                    ));
                }
            }
            Family::TorusKnot2q { .. } => {
                diagnostics.push("slopes other than the reducible one are not classified".into());
            }
            Family::TwistKnot { n, .. } if n.abs() == 2 => {
                diagnostics
                    .push("one-sided slopes are certified by the census statement only".into());
            }
            _ => {}
        }
        Ok(KnotReport {
            input: self.input.clone(),
            canonical: Canonical {
                p: self.class.p,
                q: self.class.q,
                mirrored: self.class.mirrored,
            },
            family: self.class.family,
            census: self.census.clone(),
            diagnostics,
        })
    }
}

pub fn classify_knot(f: Fraction) -> Result<KnotReport, ClassifyError> {
    KnotAnalysis::new(f)?.report()
}

pub fn classify_slope(f: Fraction, g: Fraction) -> Result<SurgeryVerdict, ClassifyError> {
    KnotAnalysis::new(f)?.verdict(g)
}

pub fn certificate(f: Fraction, g: Fraction) -> Result<Certificate, ClassifyError> {
    Ok(classify_slope(f, g)?.certificate)
}
