pub mod farey;

pub use farey::{
    evaluate, even_expansion, mod_inverse, normalize_knot, parse_knot_terms, two_term_forms,
    Expansion, Family, FareyError, Fraction, KnotClass, Parity,
};
pub mod diagram;

pub use diagram::{build_diagram, emit, Diagram, DiagramError, DiagramJson, Format};
pub mod paths;

pub use paths::{
    constructive_path, corner_number, exhaustive_allowable_paths, find_channels,
    search_obstruction, whitehead_two_channel_path, AllowableCertificate, Arc, Channel,
    DiagramPath, PathError, PathSummary,
};
pub mod interval;

pub use interval::{
    surgery_interval, twist_knot_intervals, Bound, IntervalError, QuadSurd, RobertsData,
    SlopeInterval, SurfaceSource, TwistInterval,
};
pub mod classify;

pub use classify::{
    certificate, classify_knot, classify_slope, Certificate, ClassifyError, Evidence, KnotAnalysis,
    KnotReport, Source, SurgeryKind, SurgeryVerdict,
};
pub mod survey;

pub use survey::{compact_census, survey_fractions, survey_row, SurveyRow};
