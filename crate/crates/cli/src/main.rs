use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use surgery_atlas::{
    build_diagram, constructive_path, emit, even_expansion, exhaustive_allowable_paths,
    parse_knot_terms, search_obstruction, surgery_interval, survey_fractions, survey_row,
    ClassifyError, Diagram, DiagramError, Expansion, FareyError, Format, Fraction, IntervalError,
    KnotAnalysis, PathError, PathSummary, RobertsData, SurgeryVerdict, SurveyRow,
};

#[derive(Parser)]
#[command(
    name = "surgery-atlas",
    version,
    about = "Exceptional surgeries on 2-bridge knots"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exceptional-slope census of a knot, or the verdict for one slope.
    Classify {
        /// `p/q` or `[b1,...,bk]`
        #[arg(allow_hyphen_values = true)]
        knot: String,
        #[arg(long, allow_hyphen_values = true)]
        slope: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The triangulated disk of an expansion or of a knot's even expansion.
    Diagram {
        #[arg(allow_hyphen_values = true)]
        knot: String,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Allowable paths: the constructive one by default, or all of them.
    Paths {
        #[arg(allow_hyphen_values = true)]
        knot: String,
        #[arg(long)]
        exhaustive: bool,
        /// Give up after this many complete paths.
        #[arg(long, default_value_t = 1_000_000)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
    /// Slope interval `{ r + A x/(x+1) + B x : x > 0 }`.
    Interval(IntervalArgs),
    /// Classify every knot up to a denominator and write one JSON line each.
    Survey {
        #[arg(long)]
        max_q: i64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        bound: usize,
        /// Keep rows already in the output file and append the rest.
        #[arg(long)]
        resume: bool,
    },
}

#[derive(Args)]
struct IntervalArgs {
    #[arg(long, allow_hyphen_values = true)]
    r: String,
    #[arg(long, default_value_t = 0)]
    p1: u32,
    #[arg(long, default_value_t = 0)]
    p2: u32,
    #[arg(long, default_value_t = 0)]
    n1: u32,
    #[arg(long, default_value_t = 0)]
    n2: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
    Bound(String),
    Io(String),
    Disagreement(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Disagreement(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Bound(_) => 4,
            Failure::Io(_) => 5,
        }
    }
}

impl From<FareyError> for Failure {
    fn from(e: FareyError) -> Self {
        match e {
            FareyError::Parse(_) | FareyError::ZeroOverZero | FareyError::NotReduced { .. } => {
                Failure::Parse(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::Farey(f) => f.into(),
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<PathError> for Failure {
    fn from(e: PathError) -> Self {
        match e {
            PathError::Diagram(d) => d.into(),
            PathError::BoundExceeded(_) => Failure::Bound(e.to_string()),
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<IntervalError> for Failure {
    fn from(e: IntervalError) -> Self {
        match e {
            IntervalError::Farey(f) => f.into(),
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Farey(f) => f.into(),
            ClassifyError::Diagram(d) => d.into(),
            ClassifyError::Path(p) => p.into(),
            ClassifyError::Interval(i) => i.into(),
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Out = Result<(), Failure>;

fn print_json<T: Serialize>(v: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("output serializes")
    );
}

fn parse_fraction(s: &str) -> Result<Fraction, Failure> {
    s.trim().parse::<Fraction>().map_err(Failure::from)
}

/// An explicit expansion is drawn as given; a fraction uses its even expansion.
fn diagram_for(spec: &str) -> Result<Diagram, Failure> {
    let t = spec.trim();
    let e = if t.starts_with('[') {
        t.parse::<Expansion>()?
    } else {
        even_expansion(parse_fraction(t)?)?
    };
    Ok(build_diagram(&e)?)
}

fn verdict_line(v: &SurgeryVerdict) -> String {
    let sources: Vec<String> = v
        .certificate
        .sources
        .iter()
        .map(|s| format!("{s:?}"))
        .collect();
    let slope = if v.slope.is_integer() {
        v.slope.num().to_string()
    } else {
        v.slope.to_string()
    };
    let kind = format!("{:?}", v.kind);
    let mut line = format!("{slope:>6}  {kind:<20} {}", sources.join(" + "));
    if v.certificate.incomplete_derivation {
        line.push_str("  [incomplete derivation]");
    }
    if v.certificate.out_of_scope {
        line.push_str("  [out of scope]");
    }
    line
}

fn cmd_classify(knot: &str, slope: Option<&str>, json: bool) -> Out {
    let f = parse_knot_terms(knot)?;
    let a = KnotAnalysis::parse(knot)?;
    match slope {
        Some(s) => {
            let v = a.verdict(parse_fraction(s)?)?;
            if json {
                print_json(&v);
            } else {
                println!("{}", verdict_line(&v));
            }
        }
        None => {
            let r = a.report()?;
            if json {
                print_json(&r);
            } else {
                let c = &r.canonical;
                let m = if c.mirrored { " (mirror)" } else { "" };
                println!("knot {f}: canonical {}/{}{m}, {}", c.p, c.q, r.family);
                for d in &r.diagnostics {
                    println!("  {d}");
                }
                println!("exceptional slopes: {}", r.census.len());
                for v in &r.census {
                    println!("{}", verdict_line(v));
                }
            }
        }
    }
    Ok(())
}

fn cmd_diagram(knot: &str, json: bool, dot: bool) -> Out {
    let d = diagram_for(knot)?;
    if json {
        println!("{}", emit(&d, Format::Json));
    } else if dot {
        print!("{}", emit(&d, Format::Dot));
    } else {
        println!("D({}) from {}", d.fraction(), d.expansion());
        println!(
            "vertices {}  edges {}  triangles {}",
            d.vertices().len(),
            d.edges().len(),
            d.triangles().len()
        );
        let labels = |p: &[usize]| -> String {
            p.iter()
                .map(|&v| d.label(v).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("top     {}", labels(d.top_path()));
        println!("bottom  {}", labels(d.bottom_path()));
    }
    Ok(())
}

fn path_line(s: &PathSummary) -> String {
    let vs: Vec<String> = s.path.vertices.iter().map(|v| v.to_string()).collect();
    format!(
        "{}  channels {}  corners {}..{}",
        vs.join(" "),
        s.channels,
        s.min_corner,
        s.max_corner
    )
}

fn cmd_paths(knot: &str, exhaustive: bool, bound: usize, json: bool) -> Out {
    let d = diagram_for(knot)?;
    let summaries: Vec<PathSummary> = if exhaustive {
        exhaustive_allowable_paths(&d, bound)
            .map(|c| c.map(|c| c.summary(&d)))
            .collect::<Result<_, _>>()?
    } else {
        match constructive_path(&d) {
            Ok(c) => vec![c.summary(&d)],
            Err(PathError::BoundExceeded(b)) => return Err(PathError::BoundExceeded(b).into()),
            // no constructive shape applies: report the first obstruction, if any
            Err(_) => search_obstruction(&d, Some(bound))?
                .found
                .map(|c| c.summary(&d))
                .into_iter()
                .collect(),
        }
    };
    if json {
        print_json(&summaries);
    } else {
        for s in &summaries {
            println!("{}", path_line(s));
        }
        println!("{} allowable path(s)", summaries.len());
    }
    Ok(())
}

fn cmd_interval(a: &IntervalArgs) -> Out {
    let data = RobertsData {
        r: parse_fraction(&a.r)?,
        p1: a.p1,
        p2: a.p2,
        n1: a.n1,
        n2: a.n2,
    };
    let j = surgery_interval(&data)?;
    if a.json {
        print_json(&serde_json::json!({ "data": data, "interval": j }));
    } else {
        println!("{j}");
    }
    Ok(())
}

fn survey_path(out: Option<PathBuf>, max_q: i64) -> PathBuf {
    out.unwrap_or_else(|| {
        let dir = std::env::var_os("SURGERY_ATLAS_OUT")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("."));
        dir.join(format!("survey-q{max_q}.jsonl"))
    })
}

fn read_rows(path: &PathBuf) -> Result<Vec<SurveyRow>, Failure> {
    let mut rows = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        // a torn last line from an interrupted run is recomputed
        if let Ok(r) = serde_json::from_str::<SurveyRow>(&line) {
            rows.push(r);
        }
    }
    Ok(rows)
}

fn cmd_survey(
    max_q: i64,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    bound: usize,
    resume: bool,
) -> Out {
    if max_q < 3 {
        return Err(Failure::Domain(format!(
            "--max-q must be at least 3, got {max_q}"
        )));
    }
    let path = survey_path(out, max_q);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut rows = if resume && path.exists() {
        read_rows(&path)?
    } else {
        Vec::new()
    };
    let done: HashSet<(i64, i64)> = rows.iter().map(|r| (r.p, r.q)).collect();
    let todo: Vec<(i64, i64)> = survey_fractions(max_q)
        .into_iter()
        .filter(|k| !done.contains(k))
        .collect();

    // rewrite the kept rows so a torn line does not survive
    let mut w = BufWriter::new(
        OpenOptions::new()
            .create(true)
            .write(true)
            .truncate(true)
            .open(&path)?,
    );
    for r in &rows {
        writeln!(w, "{}", serde_json::to_string(r).expect("row serializes"))?;
    }
    w.flush()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Io(e.to_string()))?;
    for chunk in todo.chunks(256) {
        let batch: Vec<SurveyRow> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&(p, q)| survey_row(p, q, Some(bound)))
                .collect::<Result<_, _>>()
        })?;
        for r in &batch {
            writeln!(w, "{}", serde_json::to_string(r).expect("row serializes"))?;
        }
        w.flush()?;
        rows.extend(batch);
    }

    let mut families: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &rows {
        let name = r.family.split('(').next().unwrap_or(&r.family);
        *families.entry(name).or_default() += 1;
    }
    let bad: Vec<&SurveyRow> = rows.iter().filter(|r| !r.oracle_agreement).collect();
    println!("wrote {} rows to {}", rows.len(), path.display());
    for (name, n) in &families {
        println!("  {name:<16} {n}");
    }
    for r in &bad {
        println!("disagreement: {}/{} {}", r.p, r.q, r.family);
    }
    println!("oracle disagreements: {}", bad.len());
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagreement(bad.len()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Classify { knot, slope, json } => cmd_classify(&knot, slope.as_deref(), json),
        Cmd::Diagram { knot, json, dot } => cmd_diagram(&knot, json, dot),
        Cmd::Paths {
            knot,
            exhaustive,
            bound,
            json,
        } => cmd_paths(&knot, exhaustive, bound, json),
        Cmd::Interval(a) => cmd_interval(&a),
        Cmd::Survey {
            max_q,
            out,
            jobs,
            bound,
            resume,
        } => cmd_survey(max_q, out, jobs, bound, resume),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                Failure::Disagreement(n) => {
                    eprintln!("error: {n} row(s) disagree with the path search")
                }
                Failure::Parse(m) | Failure::Domain(m) | Failure::Bound(m) | Failure::Io(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(e.code())
        }
    }
}
