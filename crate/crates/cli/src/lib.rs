//! Problem parsing, engine dispatch and output formatting for `tropcount`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{json, Value as Json};

use tropcount::conditions::{Condition, PointConditionType};
use tropcount::engines::brute::{random_points, BruteConfig};
use tropcount::engines::{count, count_brute, MikhalkinConfig, PathOptions, Scheme};
use tropcount::invariants::{
    counterexample, invariance_report, pair_sweep, refined_floor, Configurations, InvariantValue,
    Provenance, Specialization, Value,
};
use tropcount::lattice::LatticePolygon;
use tropcount::Error;

/// A failure reported to the user: a core error or bad command-line input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        let Self::Core(e) = self else { return "usage" };
        match e {
            Error::NonPositiveQuantumInteger(_) => "non_positive_quantum_integer",
            Error::PoleAtMinusOne => "pole_at_minus_one",
            Error::NotPolynomial => "not_polynomial",
            Error::NonRealAtI => "non_real_at_i",
            Error::DegeneratePolygon => "degenerate_polygon",
            Error::DegenerateTriangle => "degenerate_triangle",
            Error::PolygonParse(_) => "polygon_parse",
            Error::NotTrivalent => "not_trivalent",
            Error::FlatVertex => "flat_vertex",
            Error::UnfixedEndWeight(_) => "unfixed_end_weight",
            Error::EmptyRealPart => "empty_real_part",
            Error::VanishingConditionsUnmet(_) => "vanishing_conditions_unmet",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DegenerateConfiguration(_) => "degenerate_configuration",
            Error::ProfileMismatch(_) => "profile_mismatch",
            Error::Unsupported(_) => "unsupported",
            Error::Invalid(_) => "invalid_input",
        }
    }

    /// Input problems exit with 2, failed computations with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                Error::PolygonParse(_)
                | Error::DimensionMismatch { .. }
                | Error::Invalid(_)
                | Error::DegeneratePolygon,
            ) => 2,
            CliError::Core(_) => 1,
        }
    }

    pub fn to_json(&self) -> Json {
        let mut body = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Core(Error::DimensionMismatch { expected, got }) = self {
            body["expected"] = json!(expected);
            body["got"] = json!(got);
        }
        json!({ "error": body })
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(CliError::Usage(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineSel {
    Path,
    Floor,
    Brute,
    All,
}

impl FromStr for EngineSel {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "path" => Ok(EngineSel::Path),
            "floor" => Ok(EngineSel::Floor),
            "brute" => Ok(EngineSel::Brute),
            "all" => Ok(EngineSel::All),
            _ => Err(CliError::Usage(format!("unknown engine {s:?}"))),
        }
    }
}

/// A fully parsed counting problem.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub polygon: LatticePolygon,
    pub genus: i64,
    pub conditions: PointConditionType,
    pub scheme: Scheme,
    pub engine: EngineSel,
    pub format: Format,
    /// Seed for the brute-force engine's points.
    pub seed: u64,
    pub jobs: usize,
}

/// Parses the condition grammar and checks the dimension balance for `p`, `g`.
pub fn parse_conditions(text: &str, p: &LatticePolygon, g: i64) -> CliResult<PointConditionType> {
    let c = PointConditionType::parse(text)?;
    c.check_balance(p, g)?;
    Ok(c)
}

/// Conditions for `p`, `g` when none are given: interior points only.
pub fn default_conditions(p: &LatticePolygon, g: i64) -> CliResult<PointConditionType> {
    let n = tropcount::lattice::boundary_points(p)? + g - 1;
    if n < 0 {
        return Err(CliError::Usage(format!("genus {g} is too small")));
    }
    Ok(PointConditionType::interior(n as usize))
}

impl ProblemSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn parse(
        polygon: &str,
        genus: i64,
        conditions: Option<&str>,
        scheme: &str,
        engine: &str,
        format: &str,
        seed: u64,
        jobs: usize,
    ) -> CliResult<Self> {
        let polygon: LatticePolygon = polygon.parse()?;
        let conditions = match conditions {
            Some(t) => parse_conditions(t, &polygon, genus)?,
            None => default_conditions(&polygon, genus)?,
        };
        Ok(Self {
            polygon,
            genus,
            conditions,
            scheme: scheme.parse()?,
            engine: engine.parse()?,
            format: format.parse()?,
            seed,
            jobs,
        })
    }

    fn problem_json(&self) -> Json {
        json!({
            "polygon": self.polygon.to_string(),
            "genus": self.genus,
            "conditions": self.conditions.to_string(),
            "scheme": self.scheme,
        })
    }

    fn path_options(&self) -> PathOptions {
        PathOptions {
            mixed: false,
            jobs: self.jobs,
        }
    }
}

fn triangle_degree(p: &LatticePolygon) -> Option<u64> {
    let d = p.vertices().get(1)?.x;
    (LatticePolygon::triangle(d).ok()? == *p).then_some(d as u64)
}

/// Floor diagrams give the refined count; the other schemes are read off it
/// where that is exact.
fn run_floor(spec: &ProblemSpec) -> CliResult<InvariantValue> {
    let d = triangle_degree(&spec.polygon)
        .ok_or_else(|| Error::Unsupported("floor diagrams need a triangle:d polygon".into()))?;
    let mut v = refined_floor(d, spec.genus, &spec.conditions)?;
    let poly = v
        .polynomial()
        .cloned()
        .expect("floor counts are polynomials");
    v.provenance.scheme = spec.scheme;
    match spec.scheme {
        Scheme::Refined => {}
        Scheme::Complex => v.value = Value::Rational(v.rational()),
        Scheme::Real => {
            if !spec
                .conditions
                .0
                .iter()
                .all(|c| *c == Condition::InteriorSimple)
            {
                return Err(Error::Unsupported(
                    "real counts from floor diagrams need interior points only".into(),
                )
                .into());
            }
            let lim = tropcount::qpoly::poly_limit_yneg1(&poly)?;
            v.value = Value::Rational(lim);
        }
        Scheme::Mixed => {
            return Err(
                Error::Unsupported("floor diagrams do not handle conjugate pairs".into()).into(),
            )
        }
    }
    Ok(v)
}

fn run_brute(spec: &ProblemSpec) -> CliResult<InvariantValue> {
    let cfg = BruteConfig {
        points: random_points(spec.conditions.len(), spec.seed),
        conditions: spec.conditions.clone(),
    };
    Ok(count_brute(&spec.polygon, spec.genus, &cfg, spec.scheme)?)
}

fn run_path(spec: &ProblemSpec) -> CliResult<InvariantValue> {
    let cfg = MikhalkinConfig::new(&spec.polygon, spec.conditions.clone());
    Ok(count(
        &spec.polygon,
        spec.genus,
        &cfg,
        spec.scheme,
        &spec.path_options(),
    )?)
}

/// Results of `count`: every engine that ran, and the ones that could not.
#[derive(Clone, Debug)]
pub struct CountReport {
    pub results: Vec<InvariantValue>,
    pub skipped: Vec<(&'static str, CliError)>,
}

impl CountReport {
    pub fn agree(&self) -> bool {
        self.results.windows(2).all(|w| w[0].value == w[1].value)
    }
}

type Runner = fn(&ProblemSpec) -> CliResult<InvariantValue>;

pub fn run_count(spec: &ProblemSpec) -> CliResult<CountReport> {
    let engines: Vec<(&'static str, Runner)> = vec![
        ("path", run_path),
        ("floor", run_floor),
        ("brute", run_brute),
    ];
    let mut report = CountReport {
        results: Vec::new(),
        skipped: Vec::new(),
    };
    for (name, f) in engines {
        let selected = match spec.engine {
            EngineSel::All => true,
            EngineSel::Path => name == "path",
            EngineSel::Floor => name == "floor",
            EngineSel::Brute => name == "brute",
        };
        if !selected {
            continue;
        }
        match f(spec) {
            Ok(v) => report.results.push(v),
            Err(e @ CliError::Core(Error::Unsupported(_) | Error::ProfileMismatch(_)))
                if spec.engine == EngineSel::All =>
            {
                report.skipped.push((name, e))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn value_text(v: &Value) -> String {
    match v {
        Value::Rational(r) => r.to_string(),
        Value::Polynomial(p) => p.to_string(),
    }
}

fn opt_text<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_else(|| "-".into())
}

fn csv_doc(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for r in rows {
        w.write_record(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}

/// Left-aligned columns separated by two spaces, with a rule under the header.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = width[i]))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out += &line(width.iter().map(|w| "-".repeat(*w)).collect());
    for r in rows {
        out += &line(r.clone());
    }
    out
}

fn json_doc(j: &Json) -> String {
    serde_json::to_string_pretty(j).expect("json values serialize") + "\n"
}

const COUNT_HEADER: [&str; 9] = [
    "engine",
    "polygon",
    "genus",
    "conditions",
    "scheme",
    "value",
    "at_y1",
    "at_yneg1",
    "curves_enumerated",
];

fn count_row(v: &InvariantValue) -> Vec<String> {
    let p: &Provenance = &v.provenance;
    vec![
        p.engine.clone(),
        p.polygon.clone(),
        p.genus.to_string(),
        p.conditions.clone(),
        p.scheme.to_string(),
        value_text(&v.value),
        opt_text(&v.at_y1),
        opt_text::<Specialization>(&v.at_yneg1),
        v.curves_enumerated.to_string(),
    ]
}

pub fn render_count(spec: &ProblemSpec, report: &CountReport) -> String {
    match spec.format {
        Format::Json if spec.engine != EngineSel::All => json_doc(&report.results[0].to_json()),
        Format::Json => {
            let skipped: Vec<Json> = report
                .skipped
                .iter()
                .map(|(name, e)| json!({ "engine": name, "reason": e.to_string() }))
                .collect();
            json_doc(&json!({
                "problem": spec.problem_json(),
                "results": report.results.iter().map(InvariantValue::to_json).collect::<Vec<_>>(),
                "skipped": skipped,
                "agree": report.agree(),
            }))
        }
        Format::Csv => csv_doc(
            &COUNT_HEADER,
            &report.results.iter().map(count_row).collect::<Vec<_>>(),
        ),
        Format::Pretty => {
            let mut out = format!(
                "{} genus {} conditions {} scheme {}\n\n",
                spec.polygon, spec.genus, spec.conditions, spec.scheme
            );
            let rows: Vec<Vec<String>> = report
                .results
                .iter()
                .map(|v| {
                    let r = count_row(v);
                    vec![
                        r[0].clone(),
                        r[5].clone(),
                        r[6].clone(),
                        r[7].clone(),
                        r[8].clone(),
                    ]
                })
                .collect();
            out += &table(&["engine", "value", "y=1", "y=-1", "curves"], &rows);
            for (name, e) in &report.skipped {
                out += &format!("{name}: skipped, {e}\n");
            }
            if report.results.len() > 1 {
                out += if report.agree() {
                    "engines agree\n"
                } else {
                    "ENGINES DISAGREE\n"
                };
            }
            out
        }
    }
}

/// Mixed counts with one conjugate pair at each position.
pub fn run_sweep(p: &LatticePolygon, g: i64, jobs: usize, format: Format) -> CliResult<String> {
    let sweep = pair_sweep(p, g, &PathOptions { mixed: true, jobs })?;
    let mut distinct: Vec<&BigRational> = sweep.iter().map(|(_, v)| v).collect();
    distinct.sort();
    distinct.dedup();
    let rows: Vec<Vec<String>> = sweep
        .iter()
        .map(|(k, v)| vec![k.to_string(), v.to_string()])
        .collect();
    Ok(match format {
        Format::Json => json_doc(&json!({
            "problem": { "polygon": p.to_string(), "genus": g, "scheme": Scheme::Mixed },
            "rows": sweep.iter().map(|(k, v)| json!({ "position": k, "value": v.to_string() })).collect::<Vec<_>>(),
            "distinct_values": distinct.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_doc(&["position", "value"], &rows),
        Format::Pretty => table(&["position", "value"], &rows),
    })
}

/// Where the configurations of `invariance` come from.
#[derive(Clone, Debug)]
pub enum ConfigSource {
    Seeds(Vec<u64>),
    Orders(Vec<String>),
}

pub fn run_invariance(spec: &ProblemSpec, source: &ConfigSource) -> CliResult<String> {
    let configs = match source {
        ConfigSource::Seeds(s) => Configurations::Random(s.clone()),
        ConfigSource::Orders(os) => Configurations::Orders(
            os.iter()
                .map(|o| parse_conditions(o, &spec.polygon, spec.genus))
                .collect::<CliResult<Vec<_>>>()?,
        ),
    };
    let rep = invariance_report(
        &spec.polygon,
        spec.genus,
        &spec.conditions,
        spec.scheme,
        &configs,
    )?;
    Ok(match spec.format {
        Format::Json => json_doc(&json!({
            "problem": spec.problem_json(),
            "rows": rep.rows.iter().map(|(c, v)| json!({ "configuration": c, "result": v.to_json() })).collect::<Vec<_>>(),
            "equal": rep.equal,
            "distinct_values": rep.distinct_values(),
        })),
        Format::Csv | Format::Pretty => {
            let rows: Vec<Vec<String>> = rep
                .rows
                .iter()
                .map(|(c, v)| {
                    vec![
                        c.clone(),
                        value_text(&v.value),
                        v.curves_enumerated.to_string(),
                    ]
                })
                .collect();
            let header = ["configuration", "value", "curves"];
            if spec.format == Format::Csv {
                csv_doc(&header, &rows)
            } else {
                let verdict = if rep.equal {
                    "all equal"
                } else {
                    "values differ"
                };
                format!("{}{verdict}\n", table(&header, &rows))
            }
        }
    })
}

pub fn run_counterexample(format: Format) -> CliResult<String> {
    let (special, other) = counterexample()?;
    let rows = vec![
        vec!["6".to_string(), special.to_string()],
        vec!["other".to_string(), other.to_string()],
    ];
    Ok(match format {
        Format::Json => json_doc(&json!({
            "problem": { "polygon": "triangle:4", "genus": 1, "conditions": "int*10,pair@k", "scheme": Scheme::Mixed },
            "pair_position": 6,
            "value_at_position": special.to_string(),
            "value_elsewhere": other.to_string(),
        })),
        Format::Csv => csv_doc(&["pair_position", "value"], &rows),
        Format::Pretty => table(&["pair position", "value"], &rows),
    })
}

/// One fast check of `selftest`.
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> CliResult<(bool, String)>) -> Check {
    match f() {
        Ok((pass, detail)) => Check { name, pass, detail },
        Err(e) => Check {
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}

pub fn selftest() -> Vec<Check> {
    let int = |n: i64| BigRational::from_integer(n.into());
    vec![
        check("counterexample", || {
            let (a, b) = counterexample()?;
            Ok((
                a == int(63) && b == int(69),
                format!("{a} at position 6, {b} elsewhere"),
            ))
        }),
        check("cubic engines agree", || {
            let spec = ProblemSpec::parse("triangle:3", 0, None, "refined", "all", "json", 1, 0)?;
            let rep = run_count(&spec)?;
            let n = rep.results[0].rational();
            Ok((
                rep.agree() && rep.results.len() == 3 && n == int(12),
                format!("{} engines, value at y=1 {n}", rep.results.len()),
            ))
        }),
        check("quartic severi degree", || {
            let spec = ProblemSpec::parse("triangle:4", 0, None, "complex", "all", "json", 1, 0)?;
            let rep = run_count(&spec)?;
            let n = rep.results[0].rational();
            Ok((rep.agree() && n == int(620), format!("{n}")))
        }),
        check("quantum integers", || {
            let mut ok = true;
            for a in 1..=50 {
                let q = tropcount::qpoly::qint(a)?;
                ok &= q.is_palindromic() && tropcount::qpoly::poly_eval_y1(&q) == a.into();
            }
            Ok((ok, "[1]..[50]".into()))
        }),
        check("boundary pair", || {
            let spec = ProblemSpec::parse(
                "triangle:2",
                0,
                Some("pairbnd:left,int*3"),
                "real",
                "all",
                "json",
                3,
                0,
            )?;
            let rep = run_count(&spec)?;
            Ok((
                rep.agree() && rep.results.len() == 2,
                format!("signed count {}", rep.results[0].rational()),
            ))
        }),
    ]
}

pub fn render_selftest(checks: &[Check], format: Format) -> String {
    match format {
        Format::Json => json_doc(&json!({
            "checks": checks.iter().map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail })).collect::<Vec<_>>(),
            "passed": checks.iter().all(|c| c.pass),
        })),
        Format::Csv => csv_doc(
            &["check", "pass", "detail"],
            &checks
                .iter()
                .map(|c| vec![c.name.to_string(), c.pass.to_string(), c.detail.clone()])
                .collect::<Vec<_>>(),
        ),
        Format::Pretty => checks
            .iter()
            .map(|c| {
                format!(
                    "{} {}: {}\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )
            })
            .collect(),
    }
}
