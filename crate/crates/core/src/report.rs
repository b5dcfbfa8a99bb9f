//! Batch reports over the families: one row per parameter, CSV / JSON / SVG output.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{self, PantAssignment};
use crate::families::{self, CodeBase, ExponentRule};
use crate::fuchsian::{self, Representation, RingElem};
use crate::intersections::{self, IntersectionError, SurfaceGroup};
use crate::modular::{self, XYWord};
use crate::words::{hnn_normalize, split_to_arc_form, CyclicWord, ReducedSequence, Word};

pub const CONFIG_ENV: &str = "GEOLIFT_CONFIG";

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("unknown family {0:?} (expected theorem2, mod, mod1, pib or lin)")]
    UnknownFamily(String),
    #[error("range {lo}..{hi} for {family} exceeds the guard {max}")]
    RangeTooLarge { family: Family, lo: u64, hi: u64, max: u64 },
    #[error("bad range {0:?}")]
    BadRange(String),
    #[error("nothing to plot")]
    EmptyTable,
    #[error("config: {0}")]
    Config(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Theorem2,
    Mod,
    Mod1,
    Pib,
    Lin,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Theorem2, Family::Mod, Family::Mod1, Family::Pib, Family::Lin];

    pub fn name(self) -> &'static str {
        match self {
            Family::Theorem2 => "theorem2",
            Family::Mod => "mod",
            Family::Mod1 => "mod1",
            Family::Pib => "pib",
            Family::Lin => "lin",
        }
    }

    pub fn max_param(self) -> u64 {
        match self {
            Family::Pib => 7,
            _ => 50,
        }
    }

    pub fn default_range(self) -> (u64, u64) {
        match self {
            Family::Theorem2 => (0, 5),
            Family::Mod | Family::Mod1 => (1, 10),
            Family::Pib => (4, 7),
            Family::Lin => (2, 10),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ReportError;
    fn from_str(s: &str) -> Result<Family, ReportError> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| ReportError::UnknownFamily(s.to_string()))
    }
}

/// `lo..hi` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<(u64, u64), ReportError> {
    let bad = || ReportError::BadRange(s.to_string());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationChoice {
    #[default]
    Rho,
}

/// Report settings, read from TOML. Every key is optional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub representation: RepresentationChoice,
    /// Intersection cutoff; `None` picks one that certifies the count.
    pub cutoff: Option<usize>,
    pub bps_c: f64,
    /// Longest generator length; `None` uses the longest of `a`, `b`, `t` under the representation.
    pub ell_max: Option<f64>,
    pub lift_code_base: CodeBase,
    pub mod_exponents: ExponentRule,
    pub theorem2_gamma0: String,
    pub theorem2_eta: String,
    pub mod1_alpha: String,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            representation: RepresentationChoice::Rho,
            cutoff: None,
            bps_c: 1.0,
            ell_max: None,
            lift_code_base: CodeBase::Natural,
            mod_exponents: ExponentRule::Displayed,
            theorem2_gamma0: "t^2 a t' a t".to_string(),
            theorem2_eta: "a".to_string(),
            mod1_alpha: "x y".to_string(),
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config, ReportError> {
        toml::from_str(text).map_err(|e| ReportError::Config(e.to_string()))
    }

    /// Reads `path`, else the file named by `GEOLIFT_CONFIG`, else defaults.
    pub fn load(path: Option<&Path>) -> Result<Config, ReportError> {
        let path: Option<PathBuf> = path.map(Path::to_path_buf).or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        match path {
            Some(p) => Config::from_toml(&std::fs::read_to_string(&p)?),
            None => Ok(Config::default()),
        }
    }

    pub fn representation(&self) -> Representation {
        match self.representation {
            RepresentationChoice::Rho => Representation::rho(),
        }
    }

    pub fn ell_max(&self) -> f64 {
        self.ell_max.unwrap_or_else(|| {
            let rep = self.representation();
            ["a", "b", "t"]
                .iter()
                .map(|g| bounds::geodesic_length(&rep, &Word::parse(g).expect("generator")).expect("hyperbolic generator"))
                .fold(0.0, f64::max)
        })
    }
}

/// Nine significant digits, ties to even.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.8e}");
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        return format!("{mant}e{exp}");
    }
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    let body = if body.contains('.') { body.trim_end_matches('0').trim_end_matches('.').to_string() } else { body };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// `x` rounded to nine significant digits.
pub fn r9(x: f64) -> f64 {
    sig9(x).parse().expect("sig9 output parses")
}

/// Decimal value when it fits a double, else `e^L` with `L = ln|tr|`.
pub fn trace_text(tr: &RingElem) -> String {
    let ln = tr.ln_abs();
    if ln < 700.0 {
        sig9(tr.to_f64())
    } else {
        let sign = if tr.signum() == std::cmp::Ordering::Less { "-" } else { "" };
        format!("{sign}e^{}", sig9(ln))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SelfInt {
    Count(u64),
    Unstable,
}

impl fmt::Display for SelfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelfInt::Count(n) => write!(f, "{n}"),
            SelfInt::Unstable => f.write_str("unstable"),
        }
    }
}

/// One report row. Reals are stored rounded to nine significant digits.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BoundsReport {
    pub family: String,
    pub param: u64,
    pub word: String,
    pub word_length: Option<u64>,
    pub trace: Option<String>,
    pub geodesic_length: Option<f64>,
    pub length_cap: Option<f64>,
    pub self_int: Option<SelfInt>,
    pub n_gamma: Option<u64>,
    pub distinct_classes: Option<u64>,
    pub arc_form: Option<bool>,
    pub cover_degree: Option<u64>,
    pub lower_bound: Option<f64>,
    pub upper_bound_shape: Option<f64>,
    pub bps_c: f64,
    pub ell_max: f64,
    pub error: Option<String>,
}

pub const COLUMNS: [&str; 17] = [
    "family",
    "param",
    "word",
    "word_length",
    "trace",
    "geodesic_length",
    "length_cap",
    "self_int",
    "n_gamma",
    "distinct_classes",
    "arc_form",
    "cover_degree",
    "lower_bound",
    "upper_bound_shape",
    "bps_c",
    "ell_max",
    "error",
];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

fn optf(x: &Option<f64>) -> String {
    x.map(sig9).unwrap_or_default()
}

impl BoundsReport {
    fn cells(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.param.to_string(),
            self.word.clone(),
            opt(&self.word_length),
            opt(&self.trace),
            optf(&self.geodesic_length),
            optf(&self.length_cap),
            opt(&self.self_int),
            opt(&self.n_gamma),
            opt(&self.distinct_classes),
            opt(&self.arc_form),
            opt(&self.cover_degree),
            optf(&self.lower_bound),
            optf(&self.upper_bound_shape),
            sig9(self.bps_c),
            sig9(self.ell_max),
            opt(&self.error),
        ]
    }

    fn from_cells(c: &[String]) -> Result<BoundsReport, ReportError> {
        if c.len() != COLUMNS.len() {
            return Err(ReportError::Csv(format!("expected {} cells, got {}", COLUMNS.len(), c.len())));
        }
        fn p<T: FromStr>(s: &str, col: &str) -> Result<Option<T>, ReportError> {
            if s.is_empty() {
                return Ok(None);
            }
            s.parse().map(Some).map_err(|_| ReportError::Csv(format!("bad {col}: {s:?}")))
        }
        let s = |i: usize| if c[i].is_empty() { None } else { Some(c[i].clone()) };
        Ok(BoundsReport {
            family: c[0].clone(),
            param: p(&c[1], "param")?.ok_or_else(|| ReportError::Csv("missing param".into()))?,
            word: c[2].clone(),
            word_length: p(&c[3], "word_length")?,
            trace: s(4),
            geodesic_length: p(&c[5], "geodesic_length")?,
            length_cap: p(&c[6], "length_cap")?,
            self_int: match c[7].as_str() {
                "" => None,
                "unstable" => Some(SelfInt::Unstable),
                v => Some(SelfInt::Count(p(v, "self_int")?.expect("nonempty"))),
            },
            n_gamma: p(&c[8], "n_gamma")?,
            distinct_classes: p(&c[9], "distinct_classes")?,
            arc_form: p(&c[10], "arc_form")?,
            cover_degree: p(&c[11], "cover_degree")?,
            lower_bound: p(&c[12], "lower_bound")?,
            upper_bound_shape: p(&c[13], "upper_bound_shape")?,
            bps_c: p(&c[14], "bps_c")?.unwrap_or(0.0),
            ell_max: p(&c[15], "ell_max")?.unwrap_or(0.0),
            error: s(16),
        })
    }

    fn to_json(&self) -> Value {
        let num = |x: &Option<f64>| x.map(|v| json!(v)).unwrap_or(Value::Null);
        let int = |x: &Option<u64>| x.map(|v| json!(v)).unwrap_or(Value::Null);
        json!({
            "family": self.family,
            "param": self.param,
            "word": self.word,
            "word_length": int(&self.word_length),
            "trace": self.trace,
            "geodesic_length": num(&self.geodesic_length),
            "length_cap": num(&self.length_cap),
            "self_int": match &self.self_int {
                None => Value::Null,
                Some(SelfInt::Count(n)) => json!(n),
                Some(SelfInt::Unstable) => json!("unstable"),
            },
            "n_gamma": int(&self.n_gamma),
            "distinct_classes": int(&self.distinct_classes),
            "arc_form": self.arc_form,
            "cover_degree": int(&self.cover_degree),
            "lower_bound": num(&self.lower_bound),
            "upper_bound_shape": num(&self.upper_bound_shape),
            "bps_c": self.bps_c,
            "ell_max": self.ell_max,
            "error": self.error,
        })
    }

    /// `(v3/2) distinct / degree` from this row's own columns.
    pub fn recomputed_lower_bound(&self) -> Option<f64> {
        let d = self.distinct_classes?;
        let deg = self.cover_degree?;
        bounds::cover_adjust(fuchsian::v3() / 2.0 * d as f64, deg).ok().map(r9)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportMeta {
    pub family: String,
    pub range: (u64, u64),
    pub constants: Vec<(String, String)>,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportTable {
    pub meta: ReportMeta,
    pub rows: Vec<BoundsReport>,
}

fn length_of(tr: &RingElem) -> Option<f64> {
    fuchsian::trace_length(tr).ok().map(r9)
}

fn set_bound(row: &mut BoundsReport, distinct: usize, degree: u64) {
    row.distinct_classes = Some(distinct as u64);
    row.cover_degree = Some(degree);
    row.lower_bound = row.recomputed_lower_bound();
}

fn modular_row(row: &mut BoundsReport, w: &XYWord, cfg: &Config) -> Result<(), String> {
    row.word = w.to_string();
    row.word_length = Some(w.len() as u64);
    let tr = RingElem::new(w.trace().into(), num_bigint::BigInt::from(0).into());
    row.trace = Some(trace_text(&tr));
    row.geodesic_length = length_of(&tr);
    let n = w.n_gamma() as u64;
    row.n_gamma = Some(n);
    row.upper_bound_shape = bounds::bps_upper_shape(n, cfg.bps_c).ok().map(r9);
    // closed lift to the six-fold torus cover
    let coset = modular::coset_of(w.word()).map_err(|e| e.to_string())? as u64;
    let power = 6 / num_integer::gcd(coset, 6);
    let lifted = w.pow(power as usize);
    let torus = modular::rewrite_to_torus(&lifted).map_err(|e| e.to_string())?;
    let seq = hnn_normalize(&CyclicWord::new(&torus).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    row.arc_form = Some(split_to_arc_form(&seq).is_ok());
    set_bound(row, bounds::double_coset_census(&seq).distinct(), 6);
    Ok(())
}

fn torus_row(row: &mut BoundsReport, w: &Word, cfg: &Config) -> Result<(), String> {
    let rep = cfg.representation();
    row.word = w.to_string();
    row.word_length = Some(w.len() as u64);
    let tr = rep.eval(w).map_err(|e| e.to_string())?.trace();
    row.trace = Some(trace_text(&tr));
    row.geodesic_length = length_of(&tr);
    Ok(())
}

fn build_row(family: Family, param: u64, cfg: &Config) -> BoundsReport {
    let mut row = BoundsReport {
        family: family.name().to_string(),
        param,
        bps_c: r9(cfg.bps_c),
        ell_max: r9(cfg.ell_max()),
        ..Default::default()
    };
    let res: Result<(), String> = (|| match family {
        Family::Mod => {
            let w = families::mod_family_with(param, cfg.mod_exponents).map_err(|e| e.to_string())?;
            modular_row(&mut row, &w, cfg)
        }
        Family::Mod1 => {
            let alpha = modular::parse_xy(&cfg.mod1_alpha).map_err(|e| e.to_string())?;
            if param < 1 {
                return Err("k must be at least 1".to_string());
            }
            let w = families::mod1_family(&alpha, param).map_err(|e| e.to_string())?;
            modular_row(&mut row, &w, cfg)
        }
        Family::Theorem2 => {
            let g0 = Word::parse(&cfg.theorem2_gamma0).map_err(|e| e.to_string())?;
            let eta = Word::parse(&cfg.theorem2_eta).map_err(|e| e.to_string())?;
            let c = families::theorem2_family(&g0, &eta, param).map_err(|e| e.to_string())?;
            torus_row(&mut row, &c.word(), cfg)?;
            let surface = SurfaceGroup::punctured_torus();
            let cutoff = cfg.cutoff.unwrap_or_else(|| intersections::sufficient_cutoff(c.len()));
            row.self_int = match intersections::self_intersection(&c, &surface, cutoff) {
                Ok(r) => Some(SelfInt::Count(r.value)),
                Err(IntersectionError::Unstable { .. }) => Some(SelfInt::Unstable),
                Err(e) => return Err(e.to_string()),
            };
            let seq = hnn_normalize(&c).map_err(|e| e.to_string())?;
            row.arc_form = Some(split_to_arc_form(&seq).is_ok());
            set_bound(&mut row, bounds::double_coset_census(&seq).distinct(), 1);
            Ok(())
        }
        Family::Pib => {
            let seq = families::pib_sequence(param).map_err(|e| e.to_string())?;
            torus_row(&mut row, &seq.product(), cfg)?;
            row.word_length = Some(seq.terms.iter().map(|t| t.g.len() as u64 + 1).sum());
            let cen = bounds::census(&ReducedSequence::Hnn(seq), PantAssignment::Single);
            row.arc_form = Some(cen.is_ok());
            set_bound(&mut row, cen.map_err(|e| e.to_string())?.distinct(), 1);
            Ok(())
        }
        Family::Lin => {
            let seq = families::lin_family(param).map_err(|e| e.to_string())?;
            row.word = seq.to_string();
            row.word_length = Some(seq.terms.iter().map(|t| t.g.len() as u64).sum());
            let ell = cfg.ell_max();
            let (_, cap) = bounds::lin_bound(param, ell).map_err(|e| e.to_string())?;
            row.length_cap = Some(r9(cap));
            let codes = families::lift_code_census(param, cfg.lift_code_base).map_err(|e| e.to_string())?;
            set_bound(&mut row, codes.distinct as usize, 1);
            Ok(())
        }
    })();
    if let Err(e) = res {
        row.error = Some(e);
    }
    row
}

/// One row per parameter in `lo..=hi`, computed in parallel and joined in order.
pub fn run_report(family: Family, range: (u64, u64), cfg: &Config) -> Result<ReportTable, ReportError> {
    let (lo, hi) = range;
    if lo > hi {
        return Err(ReportError::BadRange(format!("{lo}..{hi}")));
    }
    if hi > family.max_param() {
        return Err(ReportError::RangeTooLarge { family, lo, hi, max: family.max_param() });
    }
    let rows: Vec<BoundsReport> = (lo..=hi).into_par_iter().map(|p| build_row(family, p, cfg)).collect();
    let constants = vec![
        ("representation".to_string(), "rho".to_string()),
        ("cutoff".to_string(), cfg.cutoff.map(|c| c.to_string()).unwrap_or_else(|| "auto".to_string())),
        ("bps_c".to_string(), sig9(cfg.bps_c)),
        ("ell_max".to_string(), sig9(cfg.ell_max())),
        ("lift_code_base".to_string(), format!("{:?}", cfg.lift_code_base).to_lowercase()),
        ("mod_exponents".to_string(), format!("{:?}", cfg.mod_exponents).to_lowercase()),
    ];
    Ok(ReportTable {
        meta: ReportMeta {
            family: family.name().to_string(),
            range,
            constants,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        rows,
    })
}

impl ReportTable {
    pub fn has_errors(&self) -> bool {
        self.rows.iter().any(|r| r.error.is_some())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg { log_axes: bool },
}

impl FromStr for Format {
    type Err = ReportError;
    fn from_str(s: &str) -> Result<Format, ReportError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg { log_axes: false }),
            "svg-log" => Ok(Format::Svg { log_axes: true }),
            _ => Err(ReportError::Config(format!("unknown format {s:?}"))),
        }
    }
}

pub fn emit(table: &ReportTable, format: Format) -> Result<Vec<u8>, ReportError> {
    match format {
        Format::Csv => emit_csv(table),
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&table_json(table)).expect("json values serialize");
            out.push(b'\n');
            Ok(out)
        }
        Format::Svg { log_axes } => emit_svg(table, log_axes),
    }
}

/// Metadata as leading `# key=value` lines, then a header row and one record per row.
fn emit_csv(table: &ReportTable) -> Result<Vec<u8>, ReportError> {
    let mut out = Vec::new();
    let m = &table.meta;
    out.extend(format!("# family={}\n# range={}..{}\n", m.family, m.range.0, m.range.1).bytes());
    for (k, v) in &m.constants {
        out.extend(format!("# {k}={v}\n").bytes());
    }
    out.extend(format!("# version={}\n", m.version).bytes());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS).map_err(|e| ReportError::Csv(e.to_string()))?;
    for r in &table.rows {
        w.write_record(r.cells()).map_err(|e| ReportError::Csv(e.to_string()))?;
    }
    w.into_inner().map_err(|e| ReportError::Csv(e.to_string()))
}

pub fn parse_csv(bytes: &[u8]) -> Result<ReportTable, ReportError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ReportError::Csv(e.to_string()))?;
    let mut meta = ReportMeta { family: String::new(), range: (0, 0), constants: Vec::new(), version: String::new() };
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        let (k, v) = line[1..].trim().split_once('=').ok_or_else(|| ReportError::Csv(format!("bad metadata {line:?}")))?;
        match k {
            "family" => meta.family = v.to_string(),
            "range" => meta.range = parse_range(v)?,
            "version" => meta.version = v.to_string(),
            _ => meta.constants.push((k.to_string(), v.to_string())),
        }
    }
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(bytes);
    let header: Vec<String> = rd.headers().map_err(|e| ReportError::Csv(e.to_string()))?.iter().map(String::from).collect();
    if header != COLUMNS {
        return Err(ReportError::Csv(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| ReportError::Csv(e.to_string()))?;
        let cells: Vec<String> = rec.iter().map(String::from).collect();
        rows.push(BoundsReport::from_cells(&cells)?);
    }
    Ok(ReportTable { meta, rows })
}

fn table_json(table: &ReportTable) -> Value {
    let m = &table.meta;
    let mut constants = serde_json::Map::new();
    for (k, v) in &m.constants {
        constants.insert(k.clone(), json!(v));
    }
    json!({
        "metadata": {
            "family": m.family,
            "range": [m.range.0, m.range.1],
            "constants": constants,
            "version": m.version,
        },
        "rows": table.rows.iter().map(BoundsReport::to_json).collect::<Vec<_>>(),
    })
}

fn emit_svg(table: &ReportTable, log_axes: bool) -> Result<Vec<u8>, ReportError> {
    let tf = |v: f64| if log_axes { v.log10() } else { v };
    let mut series: Vec<(&str, &str, Vec<(f64, f64)>)> = vec![("lower_bound", "#1f5fa8", vec![]), ("upper_bound_shape", "#b0401c", vec![])];
    for r in &table.rows {
        let Some(x) = r.geodesic_length else { continue };
        for (i, y) in [r.lower_bound, r.upper_bound_shape].into_iter().enumerate() {
            if let Some(y) = y {
                if !log_axes || (x > 0.0 && y > 0.0) {
                    series[i].2.push((tf(x), tf(y)));
                }
            }
        }
    }
    let pts: Vec<(f64, f64)> = series.iter().flat_map(|s| s.2.iter().copied()).collect();
    if pts.is_empty() {
        return Err(ReportError::EmptyTable);
    }
    let (w, h, pad) = (640.0, 420.0, 60.0);
    let span = |v: Vec<f64>| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi > lo {
            (lo, hi)
        } else {
            (lo - 1.0, hi + 1.0)
        }
    };
    let (x0, x1) = span(pts.iter().map(|p| p.0).collect());
    let (y0, y1) = span(pts.iter().map(|p| p.1).collect());
    let px = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let py = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);
    let mut s = String::new();
    s += &format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n");
    s += &format!("<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n");
    s += &format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{} bounds vs geodesic length{}</text>\n",
        w / 2.0,
        table.meta.family,
        if log_axes { " (log10)" } else { "" }
    );
    s += &format!(
        "<path d=\"M{pad} {top} V{bot} H{right}\" stroke=\"black\" fill=\"none\"/>\n",
        top = pad,
        bot = h - pad,
        right = w - pad
    );
    for (v, anchor_x, anchor_y, horiz) in [(x0, px(x0), h - pad + 18.0, true), (x1, px(x1), h - pad + 18.0, true), (y0, pad - 6.0, py(y0), false), (y1, pad - 6.0, py(y1), false)] {
        let anchor = if horiz { "middle" } else { "end" };
        s += &format!(
            "<text x=\"{anchor_x:.2}\" y=\"{anchor_y:.2}\" text-anchor=\"{anchor}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
            sig9(v)
        );
    }
    for (k, (name, colour, p)) in series.iter().enumerate() {
        if p.is_empty() {
            continue;
        }
        let d: Vec<String> = p.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        s += &format!("<polyline points=\"{}\" stroke=\"{colour}\" fill=\"none\"/>\n", d.join(" "));
        for &(x, y) in p {
            s += &format!("<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{colour}\"/>\n", px(x), py(y));
        }
        s += &format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{colour}\">{name}</text>\n",
            w - pad - 120.0,
            pad + 16.0 * k as f64
        );
    }
    s += "</svg>\n";
    Ok(s.into_bytes())
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

/// Everything computable for a single word in the torus generators.
pub fn analyze_word(text: &str, cfg: &Config) -> Result<Value, String> {
    let w = Word::parse(text).map_err(|e| e.to_string())?;
    let c = CyclicWord::new(&w).map_err(|e| e.to_string())?;
    let rep = cfg.representation();
    let tr = rep.eval(&c.word()).map_err(|e| e.to_string())?.trace();
    let surface = SurfaceGroup::punctured_torus();
    let cutoff = cfg.cutoff.unwrap_or_else(|| intersections::sufficient_cutoff(c.len()));
    let self_int = match intersections::self_intersection(&c, &surface, cutoff) {
        Ok(r) => json!(r.value),
        Err(IntersectionError::Unstable { .. }) => json!("unstable"),
        Err(e) => json!(e.to_string()),
    };
    // words that pinch into <a, b> have no sequence
    let seq = hnn_normalize(&c).ok();
    let arcs = seq.as_ref().and_then(|s| split_to_arc_form(s).ok());
    Ok(json!({
        "word": c.to_string(),
        "word_length": c.len(),
        "trace": tr.to_string(),
        "geodesic_length": fuchsian::trace_length(&tr).ok().map(r9),
        "self_int": self_int,
        "hnn_sequence": seq.as_ref().map(|s| s.to_string()),
        "arc_form": arcs.map(|s| s.to_string()),
        "distinct_classes": seq.as_ref().map(|s| bounds::double_coset_census(s).distinct()),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_format() {
        assert_eq!(sig9(1.0149416064096536), "1.01494161");
        assert_eq!(sig9(20.0), "20");
        assert_eq!(sig9(-0.000123456789123), "-0.000123456789");
        assert_eq!(sig9(1.5e20), "1.5e20");
        assert_eq!(sig9(2.5e-7), "2.5e-7");
        // exact ties go to even
        assert_eq!(sig9(123456788.5), "123456788");
        assert_eq!(sig9(123456789.5), "123456790");
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..5").unwrap(), (1, 5));
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert!(parse_range("5..1").is_err());
        let cfg = Config::default();
        assert!(matches!(run_report(Family::Pib, (4, 8), &cfg), Err(ReportError::RangeTooLarge { max: 7, .. })));
    }

    #[test]
    fn config_toml() {
        let c = Config::from_toml("bps_c = 2.5\nlift_code_base = \"binary\"\n").unwrap();
        assert_eq!(c.bps_c, 2.5);
        assert_eq!(c.lift_code_base, CodeBase::Binary);
        assert!(Config::from_toml("nonsense = 1").is_err());
    }
}
