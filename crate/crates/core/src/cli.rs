//! Command-line front end. The `equivar` binary only forwards to [`run`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::CanonicalOp;
use crate::classifier::{
    classify_ansatz, classify_direct, expected_dimension, natural_order, same_span, AnsatzOptions, Cell,
    ClassificationResult, DirectOptions,
};
use crate::error::{Error, Result};
use crate::properties::{self, PropertyReport};
use crate::random::RandomSource;
use crate::symbol::{lie_op, PolyVectorField};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "equivar",
    version,
    about = "Classify Vect(R^m)-equivariant maps between modules of differential operators on forms"
)]
struct Cli {
    /// Key-value file (`key = value` per line) supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the space of equivariant operators for each parameter cell.
    Classify(Flags),
    /// Grid of dimensions next to the known values.
    Table(Flags),
    /// Check a named operator for equivariance on random arguments.
    Verify {
        /// One of id, i0, dstar, K1p, K20, dstarK.
        name: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run the randomized property suites.
    Props(Flags),
}

#[derive(Args, Debug, Default, Clone)]
struct Flags {
    /// Ambient dimensions, e.g. `3`, `2..4`, `3,4`.
    #[arg(long)]
    m: Option<String>,
    /// Source form degrees.
    #[arg(long)]
    p: Option<String>,
    /// Target form degrees; overrides --q-offset.
    #[arg(long)]
    q: Option<String>,
    /// Target degrees relative to p, from {-2,-1,0,1}.
    #[arg(long = "q-offset", allow_hyphen_values = true)]
    q_offset: Option<String>,
    /// Source orders.
    #[arg(long)]
    k: Option<String>,
    /// Target orders, or `natural` for the natural order of each (p, q, k).
    #[arg(long)]
    l: Option<String>,
    /// direct, ansatz or both.
    #[arg(long)]
    path: Option<String>,
    /// Jet order read by candidates (default k + l + 2).
    #[arg(long = "R")]
    r_bound: Option<String>,
    /// Coefficient degree of candidates.
    #[arg(long)]
    xdeg: Option<String>,
    /// Top generator degree (the g+1 check is always run).
    #[arg(long)]
    g: Option<String>,
    /// json, csv or markdown.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Random instances per check (verify, props).
    #[arg(long)]
    count: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathChoice {
    Direct,
    Ansatz,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetDegrees {
    Explicit(Vec<usize>),
    Offsets(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderRule {
    Natural,
    Explicit(Vec<usize>),
}

/// Fully resolved run parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub m: Vec<usize>,
    pub p: Vec<usize>,
    pub q: TargetDegrees,
    pub k: Vec<usize>,
    pub l: OrderRule,
    pub path: PathChoice,
    pub r_bound: Option<usize>,
    pub x_deg: usize,
    pub g: usize,
    pub format: Format,
    pub seed: u64,
    pub count: usize,
    pub out: Option<PathBuf>,
}

/// Parses `3`, `1..3` (inclusive), `0,2`, or combinations like `0,2..4`.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameters(format!("bad range {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if let Some((lo, hi)) = part.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi): (usize, usize) =
                (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn parse_offsets(s: &str) -> Result<Vec<i64>> {
    let mut out: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidParameters(format!("bad offset list {s:?}"))))
        .collect::<Result<_>>()?;
    if out.is_empty() || out.iter().any(|o| !(-2..=1).contains(o)) {
        return Err(Error::InvalidParameters(format!("offsets must lie in -2..1, got {s:?}")));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::InvalidParameters(format!("bad value for {key}: {s:?}")))
}

/// Reads `key = value` lines; `#` starts a comment. Keys mirror the flag names.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    const KEYS: [&str; 14] =
        ["m", "p", "q", "q-offset", "k", "l", "path", "R", "xdeg", "g", "format", "seed", "count", "out"];
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", n + 1)))?;
        let key = key.trim().trim_start_matches("--");
        if !KEYS.contains(&key) {
            return Err(Error::Parse(format!("config line {}: unknown key {key:?}", n + 1)));
        }
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Mode {
    Classify,
    Table,
    Verify(CanonicalOp),
    Props,
}

impl Flags {
    fn merged(&self, config: &BTreeMap<String, String>) -> BTreeMap<String, String> {
        let mut out = config.clone();
        let mut set = |k: &str, v: &Option<String>| {
            if let Some(v) = v {
                out.insert(k.to_string(), v.clone());
            }
        };
        set("m", &self.m);
        set("p", &self.p);
        set("q", &self.q);
        set("q-offset", &self.q_offset);
        set("k", &self.k);
        set("l", &self.l);
        set("path", &self.path);
        set("R", &self.r_bound);
        set("xdeg", &self.xdeg);
        set("g", &self.g);
        set("format", &self.format);
        set("seed", &self.seed);
        set("count", &self.count);
        if let Some(o) = &self.out {
            out.insert("out".into(), o.display().to_string());
        }
        out
    }
}

fn resolve(values: &BTreeMap<String, String>, mode: Mode) -> Result<RunConfig> {
    let get = |k: &str| values.get(k).map(String::as_str);
    let (def_m, def_p, def_k) = match mode {
        Mode::Verify(op) => (
            "3",
            match op {
                CanonicalOp::DStar => "1",
                _ => "0",
            },
            match op {
                CanonicalOp::K20 => "2",
                _ => "1",
            },
        ),
        Mode::Table => ("3", "0..1", "0..2"),
        _ => ("3", "0..1", "0..2"),
    };
    let q = match (get("q"), get("q-offset")) {
        (Some(q), _) => TargetDegrees::Explicit(parse_range(q)?),
        (None, Some(o)) => TargetDegrees::Offsets(parse_offsets(o)?),
        (None, None) => TargetDegrees::Offsets(vec![-2, -1, 0, 1]),
    };
    let l = match get("l") {
        None | Some("natural") => OrderRule::Natural,
        Some(s) => OrderRule::Explicit(parse_range(s)?),
    };
    let path = match get("path").unwrap_or("direct") {
        "direct" => PathChoice::Direct,
        "ansatz" => PathChoice::Ansatz,
        "both" => PathChoice::Both,
        other => return Err(Error::InvalidParameters(format!("unknown path {other:?}"))),
    };
    let default_format = if matches!(mode, Mode::Table) { "markdown" } else { "json" };
    let format = match get("format").unwrap_or(default_format) {
        "json" => Format::Json,
        "csv" => Format::Csv,
        "markdown" | "md" => Format::Markdown,
        other => return Err(Error::InvalidParameters(format!("unknown format {other:?}"))),
    };
    Ok(RunConfig {
        m: parse_range(get("m").unwrap_or(def_m))?,
        p: parse_range(get("p").unwrap_or(def_p))?,
        q,
        k: parse_range(get("k").unwrap_or(def_k))?,
        l,
        path,
        r_bound: get("R").map(|s| parse_num("R", s)).transpose()?,
        x_deg: parse_num("xdeg", get("xdeg").unwrap_or("0"))?,
        g: parse_num("g", get("g").unwrap_or("2"))?,
        format,
        seed: parse_num("seed", get("seed").unwrap_or("0"))?,
        count: parse_num("count", get("count").unwrap_or("50"))?,
        out: get("out").map(PathBuf::from),
    })
}

impl RunConfig {
    /// Parameter cells in sorted order. Explicit degrees outside `0..=m` are
    /// usage errors; offsets leaving that range are skipped.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        let mut out = Vec::new();
        for &m in &self.m {
            for &p in &self.p {
                if p > m {
                    return Err(Error::InvalidParameters(format!("p={p} exceeds m={m}")));
                }
                let qs: Vec<usize> = match &self.q {
                    TargetDegrees::Explicit(qs) => {
                        if let Some(q) = qs.iter().find(|&&q| q > m) {
                            return Err(Error::InvalidParameters(format!("q={q} exceeds m={m}")));
                        }
                        qs.clone()
                    }
                    TargetDegrees::Offsets(offs) => offs
                        .iter()
                        .map(|o| p as i64 + o)
                        .filter(|&q| q >= 0 && q as usize <= m)
                        .map(|q| q as usize)
                        .collect(),
                };
                for q in qs {
                    for &k in &self.k {
                        let ls = match &self.l {
                            OrderRule::Natural => natural_order(p, q, k).into_iter().collect(),
                            OrderRule::Explicit(ls) => ls.clone(),
                        };
                        for l in ls {
                            out.push(Cell::new(m, p, q, k, l)?);
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::InvalidParameters("no parameter cells selected".into()));
        }
        Ok(out)
    }

    fn direct_options(&self) -> DirectOptions {
        DirectOptions { r_bound: self.r_bound, x_deg: self.x_deg, g: self.g, check_r: true }
    }

    fn ansatz_options(&self) -> AnsatzOptions {
        AnsatzOptions { r_bound: self.r_bound, g: self.g }
    }
}

/// Results of one cell on the requested path(s).
struct CellRun {
    results: Vec<ClassificationResult>,
    agree: bool,
}

fn classify_cell(cfg: &RunConfig, cell: Cell) -> Result<CellRun> {
    let mut results = Vec::new();
    if matches!(cfg.path, PathChoice::Direct | PathChoice::Both) {
        results.push(classify_direct(cell, &cfg.direct_options())?);
    }
    if matches!(cfg.path, PathChoice::Ansatz | PathChoice::Both) {
        results.push(classify_ansatz(cell, &cfg.ansatz_options())?);
    }
    let agree = results.windows(2).all(|w| w[0].dimension == w[1].dimension && same_span(&w[0].basis, &w[1].basis));
    if !agree {
        let dims: Vec<String> = results.iter().map(|r| format!("{} {}", r.path, r.dimension)).collect();
        let note = format!("solver paths disagree: {}", dims.join(", "));
        for r in &mut results {
            r.notes.push(note.clone());
        }
    }
    Ok(CellRun { results, agree })
}

fn run_cells(cfg: &RunConfig) -> Result<Vec<(Cell, CellRun)>> {
    let cells = cfg.cells()?;
    cells.into_par_iter().map(|c| classify_cell(cfg, c).map(|r| (c, r))).collect()
}

fn csv_bool(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn cmd_classify(cfg: &RunConfig) -> Result<(String, i32)> {
    let runs = run_cells(cfg)?;
    let mut text = String::new();
    match cfg.format {
        Format::Json => {
            for (_, run) in &runs {
                for r in &run.results {
                    writeln!(text, "{}", r.to_json()).expect("string write");
                }
            }
        }
        Format::Csv => {
            text.push_str("m,p,q,k,l,path,dimension,stabilized,borderline\n");
            for (c, run) in &runs {
                for r in &run.results {
                    writeln!(
                        text,
                        "{},{},{},{},{},{},{},{},{}",
                        c.m,
                        c.p,
                        c.q,
                        c.k,
                        c.l,
                        r.path,
                        r.dimension,
                        csv_bool(r.stabilized),
                        csv_bool(r.borderline)
                    )
                    .expect("string write");
                }
            }
        }
        Format::Markdown => {
            text.push_str("| m | p | q | k | l | path | dim | stabilized | borderline |\n");
            text.push_str("|---|---|---|---|---|------|-----|------------|------------|\n");
            for (c, run) in &runs {
                for r in &run.results {
                    writeln!(
                        text,
                        "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                        c.m, c.p, c.q, c.k, c.l, r.path, r.dimension, r.stabilized, r.borderline
                    )
                    .expect("string write");
                }
            }
        }
    }
    let ok = runs
        .iter()
        .filter(|(c, _)| !c.borderline())
        .all(|(_, run)| run.agree && run.results.iter().all(|r| r.stabilized));
    Ok((text, if ok { EXIT_OK } else { EXIT_FAILURE }))
}

#[derive(Serialize)]
struct TableRow {
    m: usize,
    p: usize,
    q: usize,
    k: usize,
    l: usize,
    dimension: usize,
    expected: Option<usize>,
    status: &'static str,
}

fn cmd_table(cfg: &RunConfig) -> Result<(String, i32)> {
    let runs = run_cells(cfg)?;
    let mut rows = Vec::new();
    let mut failed = false;
    for (c, run) in &runs {
        let dimension = run.results[0].dimension;
        let expected = expected_dimension(c);
        let stable = run.agree && run.results.iter().all(|r| r.stabilized);
        let status = if c.borderline() {
            "borderline"
        } else if !stable {
            failed = true;
            "unstable"
        } else {
            match expected {
                Some(e) if e == dimension => "match",
                Some(_) => {
                    failed = true;
                    "MISMATCH"
                }
                None => "no reference",
            }
        };
        rows.push(TableRow { m: c.m, p: c.p, q: c.q, k: c.k, l: c.l, dimension, expected, status });
    }
    let mut text = String::new();
    let exp = |e: Option<usize>| e.map_or("-".to_string(), |v| v.to_string());
    match cfg.format {
        Format::Json => {
            text = serde_json::to_string_pretty(&rows).expect("rows serialize");
            text.push('\n');
        }
        Format::Csv => {
            text.push_str("m,p,q,k,l,dimension,expected,status\n");
            for r in &rows {
                writeln!(
                    text,
                    "{},{},{},{},{},{},{},{}",
                    r.m,
                    r.p,
                    r.q,
                    r.k,
                    r.l,
                    r.dimension,
                    exp(r.expected),
                    r.status
                )
                .expect("string write");
            }
        }
        Format::Markdown => {
            let rank = |o: i64| match o {
                -2 => 0,
                1 => 1,
                -1 => 2,
                _ => 3,
            };
            let mut ordered: Vec<&TableRow> = rows.iter().collect();
            ordered.sort_by_key(|r| (rank(r.q as i64 - r.p as i64), r.m, r.p, r.k, r.l));
            let mut current: Option<i64> = None;
            for r in ordered {
                let offset = r.q as i64 - r.p as i64;
                if current != Some(offset) {
                    if current.is_some() {
                        text.push('\n');
                    }
                    let heading = match offset {
                        -2 => "q = p - 2",
                        -1 => "q = p - 1",
                        0 => "q = p",
                        1 => "q = p + 1",
                        _ => "other q",
                    };
                    writeln!(text, "### {heading}\n").expect("string write");
                    text.push_str("| m | p | q | k | l | dim | expected | status |\n");
                    text.push_str("|---|---|---|---|---|-----|----------|--------|\n");
                    current = Some(offset);
                }
                writeln!(
                    text,
                    "| {} | {} | {} | {} | {} | {} | {} | {} |",
                    r.m,
                    r.p,
                    r.q,
                    r.k,
                    r.l,
                    r.dimension,
                    exp(r.expected),
                    r.status
                )
                .expect("string write");
            }
        }
    }
    Ok((text, if failed { EXIT_FAILURE } else { EXIT_OK }))
}

#[derive(Serialize)]
struct VerifyReport {
    operator: String,
    m: usize,
    p: usize,
    k: usize,
    q: usize,
    l: usize,
    generators: usize,
    instances: usize,
    failures: Vec<String>,
}

fn cmd_verify(op: CanonicalOp, cfg: &RunConfig) -> Result<(String, i32)> {
    let (&[m], &[p], &[k]) = (cfg.m.as_slice(), cfg.p.as_slice(), cfg.k.as_slice()) else {
        return Err(Error::InvalidParameters("verify takes a single m, p and k".into()));
    };
    crate::tensor::check_ambient(m)?;
    if p > m {
        return Err(Error::InvalidParameters(format!("p={p} exceeds m={m}")));
    }
    let (q, l) = op
        .target(m, p, k)
        .ok_or_else(|| Error::InvalidParameters(format!("{op} is not defined for m={m}, p={p}, k={k}")))?;
    let generators = PolyVectorField::monomials_up_to(m, cfg.g + 1);
    let failures: Vec<String> = (0..cfg.count)
        .into_par_iter()
        .map(|i| -> Result<Option<String>> {
            let mut rng = RandomSource::new(cfg.seed ^ ((i as u64) << 20) ^ 0x7665_7269);
            let d = rng.op_symbol(m, k, p, 2, 4);
            let image = op.apply(&d)?;
            for x in &generators {
                if lie_op(x, &image)? != op.apply(&lie_op(x, &d)?)? {
                    return Ok(Some(format!("instance {i}: X={x:?} D={}", d.to_json())));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let report = VerifyReport {
        operator: op.name().to_string(),
        m,
        p,
        k,
        q,
        l,
        generators: generators.len(),
        instances: cfg.count,
        failures,
    };
    let pass = report.failures.is_empty();
    let text = match cfg.format {
        Format::Json => serde_json::to_string(&report).expect("report serializes") + "\n",
        _ => {
            let mut t = format!(
                "{} on m={m} p={p} k={k} -> q={q} l={l}: {} instances x {} fields: {}\n",
                op,
                report.instances,
                report.generators,
                if pass { "pass" } else { "FAIL" }
            );
            for f in &report.failures {
                writeln!(t, "  {f}").expect("string write");
            }
            t
        }
    };
    Ok((text, if pass { EXIT_OK } else { EXIT_FAILURE }))
}

fn cmd_props(cfg: &RunConfig) -> Result<(String, i32)> {
    let reports: Vec<PropertyReport> = properties::all(cfg.seed, cfg.count);
    let pass = reports.iter().all(PropertyReport::passed);
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        Format::Csv => {
            let mut t = String::from("name,instances,failures\n");
            for r in &reports {
                writeln!(t, "\"{}\",{},{}", r.name, r.instances, r.failures.len()).expect("string write");
            }
            t
        }
        Format::Markdown => {
            let mut t = String::from("| property | instances | result |\n|---|---|---|\n");
            for r in &reports {
                let res = if r.passed() { "pass".to_string() } else { format!("{} failures", r.failures.len()) };
                writeln!(t, "| {} | {} | {} |", r.name, r.instances, res).expect("string write");
            }
            t
        }
    };
    Ok((text, if pass { EXIT_OK } else { EXIT_FAILURE }))
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("EQUIVAR_THREADS") {
        let n: usize = parse_num("EQUIVAR_THREADS", &v)?;
        // a pool may already exist when called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(String, i32, Option<PathBuf>)> {
    configure_threads()?;
    let config = match &cli.config {
        Some(path) => parse_config(
            &std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidParameters(format!("cannot read {}: {e}", path.display())))?,
        )?,
        None => BTreeMap::new(),
    };
    let (flags, mode) = match &cli.command {
        Command::Classify(f) => (f, Mode::Classify),
        Command::Table(f) => (f, Mode::Table),
        Command::Verify { name, flags } => (flags, Mode::Verify(name.parse()?)),
        Command::Props(f) => (f, Mode::Props),
    };
    let cfg = resolve(&flags.merged(&config), mode)?;
    let (text, code) = match mode {
        Mode::Classify => cmd_classify(&cfg)?,
        Mode::Table => cmd_table(&cfg)?,
        Mode::Verify(op) => cmd_verify(op, &cfg)?,
        Mode::Props => cmd_props(&cfg)?,
    };
    Ok((text, code, cfg.out))
}

/// Runs the command line `args` (including the program name), writing the
/// report to `stdout` or the `--out` file and diagnostics to `stderr`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli) {
        Ok((text, code, out)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &text),
                None => stdout.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write report: {e}");
                return EXIT_FAILURE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::InvalidParameters(_) | Error::Parse(_) | Error::UnsupportedDimension(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
    }
}
