//! Command-line front end: compute, verify and tabulate invariants of Seifert
//! manifolds, compare the lens-space routes and check modular axioms.
//!
//! Everything runs through [`run`], which returns the exit code and the text
//! destined for stdout/stderr, so tests can drive the tool without a process.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use seifert_rt::invariants::{applicable_methods, tau, ComplexityCap, EvalOptions};
use seifert_rt::modular::{check_axioms, sl2_datum};
use seifert_rt::seifert::random_batch;
use seifert_rt::{CfStyle, Error, InvariantResult, LensSpace, Method, ModularDatum, SeifertData};
use serde::Serialize;
use std::fmt::Write as _;
use std::str::FromStr;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "seifert-rt", version, about = "Reshetikhin–Turaev invariants of Seifert manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate τ_r by each requested route.
    Compute {
        /// Seifert invariants, e.g. `o;g=0;b=-1;2/1,3/1,5/1`.
        seifert: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Cross-check all applicable routes and report the worst discrepancy.
    Verify {
        seifert: Option<String>,
        /// Verify this many seeded random manifolds instead.
        #[arg(long, conflicts_with = "seifert")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate L(p, q) by the direct and the surgery route.
    Lens {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the modular-category axioms of the sl₂ data (or a loaded datum).
    Axioms {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tabulate τ_r over a range of levels.
    Table {
        seifert: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Levels, `a..b` (inclusive) or a single `a`.
    #[arg(long = "r", default_value = "3..10")]
    pub r: LevelRange,
    /// Routes to evaluate, comma separated; defaults to every applicable one.
    #[arg(long, value_delimiter = ',')]
    pub method: Vec<String>,
    #[arg(long = "cf-style", default_value = "minus")]
    pub cf_style: String,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// JSON file with an external modular datum.
    #[arg(long)]
    pub datum: Option<std::path::PathBuf>,
    /// Graph-sum cap `N` or `N,R`; falls back to RT_COMPLEXITY_CAP.
    #[arg(long)]
    pub cap: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Inclusive, non-empty range of levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRange(pub Vec<u32>);

impl FromStr for LevelRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad level '{t}'"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        if lo < 2 || hi < lo {
            return Err(format!("level range '{s}' must be non-empty with r >= 2"));
        }
        Ok(LevelRange((lo..=hi).collect()))
    }
}

/// Settings derived from the command line.
#[derive(Clone, Debug)]
pub struct Config {
    pub r_values: Vec<u32>,
    pub methods: Option<Vec<Method>>,
    pub cf_style: CfStyle,
    pub tolerance: f64,
    pub cap: ComplexityCap,
    pub datum: Option<ModularDatum>,
}

impl Config {
    pub fn from_common(c: &Common) -> Result<Self, String> {
        if !(c.tolerance > 0.0) {
            return Err(format!("tolerance must be positive, got {}", c.tolerance));
        }
        let methods = if c.method.is_empty() {
            None
        } else {
            Some(c.method.iter().map(|m| m.parse::<Method>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?)
        };
        let cap = match &c.cap {
            Some(s) => ComplexityCap::parse(s).map_err(|e| e.to_string())?,
            None => ComplexityCap::from_env(),
        };
        let datum = match &c.datum {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                Some(ModularDatum::from_json_str(&text).map_err(|e| e.to_string())?)
            }
            None => None,
        };
        Ok(Config {
            r_values: c.r.0.clone(),
            methods,
            cf_style: c.cf_style.parse().map_err(|e: Error| e.to_string())?,
            tolerance: c.tolerance,
            cap,
            datum,
        })
    }

    fn options(&self) -> EvalOptions {
        EvalOptions { cf_style: self.cf_style, datum: self.datum.clone(), cap: Some(self.cap) }
    }
}

/// The evaluation backend. The default forwards to the library; tests swap
/// in deliberately broken backends to check that `verify` notices.
pub trait Evaluator: Sync {
    fn evaluate(&self, method: Method, r: u32, m: &SeifertData, opts: &EvalOptions) -> seifert_rt::Result<InvariantResult>;
}

pub struct LibraryEvaluator;

impl Evaluator for LibraryEvaluator {
    fn evaluate(&self, method: Method, r: u32, m: &SeifertData, opts: &EvalOptions) -> seifert_rt::Result<InvariantResult> {
        tau(method, r, m, opts)
    }
}

/// Exit code with the collected output streams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub r: u32,
    pub method: String,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub phase: f64,
    pub sigma: i64,
    pub tolerance: f64,
}

/// Rounds to 15 significant digits; `-0` becomes `0`.
pub fn sig15(x: f64) -> f64 {
    let y: f64 = format!("{x:.14e}").parse().expect("float round trip");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

impl Record {
    fn new(r: u32, method: &str, res: &InvariantResult) -> Self {
        let v = res.value;
        Record {
            r,
            method: method.to_string(),
            re: sig15(v.re),
            im: sig15(v.im),
            abs: sig15(v.norm()),
            phase: sig15(v.arg()),
            sigma: res.sigma_used,
            tolerance: sig15(res.tolerance_estimate),
        }
    }
}

pub fn render_records(records: &[Record], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(records).expect("records serialize") + "\n",
        Format::Csv => {
            let mut out = String::from("r,method,re,im,abs,phase\n");
            for x in records {
                let _ = writeln!(out, "{},{},{},{},{},{}", x.r, x.method, x.re, x.im, x.abs, x.phase);
            }
            out
        }
        Format::Text => {
            let mut out = format!("{:>4}  {:<14} {:>22} {:>22} {:>20} {:>20}\n", "r", "method", "re", "im", "abs", "phase");
            for x in records {
                let _ = writeln!(
                    out,
                    "{:>4}  {:<14} {:>22} {:>22} {:>20} {:>20}",
                    x.r, x.method, x.re, x.im, x.abs, x.phase
                );
            }
            out
        }
    }
}

fn chain_total(m: &SeifertData) -> usize {
    m.normalize().chains(CfStyle::Minus).iter().map(|c| c.len()).sum()
}

fn datum_level(cfg: &Config, r: u32) -> u32 {
    cfg.datum.as_ref().map_or(r, |d| d.n_labels as u32 + 1)
}

/// Evaluates every requested `(r, method)` cell, in parallel, in fixed order.
/// Without an explicit method list, applicable routes are used and graph sums
/// beyond the cap are skipped; an explicitly requested one fails instead.
fn evaluate_cells(
    m: &SeifertData,
    cfg: &Config,
    eval: &dyn Evaluator,
) -> (Vec<(u32, Method, seifert_rt::Result<InvariantResult>)>, Vec<String>) {
    let mut notes = Vec::new();
    let mut cells = Vec::new();
    let total = chain_total(m);
    for &r in &cfg.r_values {
        let methods = match &cfg.methods {
            Some(ms) => ms.clone(),
            None => applicable_methods(m)
                .into_iter()
                .filter(|&k| {
                    let keep = k != Method::GraphSum || cfg.cap.admits(total, datum_level(cfg, r));
                    if !keep {
                        notes.push(format!("{m} r={r}: graph_sum skipped (over the complexity cap)"));
                    }
                    keep
                })
                .collect(),
        };
        cells.extend(methods.into_iter().map(|k| (r, k)));
    }
    let opts = cfg.options();
    let results = cells.into_par_iter().map(|(r, k)| (r, k, eval.evaluate(k, r, m, &opts))).collect();
    (results, notes)
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::ComplexityCap(_) => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn cmd_compute(seifert: &str, cfg: &Config, format: Format, eval: &dyn Evaluator) -> Outcome {
    let m: SeifertData = match seifert.parse() {
        Ok(m) => m,
        Err(e) => return Outcome::input_error(e),
    };
    let (cells, notes) = evaluate_cells(&m, cfg, eval);
    let mut records = Vec::new();
    let mut out = Outcome::default();
    for n in notes {
        let _ = writeln!(out.stderr, "note: {n}");
    }
    for (r, k, res) in cells {
        match res {
            Ok(v) => records.push(Record::new(r, k.name(), &v)),
            Err(e) => {
                let _ = writeln!(out.stderr, "error: {m} r={r} {k}: {e}");
                out.code = out.code.max(error_code(&e));
            }
        }
    }
    out.stdout = render_records(&records, format);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub input: String,
    pub max_discrepancy: f64,
    /// `"r=…: a vs b"` for the worst pair, if at least two routes ran.
    pub worst: Option<String>,
    pub evaluations: usize,
    pub passed: bool,
}

fn verify_one(m: &SeifertData, cfg: &Config, eval: &dyn Evaluator) -> Result<(Discrepancy, Vec<String>), Error> {
    let (cells, notes) = evaluate_cells(m, cfg, eval);
    let mut by_level: Vec<(u32, Vec<(Method, num_complex::Complex64)>)> = Vec::new();
    for (r, k, res) in cells {
        let v = res?.value;
        match by_level.last_mut() {
            Some((lr, vs)) if *lr == r => vs.push((k, v)),
            _ => by_level.push((r, vec![(k, v)])),
        }
    }
    let mut worst = (0.0f64, None);
    let mut evaluations = 0;
    for (r, vs) in &by_level {
        evaluations += vs.len();
        for (i, (ki, vi)) in vs.iter().enumerate() {
            for (kj, vj) in &vs[..i] {
                let d = (vi - vj).norm();
                if d > worst.0 || worst.1.is_none() {
                    worst = (d, Some(format!("r={r}: {ki} vs {kj}")));
                }
            }
        }
    }
    let passed = worst.0 < cfg.tolerance;
    Ok((
        Discrepancy { input: m.to_string(), max_discrepancy: sig15(worst.0), worst: worst.1, evaluations, passed },
        notes,
    ))
}

fn cmd_verify(
    seifert: Option<&str>,
    random: Option<usize>,
    seed: u64,
    cfg: &Config,
    format: Format,
    eval: &dyn Evaluator,
) -> Outcome {
    let inputs: Vec<SeifertData> = match (seifert, random) {
        (Some(s), None) => match s.parse() {
            Ok(m) => vec![m],
            Err(e) => return Outcome::input_error(e),
        },
        (None, Some(n)) => random_batch(seed, n),
        _ => return Outcome::input_error("give either a Seifert string or --random N"),
    };
    let mut out = Outcome::default();
    let mut reports = Vec::new();
    for m in &inputs {
        match verify_one(m, cfg, eval) {
            Ok((rep, notes)) => {
                for n in notes {
                    let _ = writeln!(out.stderr, "note: {n}");
                }
                reports.push(rep);
            }
            Err(e) => {
                let _ = writeln!(out.stderr, "error: {m}: {e}");
                out.code = out.code.max(error_code(&e));
            }
        }
    }
    let failures: Vec<&Discrepancy> = reports.iter().filter(|d| !d.passed).collect();
    if out.code == EXIT_OK && !failures.is_empty() {
        out.code = EXIT_VERIFY;
    }
    out.stdout = match format {
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        Format::Csv => {
            let mut s = String::from("input,max_discrepancy,worst,evaluations,passed\n");
            for d in &reports {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{},{}",
                    d.input,
                    d.max_discrepancy,
                    d.worst.as_deref().unwrap_or(""),
                    d.evaluations,
                    d.passed
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for d in &reports {
                let _ = writeln!(
                    s,
                    "{} {}  max |Δ| = {:e}  ({} evaluations{})",
                    if d.passed { "ok  " } else { "FAIL" },
                    d.input,
                    d.max_discrepancy,
                    d.evaluations,
                    d.worst.as_ref().map(|w| format!(", worst {w}")).unwrap_or_default()
                );
            }
            let _ = writeln!(s, "{} of {} inputs within tolerance {:e}", reports.len() - failures.len(), reports.len(), cfg.tolerance);
            s
        }
    };
    if let Some(w) = failures.iter().max_by(|a, b| a.max_discrepancy.total_cmp(&b.max_discrepancy)) {
        let _ = writeln!(
            out.stderr,
            "verification failed; worst case {} with |Δ| = {:e} ({})",
            w.input,
            w.max_discrepancy,
            w.worst.as_deref().unwrap_or("")
        );
    }
    out
}

fn cmd_lens(p: i64, q: i64, cfg: &Config, format: Format) -> Outcome {
    let l = match LensSpace::new(p, q) {
        Ok(l) => l,
        Err(e) => return Outcome::input_error(e),
    };
    let evals: Vec<_> = cfg.r_values.par_iter().map(|&r| (r, seifert_rt::invariants::tau_lens(r, l))).collect();
    let mut out = Outcome::default();
    let mut records = Vec::new();
    for (r, e) in evals {
        match e {
            Ok(e) => {
                records.push(Record::new(r, "lens_direct", &e.direct));
                records.push(Record::new(r, "lens_corollary", &e.corollary));
                if !(e.discrepancy() < cfg.tolerance) {
                    let _ = writeln!(out.stderr, "{l} r={r}: routes differ by {:e}", e.discrepancy());
                    out.code = EXIT_VERIFY;
                }
            }
            Err(e) => return Outcome::input_error(e),
        }
    }
    out.stdout = render_records(&records, format);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomLine {
    pub r: u32,
    pub max_residual: f64,
    pub failures: Vec<String>,
}

fn cmd_axioms(cfg: &Config, format: Format) -> Outcome {
    let tol = cfg.tolerance.min(1e-10);
    let lines: Result<Vec<AxiomLine>, Error> = match &cfg.datum {
        Some(d) => {
            let rep = check_axioms(d, tol);
            Ok(vec![AxiomLine {
                r: d.n_labels as u32 + 1,
                max_residual: sig15(rep.max_residual()),
                failures: rep.failures().iter().map(|f| f.to_string()).collect(),
            }])
        }
        None => cfg
            .r_values
            .par_iter()
            .map(|&r| {
                let rep = check_axioms(&sl2_datum(r)?, tol);
                Ok(AxiomLine {
                    r,
                    max_residual: sig15(rep.max_residual()),
                    failures: rep.failures().iter().map(|f| f.to_string()).collect(),
                })
            })
            .collect(),
    };
    let lines = match lines {
        Ok(l) => l,
        Err(e) => return Outcome::input_error(e),
    };
    let mut out = Outcome::default();
    if lines.iter().any(|l| !l.failures.is_empty()) {
        out.code = EXIT_VERIFY;
    }
    out.stdout = match format {
        Format::Json => serde_json::to_string_pretty(&lines).expect("lines serialize") + "\n",
        Format::Csv => {
            let mut s = String::from("r,max_residual,failures\n");
            for l in &lines {
                let _ = writeln!(s, "{},{},{}", l.r, l.max_residual, l.failures.join(";"));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for l in &lines {
                let status = if l.failures.is_empty() { "ok".to_string() } else { format!("FAIL {}", l.failures.join(", ")) };
                let _ = writeln!(s, "r={:<4} max residual {:e}  {status}", l.r, l.max_residual);
            }
            s
        }
    };
    out
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, eval: &dyn Evaluator) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let common = match &cli.command {
        Command::Compute { common, .. }
        | Command::Verify { common, .. }
        | Command::Lens { common, .. }
        | Command::Axioms { common, .. }
        | Command::Table { common, .. } => common,
    };
    let cfg = match Config::from_common(common) {
        Ok(c) => c,
        Err(e) => return Outcome::input_error(e),
    };
    match &cli.command {
        Command::Compute { seifert, format, .. } | Command::Table { seifert, format, .. } => {
            cmd_compute(seifert, &cfg, *format, eval)
        }
        Command::Verify { seifert, random, seed, format, .. } => {
            cmd_verify(seifert.as_deref(), *random, *seed, &cfg, *format, eval)
        }
        Command::Lens { p, q, format, .. } => cmd_lens(*p, *q, &cfg, *format),
        Command::Axioms { format, .. } => cmd_axioms(&cfg, *format),
    }
}
