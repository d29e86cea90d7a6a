//! Command-line front end for padroot.
//!
//! `run` parses arguments, dispatches to the core library and writes a
//! report to the given sink. It returns the process exit code: 0 on success
//! or a fully certified result, 2 on a partial result, 1 on a usage or input
//! error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use padroot::bounds::{self, FieldParams, ScanConfig};
use padroot::explore::{self, CoeffMode, RunControl, SweepSpec};
use padroot::extremal::{self, ExtremalOptions};
use padroot::rootcount::{verify_upper_bounds, BoundVerdict, Certificate, ExactPoint};
use padroot::sparsepoly::Segment;
use padroot::vandermonde;
use padroot::{count_roots, newton_polygon, parse_poly, CountOptions, Error, RootReport, SparsePoly};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CONFIG_ENV: &str = "PADROOT_CONFIG";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

const DEFAULT_PREC: u32 = 40;
const DEFAULT_DEPTH: u32 = 8;
const DEFAULT_EXPONENT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Human,
    Structured,
}

#[derive(Parser, Debug)]
#[command(name = "padroot", version, about = "Certified root counts of sparse polynomials over Q_p")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML config file (defaults to $PADROOT_CONFIG when set).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Copy)]
struct Tuning {
    /// Working precision in p-adic digits.
    #[arg(long)]
    prec: Option<u32>,
    /// Refinement depth below the first-digit split.
    #[arg(long)]
    depth: Option<u32>,
    /// Largest exponent accepted in input polynomials.
    #[arg(long)]
    exponent_cap: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Count the roots of a sparse polynomial in Q_p^*.
    CountRoots {
        #[arg(long)]
        p: u64,
        /// Polynomial text, a JSON document {"terms": [[e, "a/b"], ...]}, or a file holding either.
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Print the p-adic Newton polygon of a polynomial.
    NewtonPolygon {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Check the confluent Vandermonde identities on a grid.
    VandermondeCheck {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        alpha_max: u64,
    },
    /// Evaluate the closed-form root bounds.
    Bounds {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u64,
        #[arg(long, default_value_t = 1)]
        f: u64,
    },
    /// Build the inductive extremal polynomial f_t over Q_p (q = p).
    BuildExtremal {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        alpha_window: Option<usize>,
        #[arg(long)]
        eps_window: Option<u64>,
        /// Working precision (defaults to the construction's own default, 128).
        #[arg(long)]
        prec: Option<u32>,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Sweep random or exhaustive candidate polynomials and record maxima.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        max_exp: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random candidates to draw.
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Random coefficients are drawn from [-B, B] without 0.
        #[arg(long, default_value_t = 20)]
        coeff_bound: i64,
        /// Enumerate coefficients exhaustively modulo p^k instead of sampling.
        #[arg(long)]
        exhaustive_k: Option<u32>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Continue from the checkpoint in the output directory.
        #[arg(long)]
        resume: bool,
        /// Stop after this many candidates (a later --resume continues).
        #[arg(long)]
        limit: Option<u64>,
        #[command(flatten)]
        tuning: Tuning,
    },
}

/// Contents of a config file. Every field is optional.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    prec: Option<u32>,
    depth: Option<u32>,
    exponent_cap: Option<u64>,
    format: Option<Format>,
}

/// Configuration after applying flags over the file over the defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EffectiveConfig {
    pub prec: u32,
    pub depth: u32,
    pub exponent_cap: u64,
    pub format: Format,
    pub config_file: Option<String>,
}

impl EffectiveConfig {
    fn resolve(cli: &Cli, tuning: Option<&Tuning>, env_config: Option<OsString>) -> Result<Self, String> {
        let path = cli.config.clone().or_else(|| env_config.filter(|s| !s.is_empty()).map(PathBuf::from));
        let file = match &path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
                toml::from_str::<FileConfig>(&text).map_err(|e| format!("bad config {}: {e}", p.display()))?
            }
            None => FileConfig::default(),
        };
        let pick = |flag: Option<u32>, file: Option<u32>, d: u32| flag.or(file).unwrap_or(d);
        Ok(EffectiveConfig {
            prec: pick(tuning.and_then(|t| t.prec), file.prec, DEFAULT_PREC),
            depth: pick(tuning.and_then(|t| t.depth), file.depth, DEFAULT_DEPTH),
            exponent_cap: tuning
                .and_then(|t| t.exponent_cap)
                .or(file.exponent_cap)
                .unwrap_or(DEFAULT_EXPONENT_CAP),
            format: cli.format.or(file.format).unwrap_or(Format::Human),
            config_file: path.map(|p| p.display().to_string()),
        })
    }
}

/// A finished command: the structured document, its human rendering and
/// the exit code.
struct Outcome {
    doc: Value,
    human: String,
    code: i32,
}

struct Failure {
    msg: String,
    code: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SearchExhausted { .. } | Error::BoundViolation(_) | Error::PrecisionExhausted(_) => EXIT_PARTIAL,
            Error::Internal(_) | Error::Io(_) => EXIT_PARTIAL,
            _ => EXIT_USAGE,
        };
        Failure { msg: format!("{}: {e}", error_kind(&e)), code }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "ParseError",
        Error::DuplicateExponent(_) => "DuplicateExponent",
        Error::PreconditionFailed(_) => "PreconditionFailed",
        Error::PrecisionExhausted(_) => "PrecisionExhausted",
        Error::DivisionByZero => "DivisionByZero",
        Error::NotApplicable(_) => "NotApplicable",
        Error::CapExceeded(_) => "CapExceeded",
        Error::ScanWindowExceeded(_) => "ScanWindowExceeded",
        Error::SearchExhausted { .. } => "SearchExhausted",
        Error::InvalidInput(_) => "InvalidInput",
        Error::BoundViolation(_) => "BoundViolation",
        Error::Internal(_) => "InternalError",
        Error::Io(_) => "IoError",
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { msg: msg.into(), code: EXIT_USAGE }
}

/// Runs the tool on `args` (including the program name) with the config
/// file taken from `PADROOT_CONFIG` when `--config` is absent.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var_os(CONFIG_ENV), out, err)
}

pub fn run_with_env<I, T>(args: I, env_config: Option<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let tuning = match &cli.cmd {
        Cmd::CountRoots { tuning, .. } | Cmd::NewtonPolygon { tuning, .. } | Cmd::Search { tuning, .. } => Some(tuning),
        _ => None,
    };
    let cfg = match EffectiveConfig::resolve(&cli, tuning, env_config) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let (command, result) = dispatch(&cli.cmd, &cfg);
    match result {
        Ok(o) => {
            let text = match cfg.format {
                Format::Structured => {
                    let doc = json!({
                        "tool": "padroot",
                        "version": VERSION,
                        "command": command,
                        "config": cfg,
                        "exit_code": o.code,
                        "result": o.doc,
                    });
                    serde_json::to_string_pretty(&doc).unwrap_or_default() + "\n"
                }
                Format::Human => header(command, &cfg) + &o.human,
            };
            let _ = out.write_all(text.as_bytes());
            o.code
        }
        Err(f) => {
            if cfg.format == Format::Structured {
                let doc = json!({
                    "tool": "padroot",
                    "version": VERSION,
                    "command": command,
                    "config": cfg,
                    "exit_code": f.code,
                    "error": f.msg,
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
            }
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn header(command: &str, cfg: &EffectiveConfig) -> String {
    let mut s = format!(
        "padroot {VERSION} {command}\nconfig: prec={} depth={} exponent_cap={} format=human",
        cfg.prec, cfg.depth, cfg.exponent_cap
    );
    if let Some(path) = &cfg.config_file {
        let _ = write!(s, " file={path}");
    }
    s.push_str("\n\n");
    s
}

fn dispatch(cmd: &Cmd, cfg: &EffectiveConfig) -> (&'static str, Result<Outcome, Failure>) {
    match cmd {
        Cmd::CountRoots { p, poly, .. } => ("count-roots", cmd_count_roots(*p, poly, cfg)),
        Cmd::NewtonPolygon { p, poly, .. } => ("newton-polygon", cmd_newton(*p, poly, cfg)),
        Cmd::VandermondeCheck { t, alpha_max } => ("vandermonde-check", cmd_vandermonde(*t, *alpha_max)),
        Cmd::Bounds { t, p, e, f } => ("bounds", cmd_bounds(*t, FieldParams::new(*p, *e, *f))),
        Cmd::BuildExtremal { t, q, alpha_window, eps_window, prec, depth } => {
            let mut opts = ExtremalOptions::default();
            if let Some(w) = alpha_window {
                opts.alpha_window = *w;
            }
            if let Some(w) = eps_window {
                opts.eps_window = *w;
            }
            if let Some(n) = prec {
                opts.prec = *n;
            }
            if let Some(d) = depth {
                opts.depth = *d;
            }
            ("build-extremal", cmd_build(*t, *q, &opts))
        }
        Cmd::Search { p, t, max_exp, seed, count, coeff_bound, exhaustive_k, workers, out, resume, limit, .. } => {
            let coeff_mode = match exhaustive_k {
                Some(k) => CoeffMode::Exhaustive { k: *k },
                None => CoeffMode::Random { seed: *seed, count: *count, bound: *coeff_bound },
            };
            let spec = SweepSpec {
                p: *p,
                t: *t,
                exponent_bound: *max_exp,
                coeff_mode,
                prec: cfg.prec,
                depth: cfg.depth,
                workers: *workers,
            };
            ("search", cmd_search(&spec, out, *resume, *limit, cfg))
        }
    }
}

/// Reads a polynomial from text, a JSON document, or a file holding either.
pub fn read_poly(arg: &str) -> Result<SparsePoly, Error> {
    let path = Path::new(arg);
    let text = if !arg.contains('^') && !arg.trim_start().starts_with('{') && path.is_file() {
        std::fs::read_to_string(path)?
    } else {
        arg.to_string()
    };
    let text = text.trim();
    if text.starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })
    } else {
        parse_poly(text)
    }
}

fn load_poly(arg: &str, cfg: &EffectiveConfig) -> Result<SparsePoly, Failure> {
    let f = read_poly(arg)?;
    if let Some(d) = f.degree() {
        if d > cfg.exponent_cap {
            return Err(Error::CapExceeded(format!("degree {d} is above the exponent cap {}", cfg.exponent_cap)).into());
        }
    }
    Ok(f)
}

fn cmd_count_roots(p: u64, poly: &str, cfg: &EffectiveConfig) -> Result<Outcome, Failure> {
    let f = load_poly(poly, cfg)?;
    let opts = CountOptions { prec: cfg.prec, max_depth: cfg.depth, ..CountOptions::default() };
    let report = count_roots(&f, p, &opts)?;
    let t = f.t().unwrap_or(0) as u64;
    let verdicts = verify_upper_bounds(&report, t, p);
    let code = if report.is_certified() { EXIT_OK } else { EXIT_PARTIAL };
    let mut human = render_report(&report);
    human.push_str(&render_verdicts(&verdicts));
    Ok(Outcome {
        doc: json!({ "polynomial": f, "report": report, "bound_verdicts": verdicts }),
        human,
        code,
    })
}

fn cert_name(c: Certificate) -> &'static str {
    match c {
        Certificate::HenselSimple => "hensel-simple",
        Certificate::ExactTorsion => "exact-torsion",
        Certificate::ExactRational => "exact-rational",
    }
}

fn exact_text(e: &ExactPoint) -> String {
    match e {
        ExactPoint::Rational { value } => format!("= {value}"),
        ExactPoint::Teichmuller { residue, order } => format!("root of unity of order {order}, residue {residue}"),
        ExactPoint::Radical { radicand, index } => format!("{index}-th root of {radicand}"),
    }
}

fn render_segments(segments: &[Segment]) -> String {
    let mut s = String::new();
    for seg in segments {
        let _ = writeln!(
            s,
            "  ({}, {}) -> ({}, {})  slope {}  length {}",
            seg.start.0, seg.start.1, seg.end.0, seg.end.1, seg.slope, seg.length
        );
    }
    s
}

fn render_report(r: &RootReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "polynomial: {}", r.polynomial);
    let _ = writeln!(s, "p = {}, t = {}", r.p, r.t);
    let _ = writeln!(s, "newton polygon:");
    s.push_str(&render_segments(&r.newton_polygon.segments));
    let _ = writeln!(s, "roots:");
    if r.entries.is_empty() {
        let _ = writeln!(s, "  none");
    }
    for e in &r.entries {
        let _ = write!(s, "  {}  v={}  mult={}  {}", e.value, e.valuation, e.multiplicity, cert_name(e.certificate));
        if let Some(x) = &e.exact {
            let _ = write!(s, "  ({})", exact_text(x));
        }
        if let Some(h) = &e.hensel {
            let _ = write!(s, "  v(g)={:?} v(g')={}", h.val_g, h.val_gprime);
        }
        s.push('\n');
    }
    if !r.unresolved.is_empty() {
        let _ = writeln!(s, "unresolved clusters:");
        for c in &r.unresolved {
            let center = c.center.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string());
            let _ = writeln!(
                s,
                "  v={} center={} level={} at most {} roots, depth {}: {}",
                c.valuation, center, c.level, c.upper_bound, c.depth_reached, c.reason
            );
        }
    }
    let _ = writeln!(
        s,
        "totals: {} distinct, {} with multiplicity, at most {} with multiplicity",
        r.totals.count_distinct, r.totals.count_with_multiplicity, r.totals.upper_bound_with_multiplicity
    );
    let _ = writeln!(s, "certified: {}", if r.is_certified() { "yes" } else { "no" });
    if r.precision_exhausted {
        let _ = writeln!(s, "precision exhausted: raise --prec or --depth");
    }
    s
}

fn render_verdicts(v: &[BoundVerdict]) -> String {
    let mut s = String::from("bound verdicts:\n");
    for b in v {
        let status = match b.satisfied {
            Some(true) => "ok",
            Some(false) => "VIOLATED",
            None => "n/a",
        };
        let bound = b.bound.map_or_else(|| "-".to_string(), |x| x.to_string());
        let _ = writeln!(s, "  {:<20} bound {:>6}  observed {:>6}  {}", b.name, bound, b.observed, status);
    }
    s
}

fn cmd_newton(p: u64, poly: &str, cfg: &EffectiveConfig) -> Result<Outcome, Failure> {
    let f = load_poly(poly, cfg)?;
    if !padroot::arith::is_prime(p) {
        return Err(usage(format!("InvalidInput: {p} is not prime")));
    }
    let np = newton_polygon(&f, p);
    let mut human = format!("polynomial: {f}\np = {p}\nvertices:");
    for (i, v) in &np.vertices {
        let _ = write!(human, " ({i}, {v})");
    }
    human.push_str("\nsegments:\n");
    human.push_str(&render_segments(&np.segments));
    Ok(Outcome { doc: json!({ "polynomial": f, "p": p, "newton_polygon": np }), human, code: EXIT_OK })
}

fn cmd_vandermonde(t: usize, alpha_max: u64) -> Result<Outcome, Failure> {
    if t == 0 || t > 5 {
        return Err(usage("InvalidInput: t must be in 1..=5"));
    }
    if alpha_max < t as u64 {
        return Err(usage("InvalidInput: alpha-max must be at least t"));
    }
    let rows = vandermonde::identity_grid(t, alpha_max)?;
    let mut human = String::from("alpha            s          P>=0  P!=0  degV  degP  limit  subst expand  result\n");
    let flag = |b: bool| if b { "ok" } else { "FAIL" };
    for r in &rows {
        let limit = match r.confluent_limit {
            None => "-",
            Some(b) => flag(b),
        };
        let _ = writeln!(
            human,
            "{:<16} {:<10} {:<5} {:<5} {:<5} {:<5} {:<6} {:<5} {:<7} {}",
            format!("{:?}", r.alpha),
            format!("{:?}", r.s),
            flag(r.p_nonnegative),
            if r.p_nonzero { "yes" } else { "no" },
            flag(r.v_degree_ok),
            flag(r.p_degree_ok),
            limit,
            flag(r.specialization),
            flag(r.binom_expansion),
            if r.passed() { "PASS" } else { "FAIL" }
        );
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    let zero = rows.iter().filter(|r| !r.p_nonzero).count();
    let summary = json!({
        "t_max": t,
        "alpha_max": alpha_max,
        "rows": rows.len(),
        "passed": rows.len() - failed,
        "failed": failed,
        "p_zero": zero,
    });
    let _ = writeln!(human, "\nsummary: {}", summary);
    let code = if failed == 0 { EXIT_OK } else { EXIT_PARTIAL };
    Ok(Outcome { doc: json!({ "summary": summary, "rows": rows }), human, code })
}

#[derive(Serialize)]
struct BoundLine {
    name: &'static str,
    value: Option<String>,
    applicable: bool,
    note: String,
}

fn cmd_bounds(t: u64, params: FieldParams) -> Result<Outcome, Failure> {
    params.validate()?;
    if t == 0 {
        return Err(usage("InvalidInput: t must be at least 1"));
    }
    let q = params.q();
    let odd = params.p != 2;
    let mut lines = vec![BoundLine {
        name: "descartes",
        value: Some(bounds::descartes_bound(t).to_string()),
        applicable: true,
        note: "2t, for real or rational roots".into(),
    }];
    lines.push(BoundLine {
        name: "lenstra",
        value: Some(format!("{:.6}", bounds::lenstra_bound(t, &params))),
        applicable: true,
        note: "c t^2 (q-1)(1 + e log(e t / log p) / log p)".into(),
    });
    match bounds::new_upper_bound(t, &params) {
        Ok(b) => lines.push(BoundLine {
            name: "upper",
            value: Some(b.to_string()),
            applicable: true,
            note: "(t^2-t+1)(q-1), needs p > e+t".into(),
        }),
        Err(e) => lines.push(BoundLine { name: "upper", value: None, applicable: false, note: e.to_string() }),
    }
    let lower = bounds::lower_bound(t, &q)?;
    let note = if odd { String::new() } else { "needs odd p".to_string() };
    lines.push(BoundLine {
        name: "lower",
        value: Some(lower.value.to_string()),
        applicable: odd,
        note: if odd { "(2t-1)(q-1), roots counted without multiplicity".into() } else { note.clone() },
    });
    lines.push(BoundLine {
        name: "lower_regular",
        value: Some(lower.regular.to_string()),
        applicable: odd,
        note: if odd { "t(q-1), all roots regular".into() } else { note },
    });
    let r = num_rational::BigRational::new(BigInt::from(1), BigInt::from(params.e));
    let c = bounds::lenstra_c(params.p, t, &r, &ScanConfig::default());
    let c_doc = match &c {
        Ok(c) => json!(c),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let mut human = format!("t = {t}, p = {}, e = {}, f = {}, q = {q}\n", params.p, params.e, params.f);
    for l in &lines {
        let _ = writeln!(
            human,
            "  {:<14} {:>14}  {}  {}",
            l.name,
            l.value.as_deref().unwrap_or("-"),
            if l.applicable { "applicable" } else { "not applicable" },
            l.note
        );
    }
    match &c {
        Ok(c) => {
            let _ = writeln!(human, "  C(p, t, 1/e) = {} (scanned to m = {})", c.value, c.scanned_to);
        }
        Err(e) => {
            let _ = writeln!(human, "  C(p, t, 1/e): {e}");
        }
    }
    let doc = json!({
        "t": t,
        "params": params,
        "q": q.to_string(),
        "bounds": lines,
        "lenstra_c": c_doc,
        "upper_value": lines[2].value.as_ref().and_then(|v| v.parse::<BigInt>().ok()).and_then(|v| v.to_u64()),
    });
    Ok(Outcome { doc, human, code: EXIT_OK })
}

fn cmd_build(t: u64, q: u64, opts: &ExtremalOptions) -> Result<Outcome, Failure> {
    let b = extremal::build_ft(t, q, opts)?;
    let mut human = format!("f_{t} over Q_{q}: {}\nstructured: {}\n", b.poly, serde_json::to_string(&b.poly).unwrap_or_default());
    let _ = writeln!(human, "target: at least {} roots", b.target_count);
    human.push_str(&render_report(&b.report));
    let _ = writeln!(human, "construction log:");
    for s in &b.construction_log {
        let _ = writeln!(
            human,
            "  step t={}: alpha={} c={} eps={} r0={} gamma={} gamma'={} threshold={} ({})",
            s.t, s.alpha, s.c, s.epsilon, s.r0, s.gamma, s.gamma_prime, s.thresholds.combined, s.thresholds.binding
        );
        for c in &s.conditions {
            let _ = writeln!(human, "    [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
        }
        let _ = writeln!(human, "    slopes: {}", s.newton_slopes.join(", "));
    }
    let code = if b.report.is_certified() { EXIT_OK } else { EXIT_PARTIAL };
    Ok(Outcome { doc: json!({ "options": opts, "build": b }), human, code })
}

fn cmd_search(spec: &SweepSpec, out: &Path, resume: bool, limit: Option<u64>, cfg: &EffectiveConfig) -> Result<Outcome, Failure> {
    if spec.exponent_bound > cfg.exponent_cap {
        return Err(Error::CapExceeded(format!("max-exp {} is above the exponent cap {}", spec.exponent_bound, cfg.exponent_cap)).into());
    }
    std::fs::create_dir_all(out).map_err(Error::from)?;
    let summary = explore::run_sweep_to_dir(spec, out, RunControl { resume, limit, stop: None })?;
    let mut human = format!(
        "p = {}, t = {}, max exponent {}, {} candidates\n",
        spec.p, spec.t, spec.exponent_bound, summary.candidates
    );
    let s = &summary.stats;
    let _ = writeln!(human, "evaluated {}, skipped {} non-canonical, {} unresolved", s.evaluated, s.skipped_noncanonical, s.unresolved);
    if let Some(m) = &s.max_distinct {
        let _ = writeln!(human, "max distinct: {} ({})", m.count, m.candidate);
    }
    if let Some(m) = &s.max_with_mult {
        let _ = writeln!(human, "max with multiplicity: {} ({})", m.count, m.candidate);
    }
    match summary.upper_bound {
        Some(b) => {
            let _ = writeln!(human, "upper bound {b}");
        }
        None => {
            let _ = writeln!(human, "upper bound not applicable");
        }
    }
    let _ = writeln!(human, "construction count {}", summary.construction_count);
    for r in &s.above_construction {
        let _ = writeln!(human, "ABOVE CONSTRUCTION: {} ({} distinct, {} with multiplicity)", r.candidate, r.distinct, r.with_mult);
    }
    let _ = writeln!(human, "complete: {}  output: {}", summary.complete, out.display());
    let code = if summary.complete { EXIT_OK } else { EXIT_PARTIAL };
    Ok(Outcome { doc: json!({ "out": out.display().to_string(), "summary": summary }), human, code })
}
