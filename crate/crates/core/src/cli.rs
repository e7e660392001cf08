//! Command-line driver: evaluation, verification suites, tables, transform
//! checks and quadrature rules.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or domain error,
//! 3 branch-cut error, 4 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::psi::{biorder, eval_psi, norm_sq, EvalRoute, FamilyParams, ModeIndex, PuncturedPoint, SampleBox, DEFAULT_BRANCH_MARGIN};
use crate::quad::{angular_trapezoid_rule, gauss_hermite_rule, gauss_laguerre_rule};
use crate::report::VerificationReport;
use crate::suite::{run_suites, transform_reports, Suite, SuiteConfig, DEFAULT_SEED};

type C = Complex64;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BRANCH: i32 = 3;
pub const EXIT_IO: i32 = 4;

const COMPLEX_GRAMMAR: &str = "Complex numbers are written a, bi, a+bi or a-bi, with optional exponents \
(1.5e-3-2e1i); a bare i means 1i.";

#[derive(Debug, Parser)]
#[command(name = "ito-hermite", version, about = "Poly-meromorphic Ito-Hermite functions", after_help = COMPLEX_GRAMMAR)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate psi_{n,m} at one or more points by one or more routes.
    Eval(EvalArgs),
    /// Run verification suites and print one row per identity.
    Verify(VerifyArgs),
    /// Write a CSV table of psi values, bi-orders and norms.
    Table(TableArgs),
    /// Check the Bargmann transforms and the S-transform on a finite basis.
    Transform(TransformArgs),
    /// Write the nodes and weights of a quadrature rule.
    Quadrules(QuadArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// key=value file read before the command-line flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Family {
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
}

impl Family {
    fn params(&self) -> crate::Result<FamilyParams> {
        FamilyParams::new(self.alpha, self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

impl Format {
    fn name(&self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Args)]
#[command(after_help = COMPLEX_GRAMMAR)]
struct EvalArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    family: Family,
    /// Route name or comma-separated list: explicit, laguerre, kummer, hyp2f0, rodrigues, all.
    #[arg(long, default_value = "all")]
    route: String,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    /// Evaluation point or comma-separated list of points.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Minimum angle in radians between z and the negative real axis for non-integer beta.
    #[arg(long, default_value_t = DEFAULT_BRANCH_MARGIN)]
    branch_margin: f64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Suite name or comma-separated list; one of closed-forms, routes,
    /// orthogonality, spectral, operators, identities, genfun,
    /// representations, transforms, biorder, all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample count for every identity; suite defaults when absent.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    mmax: Option<i64>,
    /// Restrict the orthogonality grid to one family (needs --beta too).
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0.3)]
    rmin: f64,
    #[arg(long, default_value_t = 3.0)]
    rmax: f64,
    /// Replace every row tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Worker threads; the report does not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    family: Family,
    #[arg(long, default_value_t = 0)]
    nmin: usize,
    #[arg(long, default_value_t = 1)]
    nmax: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    mmin: i64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    mmax: i64,
    /// Points per (n, m) cell; the same points are used for every cell.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    rmin: f64,
    #[arg(long, default_value_t = 2.0)]
    rmax: f64,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    family: Family,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    m: i64,
    /// Number of basis functions e_0..e_{basis-1}.
    #[arg(long, default_value_t = 3)]
    basis: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Points per basis function.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleName {
    Laguerre,
    Hermite,
    Angular,
}

#[derive(Debug, Args)]
struct QuadArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    kind: RuleName,
    #[arg(long)]
    order: usize,
    /// Laguerre weight exponent a in t^a e^{-t}.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    a: f64,
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` with optional exponents.
pub fn parse_complex(s: &str) -> std::result::Result<C, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse '{s}' as a complex number");
    let real = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('i') else {
        return Ok(C::new(real(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => real(x)?,
    };
    Ok(C::new(re, im))
}

fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_complex(z: C) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{sign}{:.16e}i", z.re, z.im.abs())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BranchCut(_) => EXIT_BRANCH,
        _ => EXIT_USAGE,
    }
}

/// Inserts `--key value` pairs from the config file right after the
/// subcommand so that later command-line flags override them.
fn splice_config(args: Vec<OsString>) -> std::result::Result<Vec<OsString>, (i32, String)> {
    let mut path = None;
    for (k, a) in args.iter().enumerate() {
        let a = a.to_string_lossy();
        if a == "--config" {
            path = args.get(k + 1).map(PathBuf::from);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else { return Ok(args) };
    if args.len() < 2 {
        return Ok(args);
    }
    let text = fs::read_to_string(&path).map_err(|e| (EXIT_IO, format!("cannot read config {}: {e}", path.display())))?;
    let mut extra = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err((EXIT_USAGE, format!("{}:{}: expected key=value", path.display(), ln + 1)));
        };
        let key = key.trim().replace('_', "-");
        if key == "config" {
            return Err((EXIT_USAGE, format!("{}:{}: nested config files are not supported", path.display(), ln + 1)));
        }
        extra.push(OsString::from(format!("--{key}={}", value.trim())));
    }
    let mut out = args[..2].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[2..]);
    Ok(out)
}

struct Header {
    lines: Vec<String>,
}

impl Header {
    fn new(command: &str) -> Self {
        Self { lines: vec![format!("# ito-hermite {command} {}", env!("CARGO_PKG_VERSION"))] }
    }

    fn kv(mut self, key: &str, value: impl ToString) -> Self {
        self.lines.push(format!("# {key} = {}", value.to_string()));
        self
    }

    fn family(self, p: &FamilyParams) -> Self {
        let class = match p.beta_rounded() {
            Some(b) => format!("integer ({b})"),
            None => "non-integer".to_string(),
        };
        self.kv("alpha", p.alpha()).kv("beta", p.beta_input()).kv("beta_class", class)
    }

    fn write(&self, buf: &mut Vec<u8>) {
        for l in &self.lines {
            buf.extend_from_slice(l.as_bytes());
            buf.push(b'\n');
        }
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "default".to_string(), T::to_string)
}

fn emit(common: &Common, buf: &[u8], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res = match &common.output {
        Some(p) => fs::write(p, buf).map_err(|e| (p.as_path().to_owned(), e)),
        None => out.write_all(buf).map_err(|e| (Path::new("<stdout>").to_owned(), e)),
    };
    match res {
        Ok(()) => EXIT_PASS,
        Err((p, e)) => {
            let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
            EXIT_IO
        }
    }
}

/// Runs the CLI on `args` (including the program name). Reports go to
/// `out` (or the --output file), diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match splice_config(args) {
        Ok(a) => a,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return code;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_PASS } else { EXIT_USAGE };
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Table(a) => cmd_table(a, out, err),
        Command::Transform(a) => cmd_transform(a, out, err),
        Command::Quadrules(a) => cmd_quadrules(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn parse_list<T, E: std::fmt::Display>(s: &str, all: &[T], parse: impl Fn(&str) -> Result<T, E>) -> crate::Result<Vec<T>>
where
    T: Copy + PartialEq,
{
    let mut v = Vec::new();
    for part in s.split(',').map(str::trim) {
        if part == "all" {
            v.extend_from_slice(all);
        } else {
            v.push(parse(part).map_err(|e| Error::Domain(e.to_string()))?);
        }
    }
    let mut uniq = Vec::new();
    for x in v {
        if !uniq.contains(&x) {
            uniq.push(x);
        }
    }
    Ok(uniq)
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let params = a.family.params()?;
    let routes = parse_list(&a.route, &EvalRoute::ALL, str::parse::<EvalRoute>)?;
    let points = a
        .z
        .split(',')
        .map(|s| parse_complex(s).map_err(Error::Domain).and_then(PuncturedPoint::new))
        .collect::<crate::Result<Vec<_>>>()?;
    let idx = ModeIndex::new(a.n, a.m);
    idx.check(&params)?;
    let mut buf = Vec::new();
    Header::new("eval")
        .family(&params)
        .kv("n", a.n)
        .kv("m", a.m)
        .kv("route", routes.iter().map(|r| r.name()).collect::<Vec<_>>().join(","))
        .kv("branch_margin", a.branch_margin)
        .write(&mut buf);
    let mut failure = None;
    for z in &points {
        let mut values = Vec::new();
        for r in &routes {
            let v = if r.is_branch_sensitive() {
                z.check_branch(&params, a.branch_margin).and_then(|_| eval_psi(*r, &params, &idx, z))
            } else {
                eval_psi(*r, &params, &idx, z)
            };
            match v {
                Ok(v) => {
                    writeln!(buf, "{} {} {} {} {} {}", r.name(), a.n, a.m, fmt_complex(z.z()), fmt_num(v.re), fmt_num(v.im)).ok();
                    values.push(v);
                }
                Err(e) => {
                    failure.get_or_insert(e);
                }
            }
        }
        if values.len() > 1 {
            let diff = values.iter().flat_map(|x| values.iter().map(move |y| (x - y).norm())).fold(0.0, f64::max);
            let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
            writeln!(buf, "diff {} {}", fmt_num(diff), fmt_num(if diff == 0.0 { 0.0 } else { diff / scale })).ok();
        }
    }
    let code = emit(&a.common, &buf, out, err);
    if code != EXIT_PASS {
        return Ok(code);
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(EXIT_PASS),
    }
}

fn status(r: &VerificationReport) -> &'static str {
    if r.passed {
        "PASS"
    } else if r.samples == 0 {
        "REFUSED"
    } else {
        "FAIL"
    }
}

fn write_reports(buf: &mut Vec<u8>, rows: &[VerificationReport], format: Format) {
    match format {
        Format::Text => {
            writeln!(buf, "# {:<38} {:>7} {:>23} {:>23} {:<7} errata", "identity_id", "samples", "max_rel_residual", "tolerance", "status").ok();
            for r in rows {
                writeln!(
                    buf,
                    "{:<40} {:>7} {:>23} {:>23} {:<7} {}",
                    r.identity_id,
                    r.samples,
                    fmt_num(r.max_rel_residual),
                    fmt_num(r.tolerance),
                    status(r),
                    if r.errata_corrected { "ERRATA" } else { "-" }
                )
                .ok();
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["identity_id", "samples", "max_abs_residual", "max_rel_residual", "tolerance", "status", "errata", "seed"]).ok();
            for r in rows {
                w.write_record([
                    r.identity_id.clone(),
                    r.samples.to_string(),
                    fmt_num(r.max_abs_residual),
                    fmt_num(r.max_rel_residual),
                    fmt_num(r.tolerance),
                    status(r).to_string(),
                    r.errata_corrected.to_string(),
                    opt(&r.seed),
                ])
                .ok();
            }
            buf.extend(w.into_inner().unwrap_or_default());
        }
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    if format == Format::Text {
        writeln!(buf, "# rows = {}, failed = {failed}", rows.len()).ok();
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let suites = parse_list(&a.suite, &Suite::ALL, str::parse::<Suite>)?;
    if !(a.rmin > 0.0 && a.rmax >= a.rmin) {
        return Err(Error::Domain(format!("radius range [{}, {}] must satisfy 0 < rmin <= rmax", a.rmin, a.rmax)));
    }
    let params = match (a.alpha, a.beta) {
        (Some(al), Some(b)) => Some(FamilyParams::new(al, b)?),
        (None, None) => None,
        _ => return Err(Error::Domain("--alpha and --beta must be given together".into())),
    };
    let cfg = SuiteConfig {
        seed: a.seed,
        samples: a.samples,
        n_max: a.nmax,
        m_max: a.mmax,
        params,
        radius: (a.rmin, a.rmax),
        tolerance: a.tolerance,
    };
    let rows = match a.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?
            .install(|| run_suites(&suites, &cfg)),
        None => run_suites(&suites, &cfg),
    };
    let mut buf = Vec::new();
    let mut h = Header::new("verify")
        .kv("suite", suites.iter().map(|s| s.name()).collect::<Vec<_>>().join(","))
        .kv("seed", a.seed)
        .kv("samples", opt(&a.samples))
        .kv("nmax", opt(&a.nmax))
        .kv("mmax", opt(&a.mmax))
        .kv("rmin", a.rmin)
        .kv("rmax", a.rmax)
        .kv("tolerance", opt(&a.tolerance))
        .kv("format", a.format.name());
    h = match &params {
        Some(p) => h.family(p),
        None => h.kv("family", "default grid"),
    };
    h.write(&mut buf);
    write_reports(&mut buf, &rows, a.format);
    let code = emit(&a.common, &buf, out, err);
    if code != EXIT_PASS {
        return Ok(code);
    }
    Ok(if rows.iter().all(|r| r.passed) { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let params = a.family.params()?;
    if a.nmin > a.nmax || a.mmin > a.mmax || a.count == 0 {
        return Err(Error::Domain("index ranges and the sample count must be nonempty".into()));
    }
    if !(a.rmin > 0.0 && a.rmax >= a.rmin) {
        return Err(Error::Domain(format!("radius range [{}, {}] must satisfy 0 < rmin <= rmax", a.rmin, a.rmax)));
    }
    let bx = SampleBox { radius: (a.rmin, a.rmax), ..SampleBox::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let points: Vec<C> = (0..a.count).map(|_| bx.draw_point(&mut rng)).collect();

    let mut buf = Vec::new();
    Header::new("table")
        .family(&params)
        .kv("n", format!("{}..={}", a.nmin, a.nmax))
        .kv("m", format!("{}..={}", a.mmin, a.mmax))
        .kv("count", a.count)
        .kv("seed", a.seed)
        .kv("rmin", a.rmin)
        .kv("rmax", a.rmax)
        .write(&mut buf);
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Domain(format!("csv: {e}"));
    w.write_record(["n", "m", "alpha", "beta", "re_z", "im_z", "re_psi", "im_psi", "biorder_r", "biorder_s", "norm_sq"])
        .map_err(io)?;
    for n in a.nmin..=a.nmax {
        for m in a.mmin..=a.mmax {
            let idx = ModeIndex::new(n, m);
            if !idx.is_admissible(&params) {
                continue;
            }
            let b = biorder(&params, &idx)?;
            let ns = norm_sq(&params, &idx)?;
            for z in &points {
                let v = eval_psi(EvalRoute::ExplicitSum, &params, &idx, &PuncturedPoint::new(*z)?)?;
                w.write_record([
                    n.to_string(),
                    m.to_string(),
                    fmt_num(params.alpha()),
                    fmt_num(params.beta()),
                    fmt_num(z.re),
                    fmt_num(z.im),
                    fmt_num(v.re),
                    fmt_num(v.im),
                    b.r.to_string(),
                    b.s.to_string(),
                    fmt_num(ns),
                ])
                .map_err(io)?;
            }
        }
    }
    buf.extend(w.into_inner().map_err(|e| Error::Domain(format!("csv: {e}")))?);
    Ok(emit(&a.common, &buf, out, err))
}

fn cmd_transform(a: &TransformArgs, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let params = a.family.params()?;
    let cfg = SuiteConfig { seed: a.seed, samples: a.samples, tolerance: a.tolerance, ..SuiteConfig::default() };
    let mut buf = Vec::new();
    Header::new("transform")
        .family(&params)
        .kv("m", a.m)
        .kv("basis", a.basis)
        .kv("seed", a.seed)
        .kv("samples", opt(&a.samples))
        .kv("tolerance", opt(&a.tolerance))
        .kv("format", a.format.name())
        .write(&mut buf);
    match transform_reports(&params, a.m, a.basis, &cfg) {
        Ok(rows) => {
            write_reports(&mut buf, &rows, a.format);
            let code = emit(&a.common, &buf, out, err);
            if code != EXIT_PASS {
                return Ok(code);
            }
            Ok(if rows.iter().all(|r| r.passed) { EXIT_PASS } else { EXIT_FAIL })
        }
        Err(e) => {
            let row = VerificationReport::refused("transform", 0.0).with_seed(a.seed);
            write_reports(&mut buf, &[row], a.format);
            let code = emit(&a.common, &buf, out, err);
            if code != EXIT_PASS {
                return Ok(code);
            }
            Err(e)
        }
    }
}

fn cmd_quadrules(a: &QuadArgs, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let rule = match a.kind {
        RuleName::Laguerre => gauss_laguerre_rule(a.order, a.a)?,
        RuleName::Hermite => gauss_hermite_rule(a.order)?,
        RuleName::Angular => angular_trapezoid_rule(a.order)?,
    };
    let mut buf = Vec::new();
    let mut h = Header::new("quadrules").kv("kind", format!("{:?}", a.kind).to_lowercase()).kv("order", a.order);
    if a.kind == RuleName::Laguerre {
        h = h.kv("a", a.a);
    }
    h.write(&mut buf);
    rule.write_csv(&mut buf)?;
    Ok(emit(&a.common, &buf, out, err))
}
