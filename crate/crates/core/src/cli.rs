//! The `mellin` command line.
//!
//! Exit status is 0 on success, 1 when a numerical procedure fails or a
//! verification finds a mismatch, and 2 for usage and parse errors.

use std::ffi::OsString;
use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::expr::{evaluate_with, parse_str, Builtin, Expr};
use crate::harness::{self, Report, ToleranceOverride};
use crate::mellin::{
    master_theorem_report, mellin_forward, mellin_inverse, residue_series, TailModel, VerticalLine,
    DEFAULT_TAIL_TOL,
};
use crate::special::{
    alt_hurwitz_eta, bernoulli_numbers, bernoulli_poly, euler_L, euler_numbers, euler_poly, exp_poly, hermite,
    hurwitz_zeta, ZetaConfig,
};
use crate::{format_f64, ComplexScalar, QuadratureConfig, SeriesConfig, ValueWithError};

/// Largest accepted master theorem residual unless overridden.
const DEFAULT_MASTER_TOL: f64 = 1e-7;
/// Largest index a table may request.
pub const TABLE_MAX_N: usize = 30;

#[derive(Debug, Parser)]
#[command(name = "mellin", version, about = "Mellin transforms, residue sums and identity checks")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format [default: json for verify, csv for table, plain otherwise]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Relative tolerance demanded of a result; for verify, overrides every identity's tolerance
    #[arg(long, global = true)]
    pub tol_rel: Option<f64>,
    /// Absolute tolerance demanded of a result; for verify, overrides every identity's tolerance
    #[arg(long, global = true)]
    pub tol_abs: Option<f64>,
    /// Seed of the parameter sampler
    #[arg(long, global = true, env = "MELLIN_VERIFY_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Samples drawn per identity
    #[arg(long, global = true, default_value_t = 25)]
    pub samples: usize,
    /// Suppress warnings
    #[arg(long, short, global = true)]
    pub quiet: bool,
    /// Record the wall-clock time in verification reports
    #[arg(long, global = true)]
    pub timing: bool,
    /// Relative tolerance of quadrature
    #[arg(long, global = true, default_value = "1e-10")]
    pub quad_rel_tol: f64,
    /// Absolute tolerance of quadrature
    #[arg(long, global = true, default_value = "0")]
    pub quad_abs_tol: f64,
    /// Refinement levels allowed to quadrature
    #[arg(long, global = true, default_value_t = 12)]
    pub max_refinements: u32,
    /// Relative tolerance of series summation
    #[arg(long, global = true, default_value = "1e-12")]
    pub series_rel_tol: f64,
    /// Terms allowed to series summation
    #[arg(long, global = true, default_value_t = 10_000)]
    pub max_terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a builtin function at complex arguments (`a+bi`)
    Eval {
        function: String,
        #[arg(allow_negative_numbers = true)]
        args: Vec<String>,
    },
    /// Numerical Mellin transform or its inverse
    Mellin {
        #[command(subcommand)]
        direction: Direction,
    },
    /// Σ ((−1)ⁿ/n!)·f(−n)·xⁿ for f written in the variable s
    ResidueSum {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },
    /// Residual of ∫ x^{s−1} Σ f(n)(−x)ⁿ/n! dx = f(−s)Γ(s)
    MasterCheck {
        /// f written in the variable s
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Check identities on seeded samples and emit a report
    Verify {
        /// Identity id, or a family such as I2 for all of I2a, I2b, I2c
        #[arg(long)]
        identity: Option<String>,
        /// List the identities instead of checking them
        #[arg(long)]
        list: bool,
    },
    /// Tables of special values
    Table {
        family: Family,
        /// Index or inclusive range `lo..hi`, at most 30
        #[arg(long, default_value = "0..10")]
        n: String,
        /// Comma-separated points [default: 1; Bernoulli and Euler numbers when absent]
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Direction {
    /// G(s) = ∫₀^∞ x^{s−1} g(x) dx for g written in the variable x
    Forward {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// g(x) = (1/2πi) ∫ x^{−s} G(s) ds on Re s = a, for G written in the variable s
    Inverse {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
        a: f64,
        /// Truncation height T; chosen from a Γ-dominated tail bound when absent
        #[arg(long)]
        height: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// ζ(−n, z)
    ZetaNeg,
    /// η(−n, z)
    EtaNeg,
    /// L(−2n)
    #[value(name = "L-neg")]
    LNeg,
    /// φₙ(z)
    Bell,
    /// Hₙ(z)
    Hermite,
    /// Bₙ(z), or Bₙ
    Bernoulli,
    /// Eₙ(z), or Eₙ
    Euler,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
    /// The reader of the output went away.
    Closed,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) | Failure::Closed => 1,
        }
    }

    fn message(&self) -> Option<&str> {
        match self {
            Failure::Usage(m) | Failure::Numerical(m) => Some(m),
            Failure::Closed => None,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Numerical(format!("writing output: {e}"))
    }
}

fn caret(source: &str, position: usize) -> String {
    format!("{source}\n{}^", " ".repeat(position))
}

/// Classifies a library error, pointing into `source` when it carries a
/// position.
fn failure(e: Error, source: Option<&str>) -> Failure {
    let msg = match (source, &e) {
        (Some(src), Error::At { position, .. }) => format!("{e}\n{}", caret(src, *position)),
        (Some(src), Error::Parse(pe)) => format!("{e}\n{}", pe.render(src)),
        _ => e.root().to_string(),
    };
    if e.is_numerical() {
        Failure::Numerical(msg)
    } else {
        Failure::Usage(msg)
    }
}

fn parse_expr(source: &str) -> Result<Expr, Failure> {
    parse_str(source).map_err(|e| Failure::Usage(format!("{e}\n{}", e.render(source))))
}

fn eval_at(expr: &Expr, var: &str, value: ComplexScalar) -> crate::Result<ComplexScalar> {
    evaluate_with(expr, &|name| (name == var).then_some(value))
}

/// A constant expression such as `2`, `-1.5` or `0.5+3i`.
fn parse_value(source: &str) -> Result<ComplexScalar, Failure> {
    let expr = parse_expr(source)?;
    evaluate_with(&expr, &|_| None).map_err(|e| failure(e, Some(source)))
}

fn parse_real(source: &str) -> Result<f64, Failure> {
    let v = parse_value(source)?;
    if v.im != 0.0 {
        return Err(Failure::Usage(format!("expected a real number, got {source}")));
    }
    Ok(v.re)
}

fn parse_range(source: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("invalid index range `{source}`; expected n or lo..hi"));
    let (lo, hi) = match source.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => {
            let n = source.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    if hi > TABLE_MAX_N {
        return Err(Failure::Usage(format!("table index {hi} out of range (at most {TABLE_MAX_N})")));
    }
    Ok((lo, hi))
}

pub fn format_complex(z: ComplexScalar) -> String {
    if z.im == 0.0 {
        format_f64(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", format_f64(z.re), format_f64(-z.im))
    } else {
        format!("{}+{}i", format_f64(z.re), format_f64(z.im))
    }
}

fn complex_json(z: ComplexScalar) -> Value {
    json!({ "im": z.im, "re": z.re })
}

fn csv_bytes(rows: &[Vec<String>]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row).map_err(|e| Failure::Numerical(e.to_string()))?;
    }
    w.into_inner().map_err(|e| Failure::Numerical(e.to_string()))
}

fn write_json(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("JSON values serialize"))?;
    Ok(())
}

impl GlobalOpts {
    fn quadrature(&self) -> Result<QuadratureConfig, Failure> {
        QuadratureConfig::new(self.quad_abs_tol, self.quad_rel_tol, self.max_refinements).map_err(|e| failure(e, None))
    }

    fn series(&self) -> Result<SeriesConfig, Failure> {
        SeriesConfig::new(self.series_rel_tol, self.max_terms, SeriesConfig::default().consecutive_small)
            .map_err(|e| failure(e, None))
    }

    fn tolerance_override(&self) -> Option<ToleranceOverride> {
        (self.tol_abs.is_some() || self.tol_rel.is_some()).then_some(ToleranceOverride {
            abs: self.tol_abs,
            rel: self.tol_rel,
        })
    }

    /// Fails when a tolerance was requested and the estimate exceeds it.
    fn check_estimate(&self, r: &ValueWithError) -> Result<i32, Failure> {
        if self.tol_abs.is_none() && self.tol_rel.is_none() {
            return Ok(0);
        }
        let allowed = self.tol_abs.unwrap_or(0.0).max(self.tol_rel.unwrap_or(0.0) * r.value.norm());
        if r.error_estimate > allowed {
            return Err(Failure::Numerical(format!(
                "error estimate {} exceeds the requested tolerance {}",
                format_f64(r.error_estimate),
                format_f64(allowed)
            )));
        }
        Ok(0)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return e.exit_code();
        }
    };
    if cli.opts.quiet {
        log::set_max_level(log::LevelFilter::Off);
    }
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            if let Some(m) = f.message() {
                let _ = writeln!(err, "error: {m}");
            }
            f.code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let o = &cli.opts;
    match &cli.command {
        Command::Eval { function, args } => cmd_eval(o, function, args, out),
        Command::Mellin {
            direction: Direction::Forward { expr, s },
        } => cmd_forward(o, expr, s, out),
        Command::Mellin {
            direction: Direction::Inverse { expr, x, a, height },
        } => cmd_inverse(o, expr, *x, *a, *height, out),
        Command::ResidueSum { expr, x } => cmd_residue_sum(o, expr, *x, out),
        Command::MasterCheck { f, s } => cmd_master_check(o, f, s, out),
        Command::Verify { identity, list } => {
            if *list {
                cmd_list(out)
            } else {
                cmd_verify(o, identity.as_deref(), out)
            }
        }
        Command::Table { family, n, z } => cmd_table(o, *family, n, z.as_deref(), out),
    }
}

fn cmd_eval(o: &GlobalOpts, name: &str, args: &[String], out: &mut dyn Write) -> Result<i32, Failure> {
    let func = Builtin::lookup(name).ok_or_else(|| Failure::Usage(Error::UnknownFunction(name.into()).to_string()))?;
    if args.len() != func.arity() {
        return Err(Failure::Usage(format!(
            "`{name}` takes {} argument(s), got {}",
            func.arity(),
            args.len()
        )));
    }
    let args = args
        .iter()
        .map(|a| {
            Ok(Expr::Literal {
                value: parse_value(a)?,
                position: 0,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let call = Expr::Call {
        func,
        args,
        position: 0,
    };
    let v = evaluate_with(&call, &|_| None).map_err(|e| failure(e, None))?;
    match o.format.unwrap_or(Format::Plain) {
        Format::Plain => writeln!(out, "{}", format_complex(v))?,
        Format::Json => write_json(out, &json!({ "value": complex_json(v) }))?,
        Format::Csv => out.write_all(&csv_bytes(&[
            vec!["re".into(), "im".into()],
            vec![format_f64(v.re), format_f64(v.im)],
        ])?)?,
    }
    Ok(0)
}

fn emit_estimate(o: &GlobalOpts, r: &ValueWithError, count: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match o.format.unwrap_or(Format::Plain) {
        Format::Plain => {
            writeln!(out, "value {}", format_complex(r.value))?;
            writeln!(out, "error_estimate {}", format_f64(r.error_estimate))?;
            writeln!(out, "{count} {}", r.evaluations)?;
        }
        Format::Json => {
            let mut v = json!({ "error_estimate": r.error_estimate, "value": complex_json(r.value) });
            v[count] = json!(r.evaluations);
            write_json(out, &v)?;
        }
        Format::Csv => out.write_all(&csv_bytes(&[
            vec!["re".into(), "im".into(), "error_estimate".into(), count.into()],
            vec![
                format_f64(r.value.re),
                format_f64(r.value.im),
                format_f64(r.error_estimate),
                r.evaluations.to_string(),
            ],
        ])?)?,
    }
    Ok(())
}

fn cmd_forward(o: &GlobalOpts, source: &str, s: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let expr = parse_expr(source)?;
    let s = parse_value(s)?;
    let cfg = o.quadrature()?;
    let r = mellin_forward(|x| eval_at(&expr, "x", ComplexScalar::new(x, 0.0)), s, &cfg)
        .map_err(|e| failure(e, Some(source)))?;
    emit_estimate(o, &r, "evaluations", out)?;
    o.check_estimate(&r)
}

fn cmd_inverse(
    o: &GlobalOpts,
    source: &str,
    x: f64,
    a: f64,
    height: Option<f64>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let expr = parse_expr(source)?;
    let cfg = o.quadrature()?;
    let big_g = |s| eval_at(&expr, "s", s);
    let line = match height {
        Some(h) => VerticalLine::new(a, h, TailModel::Unknown),
        None => VerticalLine::fit_gamma_ratio(big_g, a, o.tol_abs.unwrap_or(DEFAULT_TAIL_TOL)),
    }
    .map_err(|e| failure(e, Some(source)))?;
    let r = mellin_inverse(big_g, x, &line, &cfg).map_err(|e| failure(e, Some(source)))?;
    emit_estimate(o, &r, "evaluations", out)?;
    o.check_estimate(&r)
}

fn cmd_residue_sum(o: &GlobalOpts, source: &str, x: f64, out: &mut dyn Write) -> Result<i32, Failure> {
    let expr = parse_expr(source)?;
    let scfg = o.series()?;
    let r = residue_series(|s| eval_at(&expr, "s", s), x, &scfg).map_err(|e| failure(e, Some(source)))?;
    emit_estimate(o, &r, "terms_used", out)?;
    o.check_estimate(&r)
}

fn cmd_master_check(o: &GlobalOpts, source: &str, s: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let expr = parse_expr(source)?;
    let s = parse_value(s)?;
    let rep = master_theorem_report(|u| eval_at(&expr, "s", u), s, &o.quadrature()?, &o.series()?)
        .map_err(|e| failure(e, Some(source)))?;
    match o.format.unwrap_or(Format::Plain) {
        Format::Plain => {
            writeln!(out, "residual {}", format_f64(rep.residual))?;
            writeln!(out, "lhs {}", format_complex(rep.lhs.value))?;
            writeln!(out, "rhs {}", format_complex(rep.rhs))?;
            writeln!(out, "lhs_error_estimate {}", format_f64(rep.lhs.error_estimate))?;
            writeln!(out, "overlap_mismatch {}", format_f64(rep.overlap_mismatch))?;
            writeln!(out, "series_points {}", rep.series_points)?;
            writeln!(out, "contour_points {}", rep.contour_points)?;
        }
        Format::Json => write_json(
            out,
            &json!({
                "contour_points": rep.contour_points,
                "lhs": complex_json(rep.lhs.value),
                "lhs_error_estimate": rep.lhs.error_estimate,
                "overlap_mismatch": rep.overlap_mismatch,
                "residual": rep.residual,
                "rhs": complex_json(rep.rhs),
                "series_points": rep.series_points,
            }),
        )?,
        Format::Csv => out.write_all(&csv_bytes(&[
            ["residual", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "lhs_error_estimate", "overlap_mismatch"]
                .map(String::from)
                .to_vec(),
            vec![
                format_f64(rep.residual),
                format_f64(rep.lhs.value.re),
                format_f64(rep.lhs.value.im),
                format_f64(rep.rhs.re),
                format_f64(rep.rhs.im),
                format_f64(rep.lhs.error_estimate),
                format_f64(rep.overlap_mismatch),
            ],
        ])?)?,
    }
    let allowed = o.tol_abs.unwrap_or(DEFAULT_MASTER_TOL).max(o.tol_rel.unwrap_or(0.0) * rep.rhs.norm());
    if rep.residual > allowed {
        return Err(Failure::Numerical(format!(
            "residual {} exceeds {}",
            format_f64(rep.residual),
            format_f64(allowed)
        )));
    }
    Ok(0)
}

fn cmd_list(out: &mut dyn Write) -> Result<i32, Failure> {
    for spec in harness::list_identities() {
        writeln!(out, "{}\t{}", spec.id, spec.description)?;
    }
    Ok(0)
}

fn cmd_verify(o: &GlobalOpts, identity: Option<&str>, out: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let tol = o.tolerance_override();
    let mut report = match identity {
        Some(id) => harness::run_identity(id, o.samples, o.seed, tol).map_err(|e| failure(e, None))?,
        None => harness::run_all(o.samples, o.seed, tol),
    };
    if o.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    match o.format.unwrap_or(Format::Json) {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => out.write_all(&report_csv(&report)?)?,
        Format::Plain => write_report_plain(&report, out)?,
    }
    Ok(if report.n_fail == 0 { 0 } else { 1 })
}

fn report_csv(report: &Report) -> Result<Vec<u8>, Failure> {
    let opt = |v: Option<f64>| v.map(format_f64).unwrap_or_default();
    let mut rows = vec![[
        "id", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "pass", "note",
    ]
    .map(String::from)
    .to_vec()];
    for r in &report.results {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", format_f64(*v))).collect();
        rows.push(vec![
            r.id.clone(),
            params.join(";"),
            opt(r.lhs.map(|z| z.re)),
            opt(r.lhs.map(|z| z.im)),
            opt(r.rhs.map(|z| z.re)),
            opt(r.rhs.map(|z| z.im)),
            opt(r.abs_err),
            opt(r.rel_err),
            r.pass.to_string(),
            r.note.clone().unwrap_or_default(),
        ]);
    }
    csv_bytes(&rows)
}

fn write_report_plain(report: &Report, out: &mut dyn Write) -> Result<(), Failure> {
    let mut i = 0;
    while i < report.results.len() {
        let id = &report.results[i].id;
        let group: Vec<_> = report.results[i..].iter().take_while(|r| &r.id == id).collect();
        let passed = group.iter().filter(|r| r.pass).count();
        writeln!(out, "{id}\t{passed}/{}", group.len())?;
        for r in group.iter().filter(|r| !r.pass) {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", format_f64(*v))).collect();
            let why = match (&r.note, r.rel_err) {
                (Some(note), _) => note.clone(),
                (None, Some(rel)) => format!("rel_err {}", format_f64(rel)),
                (None, None) => String::new(),
            };
            writeln!(out, "  FAIL {} {why}", params.join(" "))?;
        }
        i += group.len();
    }
    writeln!(out, "passed {} failed {} seed {}", report.n_pass, report.n_fail, report.seed)?;
    if let Some(t) = report.wall_time_s {
        writeln!(out, "wall_time_s {}", format_f64(t))?;
    }
    Ok(())
}

struct TableRow {
    n: usize,
    z: Option<f64>,
    value: f64,
}

fn table_value(family: Family, n: usize, z: Option<f64>) -> crate::Result<f64> {
    let cfg = ZetaConfig::default();
    let c = |x: f64| ComplexScalar::new(x, 0.0);
    let at = |z: Option<f64>| c(z.unwrap_or(1.0));
    Ok(match family {
        Family::ZetaNeg => hurwitz_zeta(c(-(n as f64)), at(z), &cfg)?.re,
        Family::EtaNeg => alt_hurwitz_eta(c(-(n as f64)), at(z), &cfg)?.re,
        Family::LNeg => euler_L(c(-2.0 * n as f64), &cfg)?.re,
        Family::Bell => exp_poly(n, at(z)).re,
        Family::Hermite => hermite(n, at(z)).re,
        Family::Bernoulli => match z {
            Some(z) => bernoulli_poly(n, c(z)).re,
            None => bernoulli_numbers(n).get(n),
        },
        Family::Euler => match z {
            Some(z) => euler_poly(n, c(z)).re,
            None => euler_numbers(n).get(n),
        },
    })
}

fn cmd_table(o: &GlobalOpts, family: Family, n: &str, z: Option<&str>, out: &mut dyn Write) -> Result<i32, Failure> {
    let (lo, hi) = parse_range(n)?;
    let points: Vec<Option<f64>> = match (family, z) {
        (Family::LNeg, Some(_)) => return Err(Failure::Usage("L-neg takes no --z".into())),
        (Family::LNeg | Family::Bernoulli | Family::Euler, None) => vec![None],
        (_, None) => vec![Some(1.0)],
        (_, Some(list)) => list
            .split(',')
            .map(|p| parse_real(p.trim()).map(Some))
            .collect::<Result<_, _>>()?,
    };
    let mut rows = Vec::new();
    for n in lo..=hi {
        for &z in &points {
            let value = table_value(family, n, z).map_err(|e| failure(e, None))?;
            rows.push(TableRow { n, z, value });
        }
    }
    let with_z = points.iter().any(Option::is_some);
    match o.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| match r.z {
                    Some(z) => json!({ "n": r.n, "value": r.value, "z": z }),
                    None => json!({ "n": r.n, "value": r.value }),
                })
                .collect();
            write_json(out, &Value::Array(items))?;
        }
        Format::Csv | Format::Plain => {
            let fields = |r: &TableRow| {
                let mut f = vec![r.n.to_string()];
                if let Some(z) = r.z {
                    f.push(format_f64(z));
                }
                f.push(format_f64(r.value));
                f
            };
            if o.format == Some(Format::Plain) {
                for r in &rows {
                    writeln!(out, "{}", fields(r).join("\t"))?;
                }
            } else {
                let header: &[&str] = if with_z { &["n", "z", "value"] } else { &["n", "value"] };
                let mut all = vec![header.iter().map(|h| h.to_string()).collect()];
                all.extend(rows.iter().map(fields));
                out.write_all(&csv_bytes(&all)?)?;
            }
        }
    }
    Ok(0)
}
