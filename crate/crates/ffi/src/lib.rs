//! C interface to `mellin-core`.
//!
//! Every fallible function returns a [`MellinStatus`] and writes its result
//! through an out pointer, which is left untouched on failure (except for
//! [`MellinStatus::NoConvergence`], where the partial estimate is written).
//! The message of the most recent failure on the calling thread is
//! available from [`mellin_last_error_message`].
//!
//! Handles ([`MellinExpr`], [`MellinConfig`], [`MellinReport`]) are opaque
//! and owned by the caller, who releases them with the matching `_free`
//! function. Passing NULL to a `_free` function is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mellin_core::expr::{evaluate_with, parse_str, Expr};
use mellin_core::harness::{self, Report};
use mellin_core::mellin::{self, master_theorem_check, residue_series, TailModel, VerticalLine, DEFAULT_TAIL_TOL};
use mellin_core::numerics::{gamma, log_gamma};
use mellin_core::special::{
    alt_hurwitz_eta, bernoulli_poly, euler_L, euler_poly, exp_poly, hermite, hurwitz_zeta, ZetaConfig,
};
use mellin_core::{ComplexScalar, Error, QuadratureConfig, SeriesConfig, ValueWithError};

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MellinStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An expression failed to parse, or named an unknown function.
    Parse = 3,
    /// An argument lies outside the domain of the function.
    Domain = 4,
    /// The argument hit a pole.
    Pole = 5,
    /// A value does not fit in binary64.
    Overflow = 6,
    /// An integrand or series term was not finite.
    NonFinite = 7,
    /// Quadrature or series summation stopped before reaching the tolerance.
    NoConvergence = 8,
    /// An expression used a variable that was not bound.
    UnboundVariable = 9,
    UnknownIdentity = 10,
    /// The library panicked; this is a bug.
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MellinComplex {
    pub re: f64,
    pub im: f64,
}

/// A value with its error estimate and the work spent on it (function
/// evaluations or series terms).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MellinEstimate {
    pub value: MellinComplex,
    pub error_estimate: f64,
    pub evaluations: u64,
}

/// A parsed expression.
pub struct MellinExpr {
    expr: Expr,
}

/// Quadrature and series settings. A NULL config means the defaults.
pub struct MellinConfig {
    quadrature: QuadratureConfig,
    series: SeriesConfig,
}

/// Result of a verification run.
pub struct MellinReport {
    report: Report,
    json: CString,
}

impl From<ComplexScalar> for MellinComplex {
    fn from(z: ComplexScalar) -> Self {
        MellinComplex { re: z.re, im: z.im }
    }
}

impl From<MellinComplex> for ComplexScalar {
    fn from(z: MellinComplex) -> Self {
        ComplexScalar::new(z.re, z.im)
    }
}

impl From<ValueWithError> for MellinEstimate {
    fn from(v: ValueWithError) -> Self {
        MellinEstimate {
            value: v.value.into(),
            error_estimate: v.error_estimate,
            evaluations: v.evaluations as u64,
        }
    }
}

struct LastError {
    message: CString,
    position: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

struct Failure {
    status: MellinStatus,
    message: String,
    position: Option<usize>,
    partial: Option<ValueWithError>,
}

impl Failure {
    fn new(status: MellinStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
            position: None,
            partial: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let position = match &e {
            Error::At { position, .. } => Some(*position),
            Error::Parse(p) => Some(p.position),
            _ => None,
        };
        let (status, partial) = match e.root() {
            Error::Pole(_) => (MellinStatus::Pole, None),
            Error::Domain(_) => (MellinStatus::Domain, None),
            Error::Overflow(_) => (MellinStatus::Overflow, None),
            Error::NonFiniteIntegrand { .. } | Error::NonFiniteTerm { .. } => (MellinStatus::NonFinite, None),
            Error::NoConvergence { partial, .. } => (MellinStatus::NoConvergence, Some(*partial)),
            Error::Parse(_) | Error::UnknownFunction(_) => (MellinStatus::Parse, None),
            Error::UnboundVariable(_) => (MellinStatus::UnboundVariable, None),
            Error::UnknownIdentity(_) => (MellinStatus::UnknownIdentity, None),
            Error::At { .. } => unreachable!("root strips positions"),
        };
        Failure {
            status,
            message: e.to_string(),
            position,
            partial,
        }
    }
}

type Outcome = Result<(), Failure>;

fn set_last_error(message: &str, position: Option<usize>) {
    let message = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    let position = position.map_or(-1, |p| p as i64);
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(LastError { message, position }));
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Outcome) -> MellinStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MellinStatus::Ok,
        Ok(Err(f)) => {
            set_last_error(&f.message, f.position);
            f.status
        }
        Err(panic) => {
            let what = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("internal error: {what}"), None);
            MellinStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::new(MellinStatus::NullPointer, format!("`{what}` is NULL"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn in_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(MellinStatus::InvalidUtf8, format!("`{what}` is not valid UTF-8")))
}

unsafe fn configs(cfg: *const MellinConfig) -> (QuadratureConfig, SeriesConfig) {
    match cfg.as_ref() {
        Some(c) => (c.quadrature, c.series),
        None => (QuadratureConfig::default(), SeriesConfig::default()),
    }
}

fn eval_at(expr: &Expr, var: &str, value: ComplexScalar) -> mellin_core::Result<ComplexScalar> {
    evaluate_with(expr, &|name| (name == var).then_some(value))
}

/// Writes an estimate, or the partial estimate of a non-converged run.
fn write_estimate(out: &mut MellinEstimate, r: mellin_core::Result<ValueWithError>) -> Outcome {
    match r {
        Ok(v) => {
            *out = v.into();
            Ok(())
        }
        Err(e) => {
            let f = Failure::from(e);
            if let Some(p) = f.partial {
                *out = p.into();
            }
            Err(f)
        }
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mellin_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static name of a status code, such as `"domain error"`.
#[no_mangle]
pub extern "C" fn mellin_status_name(status: MellinStatus) -> *const c_char {
    let name: &'static str = match status {
        MellinStatus::Ok => "ok\0",
        MellinStatus::NullPointer => "null pointer\0",
        MellinStatus::InvalidUtf8 => "invalid utf-8\0",
        MellinStatus::Parse => "parse error\0",
        MellinStatus::Domain => "domain error\0",
        MellinStatus::Pole => "pole\0",
        MellinStatus::Overflow => "overflow\0",
        MellinStatus::NonFinite => "non-finite value\0",
        MellinStatus::NoConvergence => "no convergence\0",
        MellinStatus::UnboundVariable => "unbound variable\0",
        MellinStatus::UnknownIdentity => "unknown identity\0",
        MellinStatus::Panic => "internal error\0",
    };
    name.as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mellin_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |e| e.message.as_ptr()))
}

/// Zero-based column of the last error in its expression, or −1.
#[no_mangle]
pub extern "C" fn mellin_last_error_position() -> i64 {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(-1, |e| e.position))
}

#[no_mangle]
pub extern "C" fn mellin_clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Writes the value computed by `f` to `out`.
unsafe fn special(out: *mut MellinComplex, f: impl FnOnce() -> mellin_core::Result<ComplexScalar>) -> MellinStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = f()?.into();
        Ok(())
    })
}

/// Γ(s).
///
/// # Safety
/// `out` must be NULL or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn mellin_gamma(s: MellinComplex, out: *mut MellinComplex) -> MellinStatus {
    special(out, || gamma(s.into()))
}

/// Principal log Γ(s), continuous off the negative real axis.
///
/// # Safety
/// `out` must be NULL or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn mellin_log_gamma(s: MellinComplex, out: *mut MellinComplex) -> MellinStatus {
    special(out, || log_gamma(s.into()))
}

/// Hurwitz zeta ζ(s, z).
///
/// # Safety
/// `out` must be NULL or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn mellin_hurwitz_zeta(s: MellinComplex, z: MellinComplex, out: *mut MellinComplex) -> MellinStatus {
    special(out, || hurwitz_zeta(s.into(), z.into(), &ZetaConfig::default()))
}

/// Alternating Hurwitz zeta η(s, z) = Σ (−1)ⁿ (n+z)^{−s}.
///
/// # Safety
/// `out` must be NULL or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn mellin_alt_hurwitz_eta(s: MellinComplex, z: MellinComplex, out: *mut MellinComplex) -> MellinStatus {
    special(out, || alt_hurwitz_eta(s.into(), z.into(), &ZetaConfig::default()))
}

/// Dirichlet L-function of the non-principal character mod 4.
///
/// # Safety
/// `out` must be NULL or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn mellin_euler_l(s: MellinComplex, out: *mut MellinComplex) -> MellinStatus {
    special(out, || euler_L(s.into(), &ZetaConfig::default()))
}

/// Bernoulli polynomial Bₙ(z).
///
/// # Safety
/// `out` must be NULL or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn mellin_bernoulli_poly(n: u32, z: MellinComplex, out: *mut MellinComplex) -> MellinStatus {
    special(out, || Ok(bernoulli_poly(n as usize, z.into())))
}

/// Euler polynomial Eₙ(z).
///
/// # Safety
/// `out` must be NULL or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn mellin_euler_poly(n: u32, z: MellinComplex, out: *mut MellinComplex) -> MellinStatus {
    special(out, || Ok(euler_poly(n as usize, z.into())))
}

/// Physicists' Hermite polynomial Hₙ(z).
///
/// # Safety
/// `out` must be NULL or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn mellin_hermite(n: u32, z: MellinComplex, out: *mut MellinComplex) -> MellinStatus {
    special(out, || Ok(hermite(n as usize, z.into())))
}

/// Exponential (Touchard) polynomial φₙ(z).
///
/// # Safety
/// `out` must be NULL or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn mellin_exp_poly(n: u32, z: MellinComplex, out: *mut MellinComplex) -> MellinStatus {
    special(out, || Ok(exp_poly(n as usize, z.into())))
}

/// A config holding the default settings. Never NULL.
#[no_mangle]
pub extern "C" fn mellin_config_new() -> *mut MellinConfig {
    Box::into_raw(Box::new(MellinConfig {
        quadrature: QuadratureConfig::default(),
        series: SeriesConfig::default(),
    }))
}

/// # Safety
/// `cfg` must be NULL or come from [`mellin_config_new`] and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn mellin_config_free(cfg: *mut MellinConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Sets the quadrature tolerances and the refinement limit.
///
/// # Safety
/// `cfg` must be NULL or a live config.
#[no_mangle]
pub unsafe extern "C" fn mellin_config_set_quadrature(
    cfg: *mut MellinConfig,
    rel_tol: f64,
    abs_tol: f64,
    max_refinements: u32,
) -> MellinStatus {
    guard(|| {
        let cfg = out_ref(cfg, "cfg")?;
        cfg.quadrature = QuadratureConfig::new(abs_tol, rel_tol, max_refinements)?;
        Ok(())
    })
}

/// Sets the series stopping tolerance and term limit.
///
/// # Safety
/// `cfg` must be NULL or a live config.
#[no_mangle]
pub unsafe extern "C" fn mellin_config_set_series(cfg: *mut MellinConfig, rel_tol: f64, max_terms: u64) -> MellinStatus {
    guard(|| {
        let cfg = out_ref(cfg, "cfg")?;
        let consecutive = cfg.series.consecutive_small;
        cfg.series = SeriesConfig::new(rel_tol, max_terms as usize, consecutive)?;
        Ok(())
    })
}

/// Parses `source` into a new expression handle.
///
/// # Safety
/// `source` must be NULL or a NUL-terminated string; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mellin_expr_parse(source: *const c_char, out: *mut *mut MellinExpr) -> MellinStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let expr = parse_str(c_str(source, "source")?).map_err(Error::from)?;
        *out = Box::into_raw(Box::new(MellinExpr { expr }));
        Ok(())
    })
}

/// # Safety
/// `expr` must be NULL or come from [`mellin_expr_parse`] and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn mellin_expr_free(expr: *mut MellinExpr) {
    if !expr.is_null() {
        drop(Box::from_raw(expr));
    }
}

/// Evaluates `expr` with `count` variables bound: `names[k]` takes the
/// value `values[k]`. `names` and `values` may be NULL when `count` is 0.
///
/// # Safety
/// `names` and `values` must point to `count` elements, each name a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn mellin_expr_eval(
    expr: *const MellinExpr,
    names: *const *const c_char,
    values: *const MellinComplex,
    count: usize,
    out: *mut MellinComplex,
) -> MellinStatus {
    guard(|| {
        let expr = in_ref(expr, "expr")?;
        let out = out_ref(out, "out")?;
        let mut bindings = Vec::with_capacity(count);
        if count > 0 {
            if names.is_null() {
                return Err(null("names"));
            }
            if values.is_null() {
                return Err(null("values"));
            }
            let names = std::slice::from_raw_parts(names, count);
            let values = std::slice::from_raw_parts(values, count);
            for (name, value) in names.iter().zip(values) {
                bindings.push((c_str(*name, "names[k]")?, ComplexScalar::from(*value)));
            }
        }
        let lookup = |name: &str| bindings.iter().find(|(n, _)| *n == name).map(|(_, v)| *v);
        *out = evaluate_with(&expr.expr, &lookup)?.into();
        Ok(())
    })
}

/// Mellin transform ∫₀^∞ x^{s−1} g(x) dx of an expression in `x`.
///
/// # Safety
/// Pointers must be NULL or valid; `cfg` may be NULL for defaults.
#[no_mangle]
pub unsafe extern "C" fn mellin_forward(
    g: *const MellinExpr,
    s: MellinComplex,
    cfg: *const MellinConfig,
    out: *mut MellinEstimate,
) -> MellinStatus {
    guard(|| {
        let g = in_ref(g, "g")?;
        let out = out_ref(out, "out")?;
        let (quad, _) = configs(cfg);
        let r = mellin::mellin_forward(|x| eval_at(&g.expr, "x", ComplexScalar::new(x, 0.0)), s.into(), &quad);
        write_estimate(out, r)
    })
}

/// Inverse transform of an expression in `s` along Re s = `a`, at `x > 0`.
///
/// A positive `height` truncates the line at ±height with no tail bound.
/// Otherwise G is assumed to be dominated by Γ and the height is chosen so
/// that the discarded tail stays below 1e-12.
///
/// # Safety
/// Pointers must be NULL or valid; `cfg` may be NULL for defaults.
#[no_mangle]
pub unsafe extern "C" fn mellin_inverse(
    big_g: *const MellinExpr,
    x: f64,
    a: f64,
    height: f64,
    cfg: *const MellinConfig,
    out: *mut MellinEstimate,
) -> MellinStatus {
    guard(|| {
        let big_g = in_ref(big_g, "big_g")?;
        let out = out_ref(out, "out")?;
        let (quad, _) = configs(cfg);
        let f = |s| eval_at(&big_g.expr, "s", s);
        let line = if height > 0.0 {
            VerticalLine::new(a, height, TailModel::Unknown)?
        } else {
            VerticalLine::fit_gamma_ratio(f, a, DEFAULT_TAIL_TOL)?
        };
        write_estimate(out, mellin::mellin_inverse(f, x, &line, &quad))
    })
}

/// Σ ((−1)ⁿ/n!)·f(−n)·xⁿ for an expression `f` in `s`.
///
/// # Safety
/// Pointers must be NULL or valid; `cfg` may be NULL for defaults.
#[no_mangle]
pub unsafe extern "C" fn mellin_residue_sum(
    f: *const MellinExpr,
    x: f64,
    cfg: *const MellinConfig,
    out: *mut MellinEstimate,
) -> MellinStatus {
    guard(|| {
        let f = in_ref(f, "f")?;
        let out = out_ref(out, "out")?;
        let (_, series) = configs(cfg);
        write_estimate(out, residue_series(|s| eval_at(&f.expr, "s", s), x, &series))
    })
}

/// Residual |∫x^{s−1}Σ(−x)ⁿf(n)/n! dx − Γ(s)f(−s)| for an expression `f`
/// in `s`, at 0 < Re s < 1.
///
/// # Safety
/// Pointers must be NULL or valid; `cfg` may be NULL for defaults.
#[no_mangle]
pub unsafe extern "C" fn mellin_master_check(
    f: *const MellinExpr,
    s: MellinComplex,
    cfg: *const MellinConfig,
    residual: *mut f64,
) -> MellinStatus {
    guard(|| {
        let f = in_ref(f, "f")?;
        let residual = out_ref(residual, "residual")?;
        let (quad, series) = configs(cfg);
        *residual = master_theorem_check(|u| eval_at(&f.expr, "s", u), s.into(), &quad, &series)?;
        Ok(())
    })
}

/// Checks `samples` random instances of the identity `id` (a family id such
/// as `"I2"` selects all its members), or of every identity when `id` is
/// NULL.
///
/// # Safety
/// `id` must be NULL or a NUL-terminated string; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mellin_verify(
    id: *const c_char,
    samples: usize,
    seed: u64,
    out: *mut *mut MellinReport,
) -> MellinStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let report = if id.is_null() {
            harness::run_all(samples, seed, None)
        } else {
            harness::run_identity(c_str(id, "id")?, samples, seed, None)?
        };
        let json = CString::new(report.to_json()).expect("JSON has no NUL bytes");
        *out = Box::into_raw(Box::new(MellinReport { report, json }));
        Ok(())
    })
}

/// Number of passing and failing samples. Either out pointer may be NULL.
///
/// # Safety
/// `report` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn mellin_report_counts(
    report: *const MellinReport,
    n_pass: *mut u64,
    n_fail: *mut u64,
) -> MellinStatus {
    guard(|| {
        let report = &in_ref(report, "report")?.report;
        if let Some(p) = n_pass.as_mut() {
            *p = report.n_pass as u64;
        }
        if let Some(f) = n_fail.as_mut() {
            *f = report.n_fail as u64;
        }
        Ok(())
    })
}

/// The report as JSON, owned by the report; NULL if `report` is NULL.
///
/// # Safety
/// `report` must be NULL or a live report.
#[no_mangle]
pub unsafe extern "C" fn mellin_report_json(report: *const MellinReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `report` must be NULL or come from [`mellin_verify`] and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn mellin_report_free(report: *mut MellinReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
