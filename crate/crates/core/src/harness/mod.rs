//! Registry of identities with seeded parameter sampling and reports.
//!
//! Each identity has two evaluators that compute the same quantity by
//! different routes. A run draws parameter tuples from a 64-bit LCG,
//! evaluates both sides (concurrently across samples) and returns a
//! report sorted by identity and parameters, so the output does not depend
//! on scheduling.

mod registry;
mod report;
mod rng;

pub use registry::list_identities;
pub use report::{CheckResult, Report};
pub use rng::Lcg;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::ComplexScalar;
use crate::trace;

/// Named parameter values of one sample. Integer parameters are stored as
/// whole numbers.
pub type Params = BTreeMap<String, f64>;

pub type Evaluator = fn(&Params) -> Result<ComplexScalar>;

/// Domain of a single parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamRange {
    /// Integers lo..=hi.
    Int { lo: i64, hi: i64 },
    /// Reals in [lo, hi).
    Real { lo: f64, hi: f64 },
    /// Reals in (lo, hi].
    RealOpenLow { lo: f64, hi: f64 },
    /// One of the listed values.
    Choice(&'static [f64]),
}

impl ParamRange {
    pub fn sample(&self, rng: &mut Lcg) -> f64 {
        let u = rng.uniform();
        match *self {
            ParamRange::Int { lo, hi } => {
                let width = (hi - lo + 1) as f64;
                (lo + ((u * width) as i64).min(hi - lo)) as f64
            }
            ParamRange::Real { lo, hi } => lo + u * (hi - lo),
            ParamRange::RealOpenLow { lo, hi } => hi - u * (hi - lo),
            ParamRange::Choice(values) => values[((u * values.len() as f64) as usize).min(values.len() - 1)],
        }
    }
}

pub struct IdentitySpec {
    pub id: &'static str,
    pub description: &'static str,
    pub domain: Vec<(&'static str, ParamRange)>,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
    pub tol_abs: f64,
    pub tol_rel: f64,
}

impl std::fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("id", &self.id)
            .field("description", &self.description)
            .field("domain", &self.domain)
            .field("tol_abs", &self.tol_abs)
            .field("tol_rel", &self.tol_rel)
            .finish_non_exhaustive()
    }
}

impl IdentitySpec {
    pub fn draw(&self, rng: &mut Lcg) -> Params {
        self.domain
            .iter()
            .map(|(name, range)| (name.to_string(), range.sample(rng)))
            .collect()
    }

    /// Evaluates both sides at `params`.
    pub fn check(&self, params: Params, tol: Tolerance) -> CheckResult {
        let eval = |f: Evaluator| match catch_unwind(AssertUnwindSafe(|| f(&params))) {
            Ok(r) => r,
            Err(_) => Err(Error::domain("evaluator panicked")),
        };
        match (eval(self.lhs), eval(self.rhs)) {
            (Ok(lhs), Ok(rhs)) => CheckResult::compare(self.id, params, lhs, rhs, tol),
            (Err(e), _) => CheckResult::failed(self.id, params, format!("lhs: {e}")),
            (_, Err(e)) => CheckResult::failed(self.id, params, format!("rhs: {e}")),
        }
    }

    /// Non-core operations reached by both sides at `params`. Empty for a
    /// non-circular identity.
    pub fn shared_ops(&self, params: &Params) -> BTreeSet<&'static str> {
        let (_, left) = trace::collect(|| (self.lhs)(params));
        let (_, right) = trace::collect(|| (self.rhs)(params));
        left.intersection(&right)
            .filter(|op| !trace::CORE_OPS.contains(op))
            .copied()
            .collect()
    }

    pub fn tolerance(&self, over: Option<ToleranceOverride>) -> Tolerance {
        let over = over.unwrap_or_default();
        Tolerance {
            abs: over.abs.unwrap_or(self.tol_abs),
            rel: over.rel.unwrap_or(self.tol_rel),
        }
    }
}

/// Acceptance thresholds. A zero threshold disables that criterion, so a
/// zero override rejects every sample, including exact agreement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn accepts(&self, abs_err: f64, rel_err: f64) -> bool {
        (self.abs > 0.0 && abs_err <= self.abs) || (self.rel > 0.0 && rel_err <= self.rel)
    }
}

/// Replaces either registry tolerance for a run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ToleranceOverride {
    pub abs: Option<f64>,
    pub rel: Option<f64>,
}

impl ToleranceOverride {
    pub fn both(value: f64) -> Self {
        ToleranceOverride {
            abs: Some(value),
            rel: Some(value),
        }
    }
}

pub(crate) fn get(p: &Params, name: &str) -> Result<f64> {
    p.get(name)
        .copied()
        .ok_or_else(|| Error::domain(format!("missing parameter `{name}`")))
}

pub fn find_identity(id: &str) -> Result<&'static IdentitySpec> {
    list_identities()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// The identity `id`, or every sub-identity of a family (`I2` selects
/// `I2a`, `I2b` and `I2c`).
pub fn select_identities(id: &str) -> Result<Vec<&'static IdentitySpec>> {
    if let Ok(spec) = find_identity(id) {
        return Ok(vec![spec]);
    }
    let family: Vec<_> = list_identities()
        .iter()
        .filter(|s| {
            s.id.strip_prefix(id)
                .is_some_and(|rest| rest.len() == 1 && rest.chars().all(|c| c.is_ascii_lowercase()))
        })
        .collect();
    if family.is_empty() {
        return Err(Error::UnknownIdentity(id.to_string()));
    }
    Ok(family)
}

/// Checks `n_samples` seeded draws of identity `id` (or of each member of
/// the family `id`).
pub fn run_identity(id: &str, n_samples: usize, seed: u64, tol_override: Option<ToleranceOverride>) -> Result<Report> {
    Ok(run_selected(select_identities(id)?, n_samples, seed, tol_override))
}

/// Checks every identity in the registry.
pub fn run_all(n_samples: usize, seed: u64, tol_override: Option<ToleranceOverride>) -> Report {
    run_specs(list_identities(), n_samples, seed, tol_override)
}

/// Checks `n_samples` draws of each spec. Every spec samples from its own
/// generator seeded with `seed`.
pub fn run_specs(specs: &[IdentitySpec], n_samples: usize, seed: u64, tol_override: Option<ToleranceOverride>) -> Report {
    run_selected(specs.iter().collect(), n_samples, seed, tol_override)
}

fn run_selected(specs: Vec<&IdentitySpec>, n_samples: usize, seed: u64, tol_override: Option<ToleranceOverride>) -> Report {
    let jobs: Vec<(&IdentitySpec, Params)> = specs
        .into_iter()
        .flat_map(|spec| {
            let mut rng = Lcg::new(seed);
            (0..n_samples).map(move |_| (spec, spec.draw(&mut rng)))
        })
        .collect();
    let mut results: Vec<CheckResult> = jobs
        .into_par_iter()
        .map(|(spec, params)| spec.check(params, spec.tolerance(tol_override)))
        .collect();
    results.sort_by(canonical_order);
    Report::new(seed, results)
}

fn canonical_order(a: &CheckResult, b: &CheckResult) -> Ordering {
    a.id.cmp(&b.id).then_with(|| {
        let mut ia = a.params.iter();
        let mut ib = b.params.iter();
        loop {
            match (ia.next(), ib.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ka, va)), Some((kb, vb))) => {
                    let o = ka.cmp(kb).then(va.total_cmp(vb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    })
}
