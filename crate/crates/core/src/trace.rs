//! Per-thread record of which public operations ran.
//!
//! The identity harness uses this to audit that the two sides of every
//! identity are computed by disjoint routes. Recording is off unless a
//! [`collect`] call is active on the current thread.

use std::cell::RefCell;
use std::collections::BTreeSet;

thread_local! {
    static CALLS: RefCell<Option<BTreeSet<&'static str>>> = const { RefCell::new(None) };
}

/// Operations that every route may share.
pub const CORE_OPS: &[&str] = &[
    "gamma",
    "log_gamma",
    "gamma_residue",
    "gamma_line_bound",
    "pochhammer",
    "integrate_finite",
    "integrate_halfline",
    "sum_series",
];

#[inline]
pub(crate) fn record(op: &'static str) {
    CALLS.with(|c| {
        if let Some(set) = c.borrow_mut().as_mut() {
            set.insert(op);
        }
    });
}

/// Runs `f` and returns its output together with the set of traced
/// operations it reached (on this thread).
pub fn collect<T>(f: impl FnOnce() -> T) -> (T, BTreeSet<&'static str>) {
    let previous = CALLS.with(|c| c.borrow_mut().replace(BTreeSet::new()));
    let out = f();
    let set = CALLS.with(|c| {
        let mut slot = c.borrow_mut();
        let got = slot.take().unwrap_or_default();
        *slot = previous;
        got
    });
    (out, set)
}
