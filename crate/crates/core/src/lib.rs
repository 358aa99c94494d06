//! Numerical toolkit for Mellin transforms, their inverses along vertical
//! lines, residue sums over the poles of Γ, and a harness that checks a
//! catalogue of identities between special functions.

#![allow(clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod expr;
pub mod harness;
pub mod mellin;
pub mod numerics;
pub mod special;
pub mod trace;

pub use error::{Error, Result};
pub use numerics::{ComplexScalar, QuadratureConfig, SeriesConfig, ValueWithError};

/// Formats like C's `%.17g`: 17 significant digits, enough to round-trip
/// binary64, positional for exponents in −5..17 and trailing zeros trimmed.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let digits = (16 - exp) as usize;
        trim_fraction(&format!("{x:.digits$}")).to_string()
    } else {
        format!("{}e{exp}", trim_fraction(mantissa))
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
