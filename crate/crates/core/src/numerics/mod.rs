//! Complex scalars, the Gamma function, and the quadrature and series
//! engines the rest of the crate builds on.

mod gamma;
mod quadrature;
mod series;

pub use gamma::{
    gamma, gamma_line_bound, gamma_residue, log_gamma, pochhammer, sin_pi, POLE_GUARD,
};
pub use quadrature::{integrate_finite, integrate_finite_with_breaks, integrate_halfline};
pub use series::sum_series;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The universal value type for s, G(s), f(s) and series sums.
pub type ComplexScalar = Complex64;

pub(crate) fn ensure_finite(z: ComplexScalar, what: &str) -> Result<ComplexScalar> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::domain(format!("non-finite {what}: {z}")))
    }
}

pub(crate) fn is_finite(z: ComplexScalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_refinements: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            max_refinements: 12,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_refinements: u32) -> Result<Self> {
        let cfg = QuadratureConfig {
            abs_tol,
            rel_tol,
            max_refinements,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let ok = self.abs_tol >= 0.0
            && self.rel_tol >= 0.0
            && (self.abs_tol > 0.0 || self.rel_tol > 0.0)
            && self.max_refinements > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid quadrature config {self:?}")))
        }
    }

    pub(crate) fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub consecutive_small: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            rel_tol: 1e-12,
            max_terms: 10_000,
            consecutive_small: 2,
        }
    }
}

impl SeriesConfig {
    pub fn new(rel_tol: f64, max_terms: usize, consecutive_small: usize) -> Result<Self> {
        let cfg = SeriesConfig {
            rel_tol,
            max_terms,
            consecutive_small,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.rel_tol > 0.0 && self.consecutive_small > 0 && self.max_terms >= self.consecutive_small {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid series config {self:?}")))
        }
    }
}

/// A numerical result together with an error estimate and the number of
/// function evaluations (or series terms) spent on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueWithError {
    pub value: ComplexScalar,
    pub error_estimate: f64,
    pub evaluations: usize,
}
