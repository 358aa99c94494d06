use super::{is_finite, ComplexScalar, SeriesConfig, ValueWithError};
use crate::error::{Error, Result};
use crate::trace;

/// Sums `term(0) + term(1) + …`.
///
/// Stops once `consecutive_small` successive terms each satisfy
/// `|term| ≤ rel_tol·|partial sum|` (or `|term| ≤ rel_tol` while the partial
/// sum is zero). Hitting `max_terms` first yields [`Error::NoConvergence`]
/// carrying the partial sum.
pub fn sum_series<F>(mut term: F, cfg: &SeriesConfig) -> Result<ValueWithError>
where
    F: FnMut(usize) -> Result<ComplexScalar>,
{
    trace::record("sum_series");
    cfg.validate()?;
    let mut sum = ComplexScalar::default();
    let mut abs_sum = 0.0;
    let mut small_run = 0;
    let mut recent = 0.0;
    for n in 0..cfg.max_terms {
        let t = term(n)?;
        if !is_finite(t) {
            return Err(Error::NonFiniteTerm { index: n });
        }
        sum += t;
        abs_sum += t.norm();
        let bound = if sum.norm() == 0.0 {
            cfg.rel_tol
        } else {
            cfg.rel_tol * sum.norm()
        };
        if t.norm() <= bound {
            small_run += 1;
            recent += t.norm();
            if small_run >= cfg.consecutive_small {
                return Ok(ValueWithError {
                    value: sum,
                    error_estimate: recent + f64::EPSILON * abs_sum,
                    evaluations: n + 1,
                });
            }
        } else {
            small_run = 0;
            recent = 0.0;
        }
    }
    Err(Error::NoConvergence {
        evaluations: cfg.max_terms,
        partial: ValueWithError {
            value: sum,
            error_estimate: f64::INFINITY,
            evaluations: cfg.max_terms,
        },
    })
}
