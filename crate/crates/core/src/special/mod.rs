//! Evaluators for the special functions and polynomial families that
//! appear in the identities.
//!
//! Each family is computed by a route that does not pass through the
//! identity it is later checked against: Hurwitz zeta by Euler–Maclaurin
//! with its own coefficient table, Bernoulli numbers by their recurrence,
//! Euler numbers by inverting cosh, exponential polynomials through the
//! Stirling triangle, Hermite and parabolic cylinder functions by their
//! three-term recurrences.

mod bernoulli;
mod euler;
mod hermite;
mod touchard;
mod zeta;

pub use bernoulli::{bernoulli_numbers, bernoulli_poly, bernoulli_poly_coeffs, BernoulliTable};
pub use euler::{euler_numbers, euler_poly, euler_poly_coeffs, EulerNumberTable};
pub use hermite::{hermite, parabolic_cylinder_int, parabolic_cylinder_neg};
pub use touchard::{exp_poly, exp_poly_coeffs, exp_poly_dobinski, stirling2_row};
pub use zeta::{alt_hurwitz_eta, euler_L, hurwitz_zeta, hurwitz_zeta_neg_int, ZetaConfig};

use crate::numerics::ComplexScalar;

/// Real polynomial coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCoeffs {
    coeffs: Vec<f64>,
}

impl PolynomialCoeffs {
    /// Trailing zero coefficients are dropped so that the leading
    /// coefficient is nonzero (the zero polynomial keeps a single 0).
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        PolynomialCoeffs { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: ComplexScalar) -> ComplexScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexScalar::default(), |acc, c| acc * z + *c)
    }
}

/// Binomial coefficient as f64 (exact while it fits in 53 bits).
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc.round()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(21, 10), 352_716.0);
        assert_eq!(binomial(3, 4), 0.0);
        assert_eq!(binomial(40, 20), 137_846_528_820.0);
    }

    #[test]
    fn polynomial_trims_and_evaluates() {
        let p = PolynomialCoeffs::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.eval(ComplexScalar::new(3.0, 0.0)).re, 7.0);
        assert_eq!(PolynomialCoeffs::new(vec![]).coeffs(), &[0.0]);
    }
}
