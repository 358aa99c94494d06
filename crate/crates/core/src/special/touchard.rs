use super::PolynomialCoeffs;
use crate::error::{Error, Result};
use crate::numerics::{sum_series, ComplexScalar, SeriesConfig};
use crate::trace;

/// Row n of the Stirling-subset triangle, S(n, 0..=n).
pub fn stirling2_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for m in 1..=n {
        let mut next = vec![0.0; m + 1];
        for k in 1..=m {
            let carry = if k < m { k as f64 * row[k] } else { 0.0 };
            next[k] = carry + row[k - 1];
        }
        row = next;
    }
    row
}

/// Exponential (Touchard) polynomial φₙ(z) = Σ_k S(n,k) z^k.
pub fn exp_poly(n: usize, z: ComplexScalar) -> ComplexScalar {
    trace::record("exp_poly");
    exp_poly_coeffs(n).eval(z)
}

pub fn exp_poly_coeffs(n: usize) -> PolynomialCoeffs {
    trace::record("exp_poly_coeffs");
    PolynomialCoeffs::new(stirling2_row(n))
}

/// e^{−z} Σ_{k≥0} k^λ z^k / k!, for real λ ≥ 0 and z > 0.
///
/// The k = 0 term uses 0⁰ = 1 and 0^λ = 0 for λ > 0. For integer λ this
/// is φ_λ(z); for other λ it is the natural extension of the family.
pub fn exp_poly_dobinski(lambda: f64, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    trace::record("exp_poly_dobinski");
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::domain(format!("exp_poly_dobinski requires lambda >= 0, got {lambda}")));
    }
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::domain(format!("exp_poly_dobinski requires z > 0, got {z}")));
    }
    let ln_z = z.ln();
    let mut ln_factorial = 0.0;
    let sum = sum_series(
        |k| {
            let t = if k == 0 {
                if lambda == 0.0 {
                    (-z).exp()
                } else {
                    0.0
                }
            } else {
                let kf = k as f64;
                ln_factorial += kf.ln();
                (lambda * kf.ln() + kf * ln_z - ln_factorial - z).exp()
            };
            Ok(ComplexScalar::new(t, 0.0))
        },
        cfg,
    )?;
    Ok(sum.value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> ComplexScalar {
        ComplexScalar::new(1.0, 0.0)
    }

    /// Bell numbers from the Bell triangle (Aitken's array).
    fn bell_triangle(n_max: usize) -> Vec<f64> {
        let mut bells = vec![1.0];
        let mut row = vec![1.0];
        for _ in 0..n_max {
            let mut next = vec![*row.last().unwrap()];
            for v in &row {
                let last = *next.last().unwrap();
                next.push(last + v);
            }
            bells.push(next[0]);
            row = next;
        }
        bells
    }

    #[test]
    fn stirling_rows() {
        assert_eq!(stirling2_row(0), vec![1.0]);
        assert_eq!(stirling2_row(2), vec![0.0, 1.0, 1.0]);
        assert_eq!(stirling2_row(4), vec![0.0, 1.0, 7.0, 6.0, 1.0]);
    }

    #[test]
    fn bell_numbers_from_stirling() {
        let oracle = bell_triangle(20);
        assert_eq!(&oracle[..8], &[1.0, 1.0, 2.0, 5.0, 15.0, 52.0, 203.0, 877.0]);
        for (n, b) in oracle.iter().enumerate() {
            assert_eq!(exp_poly(n, one()).re, *b, "n = {n}");
        }
        assert_eq!(exp_poly(0, ComplexScalar::new(3.0, 1.0)), one());
        assert_eq!(exp_poly(2, one()).re, 2.0);
        assert_eq!(exp_poly(4, one()).re, 15.0);
    }

    #[test]
    fn dobinski_examples() {
        let cfg = SeriesConfig::default();
        assert!((exp_poly_dobinski(0.0, 1.0, &cfg).unwrap() - 1.0).abs() < 1e-14);
        assert!((exp_poly_dobinski(3.0, 1.0, &cfg).unwrap() - 5.0).abs() < 1e-13);
        assert!((exp_poly_dobinski(1.0, 2.0, &cfg).unwrap() - 2.0).abs() < 1e-13);
        // φ_{1/2}(z) lies between φ_0 = 1 and φ_1 = z for z > 1 by log-convexity in λ
        let half = exp_poly_dobinski(0.5, 3.0, &cfg).unwrap();
        assert!(half > 1.0 && half < 3.0);
    }

    #[test]
    fn dobinski_domain() {
        let cfg = SeriesConfig::default();
        assert!(exp_poly_dobinski(-1.0, 1.0, &cfg).is_err());
        assert!(exp_poly_dobinski(1.0, 0.0, &cfg).is_err());
        assert!(exp_poly_dobinski(f64::NAN, 1.0, &cfg).is_err());
    }
}
