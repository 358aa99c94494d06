use std::sync::OnceLock;

use super::{binomial, PolynomialCoeffs};
use crate::numerics::ComplexScalar;
use crate::trace;

const CACHED: usize = 64;

/// B₀…B_N with B₁ = −½ (so that Bₙ = Bₙ(0)).
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<f64>,
}

impl BernoulliTable {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, n: usize) -> f64 {
        self.values[n]
    }
}

fn compute(n_max: usize) -> Vec<f64> {
    // Tangent numbers by the all-positive recurrence of Brent and Harvey,
    // then B_{2k} = (−1)^{k−1}·2k·T_k / (4^k(4^k − 1)).
    let m = n_max / 2;
    let mut t = vec![0.0f64; m + 1];
    if m >= 1 {
        t[1] = 1.0;
    }
    for k in 2..=m {
        t[k] = (k - 1) as f64 * t[k - 1];
    }
    for k in 2..=m {
        for j in k..=m {
            t[j] = (j - k) as f64 * t[j - 1] + (j - k + 2) as f64 * t[j];
        }
    }
    let mut b = vec![0.0; n_max + 1];
    b[0] = 1.0;
    if n_max >= 1 {
        b[1] = -0.5;
    }
    for k in 1..=m {
        let four_k = 4f64.powi(k as i32);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        b[2 * k] = sign * (2 * k) as f64 * t[k] / (four_k * (four_k - 1.0));
    }
    b
}

fn cached() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| compute(CACHED))
}

pub fn bernoulli_numbers(n: usize) -> BernoulliTable {
    trace::record("bernoulli_numbers");
    let values = if n <= CACHED {
        cached()[..=n].to_vec()
    } else {
        compute(n)
    };
    BernoulliTable { values }
}

/// Bₙ(z) = Σ_k C(n,k) B_k z^{n−k}.
pub fn bernoulli_poly(n: usize, z: ComplexScalar) -> ComplexScalar {
    trace::record("bernoulli_poly");
    bernoulli_poly_coeffs(n).eval(z)
}

pub fn bernoulli_poly_coeffs(n: usize) -> PolynomialCoeffs {
    trace::record("bernoulli_poly_coeffs");
    let b = bernoulli_numbers(n);
    // coefficient of z^j is C(n, j)·B_{n−j}
    PolynomialCoeffs::new((0..=n).map(|j| binomial(n, j) * b.get(n - j)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_numbers() {
        let t = bernoulli_numbers(1);
        assert_eq!(t.values(), &[1.0, -0.5]);
        let t = bernoulli_numbers(30);
        assert!((t.get(2) - 1.0 / 6.0).abs() < 1e-16);
        assert_eq!(t.get(3), 0.0);
        for k in 1..15 {
            assert_eq!(t.get(2 * k + 1), 0.0);
        }
    }

    #[test]
    fn against_exact_fractions() {
        // B_{2k} as exact rationals.
        let exact = [
            (4, -1.0 / 30.0),
            (10, 5.0 / 66.0),
            (12, -691.0 / 2730.0),
            (20, -174_611.0 / 330.0),
            (30, 8_615_841_276_005.0 / 14_322.0),
        ];
        let t = bernoulli_numbers(64);
        for (n, want) in exact {
            assert!((t.get(n) / want - 1.0).abs() < 1e-13, "B_{n}");
        }
        assert_eq!(bernoulli_numbers(70).get(30), t.get(30));
    }

    #[test]
    fn polynomial_examples() {
        let z = ComplexScalar::new(0.37, -1.2);
        assert_eq!(bernoulli_poly(0, z), ComplexScalar::new(1.0, 0.0));
        assert!((bernoulli_poly(1, z) - (z - 0.5)).norm() < 1e-15);
        assert!((bernoulli_poly(2, ComplexScalar::default()).re - 1.0 / 6.0).abs() < 1e-16);
        // B₂(z) = z² − z + 1/6
        assert!((bernoulli_poly(2, z) - (z * z - z + 1.0 / 6.0)).norm() < 1e-15);
        assert_eq!(bernoulli_poly_coeffs(3).degree(), 3);
    }
}
