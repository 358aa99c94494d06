use std::sync::OnceLock;

use super::{binomial, PolynomialCoeffs};
use crate::numerics::ComplexScalar;
use crate::trace;

const CACHED: usize = 64;

/// Euler numbers E₀…E_N, the Taylor coefficients of 1/cosh x (times n!).
#[derive(Debug, Clone, PartialEq)]
pub struct EulerNumberTable {
    values: Vec<f64>,
}

impl EulerNumberTable {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, n: usize) -> f64 {
        self.values[n]
    }
}

fn compute(n_max: usize) -> Vec<f64> {
    // cosh x · Σ Eₙ xⁿ/n! = 1  ⇒  Σ_j C(n, 2j) E_{n−2j} = [n = 0]
    let mut e = vec![0.0; n_max + 1];
    e[0] = 1.0;
    for n in (2..=n_max).step_by(2) {
        e[n] = -(1..=n / 2).map(|j| binomial(n, 2 * j) * e[n - 2 * j]).sum::<f64>();
    }
    e
}

fn cached() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| compute(CACHED))
}

pub fn euler_numbers(n: usize) -> EulerNumberTable {
    trace::record("euler_numbers");
    let values = if n <= CACHED {
        cached()[..=n].to_vec()
    } else {
        compute(n)
    };
    EulerNumberTable { values }
}

/// Eₙ(z) = Σ_k C(n,k) (E_k / 2^k) (z − ½)^{n−k}.
pub fn euler_poly(n: usize, z: ComplexScalar) -> ComplexScalar {
    trace::record("euler_poly");
    let e = euler_numbers(n);
    let w = z - 0.5;
    // Horner in w over descending powers.
    let mut acc = ComplexScalar::default();
    for j in (0..=n).rev() {
        // coefficient of w^j comes from k = n − j
        let k = n - j;
        acc = acc * w + binomial(n, k) * e.get(k) / 2f64.powi(k as i32);
    }
    acc
}

pub fn euler_poly_coeffs(n: usize) -> PolynomialCoeffs {
    trace::record("euler_poly_coeffs");
    let e = euler_numbers(n);
    let mut coeffs = vec![0.0; n + 1];
    for k in 0..=n {
        let c = binomial(n, k) * e.get(k) / 2f64.powi(k as i32);
        if c == 0.0 {
            continue;
        }
        // expand (z − ½)^{m}
        let m = n - k;
        for (i, coeff) in coeffs.iter_mut().enumerate().take(m + 1) {
            *coeff += c * binomial(m, i) * (-0.5f64).powi((m - i) as i32);
        }
    }
    PolynomialCoeffs::new(coeffs)
}
