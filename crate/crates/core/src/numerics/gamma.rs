use std::f64::consts::PI;

use super::{ensure_finite, is_finite, ComplexScalar};
use crate::error::{Error, Result};
use crate::trace;

/// Distance from a nonpositive integer below which Gamma reports a pole.
pub const POLE_GUARD: f64 = 1e-9;

// Lanczos approximation, g = 607/128 with 15 coefficients (Godfrey's set):
//   Γ(z+1) = √(2π) (z+g+½)^(z+½) e^-(z+g+½) [c0 + Σ c_k/(z+k)]
// Relative error stays near 1e-15 on Re z ≥ -½.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

fn sinpi_real(x: f64) -> f64 {
    let mut r = x - 2.0 * (x / 2.0).round();
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

fn cospi_real(x: f64) -> f64 {
    let r = (x - 2.0 * (x / 2.0).round()).abs();
    (PI * (0.5 - r)).sin()
}

/// sin(πs) with argument reduction on the real part, so that the zeros at
/// the integers are reproduced without cancellation.
pub fn sin_pi(s: ComplexScalar) -> ComplexScalar {
    let (x, y) = (s.re, s.im);
    ComplexScalar::new(
        sinpi_real(x) * (PI * y).cosh(),
        cospi_real(x) * (PI * y).sinh(),
    )
}

/// log sin(πs), staying finite when |Im s| is large.
fn log_sin_pi(s: ComplexScalar) -> ComplexScalar {
    let y = s.im;
    if y.abs() < 20.0 {
        return sin_pi(s).ln();
    }
    // sin(πs) = ±e^{∓iπs}(1 − e^{±2πis}) / (2i); the exponential factor dominates.
    let i = ComplexScalar::i();
    let ln2i = ComplexScalar::new(std::f64::consts::LN_2, PI / 2.0);
    if y > 0.0 {
        let small = (2.0 * PI * i * s).exp();
        PI * i - i * PI * s - ln2i + (ComplexScalar::new(1.0, 0.0) - small).ln()
    } else {
        let small = (-2.0 * PI * i * s).exp();
        i * PI * s - ln2i + (ComplexScalar::new(1.0, 0.0) - small).ln()
    }
}

fn check_argument(s: ComplexScalar) -> Result<()> {
    ensure_finite(s, "gamma argument")?;
    if s.re < 0.5 {
        let n = (-s.re).round();
        if n >= 0.0 && (s + n).norm() < POLE_GUARD {
            return Err(Error::Pole(s));
        }
    }
    Ok(())
}

/// Lanczos log-gamma, valid for Re s ≥ ½.
fn lanczos_log(s: ComplexScalar) -> ComplexScalar {
    let z = s - 1.0;
    let mut acc = ComplexScalar::new(LANCZOS_COEFFS[0], 0.0);
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Lanczos Γ(s) for real s ≥ ½, without the logarithm. The power is split
/// in two so that it stays finite up to the overflow of Γ itself.
fn lanczos_real(s: f64) -> f64 {
    let z = s - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * acc
}

// (n − 1)! is exact in binary64 up to n = 23.
const EXACT_FACTORIAL_MAX: f64 = 23.0;

fn gamma_real(x: f64) -> f64 {
    if x >= 0.5 {
        if x.fract() == 0.0 && x <= EXACT_FACTORIAL_MAX {
            return (2..x as u64).map(|k| k as f64).product();
        }
        lanczos_real(x)
    } else {
        PI / (sinpi_real(x) * lanczos_real(1.0 - x))
    }
}

/// Γ(s) for complex s.
///
/// Lanczos approximation on Re s ≥ ½ (exact factorials at small positive
/// integers, no logarithm elsewhere on the real axis), reflection formula
/// Γ(s)Γ(1−s) = π / sin(πs) elsewhere. Points within [`POLE_GUARD`] of a
/// nonpositive integer are rejected with [`Error::Pole`].
pub fn gamma(s: ComplexScalar) -> Result<ComplexScalar> {
    trace::record("gamma");
    check_argument(s)?;
    let value = if s.im == 0.0 {
        ComplexScalar::new(gamma_real(s.re), 0.0)
    } else if s.re >= 0.5 {
        lanczos_log(s).exp()
    } else {
        let one_minus = ComplexScalar::new(1.0, 0.0) - s;
        PI / (sin_pi(s) * lanczos_log(one_minus).exp())
    };
    if is_finite(value) {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("gamma({s})")))
    }
}

/// log Γ(s).
///
/// On Re s ≥ ½ this is the branch that is real on the positive axis and
/// continuous in s. Below that, the reflection formula fixes the imaginary
/// part only modulo 2π; `exp(log_gamma(s))` always equals Γ(s).
pub fn log_gamma(s: ComplexScalar) -> Result<ComplexScalar> {
    trace::record("log_gamma");
    check_argument(s)?;
    if s.re >= 0.5 {
        Ok(lanczos_log(s))
    } else {
        let one_minus = ComplexScalar::new(1.0, 0.0) - s;
        Ok(PI.ln() - log_sin_pi(s) - lanczos_log(one_minus))
    }
}

/// Res(Γ, −n) = (−1)ⁿ / n!.
pub fn gamma_residue(n: usize) -> f64 {
    trace::record("gamma_residue");
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    if n <= 170 {
        // n! is exact in binary64 up to 22!, so the quotient is correctly rounded there.
        let factorial: f64 = (2..=n).map(|k| k as f64).product();
        sign / factorial
    } else {
        sign * (-lanczos_log(ComplexScalar::new(n as f64 + 1.0, 0.0)).re).exp()
    }
}

/// The vertical-line decay envelope √(2π)|t|^{a−½} e^{−π|t|/2} of |Γ(a+it)|.
pub fn gamma_line_bound(a: f64, t: f64) -> Result<f64> {
    trace::record("gamma_line_bound");
    if t == 0.0 || !t.is_finite() || !a.is_finite() {
        return Err(Error::domain(format!("gamma_line_bound needs finite a and t != 0 (a = {a}, t = {t})")));
    }
    let t = t.abs();
    Ok((2.0 * PI).sqrt() * t.powf(a - 0.5) * (-PI * t / 2.0).exp())
}

/// Rising factorial s(s+1)…(s+k−1).
pub fn pochhammer(s: ComplexScalar, k: usize) -> ComplexScalar {
    trace::record("pochhammer");
    (0..k).fold(ComplexScalar::new(1.0, 0.0), |acc, j| acc * (s + j as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn rel(a: ComplexScalar, b: ComplexScalar) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn gamma_small_integers_and_half() {
        assert!(rel(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
        assert!(rel(gamma(c(5.0, 0.0)).unwrap(), c(24.0, 0.0)) < 1e-14);
        assert!(rel(gamma(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
    }

    #[test]
    fn gamma_real_axis_reference_values() {
        // 30-digit reference values.
        let cases = [
            (0.7, 1.298_055_332_647_557_9),
            (2.5, 1.329_340_388_179_137),
            (9.3, 77_035.557_963_696_382),
            (33.3, 7.487_577_596_522_632_3e35),
            (100.25, 2.948_466_281_838_77e156),
            (170.5, 5.562_092_414_559_999_6e305),
            (-0.5, -3.544_907_701_811_032_1),
            (-3.7, 0.251_643_995_902_422_68),
        ];
        for (x, want) in cases {
            let got = gamma(c(x, 0.0)).unwrap();
            assert!(rel(got, c(want, 0.0)) < 3e-15, "Γ({x}) = {got}");
            assert_eq!(got.im, 0.0);
        }
        let mut factorial = 1.0;
        for n in 1..=23u32 {
            assert_eq!(gamma(c(n as f64, 0.0)).unwrap().re, factorial);
            factorial *= n as f64;
        }
        assert!(matches!(gamma(c(172.0, 0.0)), Err(Error::Overflow(_))));
    }

    #[test]
    fn gamma_complex_reference_values() {
        // Reference values from a 40-digit evaluation.
        let cases = [
            (c(0.3, 2.0), c(0.057_465_337_569_588_03, -0.074_984_912_582_646_14)),
            (c(-2.5, 1.0), c(-0.041_736_625_807_893_614, -0.086_369_107_369_763_48)),
            (c(10.5, -7.0), c(-70_690.594_966_931_17, 91_890.918_572_510_52)),
        ];
        for (s, want) in cases {
            let got = gamma(s).unwrap();
            assert!(rel(got, want) < 1e-12, "gamma({s}) = {got}, want {want}");
        }
    }

    #[test]
    fn log_gamma_branch_on_right_half_plane() {
        let got = log_gamma(c(20.0, 30.0)).unwrap();
        let want = c(21.345_074_493_863_445, 96.714_347_689_536_18);
        assert!((got - want).norm() < 1e-11);
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        assert!((log_gamma(c(5.0, 0.0)).unwrap().re - 24f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn poles_are_rejected() {
        for n in 0..5 {
            let s = c(-(n as f64) + 1e-10, 0.0);
            assert!(matches!(gamma(s), Err(Error::Pole(_))));
            assert!(matches!(log_gamma(s), Err(Error::Pole(_))));
        }
        assert!(gamma(c(-3.0 + 1e-7, 0.0)).is_ok());
        assert!(matches!(gamma(c(f64::NAN, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn residues() {
        assert_eq!(gamma_residue(0), 1.0);
        assert_eq!(gamma_residue(1), -1.0);
        assert_eq!(gamma_residue(2), 0.5);
        assert_eq!(gamma_residue(5), -1.0 / 120.0);
        assert!(gamma_residue(200).abs() < 1e-300);
    }

    #[test]
    fn line_bound_values() {
        // √(2π)e^{−5π} and √(2π)e^{−10π}, 40-digit reference.
        let b10 = gamma_line_bound(0.5, 10.0).unwrap();
        assert!((b10 / 3.777_532_112_850_109e-7 - 1.0).abs() < 1e-13);
        let b20 = gamma_line_bound(0.5, 20.0).unwrap();
        assert!((b20 / 5.692_806_152_405_845e-14 - 1.0).abs() < 1e-12);
        assert_eq!(gamma_line_bound(0.5, -10.0).unwrap(), b10);
        assert!(gamma_line_bound(0.5, 0.0).is_err());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(3.0, 0.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(2.0, 0.0), 3), c(24.0, 0.0));
        assert_eq!(pochhammer(c(-1.0, 0.0), 2), c(0.0, 0.0));
    }

    #[test]
    fn sin_pi_exact_zeros() {
        for k in -20..20 {
            assert_eq!(sin_pi(c(k as f64, 0.0)).re, 0.0);
        }
        let s = c(0.3, 25.0);
        let direct = sin_pi(s).ln();
        let stable = log_sin_pi(s);
        assert!((direct.exp() - stable.exp()).norm() / direct.exp().norm() < 1e-12);
        let s = c(0.3, -25.0);
        assert!((sin_pi(s).ln().exp() - log_sin_pi(s).exp()).norm() / sin_pi(s).norm() < 1e-12);
    }
}
