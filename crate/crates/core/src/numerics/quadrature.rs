use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use super::{is_finite, ComplexScalar, QuadratureConfig, ValueWithError};
use crate::error::{Error, Result};
use crate::trace;

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

// Relative rounding floor (in ulps) applied to each segment's error estimate.
const ROUNDING_FLOOR: f64 = 40.0;

struct Segment {
    lo: f64,
    hi: f64,
    value: ComplexScalar,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn eval_at<F>(f: &mut F, x: f64) -> Result<ComplexScalar>
where
    F: FnMut(f64) -> Result<ComplexScalar>,
{
    let v = f(x)?;
    if is_finite(v) {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { at: x })
    }
}

fn kronrod15<F>(f: &mut F, lo: f64, hi: f64, depth: u32) -> Result<Segment>
where
    F: FnMut(f64) -> Result<ComplexScalar>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut values = [(ComplexScalar::default(), ComplexScalar::default()); 7];
    let fc = eval_at(f, center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.norm() * WGK[7];
    for (j, (x, w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let f1 = eval_at(f, center - dx)?;
        let f2 = eval_at(f, center + dx)?;
        values[j] = (f1, f2);
        kronrod += (f1 + f2) * *w;
        abs_sum += (f1.norm() + f2.norm()) * w;
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[7] * (fc - mean).norm();
    for (j, (f1, f2)) in values.iter().enumerate() {
        asc += WGK[j] * ((*f1 - mean).norm() + (*f2 - mean).norm());
    }
    let scale = half.abs();
    let value = kronrod * half;
    let resabs = abs_sum * scale;
    let resasc = asc * scale;
    let mut error = ((kronrod - gauss) * half).norm();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (ROUNDING_FLOOR * f64::EPSILON) {
        error = error.max(ROUNDING_FLOOR * f64::EPSILON * resabs);
    }
    Ok(Segment {
        lo,
        hi,
        value,
        error,
        depth,
    })
}

/// Adaptive Gauss–Kronrod (7/15) integration over `[lo, hi]`.
///
/// The worst segment is bisected until the summed error estimate meets
/// `max(abs_tol, rel_tol·|value|)`, or every remaining segment has been
/// bisected `max_refinements` times. In the latter case the returned
/// estimate is whatever the segments report; no error is raised.
pub fn integrate_finite<F>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<ValueWithError>
where
    F: FnMut(f64) -> Result<ComplexScalar>,
{
    integrate_finite_with_breaks(f, &[lo, hi], cfg)
}

/// As [`integrate_finite`], starting from the partition given by the
/// increasing breakpoints (useful for oscillatory integrands).
pub fn integrate_finite_with_breaks<F>(
    mut f: F,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<ValueWithError>
where
    F: FnMut(f64) -> Result<ComplexScalar>,
{
    trace::record("integrate_finite");
    cfg.validate()?;
    if breaks.len() < 2
        || breaks.iter().any(|b| !b.is_finite())
        || breaks.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::domain(format!("integration limits must be finite and increasing: {breaks:?}")));
    }

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    let mut evaluations = 0usize;
    for w in breaks.windows(2) {
        heap.push(kronrod15(&mut f, w[0], w[1], 0)?);
        evaluations += 15;
    }

    let totals = |heap: &BinaryHeap<Segment>, frozen: &[Segment]| {
        heap.iter()
            .chain(frozen.iter())
            .fold((ComplexScalar::default(), 0.0), |(v, e), s| (v + s.value, e + s.error))
    };

    loop {
        let (value, error) = totals(&heap, &frozen);
        if error <= cfg.target(value.norm()) {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= cfg.max_refinements {
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            frozen.push(worst);
            continue;
        }
        heap.push(kronrod15(&mut f, worst.lo, mid, worst.depth + 1)?);
        heap.push(kronrod15(&mut f, mid, worst.hi, worst.depth + 1)?);
        evaluations += 30;
    }

    let (value, error_estimate) = totals(&heap, &frozen);
    Ok(ValueWithError {
        value,
        error_estimate,
        evaluations,
    })
}

// Exp-sinh substitution x = exp(π/2·sinh u) maps (0, ∞) to the real line and
// makes both power-law endpoint behaviour and exponential decay vanish
// double-exponentially in u.
const DE_STEP0: f64 = 0.5;
const DE_MAX_U: f64 = 6.5;
const DE_MAX_LEVELS: u32 = 10;

fn de_node(u: f64) -> (f64, f64) {
    let x = (FRAC_PI_2 * u.sinh()).exp();
    (x, x * FRAC_PI_2 * u.cosh())
}

/// ∫₀^∞ f(x) dx by the double-exponential (exp-sinh) rule with step halving.
///
/// The integrand may have an integrable power-law singularity at 0 and
/// must decay at least like a power x^{-1-δ} at infinity. The node range is
/// fixed on the coarsest grid by walking outwards until the weighted terms
/// are negligible; a non-finite value inside that range is an error.
pub fn integrate_halfline<F>(mut f: F, cfg: &QuadratureConfig) -> Result<ValueWithError>
where
    F: FnMut(f64) -> Result<ComplexScalar>,
{
    trace::record("integrate_halfline");
    cfg.validate()?;
    let mut evaluations = 0usize;

    let mut term = |u: f64, evaluations: &mut usize| -> Result<Option<ComplexScalar>> {
        let (x, w) = de_node(u);
        *evaluations += 1;
        if x == 0.0 || !x.is_finite() {
            return Ok(None);
        }
        let v = f(x)?;
        let t = v * w;
        if is_finite(t) {
            Ok(Some(t))
        } else {
            Err(Error::NonFiniteIntegrand { at: x })
        }
    };

    // Coarse level, fixing the range.
    let centre = term(0.0, &mut evaluations)?.unwrap_or_default();
    let mut sum = centre;
    let mut abs_sum = centre.norm();
    let mut limits = [0.0f64; 2];
    let mut edge_terms = [0.0f64; 2];
    for (side, dir) in [-1.0f64, 1.0].into_iter().enumerate() {
        let mut small_run = 0;
        let mut k = 1;
        loop {
            let u = dir * DE_STEP0 * k as f64;
            if u.abs() > DE_MAX_U {
                break;
            }
            let t = match term(u, &mut evaluations) {
                Ok(Some(t)) => t,
                Ok(None) => break,
                Err(e) => {
                    if small_run > 0 {
                        break;
                    }
                    return Err(e);
                }
            };
            sum += t;
            abs_sum += t.norm();
            limits[side] = u;
            edge_terms[side] = t.norm();
            if t.norm() <= 1e-3 * f64::EPSILON * sum.norm().max(f64::MIN_POSITIVE) {
                small_run += 1;
                if small_run >= 2 {
                    break;
                }
            } else {
                small_run = 0;
            }
            k += 1;
        }
    }
    let (u_lo, u_hi) = (limits[0], limits[1]);

    let mut h = DE_STEP0;
    let mut estimate = sum * h;
    let tail = (edge_terms[0] + edge_terms[1]) * h;
    let levels = cfg.max_refinements.min(DE_MAX_LEVELS);
    let mut last_diff = f64::INFINITY;
    for level in 1..=levels {
        h *= 0.5;
        let steps = ((u_hi - u_lo) / h).round() as i64;
        for j in (1..steps).step_by(2) {
            if let Some(t) = term(u_lo + j as f64 * h, &mut evaluations)? {
                sum += t;
                abs_sum += t.norm();
            }
        }
        let next = sum * h;
        last_diff = (next - estimate).norm();
        estimate = next;
        let error = last_diff + tail + 10.0 * f64::EPSILON * abs_sum * h;
        if level >= 2 && error <= cfg.target(estimate.norm()) {
            return Ok(ValueWithError {
                value: estimate,
                error_estimate: error,
                evaluations,
            });
        }
    }
    Err(Error::NoConvergence {
        evaluations,
        partial: ValueWithError {
            value: estimate,
            error_estimate: last_diff + tail + 10.0 * f64::EPSILON * abs_sum * h,
            evaluations,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn real(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Result<ComplexScalar> {
        move |x| Ok(ComplexScalar::new(f(x), 0.0))
    }

    #[test]
    fn finite_polynomials() {
        let cfg = QuadratureConfig::default();
        let one = integrate_finite(real(|_| 1.0), 0.0, 1.0, &cfg).unwrap();
        assert!((one.value.re - 1.0).abs() < 1e-15);
        assert!(one.error_estimate <= 1e-14);
        let lin = integrate_finite(real(|x| x), 0.0, 2.0, &cfg).unwrap();
        assert!((lin.value.re - 2.0).abs() < 1e-14);
    }

    #[test]
    fn finite_exponential() {
        let cfg = QuadratureConfig::default();
        let r = integrate_finite(real(|x| (-x).exp()), 0.0, 10.0, &cfg).unwrap();
        let exact = 1.0 - (-10.0f64).exp();
        assert!((r.value.re - exact).abs() < 1e-12);
        assert!((r.value.re - 0.999_954_600_1).abs() < 1e-10);
    }

    #[test]
    fn finite_oscillatory_is_refined() {
        let cfg = QuadratureConfig::new(1e-12, 0.0, 14).unwrap();
        let r = integrate_finite(real(|x| (40.0 * x).cos()), 0.0, 3.0, &cfg).unwrap();
        assert!((r.value.re - (120.0f64).sin() / 40.0).abs() < 1e-11);
        assert!(r.evaluations > 15);
    }

    #[test]
    fn finite_rejects_bad_input() {
        let cfg = QuadratureConfig::default();
        assert!(integrate_finite(real(|x| x), 1.0, 1.0, &cfg).is_err());
        let e = integrate_finite(real(|x| 1.0 / (x - 0.5)), 0.0, 1.0, &cfg).unwrap_err();
        assert_eq!(e, Error::NonFiniteIntegrand { at: 0.5 });
    }

    #[test]
    fn halfline_examples() {
        let cfg = QuadratureConfig::default();
        let r = integrate_halfline(real(|x| (-x).exp()), &cfg).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
        let r = integrate_halfline(real(|x| (-x).exp() / x.sqrt()), &cfg).unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-10);
        let r = integrate_halfline(real(|x| 1.0 / ((1.0 + x) * x.sqrt())), &cfg).unwrap();
        assert!((r.value.re - PI).abs() < 1e-9);
        assert!(r.error_estimate < 1e-8);
    }

    #[test]
    fn halfline_tolerates_overflow_past_negligible_terms() {
        let cfg = QuadratureConfig::default();
        let f = |x: f64| {
            let c = x.cosh();
            if c.is_finite() {
                Ok(ComplexScalar::new(1.0 / (c * x.sqrt()), 0.0))
            } else {
                Err(Error::Overflow("cosh".into()))
            }
        };
        let r = integrate_halfline(f, &cfg).unwrap();
        assert!((r.value.re - 2.366_904_589_024_876_6).abs() < 1e-10);
    }

    #[test]
    fn halfline_reports_non_convergence() {
        let cfg = QuadratureConfig::new(0.0, 1e-14, 1).unwrap();
        let r = integrate_halfline(real(|x| 1.0 / ((1.0 + x) * x.sqrt())), &cfg);
        match r {
            Err(Error::NoConvergence { partial, .. }) => assert!((partial.value.re - PI).abs() < 1e-2),
            other => panic!("{other:?}"),
        }
    }
}
