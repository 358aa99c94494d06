//! Forward Mellin transforms, inversion along a truncated vertical line,
//! and the residue series obtained by closing the contour to the left.
//!
//! All evaluables are plain closures. They must be safe to call
//! repeatedly; none of the routines here keep state between calls.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::trace;
use crate::numerics::{
    gamma, gamma_line_bound, gamma_residue, integrate_finite_with_breaks, integrate_halfline,
    sum_series, ComplexScalar, QuadratureConfig, SeriesConfig, ValueWithError,
};

/// Default inversion abscissa, midway between the pole lines Re s = 0 and 1.
pub const DEFAULT_ABSCISSA: f64 = 0.5;
/// Tail tolerance used when the truncation height is chosen automatically.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
const T_MIN: f64 = 1.0;
const T_MAX: f64 = 1e4;
const SUP_SAMPLE_HEIGHT: f64 = 10.0;
const SUP_SAMPLES: usize = 41;
const SUP_SAFETY: f64 = 10.0;

/// How G(a+it) behaves beyond the truncation height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailModel {
    /// |G(a+it)| ≤ sup_f·|Γ(a+it)|; the discarded tail is bounded in closed form.
    GammaDominated { sup_f: f64 },
    /// No growth information; the tail is not included in the error estimate.
    Unknown,
}

/// The segment a − iT … a + iT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalLine {
    pub a: f64,
    pub height: f64,
    pub tail: TailModel,
}

impl VerticalLine {
    pub fn new(a: f64, height: f64, tail: TailModel) -> Result<Self> {
        if !a.is_finite() || !(height > 0.0 && height.is_finite()) {
            return Err(Error::domain(format!(
                "vertical line needs finite a and T > 0 (a = {a}, T = {height})"
            )));
        }
        if let TailModel::GammaDominated { sup_f } = tail {
            if !(sup_f >= 0.0 && sup_f.is_finite()) {
                return Err(Error::domain(format!("sup_f must be finite and >= 0, got {sup_f}")));
            }
        }
        Ok(VerticalLine { a, height, tail })
    }

    /// A Γ-dominated line whose height comes from [`choose_truncation`].
    pub fn gamma_dominated(a: f64, sup_f: f64, tol: f64) -> Result<Self> {
        let height = choose_truncation(a, sup_f, tol)?;
        VerticalLine::new(a, height, TailModel::GammaDominated { sup_f })
    }

    /// A Γ-dominated line for G, with sup_f estimated from G/Γ on the line.
    pub fn fit_gamma_ratio<F>(big_g: F, a: f64, tol: f64) -> Result<Self>
    where
        F: Fn(ComplexScalar) -> Result<ComplexScalar>,
    {
        let sup_f = estimate_sup_f(|s| Ok(big_g(s)? / gamma(s)?), a)?;
        VerticalLine::gamma_dominated(a, sup_f, tol)
    }

    /// Bound on the contribution of |t| > T to (1/2π)∫ x^{−s}G(s) dt.
    pub fn tail_bound(&self, x: f64) -> f64 {
        match self.tail {
            TailModel::GammaDominated { sup_f } => {
                sup_f * x.powf(-self.a) * tail_integral(self.a, self.height) / PI
            }
            TailModel::Unknown => 0.0,
        }
    }
}

/// ∫_T^∞ √(2π) t^{a−½} e^{−πt/2} dt, bounded above in closed form using
/// t^p ≤ T^p e^{p(t−T)/T} for t ≥ T.
fn tail_integral(a: f64, t0: f64) -> f64 {
    let p = a - 0.5;
    let c = PI / 2.0;
    let rate = if p > 0.0 { c - p / t0 } else { c };
    if rate <= 0.0 {
        return f64::INFINITY;
    }
    (2.0 * PI).sqrt() * t0.powf(p) * (-c * t0).exp() / rate
}

/// Smallest T with 2·sup_f·∫_T^∞ bound(a, t) dt < tol.
///
/// Searches T = 1, 2, 4, … and then bisects the last bracket.
pub fn choose_truncation(line_a: f64, sup_f: f64, tol: f64) -> Result<f64> {
    trace::record("choose_truncation");
    if tol.is_nan() || tol <= 0.0 || !line_a.is_finite() || !(sup_f >= 0.0 && sup_f.is_finite()) {
        return Err(Error::domain(format!(
            "choose_truncation needs tol > 0, finite a and sup_f >= 0 (a = {line_a}, sup_f = {sup_f}, tol = {tol})"
        )));
    }
    // touch the envelope so the audit sees which primitive defines the bound
    gamma_line_bound(line_a, T_MIN)?;
    let ok = |t: f64| 2.0 * sup_f * tail_integral(line_a, t) < tol;
    if ok(T_MIN) {
        return Ok(T_MIN);
    }
    let mut hi = T_MIN;
    while !ok(hi) {
        hi *= 2.0;
        if hi > T_MAX {
            if ok(T_MAX) {
                hi = T_MAX;
                break;
            }
            return Err(Error::domain(format!(
                "no truncation height up to {T_MAX} meets tol = {tol} (a = {line_a}, sup_f = {sup_f})"
            )));
        }
    }
    let mut lo = hi / 2.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// max |f(a+it)| over t ∈ [−10, 10], times a safety factor of 10.
pub fn estimate_sup_f<F>(f: F, a: f64) -> Result<f64>
where
    F: Fn(ComplexScalar) -> Result<ComplexScalar>,
{
    let mut sup: f64 = 0.0;
    for k in 0..SUP_SAMPLES {
        let t = -SUP_SAMPLE_HEIGHT + 2.0 * SUP_SAMPLE_HEIGHT * k as f64 / (SUP_SAMPLES - 1) as f64;
        sup = sup.max(f(ComplexScalar::new(a, t))?.norm());
    }
    Ok(SUP_SAFETY * sup)
}

fn cpow(x: f64, s: ComplexScalar) -> ComplexScalar {
    (s * x.ln()).exp()
}

/// G(s) = ∫₀^∞ x^{s−1} g(x) dx by double-exponential quadrature.
///
/// The caller asserts integrability; Re s ≤ 0 is attempted with a warning.
pub fn mellin_forward<F>(mut g: F, s: ComplexScalar, cfg: &QuadratureConfig) -> Result<ValueWithError>
where
    F: FnMut(f64) -> Result<ComplexScalar>,
{
    trace::record("mellin_forward");
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain(format!("non-finite Mellin argument {s}")));
    }
    if s.re <= 0.0 {
        log::warn!("Mellin transform at Re s = {} <= 0; the integral may diverge at 0", s.re);
    }
    let sm1 = s - 1.0;
    integrate_halfline(|x| Ok(cpow(x, sm1) * g(x)?), cfg)
}

/// g(x) = (1/2π)∫_{−T}^{T} x^{−(a+it)} G(a+it) dt.
///
/// The error estimate adds the truncation bound of a Γ-dominated line.
pub fn mellin_inverse<F>(
    mut big_g: F,
    x: f64,
    line: &VerticalLine,
    cfg: &QuadratureConfig,
) -> Result<ValueWithError>
where
    F: FnMut(ComplexScalar) -> Result<ComplexScalar>,
{
    trace::record("mellin_inverse");
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("inverse Mellin needs x > 0, got {x}")));
    }
    let line = VerticalLine::new(line.a, line.height, line.tail)?;
    let t_max = line.height;
    let log_x = x.ln();
    // panels short enough that each holds about half an oscillation of x^{−it}
    let panels = ((2.0 * t_max * log_x.abs() / PI).ceil() as usize + t_max.ceil() as usize).clamp(8, 20_000);
    let breaks: Vec<f64> = (0..=panels)
        .map(|k| -t_max + 2.0 * t_max * k as f64 / panels as f64)
        .collect();
    let a = line.a;
    let r = integrate_finite_with_breaks(
        |t| {
            let s = ComplexScalar::new(a, t);
            Ok(cpow(x, -s) * big_g(s)?)
        },
        &breaks,
        cfg,
    )?;
    Ok(ValueWithError {
        value: r.value / (2.0 * PI),
        error_estimate: r.error_estimate / (2.0 * PI) + line.tail_bound(x),
        evaluations: r.evaluations,
    })
}

/// Σ ((−1)ⁿ/n!)·f(−n)·xⁿ, the residue sum of Γ(s)f(s)x^{−s} at s = 0, −1, ….
pub fn residue_series<F>(f: F, x: f64, cfg: &SeriesConfig) -> Result<ValueWithError>
where
    F: FnMut(ComplexScalar) -> Result<ComplexScalar>,
{
    trace::record("residue_series");
    residue_series_general(
        ResidueSeriesSpec {
            residues: |n| ComplexScalar::new(gamma_residue(n), 0.0),
            multiplier: f,
            x,
        },
        cfg,
    )
}

/// Residues cₙ of G at s = −n, the multiplier f, and the evaluation point.
pub struct ResidueSeriesSpec<R, F> {
    pub residues: R,
    pub multiplier: F,
    pub x: f64,
}

/// Σ cₙ·f(−n)·xⁿ.
pub fn residue_series_general<R, F>(spec: ResidueSeriesSpec<R, F>, cfg: &SeriesConfig) -> Result<ValueWithError>
where
    R: FnMut(usize) -> ComplexScalar,
    F: FnMut(ComplexScalar) -> Result<ComplexScalar>,
{
    trace::record("residue_series_general");
    let ResidueSeriesSpec {
        mut residues,
        mut multiplier,
        x,
    } = spec;
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("residue series needs x > 0, got {x}")));
    }
    sum_series(
        |n| {
            let c = residues(n);
            let fv = multiplier(ComplexScalar::new(-(n as f64), 0.0)).map_err(|e| match e.root() {
                Error::Overflow(_) => Error::NonFiniteTerm { index: n },
                _ => e,
            })?;
            if !(fv.re.is_finite() && fv.im.is_finite()) {
                return Err(Error::NonFiniteTerm { index: n });
            }
            if c == ComplexScalar::default() {
                return Ok(c);
            }
            Ok(c * fv * x.powi(n as i32))
        },
        cfg,
    )
}

/// Details of a master theorem evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct MasterTheoremReport {
    /// ∫₀^∞ x^{s−1} φ(x) dx with φ(x) = Σ f(n)(−x)ⁿ/n!.
    pub lhs: ValueWithError,
    /// f(−s)Γ(s).
    pub rhs: ComplexScalar,
    /// |lhs − rhs| plus the largest series/contour disagreement seen.
    pub residual: f64,
    /// Largest |series − contour integral| at points where both apply.
    pub overlap_mismatch: f64,
    /// Profile points summed directly from the series.
    pub series_points: usize,
    /// Profile points where the series was divergent or ill-conditioned and
    /// the contour integral (1/2πi)∫ x^{−u} f(−u)Γ(u) du was used instead.
    pub contour_points: usize,
}

const OVERLAP_PROBES: [f64; 3] = [0.1, 0.3, 0.6];
const CONDITION_LIMIT: f64 = 1e-10;
// Largest |ln x| at which the profile is continued; beyond the reach of the
// half-line rule's node range.
const PROFILE_MAX_LOG_X: f64 = 530.0;
// Decay exponent demanded of the aliasing error.
const ALIAS_EXPONENT: f64 = 36.0;
const CONTOUR_TAIL_TOL: f64 = 1e-13;

/// φ(x) = Σ f(n)(−x)ⁿ/n!, by its series where that is accurate and by the
/// contour integral (1/2π)∫ x^{−a−it} F(a+it) dt, F(u) = f(−u)Γ(u), elsewhere.
///
/// The contour integral uses the trapezoidal rule on one precomputed grid.
/// F is analytic on 0 < Re u < 1; with σ = min(a, 1 − a)/2 the aliasing
/// error is of order e^{−σ(2π/h − |ln x|)}, so a single step serves every x
/// up to [`PROFILE_MAX_LOG_X`]. Placing a to the right of Re s makes the
/// rounding floor x^{−a}·ε decay faster than x^{−s}.
struct Profile {
    coeffs: Vec<ComplexScalar>,
    scfg: SeriesConfig,
    a: f64,
    h: f64,
    nodes: Vec<(f64, ComplexScalar)>,
}

impl Profile {
    fn new<F>(f: &F, a: f64, scfg: SeriesConfig) -> Result<Self>
    where
        F: Fn(ComplexScalar) -> Result<ComplexScalar>,
    {
        let strip = 0.5 * a.min(1.0 - a);
        let big_f = |u: ComplexScalar| -> Result<ComplexScalar> { Ok(f(-u)? * gamma(u)?) };
        let sup_f = estimate_sup_f(|u| f(-u), a)?;
        let height = choose_truncation(a, sup_f, CONTOUR_TAIL_TOL)?;
        let h_max = 2.0 * PI / (PROFILE_MAX_LOG_X + ALIAS_EXPONENT / strip);
        let steps = (2.0 * height / h_max).ceil() as usize;
        let h = 2.0 * height / steps as f64;
        let nodes = (0..=steps)
            .map(|k| {
                let t = -height + k as f64 * h;
                let weight = if k == 0 || k == steps { 0.5 } else { 1.0 };
                Ok((t, weight * big_f(ComplexScalar::new(a, t))?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Profile {
            coeffs: Vec::new(),
            scfg,
            a,
            h,
            nodes,
        })
    }

    /// f(0), f(1), … as far as the series needs them; stops at the first
    /// failing value.
    fn extend_coeffs<F>(&mut self, f: &F, upto: usize)
    where
        F: Fn(ComplexScalar) -> Result<ComplexScalar>,
    {
        while self.coeffs.len() < upto {
            match f(ComplexScalar::new(self.coeffs.len() as f64, 0.0)) {
                Ok(v) if v.re.is_finite() && v.im.is_finite() => self.coeffs.push(v),
                _ => break,
            }
        }
    }

    /// The series value if it converges with a small relative error.
    fn series(&self, x: f64) -> Option<ComplexScalar> {
        let mut scale = 1.0f64;
        let r = sum_series(
            |n| {
                if n > 0 {
                    scale *= -x / n as f64;
                }
                let c = self.coeffs.get(n).ok_or(Error::NonFiniteTerm { index: n })?;
                Ok(c * scale)
            },
            &self.scfg,
        )
        .ok()?;
        (r.error_estimate <= CONDITION_LIMIT * r.value.norm().max(f64::MIN_POSITIVE)).then_some(r.value)
    }

    fn contour(&self, x: f64) -> Result<ComplexScalar> {
        let log_x = x.ln();
        if log_x.abs() > PROFILE_MAX_LOG_X {
            return Err(Error::domain(format!("profile continuation limited to |ln x| <= {PROFILE_MAX_LOG_X}, got x = {x}")));
        }
        let sum: ComplexScalar = self
            .nodes
            .iter()
            .map(|&(t, v)| ComplexScalar::from_polar(1.0, -t * log_x) * v)
            .sum();
        Ok(sum * (self.h / (2.0 * PI)) * (-self.a * log_x).exp())
    }
}

/// Ramanujan's master theorem residual |∫ x^{s−1}Σ f(n)(−x)ⁿ/n! dx − f(−s)Γ(s)|.
pub fn master_theorem_check<F>(f: F, s: ComplexScalar, cfg: &QuadratureConfig, scfg: &SeriesConfig) -> Result<f64>
where
    F: Fn(ComplexScalar) -> Result<ComplexScalar>,
{
    Ok(master_theorem_report(f, s, cfg, scfg)?.residual)
}

/// As [`master_theorem_check`], returning both sides and the diagnostics.
///
/// The profile φ(x) is summed term by term wherever that is accurate. Where
/// the series diverges or cancels (large x) φ is continued by the contour
/// integral of f(−u)Γ(u) on Re u = (Re s + 1)/2 instead; the two are compared on a few
/// probe points where both apply and the disagreement is added to the residual.
pub fn master_theorem_report<F>(
    f: F,
    s: ComplexScalar,
    cfg: &QuadratureConfig,
    scfg: &SeriesConfig,
) -> Result<MasterTheoremReport>
where
    F: Fn(ComplexScalar) -> Result<ComplexScalar>,
{
    trace::record("master_theorem_check");
    if !(s.re > 0.0 && s.re < 1.0) || !s.im.is_finite() {
        return Err(Error::domain(format!("master theorem check needs 0 < Re s < 1, got {s}")));
    }
    let rhs = f(-s)? * gamma(s)?;
    let mut profile = Profile::new(&f, 0.5 * (s.re + 1.0), *scfg)?;
    profile.extend_coeffs(&f, scfg.max_terms);

    let mut overlap_mismatch: f64 = 0.0;
    for x in OVERLAP_PROBES {
        if let Some(v) = profile.series(x) {
            overlap_mismatch = overlap_mismatch.max((v - profile.contour(x)?).norm());
        }
    }

    let mut series_points = 0;
    let mut contour_points = 0;
    let sm1 = s - 1.0;
    let lhs = integrate_halfline(
        |x| {
            let phi = match profile.series(x) {
                Some(v) => {
                    series_points += 1;
                    v
                }
                None => {
                    contour_points += 1;
                    profile.contour(x)?
                }
            };
            Ok(cpow(x, sm1) * phi)
        },
        cfg,
    )?;
    Ok(MasterTheoremReport {
        residual: (lhs.value - rhs).norm() + overlap_mismatch,
        lhs,
        rhs,
        overlap_mismatch,
        series_points,
        contour_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{alt_hurwitz_eta, hurwitz_zeta, hurwitz_zeta_neg_int, ZetaConfig};
    use std::f64::consts::E;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn gamma_line(tol: f64) -> VerticalLine {
        VerticalLine::gamma_dominated(0.5, 1.0, tol).unwrap()
    }

    #[test]
    fn forward_examples() {
        let cfg = QuadratureConfig::default();
        let r = mellin_forward(|x| Ok(c((-x).exp(), 0.0)), c(0.5, 0.0), &cfg).unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-10);
        let r = mellin_forward(|x| Ok(c(1.0 / (1.0 + x), 0.0)), c(0.5, 0.0), &cfg).unwrap();
        assert!((r.value.re - PI).abs() < 1e-9);
        // 2Γ(½)L(½) with L(½) = 0.66769145718960...
        let r = mellin_forward(|x| Ok(c(1.0 / x.cosh(), 0.0)), c(0.5, 0.0), &cfg).unwrap();
        assert!((r.value.re - 2.366_904_589_019_7).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn truncation_examples() {
        let t10 = choose_truncation(0.5, 1.0, 1e-10).unwrap();
        // 2√(2π)(2/π)e^{−πT/2} = 1e-10
        let exact = 2.0 / PI * (2.0 * (2.0 * PI).sqrt() * 2.0 / PI / 1e-10).ln();
        assert!((t10 - exact).abs() < 1e-9, "{t10} vs {exact}");
        let t6 = choose_truncation(0.5, 1.0, 1e-6).unwrap();
        assert!(t6 < t10);
        assert_eq!(choose_truncation(0.5, 0.0, 1e-10).unwrap(), 1.0);
        assert!(choose_truncation(0.5, 1.0, 0.0).is_err());
        assert!(choose_truncation(0.5, 1e300, 1e-300).is_ok());
        assert!(matches!(choose_truncation(0.5, f64::MAX, f64::MIN_POSITIVE), Err(Error::Domain(_))));
    }

    #[test]
    fn truncation_monotone_in_tol() {
        let mut last = 0.0;
        for k in 1..30 {
            let t = choose_truncation(0.75, 3.0, 10f64.powi(-k)).unwrap();
            assert!(t >= last);
            last = t;
        }
    }

    #[test]
    fn tail_integral_bounds_numerical_tail() {
        for a in [0.25, 0.5, 0.75] {
            for t0 in [2.0, 5.0, 12.0] {
                let cfg = QuadratureConfig::default();
                let num = integrate_halfline(
                    |u| Ok(c(gamma_line_bound(a, t0 + u).unwrap(), 0.0)),
                    &cfg,
                )
                .unwrap();
                let bound = tail_integral(a, t0);
                assert!(bound >= num.value.re * (1.0 - 1e-9) && bound < 1.5 * num.value.re, "{a} {t0}");
            }
        }
    }

    #[test]
    fn inverse_of_gamma() {
        let cfg = QuadratureConfig::default();
        let line = gamma_line(1e-10);
        for x in [0.5, 1.0, 2.0] {
            let r = mellin_inverse(gamma, x, &line, &cfg).unwrap();
            assert!((r.value.re - (-x).exp()).abs() < 1e-9, "x = {x}: {}", r.value);
            assert!(r.value.im.abs() < 1e-12);
            assert!(r.error_estimate < 1e-8);
        }
    }

    #[test]
    fn inverse_of_eta_gamma() {
        let cfg = QuadratureConfig::default();
        let zc = ZetaConfig::default();
        let one = c(1.0, 0.0);
        let sup = estimate_sup_f(|s| alt_hurwitz_eta(s, one, &zc), 0.5).unwrap();
        let line = VerticalLine::gamma_dominated(0.5, sup, 1e-10).unwrap();
        let r = mellin_inverse(|s| Ok(alt_hurwitz_eta(s, one, &zc)? * gamma(s)?), 1.0, &line, &cfg).unwrap();
        assert!((r.value.re - 1.0 / (E + 1.0)).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn doubling_height_stays_within_estimate() {
        let cfg = QuadratureConfig::default();
        let line = gamma_line(1e-8);
        let wide = VerticalLine::new(0.5, 2.0 * line.height, line.tail).unwrap();
        for x in [0.3, 1.0, 3.0] {
            let r1 = mellin_inverse(gamma, x, &line, &cfg).unwrap();
            let r2 = mellin_inverse(gamma, x, &wide, &cfg).unwrap();
            assert!((r1.value - r2.value).norm() <= r1.error_estimate);
        }
    }

    #[test]
    fn inverse_rejects_bad_input() {
        let cfg = QuadratureConfig::default();
        let line = gamma_line(1e-8);
        assert!(mellin_inverse(gamma, 0.0, &line, &cfg).is_err());
        assert!(mellin_inverse(gamma, -1.0, &line, &cfg).is_err());
        assert!(VerticalLine::new(0.5, 0.0, TailModel::Unknown).is_err());
        let r = mellin_inverse(|_| Ok(c(f64::NAN, 0.0)), 1.0, &line, &cfg);
        assert!(matches!(r, Err(Error::NonFiniteIntegrand { .. })));
    }

    #[test]
    fn residue_series_examples() {
        let cfg = SeriesConfig::default();
        let r = residue_series(|_| Ok(c(1.0, 0.0)), 2.0, &cfg).unwrap();
        assert!((r.value.re - (-2.0f64).exp()).abs() < 1e-14);
        // f(−n) = n!
        let r = residue_series(|s| gamma(1.0 - s), 0.5, &cfg).unwrap();
        assert!((r.value.re - 2.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            residue_series(|s| gamma(1.0 - s), 2.0, &cfg),
            Err(Error::NoConvergence { .. }) | Err(Error::NonFiniteTerm { .. })
        ));
        // ζ(−n, 1) closed forms: g(½, 1) = 1/(e^{½} − 1) − 2
        let r = residue_series(|s| Ok(hurwitz_zeta_neg_int((-s.re) as usize, c(1.0, 0.0))), 0.5, &cfg).unwrap();
        assert!((r.value.re - (1.0 / (0.5f64.exp() - 1.0) - 2.0)).abs() < 1e-12, "{}", r.value);
        assert!(residue_series(|_| Ok(c(1.0, 0.0)), 0.0, &cfg).is_err());
        let r = residue_series(|_| Ok(c(f64::INFINITY, 0.0)), 1.0, &cfg);
        assert_eq!(r, Err(Error::NonFiniteTerm { index: 0 }));
    }

    #[test]
    fn residue_series_general_examples() {
        let cfg = SeriesConfig::default();
        let spec = ResidueSeriesSpec {
            residues: |_| c(1.0, 0.0),
            multiplier: |_| Ok(c(1.0, 0.0)),
            x: 0.5,
        };
        let r = residue_series_general(spec, &cfg).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-11);
        let spec = ResidueSeriesSpec {
            residues: |n| c(gamma_residue(n), 0.0),
            multiplier: |_| Ok(c(1.0, 0.0)),
            x: 1.0,
        };
        assert!((residue_series_general(spec, &cfg).unwrap().value.re - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn residue_series_matches_inverse_for_zeta_kernel() {
        let cfg = QuadratureConfig::default();
        let scfg = SeriesConfig::default();
        let zc = ZetaConfig::default();
        let z = c(1.0, 0.0);
        let sup = estimate_sup_f(|s| hurwitz_zeta(s, z, &zc), 0.5).unwrap();
        let line = VerticalLine::gamma_dominated(0.5, sup, 1e-10).unwrap();
        for x in [0.25, 0.5, 1.0] {
            let inv = mellin_inverse(|s| Ok(hurwitz_zeta(s, z, &zc)? * gamma(s)?), x, &line, &cfg).unwrap();
            let res = residue_series(|s| Ok(hurwitz_zeta_neg_int((-s.re) as usize, z)), x, &scfg).unwrap();
            assert!((inv.value - res.value).norm() < 1e-8, "x = {x}");
        }
    }

    #[test]
    fn master_theorem_constant() {
        let cfg = QuadratureConfig::default();
        let scfg = SeriesConfig::default();
        let rep = master_theorem_report(|_| Ok(c(1.0, 0.0)), c(0.5, 0.0), &cfg, &scfg).unwrap();
        assert!(rep.residual < 1e-8, "{rep:?}");
        assert!(rep.series_points > 0);
        assert!(master_theorem_check(|_| Ok(c(1.0, 0.0)), c(1.5, 0.0), &cfg, &scfg).is_err());
    }

    #[test]
    fn master_theorem_families() {
        let cfg = QuadratureConfig::default();
        let scfg = SeriesConfig::default();
        type F = fn(ComplexScalar) -> Result<ComplexScalar>;
        let families: [F; 3] = [|_| Ok(c(1.0, 0.0)), |s| gamma(s + 1.0), |s| Ok(1.0 / (s + 1.0))];
        for s in [0.3, 0.5, 0.7] {
            for f in families {
                let rep = master_theorem_report(f, c(s, 0.0), &cfg, &scfg).unwrap();
                assert!(rep.residual < 1e-9, "s = {s}: {rep:?}");
                assert!(rep.contour_points > 0 && rep.series_points > 0);
            }
        }
        // f(n) = n!: both sides equal π/sin(πs)
        let rep = master_theorem_report(families[1], c(0.5, 0.0), &cfg, &scfg).unwrap();
        assert!((rep.rhs.re - PI).abs() < 1e-13);
    }
}
