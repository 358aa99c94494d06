use std::f64::consts::SQRT_2;
use std::sync::OnceLock;

use super::{get, IdentitySpec, ParamRange, Params};
use crate::error::{Error, Result};
use crate::mellin::{
    estimate_sup_f, master_theorem_report, mellin_forward, mellin_inverse, residue_series,
    VerticalLine, DEFAULT_ABSCISSA,
};
use crate::numerics::{gamma, sum_series, ComplexScalar, QuadratureConfig, SeriesConfig};
use crate::special::{
    alt_hurwitz_eta, bernoulli_poly, euler_L, euler_numbers, euler_poly, exp_poly, exp_poly_dobinski,
    hermite, hurwitz_zeta, hurwitz_zeta_neg_int, parabolic_cylinder_int, parabolic_cylinder_neg,
    ZetaConfig,
};

const CLOSED_REL: f64 = 1e-8;
const CLOSED_ABS: f64 = 1e-12;
const QUAD_REL: f64 = 1e-6;
const QUAD_ABS: f64 = 1e-9;
const LINE_TOL: f64 = 1e-10;
const MAX_OVERLAP_MISMATCH: f64 = 1e-8;

const N_0_20: ParamRange = ParamRange::Int { lo: 0, hi: 20 };
const Z_BERNOULLI: ParamRange = ParamRange::Real { lo: 0.1, hi: 5.0 };
const Z_TOUCHARD: ParamRange = ParamRange::RealOpenLow { lo: 0.0, hi: 4.0 };
const Z_HERMITE: ParamRange = ParamRange::Real { lo: -3.0, hi: 3.0 };
const T_LINE: ParamRange = ParamRange::Real { lo: -5.0, hi: 5.0 };

fn c(re: f64) -> ComplexScalar {
    ComplexScalar::new(re, 0.0)
}

fn qcfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn zcfg() -> ZetaConfig {
    ZetaConfig::default()
}

fn on_line(p: &Params) -> Result<ComplexScalar> {
    Ok(ComplexScalar::new(0.5, get(p, "t")?))
}

fn order(p: &Params) -> Result<usize> {
    Ok(get(p, "n")? as usize)
}

/// eᵗ − 1 − t without cancellation near 0.
fn expm1_minus_x(t: f64) -> f64 {
    if t.abs() < 0.1 {
        let mut term = t;
        let mut sum = 0.0;
        for k in 2..=14 {
            term *= t / k as f64;
            sum += term;
        }
        sum
    } else {
        t.exp_m1() - t
    }
}

/// e^{t(1−z)}/(eᵗ − 1) − 1/t, the Bernoulli generating function minus its pole.
pub(crate) fn bernoulli_kernel(t: f64, z: f64) -> f64 {
    if t < 1.0 {
        (t * (t * (1.0 - z)).exp_m1() - expm1_minus_x(t)) / (t * t.exp_m1())
    } else {
        (-t * z).exp() / -(-t).exp_m1() - 1.0 / t
    }
}

/// e^{t(1−z)}/(eᵗ + 1).
pub(crate) fn euler_kernel(t: f64, z: f64) -> f64 {
    (-t * z).exp() / (1.0 + (-t).exp())
}

/// e^{z(e^{−x} − 1)} − e^{−z}.
pub(crate) fn touchard_kernel(x: f64, z: f64) -> f64 {
    (-z).exp() * (z * (-x).exp()).exp_m1()
}

/// e^{−z} Σ_{k≥1} z^k k^{−s}/k!, so that Γ(s)·this is the Mellin transform
/// of [`touchard_kernel`].
pub(crate) fn touchard_multiplier(s: ComplexScalar, z: f64) -> Result<ComplexScalar> {
    let ln_z = z.ln();
    let mut ln_fact = 0.0;
    let r = sum_series(
        |j| {
            let k = (j + 1) as f64;
            ln_fact += k.ln();
            Ok(((k * ln_z - ln_fact - z) - s * k.ln()).exp())
        },
        &SeriesConfig::default(),
    )?;
    Ok(r.value)
}

fn inverse_on_default_line<M>(multiplier: M, x: f64) -> Result<ComplexScalar>
where
    M: Fn(ComplexScalar) -> Result<ComplexScalar>,
{
    let sup = estimate_sup_f(&multiplier, DEFAULT_ABSCISSA)?;
    let line = VerticalLine::gamma_dominated(DEFAULT_ABSCISSA, sup, LINE_TOL)?;
    Ok(mellin_inverse(|s| Ok(multiplier(s)? * gamma(s)?), x, &line, &qcfg())?.value)
}

fn forward(g: impl Fn(f64) -> f64, s: ComplexScalar) -> Result<ComplexScalar> {
    Ok(mellin_forward(|x| Ok(c(g(x))), s, &qcfg())?.value)
}

// I0: residue series against the contour integral for three kernels.

fn kernel_id(p: &Params) -> Result<u32> {
    match get(p, "kernel")? as u32 {
        k @ (2 | 3 | 5) => Ok(k),
        k => Err(Error::domain(format!("unknown kernel {k}"))),
    }
}

fn i0_lhs(p: &Params) -> Result<ComplexScalar> {
    let (x, z) = (get(p, "x")?, get(p, "z")?);
    let kernel = kernel_id(p)?;
    let zc = c(z);
    let r = residue_series(
        |s| {
            let n = (-s.re).round() as usize;
            Ok(match kernel {
                2 => hurwitz_zeta_neg_int(n, zc),
                3 => euler_poly(n, zc) * 0.5,
                _ => exp_poly(n, zc) - if n == 0 { (-z).exp() } else { 0.0 },
            })
        },
        x,
        &SeriesConfig::default(),
    )?;
    Ok(r.value)
}

fn i0_rhs(p: &Params) -> Result<ComplexScalar> {
    let (x, z) = (get(p, "x")?, get(p, "z")?);
    let zc = c(z);
    let cfg = zcfg();
    match kernel_id(p)? {
        2 => inverse_on_default_line(|s| hurwitz_zeta(s, zc, &cfg), x),
        3 => inverse_on_default_line(|s| alt_hurwitz_eta(s, zc, &cfg), x),
        _ => inverse_on_default_line(|s| touchard_multiplier(s, z), x),
    }
}

// I1: the master theorem for f = 1, Γ(s+1), 1/(1+s).

fn i1_f(p: &Params) -> Result<fn(ComplexScalar) -> Result<ComplexScalar>> {
    match get(p, "f")? as u32 {
        0 => Ok(|_| Ok(c(1.0))),
        1 => Ok(|s| gamma(s + 1.0)),
        2 => Ok(|s| Ok(1.0 / (s + 1.0))),
        k => Err(Error::domain(format!("unknown master theorem family {k}"))),
    }
}

fn i1_lhs(p: &Params) -> Result<ComplexScalar> {
    let s = c(get(p, "s")?);
    let rep = master_theorem_report(i1_f(p)?, s, &qcfg(), &SeriesConfig::default())?;
    if rep.overlap_mismatch > MAX_OVERLAP_MISMATCH {
        return Err(Error::domain(format!(
            "series and contour continuation of the profile disagree by {:e}",
            rep.overlap_mismatch
        )));
    }
    Ok(rep.lhs.value)
}

fn i1_rhs(p: &Params) -> Result<ComplexScalar> {
    let s = c(get(p, "s")?);
    let g = gamma(s)?;
    match get(p, "f")? as u32 {
        0 => Ok(g),
        1 => Ok(gamma(1.0 - s)? * g),
        _ => Ok(g / (1.0 - s)),
    }
}

fn i2a_lhs(p: &Params) -> Result<ComplexScalar> {
    hurwitz_zeta(c(-(order(p)? as f64)), c(get(p, "z")?), &zcfg())
}

fn i2a_rhs(p: &Params) -> Result<ComplexScalar> {
    let n = order(p)?;
    Ok(-bernoulli_poly(n + 1, c(get(p, "z")?)) / (n + 1) as f64)
}

fn i2b_lhs(p: &Params) -> Result<ComplexScalar> {
    let z = get(p, "z")?;
    forward(|t| bernoulli_kernel(t, z), on_line(p)?)
}

fn i2b_rhs(p: &Params) -> Result<ComplexScalar> {
    let s = on_line(p)?;
    Ok(hurwitz_zeta(s, c(get(p, "z")?), &zcfg())? * gamma(s)?)
}

fn i2c_lhs(p: &Params) -> Result<ComplexScalar> {
    let z = c(get(p, "z")?);
    let cfg = zcfg();
    Ok(residue_series(|s| hurwitz_zeta(s, z, &cfg), get(p, "x")?, &SeriesConfig::default())?.value)
}

fn i2c_rhs(p: &Params) -> Result<ComplexScalar> {
    Ok(c(bernoulli_kernel(get(p, "x")?, get(p, "z")?)))
}

fn i3a_lhs(p: &Params) -> Result<ComplexScalar> {
    alt_hurwitz_eta(c(-(order(p)? as f64)), c(get(p, "z")?), &zcfg())
}

fn i3a_rhs(p: &Params) -> Result<ComplexScalar> {
    Ok(euler_poly(order(p)?, c(get(p, "z")?)) * 0.5)
}

fn i3b_lhs(p: &Params) -> Result<ComplexScalar> {
    let z = get(p, "z")?;
    forward(|t| euler_kernel(t, z), on_line(p)?)
}

fn i3b_rhs(p: &Params) -> Result<ComplexScalar> {
    let s = on_line(p)?;
    Ok(alt_hurwitz_eta(s, c(get(p, "z")?), &zcfg())? * gamma(s)?)
}

fn i4a_lhs(p: &Params) -> Result<ComplexScalar> {
    euler_L(c(-2.0 * order(p)? as f64), &zcfg())
}

fn i4a_rhs(p: &Params) -> Result<ComplexScalar> {
    let m = 2 * order(p)?;
    Ok(c(0.5 * euler_numbers(m).get(m)))
}

fn i4b_lhs(p: &Params) -> Result<ComplexScalar> {
    forward(|x| 1.0 / x.cosh(), on_line(p)?)
}

fn i4b_rhs(p: &Params) -> Result<ComplexScalar> {
    let s = on_line(p)?;
    Ok(2.0 * gamma(s)? * euler_L(s, &zcfg())?)
}

fn i5a_lhs(p: &Params) -> Result<ComplexScalar> {
    Ok(c(exp_poly_dobinski(get(p, "n")?, get(p, "z")?, &SeriesConfig::default())?))
}

fn i5a_rhs(p: &Params) -> Result<ComplexScalar> {
    Ok(exp_poly(order(p)?, c(get(p, "z")?)))
}

fn i5b_lhs(p: &Params) -> Result<ComplexScalar> {
    let z = get(p, "z")?;
    forward(|x| touchard_kernel(x, z), on_line(p)?)
}

fn i5b_rhs(p: &Params) -> Result<ComplexScalar> {
    let s = on_line(p)?;
    Ok(gamma(s)? * touchard_multiplier(s, get(p, "z")?)?)
}

fn i6a_lhs(p: &Params) -> Result<ComplexScalar> {
    Ok(hermite(order(p)?, c(get(p, "z")?)))
}

fn i6a_rhs(p: &Params) -> Result<ComplexScalar> {
    let n = order(p)?;
    let z = get(p, "z")?;
    Ok(c(2f64.powf(n as f64 / 2.0) * (z * z / 2.0).exp() * parabolic_cylinder_int(n, SQRT_2 * z)))
}

fn i6b_lhs(p: &Params) -> Result<ComplexScalar> {
    let z = get(p, "z")?;
    forward(|x| (2.0 * x * z - x * x).exp(), on_line(p)?)
}

/// e^{z²/2}·2^{−s/2}·D_{−s}(−√2z)·Γ(s).
pub(crate) fn hermite_transform(s: ComplexScalar, z: f64) -> Result<ComplexScalar> {
    let d = parabolic_cylinder_neg(s, -SQRT_2 * z, &qcfg())?;
    let two_pow = (-s / 2.0 * 2f64.ln()).exp();
    Ok((z * z / 2.0).exp() * two_pow * d * gamma(s)?)
}

fn i6b_rhs(p: &Params) -> Result<ComplexScalar> {
    hermite_transform(on_line(p)?, get(p, "z")?)
}

fn closed(
    id: &'static str,
    description: &'static str,
    domain: Vec<(&'static str, ParamRange)>,
    lhs: super::Evaluator,
    rhs: super::Evaluator,
) -> IdentitySpec {
    IdentitySpec {
        id,
        description,
        domain,
        lhs,
        rhs,
        tol_abs: CLOSED_ABS,
        tol_rel: CLOSED_REL,
    }
}

fn numerical(
    id: &'static str,
    description: &'static str,
    domain: Vec<(&'static str, ParamRange)>,
    lhs: super::Evaluator,
    rhs: super::Evaluator,
) -> IdentitySpec {
    IdentitySpec {
        id,
        description,
        domain,
        lhs,
        rhs,
        tol_abs: QUAD_ABS,
        tol_rel: QUAD_REL,
    }
}

/// The identity catalogue, ordered by id.
pub fn list_identities() -> &'static [IdentitySpec] {
    static REGISTRY: OnceLock<Vec<IdentitySpec>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        vec![
            numerical(
                "I0",
                "residue series Σ((−1)ⁿ/n!)f(−n)xⁿ equals the inverse Mellin integral of Γ(s)f(s) \
                 (kernel 2: f = ζ(s,z); 3: f = η(s,z); 5: f = e^{−z}Σ z^k k^{−s}/k!)",
                vec![
                    ("kernel", ParamRange::Choice(&[2.0, 3.0, 5.0])),
                    ("x", ParamRange::Real { lo: 0.25, hi: 1.0 }),
                    ("z", ParamRange::Real { lo: 0.5, hi: 2.0 }),
                ],
                i0_lhs,
                i0_rhs,
            ),
            numerical(
                "I1",
                "master theorem ∫x^{s−1}Σf(n)(−x)ⁿ/n! dx = f(−s)Γ(s) (f: 0 → 1, 1 → Γ(s+1), 2 → 1/(1+s))",
                vec![
                    ("f", ParamRange::Choice(&[0.0, 1.0, 2.0])),
                    ("s", ParamRange::Real { lo: 0.2, hi: 0.8 }),
                ],
                i1_lhs,
                i1_rhs,
            ),
            closed(
                "I2a",
                "ζ(−n, z) by Euler–Maclaurin equals −B_{n+1}(z)/(n+1)",
                vec![("n", N_0_20), ("z", Z_BERNOULLI)],
                i2a_lhs,
                i2a_rhs,
            ),
            numerical(
                "I2b",
                "∫t^{s−1}(e^{t(1−z)}/(eᵗ−1) − 1/t)dt = ζ(s,z)Γ(s) on Re s = 1/2",
                vec![("t", T_LINE), ("z", Z_BERNOULLI)],
                i2b_lhs,
                i2b_rhs,
            ),
            numerical(
                "I2c",
                "Σ((−1)ⁿ/n!)ζ(−n,z)xⁿ = e^{x(1−z)}/(eˣ−1) − 1/x",
                vec![("x", ParamRange::Real { lo: 0.1, hi: 2.0 }), ("z", Z_BERNOULLI)],
                i2c_lhs,
                i2c_rhs,
            ),
            closed(
                "I3a",
                "η(−n, z) by Euler–Maclaurin equals Eₙ(z)/2",
                vec![("n", N_0_20), ("z", Z_BERNOULLI)],
                i3a_lhs,
                i3a_rhs,
            ),
            numerical(
                "I3b",
                "∫t^{s−1}e^{t(1−z)}/(eᵗ+1)dt = η(s,z)Γ(s) on Re s = 1/2",
                vec![("t", T_LINE), ("z", Z_BERNOULLI)],
                i3b_lhs,
                i3b_rhs,
            ),
            closed(
                "I4a",
                "L(−2n) equals E₂ₙ/2",
                vec![("n", ParamRange::Int { lo: 0, hi: 8 })],
                i4a_lhs,
                i4a_rhs,
            ),
            numerical(
                "I4b",
                "∫x^{s−1}/cosh x dx = 2Γ(s)L(s) on Re s = 1/2",
                vec![("t", T_LINE)],
                i4b_lhs,
                i4b_rhs,
            ),
            closed(
                "I5a",
                "e^{−z}Σ kⁿz^k/k! equals the Stirling-triangle φₙ(z)",
                vec![("n", ParamRange::Int { lo: 0, hi: 12 }), ("z", Z_TOUCHARD)],
                i5a_lhs,
                i5a_rhs,
            ),
            numerical(
                "I5b",
                "∫x^{s−1}(e^{z(e^{−x}−1)} − e^{−z})dx = Γ(s)e^{−z}Σ z^k k^{−s}/k! on Re s = 1/2",
                vec![("t", T_LINE), ("z", Z_TOUCHARD)],
                i5b_lhs,
                i5b_rhs,
            ),
            closed(
                "I6a",
                "Hₙ(z) = 2^{n/2}e^{z²/2}Dₙ(√2 z)",
                vec![("n", ParamRange::Int { lo: 0, hi: 15 }), ("z", Z_HERMITE)],
                i6a_lhs,
                i6a_rhs,
            ),
            numerical(
                "I6b",
                "∫x^{s−1}e^{2xz−x²}dx = e^{z²/2}2^{−s/2}D_{−s}(−√2 z)Γ(s) on Re s = 1/2",
                vec![("t", T_LINE), ("z", Z_HERMITE)],
                i6b_lhs,
                i6b_rhs,
            ),
        ]
    })
}
