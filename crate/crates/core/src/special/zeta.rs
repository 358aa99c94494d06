use std::f64::consts::PI;

use super::bernoulli_poly;
use crate::error::{Error, Result};
use crate::numerics::{ensure_finite, pochhammer, ComplexScalar};
use crate::trace;

// B_{2j} / (2j)! for j = 1..=40, used by the Euler–Maclaurin correction.
// Kept as literals so the zeta route does not share the Bernoulli recurrence.
const EM_COEFFS: [f64; 40] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.6859949406653103e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
    -1.5174548844682903e-35,
    3.843758125454189e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.247076741820743e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569557e-46,
    -2.5718041582418717e-48,
    6.514456035233815e-50,
    -1.6501309906896525e-51,
    4.179830628539476e-53,
    -1.058763466770291e-54,
    2.6818791912607708e-56,
    -6.793279351107421e-58,
    1.7207577616681404e-59,
    -4.358730329348894e-61,
    1.1040792903684666e-62,
    -2.7966655133781345e-64,
];
const MAX_ORDER: usize = 20;
const N_LIMIT: usize = 1_000_000;

/// Parameters of the Euler–Maclaurin evaluation of ζ(s, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaConfig {
    /// Length N of the direct sum. `None` picks the smallest N at which the
    /// estimated truncation error falls below binary64 rounding.
    pub em_terms: Option<usize>,
    /// Number M of Bernoulli correction terms (at most 20).
    pub em_order: usize,
    /// |s − 1| at or below which ζ reports a pole.
    pub pole_guard: f64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        ZetaConfig {
            em_terms: None,
            em_order: 12,
            pole_guard: 1e-8,
        }
    }
}

fn one() -> ComplexScalar {
    ComplexScalar::new(1.0, 0.0)
}

fn cpow_neg(w: ComplexScalar, s: ComplexScalar) -> ComplexScalar {
    (-s * w.ln()).exp()
}

fn choose_terms(s: ComplexScalar, z: ComplexScalar, order: usize) -> usize {
    // Size of the first omitted correction, |B_{2M+2}/(2M+2)!·(s)_{2M+1}·w^{−s−2M−1}|,
    // against the rounding floor of the terms actually summed.
    let poch: f64 = (0..2 * order + 1).map(|j| (s + j as f64).norm()).product();
    let coeff = EM_COEFFS[order].abs() * poch;
    if coeff == 0.0 {
        return 1;
    }
    let sm1 = (s - 1.0).norm();
    let mut direct = 0.0;
    for n in 1..N_LIMIT {
        direct += cpow_neg(z + (n - 1) as f64, s).norm();
        let w = z + n as f64;
        let lw = w.ln();
        let tail = coeff * (-(s + (2 * order + 1) as f64) * lw).exp().norm();
        let scale = direct + ((one() - s) * lw).exp().norm() / sm1 + 0.5 * (-s * lw).exp().norm();
        if tail <= f64::EPSILON * scale {
            return n;
        }
    }
    N_LIMIT
}

const FOURIER_MIN: usize = 10;

/// ζ(−m, a) for 0 < a ≤ 1 from the Fourier series
/// 2·m!/(2π)^{m+1} Σ_k cos(π(m+1)/2 − 2πka)/k^{m+1}.
fn fourier_neg_int(m: usize, a: f64) -> ComplexScalar {
    let two_pi = 2.0 * PI;
    let mut pref = 2.0 / two_pi;
    for j in 1..=m {
        pref *= j as f64 / two_pi;
    }
    let mut acc = 0.0;
    for k in 1.. {
        let decay = (k as f64).powi(-(m as i32 + 1));
        if decay < 1e-18 {
            break;
        }
        let theta = two_pi * (k as f64 * a).fract();
        let wave = match (m + 1) % 4 {
            0 => theta.cos(),
            1 => theta.sin(),
            2 => -theta.cos(),
            _ => -theta.sin(),
        };
        acc += wave * decay;
    }
    ComplexScalar::new(pref * acc, 0.0)
}

fn terminating_order(s: ComplexScalar) -> Option<usize> {
    if s.im != 0.0 || s.re > 0.0 || s.re.fract() != 0.0 {
        return None;
    }
    let order = (-s.re as usize + 2).div_ceil(2);
    (order <= EM_COEFFS.len()).then_some(order)
}

/// Hurwitz zeta ζ(s, z) continued to all s ≠ 1 by Euler–Maclaurin summation:
///
/// Σ_{k<N} (z+k)^{−s} + w^{1−s}/(s−1) + w^{−s}/2
///   + Σ_{j=1}^{M} B_{2j}/(2j)! · (s)_{2j−1} · w^{−s−2j+1},   w = z + N.
///
/// At negative integers the expansion terminates and is taken at the shifted
/// point w = z − ⌈Re z⌉ + 1; for large order and real z the value at w comes
/// from Hurwitz's Fourier series instead.
pub fn hurwitz_zeta(s: ComplexScalar, z: ComplexScalar, cfg: &ZetaConfig) -> Result<ComplexScalar> {
    trace::record("hurwitz_zeta");
    ensure_finite(s, "zeta argument s")?;
    ensure_finite(z, "zeta argument z")?;
    if z.re <= 0.0 {
        return Err(Error::domain(format!("hurwitz_zeta requires Re(z) > 0, got z = {z}")));
    }
    if (s - 1.0).norm() <= cfg.pole_guard {
        return Err(Error::Pole(s));
    }
    if cfg.em_order == 0 || cfg.em_order > MAX_ORDER {
        return Err(Error::domain(format!("em_order must be in 1..={MAX_ORDER}")));
    }
    let mut sum = ComplexScalar::default();
    let (n, w, order) = match (cfg.em_terms, terminating_order(s)) {
        (Some(0), _) => return Err(Error::domain("em_terms must be at least 1")),
        (Some(n), _) => (n, z + n as f64, cfg.em_order),
        // At s = −m the correction series stops after (m+2)/2 terms, so the
        // expansion can be taken at any point; moving it into (0, 1] leaves
        // the least cancellation.
        (None, Some(order)) => {
            let shift = z.re.ceil() - 1.0;
            let w = z - shift;
            for k in 0..shift as usize {
                sum -= cpow_neg(w + k as f64, s);
            }
            let m = -s.re as usize;
            if m >= FOURIER_MIN && w.im == 0.0 {
                return ensure_finite(sum + fourier_neg_int(m, w.re), "zeta value");
            }
            (0, w, order.max(cfg.em_order))
        }
        (None, None) => {
            let n = choose_terms(s, z, cfg.em_order);
            (n, z + n as f64, cfg.em_order)
        }
    };
    for k in 0..n {
        sum += cpow_neg(z + k as f64, s);
    }
    let w_neg_s = cpow_neg(w, s);
    sum += w_neg_s * w / (s - 1.0) + 0.5 * w_neg_s;

    // (s)_{2j−1} · w^{−s−2j+1}, advanced by (s+2j−1)(s+2j)/w² per step.
    let inv_w2 = one() / (w * w);
    let mut factor = pochhammer(s, 1) * w_neg_s / w;
    for (j, c) in EM_COEFFS.iter().enumerate().take(order) {
        sum += *c * factor;
        let k = (2 * j + 1) as f64;
        factor *= (s + k) * (s + k + 1.0) * inv_w2;
    }
    ensure_finite(sum, "zeta value")
}

/// ζ(−n, z) = −B_{n+1}(z)/(n+1).
pub fn hurwitz_zeta_neg_int(n: usize, z: ComplexScalar) -> ComplexScalar {
    trace::record("hurwitz_zeta_neg_int");
    -bernoulli_poly(n + 1, z) / (n + 1) as f64
}

const NEAR_ONE: f64 = 1e-4;
const TAYLOR_TERMS: usize = 4;
const CIRCLE_NODES: usize = 16;

/// Evaluates an entire function built from ζ differences. Near s = 1 the
/// two poles cancel, so the value comes from a Taylor expansion whose
/// coefficients are read off samples on a circle around 1.
fn entire_near_one<F>(s: ComplexScalar, cfg: &ZetaConfig, f: F) -> Result<ComplexScalar>
where
    F: Fn(ComplexScalar) -> Result<ComplexScalar>,
{
    let ds = s - 1.0;
    if ds.norm() >= NEAR_ONE {
        return f(s);
    }
    let radius = 1e-2f64.max(2.0 * cfg.pole_guard);
    let mut coeffs = [ComplexScalar::default(); TAYLOR_TERMS];
    for j in 0..CIRCLE_NODES {
        let theta = 2.0 * PI * j as f64 / CIRCLE_NODES as f64;
        let u = ComplexScalar::from_polar(1.0, theta);
        let v = f(one() + radius * u)?;
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c += v * u.powu(k as u32).conj();
        }
    }
    let mut acc = ComplexScalar::default();
    for (k, c) in coeffs.iter().enumerate().rev() {
        let ck = *c / (CIRCLE_NODES as f64 * radius.powi(k as i32));
        acc = acc * ds + ck;
    }
    Ok(acc)
}

/// Alternating Hurwitz zeta η(s, z) = Σ (−1)ⁿ (n+z)^{−s}, through the
/// even/odd split 2^{−s}[ζ(s, z/2) − ζ(s, (z+1)/2)].
pub fn alt_hurwitz_eta(s: ComplexScalar, z: ComplexScalar, cfg: &ZetaConfig) -> Result<ComplexScalar> {
    trace::record("alt_hurwitz_eta");
    ensure_finite(s, "eta argument s")?;
    ensure_finite(z, "eta argument z")?;
    if z.re <= 0.0 {
        return Err(Error::domain(format!("alt_hurwitz_eta requires Re(z) > 0, got z = {z}")));
    }
    let a = z / 2.0;
    let b = (z + 1.0) / 2.0;
    entire_near_one(s, cfg, |s| {
        let diff = hurwitz_zeta(s, a, cfg)? - hurwitz_zeta(s, b, cfg)?;
        Ok(cpow_neg(ComplexScalar::new(2.0, 0.0), s) * diff)
    })
}

/// Euler's L-function (Dirichlet beta) Σ (−1)ⁿ (2n+1)^{−s}, as
/// 4^{−s}[ζ(s, ¼) − ζ(s, ¾)].
#[allow(non_snake_case)]
pub fn euler_L(s: ComplexScalar, cfg: &ZetaConfig) -> Result<ComplexScalar> {
    trace::record("euler_L");
    ensure_finite(s, "L argument")?;
    let quarter = ComplexScalar::new(0.25, 0.0);
    let three_quarters = ComplexScalar::new(0.75, 0.0);
    entire_near_one(s, cfg, |s| {
        let diff = hurwitz_zeta(s, quarter, cfg)? - hurwitz_zeta(s, three_quarters, cfg)?;
        Ok(cpow_neg(ComplexScalar::new(4.0, 0.0), s) * diff)
    })
}
