use crate::error::{Error, Result};
use crate::numerics::{ensure_finite, gamma, integrate_halfline, ComplexScalar, QuadratureConfig};
use crate::trace;

/// Physicists' Hermite polynomial by H_{n+1} = 2z·Hₙ − 2n·H_{n−1}.
pub fn hermite(n: usize, z: ComplexScalar) -> ComplexScalar {
    trace::record("hermite");
    let mut prev = ComplexScalar::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Weber function Dₙ(x) of nonnegative integer order, by
/// D_{ν+1} = x·D_ν − ν·D_{ν−1} from D₀ = e^{−x²/4}, D₁ = x·e^{−x²/4}.
pub fn parabolic_cylinder_int(n: usize, x: f64) -> f64 {
    trace::record("parabolic_cylinder_int");
    let d0 = (-x * x / 4.0).exp();
    if n == 0 {
        return d0;
    }
    let (mut prev, mut cur) = (d0, x * d0);
    for nu in 1..n {
        let next = x * cur - nu as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// D_{−s}(x) for Re s > 0 from
/// D_{−s}(x) = e^{−x²/4}/Γ(s) · ∫₀^∞ e^{−xt − t²/2} t^{s−1} dt.
pub fn parabolic_cylinder_neg(s: ComplexScalar, x: f64, cfg: &QuadratureConfig) -> Result<ComplexScalar> {
    trace::record("parabolic_cylinder_neg");
    ensure_finite(s, "order")?;
    if s.re <= 0.0 || !x.is_finite() {
        return Err(Error::domain(format!(
            "parabolic_cylinder_neg requires Re(s) > 0 and finite x (s = {s}, x = {x})"
        )));
    }
    let sm1 = s - 1.0;
    let integral = integrate_halfline(
        |t| {
            let ln_t = t.ln();
            Ok((sm1 * ln_t - x * t - 0.5 * t * t).exp())
        },
        cfg,
    )?;
    ensure_finite((-x * x / 4.0).exp() * integral.value / gamma(s)?, "parabolic cylinder value")
}
