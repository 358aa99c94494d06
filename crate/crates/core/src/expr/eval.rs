use std::collections::HashMap;
use std::f64::consts::{E, PI};

use super::parser::{BinOp, Builtin, Expr};
use crate::error::{Error, Result};
use crate::numerics::{gamma, ComplexScalar, SeriesConfig};
use crate::special::{
    alt_hurwitz_eta, euler_L, exp_poly, exp_poly_dobinski, hermite, hurwitz_zeta, ZetaConfig,
};

/// Evaluates `expr` with variables taken from `bindings`.
pub fn evaluate(expr: &Expr, bindings: &HashMap<String, ComplexScalar>) -> Result<ComplexScalar> {
    evaluate_with(expr, &|name: &str| bindings.get(name).copied())
}

/// Evaluates `expr`, resolving variables through `lookup`. Bindings take
/// precedence over the constants `pi`, `e` and `i`.
pub fn evaluate_with(expr: &Expr, lookup: &dyn Fn(&str) -> Option<ComplexScalar>) -> Result<ComplexScalar> {
    let at = |position: usize| move |e: Error| wrap(e, position);
    let v = match expr {
        Expr::Literal { value, .. } => *value,
        Expr::Variable { name, position } => match lookup(name) {
            Some(v) => v,
            None => constant(name).ok_or_else(|| wrap(Error::UnboundVariable(name.clone()), *position))?,
        },
        // 0 − v keeps a real operand on the +0 side of the log branch cut
        Expr::Neg { operand, .. } => ComplexScalar::default() - evaluate_with(operand, lookup)?,
        Expr::Binary { op, lhs, rhs, position } => {
            let a = evaluate_with(lhs, lookup)?;
            let b = evaluate_with(rhs, lookup)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == ComplexScalar::new(0.0, 0.0) {
                        return Err(wrap(Error::domain("division by zero"), *position));
                    }
                    a / b
                }
                BinOp::Pow => power(a, b),
            }
        }
        Expr::Call { func, args, position } => {
            let vals = args
                .iter()
                .map(|a| evaluate_with(a, lookup))
                .collect::<Result<Vec<_>>>()?;
            call(*func, &vals).map_err(at(*position))?
        }
    };
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(wrap(Error::Overflow("non-finite value".into()), expr.position()));
    }
    Ok(v)
}

fn wrap(e: Error, position: usize) -> Error {
    match e {
        Error::At { .. } => e,
        e => Error::At {
            position,
            source: Box::new(e),
        },
    }
}

fn constant(name: &str) -> Option<ComplexScalar> {
    match name {
        "pi" => Some(ComplexScalar::new(PI, 0.0)),
        "e" => Some(ComplexScalar::new(E, 0.0)),
        "i" => Some(ComplexScalar::new(0.0, 1.0)),
        _ => None,
    }
}

fn power(a: ComplexScalar, b: ComplexScalar) -> ComplexScalar {
    if b.im == 0.0 && b.re.fract() == 0.0 && b.re.abs() <= 64.0 {
        return a.powi(b.re as i32);
    }
    if a == ComplexScalar::new(0.0, 0.0) {
        return if b.re > 0.0 {
            a
        } else {
            ComplexScalar::new(f64::NAN, f64::NAN)
        };
    }
    (b * a.ln()).exp()
}

fn nonneg_int(z: ComplexScalar, what: &str) -> Result<usize> {
    if z.im == 0.0 && z.re >= 0.0 && z.re.fract() == 0.0 && z.re <= 1e6 {
        Ok(z.re as usize)
    } else {
        Err(Error::domain(format!("{what} must be a non-negative integer, got {z}")))
    }
}

fn real(z: ComplexScalar, what: &str) -> Result<f64> {
    if z.im == 0.0 {
        Ok(z.re)
    } else {
        Err(Error::domain(format!("{what} must be real, got {z}")))
    }
}

fn call(func: Builtin, a: &[ComplexScalar]) -> Result<ComplexScalar> {
    let zc = ZetaConfig::default();
    let v = match func {
        Builtin::Gamma => gamma(a[0])?,
        Builtin::Sin => a[0].sin(),
        Builtin::Cos => a[0].cos(),
        Builtin::Exp => a[0].exp(),
        Builtin::Log => {
            if a[0] == ComplexScalar::new(0.0, 0.0) {
                return Err(Error::domain("log of zero"));
            }
            a[0].ln()
        }
        Builtin::Cosh => a[0].cosh(),
        Builtin::Sinh => a[0].sinh(),
        Builtin::Tanh => a[0].tanh(),
        Builtin::Sqrt => a[0].sqrt(),
        Builtin::Abs => ComplexScalar::new(a[0].norm(), 0.0),
        Builtin::Re => ComplexScalar::new(a[0].re, 0.0),
        Builtin::Im => ComplexScalar::new(a[0].im, 0.0),
        Builtin::Zeta => hurwitz_zeta(a[0], a[1], &zc)?,
        Builtin::Eta => alt_hurwitz_eta(a[0], a[1], &zc)?,
        Builtin::L => euler_L(a[0], &zc)?,
        Builtin::Hermite => hermite(nonneg_int(a[0], "hermite order")?, a[1]),
        Builtin::Bell => match nonneg_int(a[0], "bell order") {
            Ok(n) => exp_poly(n, a[1]),
            Err(_) => {
                let lambda = real(a[0], "bell order")?;
                let z = real(a[1], "bell argument")?;
                ComplexScalar::new(exp_poly_dobinski(lambda, z, &SeriesConfig::default())?, 0.0)
            }
        },
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_str;

    fn ev(src: &str, vars: &[(&str, ComplexScalar)]) -> Result<ComplexScalar> {
        let map = vars.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        evaluate(&parse_str(src).unwrap(), &map)
    }

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn arithmetic_and_constants() {
        assert_eq!(ev("2+3*4", &[]).unwrap(), c(14.0, 0.0));
        assert_eq!(ev("-2^2", &[]).unwrap(), c(-4.0, 0.0));
        assert_eq!(ev("2^3^2", &[]).unwrap(), c(512.0, 0.0));
        assert!((ev("exp(i*pi)", &[]).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((ev("log(e)", &[]).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(ev("1+2i", &[]).unwrap(), c(1.0, 2.0));
        assert_eq!(ev("pi", &[("pi", c(3.0, 0.0))]).unwrap(), c(3.0, 0.0));
    }

    #[test]
    fn builtin_values() {
        let g = ev("gamma(s)", &[("s", c(0.5, 0.0))]).unwrap();
        assert!((g.re - PI.sqrt()).abs() < 1e-14);
        let z = ev("zeta(2, 1)", &[]).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-13);
        assert_eq!(ev("hermite(3, x)", &[("x", c(2.0, 0.0))]).unwrap(), c(40.0, 0.0));
        assert_eq!(ev("bell(3, 1)", &[]).unwrap(), c(5.0, 0.0));
        let b = ev("bell(2.5, 1)", &[]).unwrap();
        assert!(b.re > 2.0 && b.re < 5.0);
        assert!((ev("L(1)", &[]).unwrap().re - PI / 4.0).abs() < 1e-13);
    }

    #[test]
    fn pow_branch() {
        let v = ev("(-8)^(1/3)", &[]).unwrap();
        assert!((v - c(1.0, 3f64.sqrt())).norm() < 1e-13, "{v}");
        assert_eq!(ev("0^2", &[]).unwrap(), c(0.0, 0.0));
        assert!(ev("0^(-0.5)", &[]).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = ev("1 + y", &[]).unwrap_err();
        assert_eq!(e, Error::At { position: 4, source: Box::new(Error::UnboundVariable("y".into())) });
        let e = ev("2 * gamma(0)", &[]).unwrap_err();
        assert!(matches!(e, Error::At { position: 4, .. }));
        assert!(matches!(e.root(), Error::Pole(_)));
        let e = ev("1/(x-x)", &[("x", c(1.0, 0.0))]).unwrap_err();
        assert!(matches!(e, Error::At { position: 1, .. }));
        assert!(ev("hermite(1.5, 1)", &[]).is_err());
        assert!(ev("exp(1000)", &[]).is_err());
    }
}
