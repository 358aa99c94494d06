use std::collections::BTreeMap;
use std::f64::consts::PI;

use mellin_core::expr::{parse_str, BinOp, Builtin, Expr};
use mellin_core::format_f64;
use mellin_core::harness::{CheckResult, Lcg, Report};
use mellin_core::numerics::{gamma, log_gamma, sin_pi, sum_series};
use mellin_core::special::{
    bernoulli_poly, bernoulli_poly_coeffs, euler_poly, euler_poly_coeffs, exp_poly, exp_poly_dobinski, hermite,
    hurwitz_zeta, ZetaConfig,
};
use mellin_core::{ComplexScalar, SeriesConfig};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

fn rel(a: ComplexScalar, b: ComplexScalar) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

/// Complex points at distance at least 0.05 from the non-positive integers.
fn off_poles(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = ComplexScalar> {
    (re, im)
        .prop_map(|(x, y)| c(x, y))
        .prop_filter("near a pole of Γ", |s| {
            s.re > 0.5 || (s - c(s.re.round(), 0.0)).norm() >= 0.05
        })
}

/// Σ|cₖ|·|z|ᵏ, the scale against which rounding in a polynomial is judged.
fn poly_scale(coeffs: &[f64], z: ComplexScalar) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gamma_recurrence(s in off_poles(-15.0..15.0, -10.0..10.0)) {
        let lhs = gamma(s + 1.0).unwrap();
        let rhs = s * gamma(s).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "s={s} {lhs} {rhs}");
    }

    #[test]
    fn gamma_reflection(s in off_poles(-10.0..10.0, -5.0..5.0).prop_filter("pole of Γ(1−s)", |s| {
        s.re < 0.5 || (s - c(s.re.round(), 0.0)).norm() >= 0.05
    })) {
        let lhs = gamma(s).unwrap() * gamma(c(1.0, 0.0) - s).unwrap();
        let rhs = c(PI, 0.0) / sin_pi(s);
        prop_assert!(rel(lhs, rhs) < 1e-12, "s={s}");
    }

    #[test]
    fn gamma_is_real_on_the_real_axis(x in (-20.0..30.0f64).prop_filter("pole", |x| *x > 0.5 || (x - x.round()).abs() >= 0.05)) {
        let g = gamma(c(x, 0.0)).unwrap();
        prop_assert_eq!(g.im, 0.0);
    }

    #[test]
    fn log_gamma_exponentiates_to_gamma(s in off_poles(0.1..40.0, -20.0..20.0)) {
        let lhs = log_gamma(s).unwrap().exp();
        let rhs = gamma(s).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-11, "s={s}");
    }

    #[test]
    fn hurwitz_shift(
        s in (-4.0..4.0f64, -6.0..6.0f64).prop_map(|(a, b)| c(a, b)).prop_filter("pole", |s| (s - 1.0).norm() > 0.1),
        z in 0.3..3.0f64,
    ) {
        let cfg = ZetaConfig::default();
        let z = c(z, 0.0);
        let a = hurwitz_zeta(s, z, &cfg).unwrap();
        let b = hurwitz_zeta(s, z + 1.0, &cfg).unwrap();
        let p = (-s * z.ln()).exp();
        let scale = a.norm().max(p.norm());
        prop_assert!((a - b - p).norm() <= 1e-11 * scale, "s={s} z={z}");
    }

    #[test]
    fn bernoulli_symmetry(n in 0usize..18, re in -1.5..1.5f64, im in -1.5..1.5f64) {
        let z = c(re, im);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = bernoulli_poly(n, c(1.0, 0.0) - z);
        let rhs = bernoulli_poly(n, z) * sign;
        let scale = poly_scale(bernoulli_poly_coeffs(n).coeffs(), c(1.0, 0.0) + z.norm());
        prop_assert!((lhs - rhs).norm() <= 1e-13 * scale.max(1.0), "n={n} z={z}");
    }

    #[test]
    fn euler_symmetry(n in 0usize..18, re in -1.5..1.5f64, im in -1.5..1.5f64) {
        let z = c(re, im);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = euler_poly(n, c(1.0, 0.0) - z);
        let rhs = euler_poly(n, z) * sign;
        let scale = poly_scale(euler_poly_coeffs(n).coeffs(), c(1.0, 0.0) + z.norm());
        prop_assert!((lhs - rhs).norm() <= 1e-13 * scale.max(1.0), "n={n} z={z}");
    }

    #[test]
    fn hermite_parity(n in 0usize..40, re in -4.0..4.0f64, im in -4.0..4.0f64) {
        let z = c(re, im);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(hermite(n, -z), hermite(n, z) * sign);
    }

    #[test]
    fn exp_poly_binomial_recurrence(n in 0usize..15, z in 0.01..5.0f64) {
        let z = c(z, 0.0);
        let mut binom = 1.0;
        let mut sum = c(0.0, 0.0);
        for k in 0..=n {
            sum += exp_poly(k, z) * binom;
            binom = binom * (n - k) as f64 / (k + 1) as f64;
        }
        prop_assert!(rel(exp_poly(n + 1, z), z * sum) < 1e-12);
    }

    #[test]
    fn dobinski_matches_exp_poly_at_integers(n in 0usize..12, z in 0.1..6.0f64) {
        let series = exp_poly_dobinski(n as f64, z, &SeriesConfig::default()).unwrap();
        let poly = exp_poly(n, c(z, 0.0)).re;
        prop_assert!((series - poly).abs() <= 1e-10 * poly.abs(), "n={n} z={z}");
    }

    #[test]
    fn geometric_series(r in -0.9..0.9f64, phase in 0.0..(2.0 * PI)) {
        let q = ComplexScalar::from_polar(r, phase);
        let sum = sum_series(|n| Ok(q.powu(n as u32)), &SeriesConfig::default()).unwrap();
        let exact = c(1.0, 0.0) / (c(1.0, 0.0) - q);
        prop_assert!(rel(sum.value, exact) < 1e-11);
        prop_assert!((sum.value - exact).norm() <= sum.error_estimate + 1e-11 * exact.norm());
    }

    #[test]
    fn formatted_floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let text = format_f64(x);
        prop_assert_eq!(text.parse::<f64>().unwrap(), x);
    }

    #[test]
    fn expression_text_round_trips(tree in expr_tree()) {
        let text = tree.to_string();
        let back = parse_str(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, tree);
    }

    #[test]
    fn report_json_round_trips(results in prop::collection::vec(check_result(), 0..8), seed in any::<u64>()) {
        let report = Report::new(seed, results);
        let text = report.to_json();
        prop_assert_eq!(Report::from_json(&text).unwrap(), report);
    }

    #[test]
    fn lcg_is_deterministic_and_in_unit_interval(seed in any::<u64>()) {
        let mut a = Lcg::new(seed);
        let mut b = Lcg::new(seed);
        for _ in 0..64 {
            let u = a.uniform();
            prop_assert!((0.0..1.0).contains(&u));
            prop_assert_eq!(u.to_bits(), b.uniform().to_bits());
        }
    }
}

fn literal() -> impl Strategy<Value = ComplexScalar> {
    let magnitude = prop_oneof![
        0.0..1000.0f64,
        (1u32..4000).prop_map(|k| k as f64 / 8.0),
        any::<f64>().prop_filter("finite", |x| x.is_finite()).prop_map(f64::abs),
    ];
    (magnitude, any::<bool>()).prop_map(|(m, imaginary)| if imaginary { c(0.0, m) } else { c(m, 0.0) })
}

fn expr_tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        literal().prop_map(|value| Expr::Literal { value, position: 0 }),
        prop::sample::select(vec!["s", "x", "z", "pi", "e", "i", "t2"]).prop_map(|n| Expr::Variable {
            name: n.to_string(),
            position: 0,
        }),
    ];
    leaf.prop_recursive(5, 48, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg {
                operand: Box::new(e),
                position: 0,
            }),
            (
                prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Pow]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, l, r)| Expr::Binary {
                    op,
                    lhs: Box::new(l),
                    rhs: Box::new(r),
                    position: 0,
                }),
            (prop::sample::select(Builtin::ALL.to_vec()), prop::collection::vec(inner, 3)).prop_map(|(func, mut args)| {
                args.truncate(func.arity());
                Expr::Call {
                    func,
                    args,
                    position: 0,
                }
            }),
        ]
    })
}

fn finite() -> impl Strategy<Value = f64> {
    any::<f64>().prop_filter("finite", |x| x.is_finite())
}

fn check_result() -> impl Strategy<Value = CheckResult> {
    let complex = || (finite(), finite()).prop_map(|(re, im)| c(re, im));
    (
        prop::option::of(finite()),
        "I[0-9][a-c]?",
        prop::option::of(complex()),
        prop::option::of("[ -~]{0,20}"),
        prop::collection::btree_map("[a-z]", finite(), 0..3),
        any::<bool>(),
        prop::option::of(finite()),
        prop::option::of(complex()),
    )
        .prop_map(|(abs_err, id, lhs, note, params, pass, rel_err, rhs)| CheckResult {
            abs_err,
            id,
            lhs,
            note,
            params: params.into_iter().collect::<BTreeMap<_, _>>(),
            pass,
            rel_err,
            rhs,
        })
}
