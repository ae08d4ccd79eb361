use proptest::prelude::*;

use schrodet::expr::{Expr, Func};
use schrodet::{Approach, PiecewisePotential};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0.0f64..5.0).prop_map(Expr::Num),
        Just(Expr::X),
        Just(Expr::Pi),
    ]
}

/// Expressions defined and smooth for every real x: square roots and logs
/// get `1 + a^2` arguments, divisions `1 + b^2` denominators.
fn smooth_expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 24, 2, |inner| {
        let one_plus_sq = |e: Expr| {
            Expr::Add(
                Box::new(Expr::Num(1.0)),
                Box::new(Expr::Pow(Box::new(e), 2.0)),
            )
        };
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(move |(a, b)| Expr::Div(Box::new(a), Box::new(one_plus_sq(b)))),
            (inner.clone(), 0u32..4).prop_map(|(a, p)| Expr::Pow(Box::new(a), p as f64)),
            inner.clone().prop_map(|a| Expr::Call(Func::Sin, Box::new(a))),
            inner.clone().prop_map(|a| Expr::Call(Func::Cos, Box::new(a))),
            inner
                .clone()
                .prop_map(move |a| Expr::Call(Func::Sqrt, Box::new(one_plus_sq(a)))),
            inner
                .clone()
                .prop_map(move |a| Expr::Call(Func::Log, Box::new(one_plus_sq(a)))),
            inner.prop_map(|a| Expr::Call(
                Func::Exp,
                Box::new(Expr::Call(Func::Sin, Box::new(a)))
            )),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn display_then_parse_is_identity(e in smooth_expr()) {
        let text = e.to_string();
        let back = Expr::parse(&text).unwrap();
        prop_assert_eq!(back, e, "source: {}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn derivative_matches_central_difference(e in smooth_expr(), x in -0.25f64..1.25) {
        let h = 1e-6;
        let fd = (e.eval(x + h) - e.eval(x - h)) / (2.0 * h);
        let d = e.derivative().eval(x);
        prop_assume!(fd.is_finite() && d.is_finite());
        let scale = d.abs().max(e.eval(x).abs()).max(1.0);
        prop_assert!((d - fd).abs() <= 1e-6 * scale, "{} at {}: {} vs {}", e, x, d, fd);
    }

    #[test]
    fn continuous_boundaries_agree(
        a in 3.0f64..5.0,
        b in -0.5f64..0.5,
        slope in -0.5f64..0.5,
        c in 0.05f64..0.95,
    ) {
        let join = a + b * c;
        let src = format!(
            "piece [-0.25, {c:?}]: {a:?} + {b:?}*x\n\
             piece [{c:?}, 1.25]: {join:?} + {slope:?}*(x - {c:?})"
        );
        let f = PiecewisePotential::parse(&src).unwrap();
        prop_assert!(!f.has_jumps());
        let left = f.eval(c, Approach::Left).unwrap();
        let right = f.eval(c, Approach::Right).unwrap();
        prop_assert!((left - right).abs() <= 1e-12 * left.abs());
        prop_assert_eq!(f.eval(c, Approach::At).unwrap(), left);
    }
}
