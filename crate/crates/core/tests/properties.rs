mod common;

use proptest::prelude::*;

use evoalg::classify::{classify_with_witness, homomorphism_residual, AlgebraClass, Tag, HOM_TOL};
use evoalg::expr::{self, BinOp, Expr, Func, Var};
use evoalg::rb::rb_residual_weighted;
use evoalg::rotabaxter::catalog::table;
use evoalg::rotabaxter::poly::{parse_equation, Poly};
use evoalg::scalar::{c, Field, Scalar};
use evoalg::{multiply, AlgebraElement, Matrix, StructureMatrix, Weight};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| c(re, im))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    (0.3..2.0f64, 0.0..std::f64::consts::TAU).prop_map(|(m, a)| Scalar::from_polar(m, a))
}

fn element(n: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(scalar(), n).prop_map(AlgebraElement)
}

fn algebra(n: usize) -> impl Strategy<Value = StructureMatrix> {
    prop::collection::vec(scalar(), n * n)
        .prop_map(move |v| StructureMatrix::new(Matrix::new(n, v).unwrap()))
}

fn close(x: &AlgebraElement, y: &AlgebraElement, tol: f64) -> bool {
    x.sub(y).max_norm() <= tol * (1.0 + x.max_norm().max(y.max_norm()))
}

proptest! {
    #[test]
    fn product_is_commutative(a in algebra(3), x in element(3), y in element(3)) {
        let xy = multiply(&a, &x, &y).unwrap();
        let yx = multiply(&a, &y, &x).unwrap();
        prop_assert!(close(&xy, &yx, 1e-14));
    }

    #[test]
    fn product_is_bilinear(a in algebra(2), x in element(2), y in element(2), z in element(2), k in scalar()) {
        let lhs = multiply(&a, &x.scale(k).add(&y), &z).unwrap();
        let rhs = multiply(&a, &x, &z).unwrap().scale(k).add(&multiply(&a, &y, &z).unwrap());
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn basis_squares_are_rows(a in algebra(3), i in 0usize..3) {
        let e = AlgebraElement::basis(3, i);
        let sq = multiply(&a, &e, &e).unwrap();
        prop_assert_eq!(sq.coords(), a.matrix().row(i));
    }
}

/// One concrete operator per weight-1 family, taken at fixed parameters.
fn weight_one_members() -> Vec<(StructureMatrix, Matrix)> {
    let p = [c(0.37, -0.21), c(-0.64, 0.45)];
    table(Weight::One)
        .iter()
        .filter_map(|f| f.members(&p[..f.free.len()], 1e-3).ok())
        .flatten()
        .map(|m| (m.algebra, m.operator))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weight_normalization(idx in 0usize..1000, mu in nonzero_scalar()) {
        // R of weight 1 gives mu R of weight mu, and back.
        let members = weight_one_members();
        let (a, op) = &members[idx % members.len()];
        let scaled = op.scale(mu);
        let res = rb_residual_weighted(a, &scaled, mu).unwrap().max_norm();
        prop_assert!(res < 1e-9 * (1.0 + scaled.max_norm()).powi(2), "residual {res}");
        let back = scaled.scale(mu.inv());
        prop_assert!(rb_residual_weighted(a, &back, c(1.0, 0.0)).unwrap().max_norm() < 1e-9);
    }
}

fn class_strategy() -> impl Strategy<Value = AlgebraClass> {
    (1usize..7, scalar(), scalar()).prop_filter_map("degenerate parameters", |(i, x, y)| {
        let tag = Tag::from_index(i)?;
        let params = match tag.param_count(Field::Complex) {
            0 => vec![],
            1 => vec![x],
            _ => vec![x, y],
        };
        let class = AlgebraClass::new(Field::Complex, tag, params).ok()?;
        let ok = match tag {
            Tag::E5 => (c(1.0, 0.0) - x * y).norm() > 0.05,
            _ => true,
        };
        ok.then(|| class.canonicalize())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_invariant_under_rescale_and_permutation(
        class in class_strategy(),
        d0 in nonzero_scalar(),
        d1 in nonzero_scalar(),
        swap in any::<bool>(),
    ) {
        let canon = class.canonical_matrix();
        let perm = if swap { [1, 0] } else { [0, 1] };
        let moved = canon.rescale_permute(&[d0, d1], &perm).unwrap();
        let got = classify_with_witness(&moved, Field::Complex).unwrap();
        prop_assert!(got.class.approx_eq(&class, 1e-6), "{} became {}", class, got.class);
        // The witness maps the canonical algebra onto the input.
        let res = homomorphism_residual(&moved, &got.class.canonical_matrix(), &got.witness);
        prop_assert!(res < HOM_TOL, "witness residual {res}");
        let inv = got.witness.inverse();
        let back = homomorphism_residual(&got.class.canonical_matrix(), &moved, &inv);
        prop_assert!(back < 1e-12, "inverse witness residual {back}");
    }
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..50).prop_map(|n| Expr::Num(n as f64 / 4.0)),
        Just(Expr::Var(Var::S)),
        Just(Expr::Var(Var::T)),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        let op = prop_oneof![
            Just(BinOp::Add),
            Just(BinOp::Sub),
            Just(BinOp::Mul),
            Just(BinOp::Div),
            Just(BinOp::Pow)
        ];
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (op, inner.clone(), inner.clone()).prop_map(|(o, l, r)| Expr::Bin(
                o,
                Box::new(l),
                Box::new(r)
            )),
            (prop::sample::select(Func::ALL.to_vec()), inner)
                .prop_map(|(f, a)| Expr::Call(f, Box::new(a))),
        ]
    })
}

fn same_value(a: Result<f64, expr::EvalError>, b: Result<f64, expr::EvalError>) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => x == y || (x.is_nan() && y.is_nan()),
        (Err(_), Err(_)) => true,
        _ => false,
    }
}

proptest! {
    #[test]
    fn parser_never_panics(text in "[-+*/^()st0-9. a-z]{0,40}") {
        let _ = expr::parse(&text);
    }

    #[test]
    fn rendering_keeps_structure(e in expr_strategy()) {
        let pretty = expr::parse(&e.to_string()).unwrap();
        let explicit = expr::parse(&e.render_explicit()).unwrap();
        prop_assert_eq!(&pretty, &explicit, "{} vs {}", e, e.render_explicit());
        for (s, t) in [(0.5, 1.5), (1.25, 2.0), (2.0, 3.5)] {
            prop_assert!(same_value(pretty.eval(s, t), e.eval(s, t)), "{} at ({s}, {t})", e);
        }
    }
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((-4i32..5), prop::collection::vec(0u32..3, 4)), 1..6).prop_map(|terms| {
        let mut p = Poly::zero(4);
        for (k, exps) in terms {
            let mut t = Poly::constant(4, c(k as f64, 0.0));
            for (v, e) in exps.into_iter().enumerate() {
                t = t.mul(&Poly::var(4, v).pow(e));
            }
            p = p.add(&t);
        }
        p
    })
}

proptest! {
    #[test]
    fn poly_ascii_round_trip(p in poly_strategy()) {
        let names: Vec<String> = ["a", "b", "c", "d"].map(String::from).to_vec();
        let text = p.render_ascii(&names);
        let back = parse_equation(&text, &["a", "b", "c", "d"]).unwrap();
        prop_assert!(back.approx_eq(&p, 1e-12), "{text}");
    }
}

#[test]
fn sample_algebras_classify_as_named() {
    for (name, a) in common::sample_algebras() {
        let class = classify_with_witness(&a, Field::Complex).unwrap().class;
        let want = AlgebraClass::parse(&name, Field::Complex)
            .unwrap()
            .canonicalize();
        assert!(class.approx_eq(&want, 1e-9), "{name}: {class}");
    }
}
