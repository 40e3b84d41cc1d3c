mod common;

use std::fs;
use std::path::Path;

use evoalg::cea::dynamics::{classify_dynamics, expected_class, witness};
use evoalg::cea::verify::{verify_cantor, Delta, ScalarEquation};
use evoalg::cea::{property_diagram, CeaConfig, CellLabel, FamilyId, Property, TimePair, Window};
use evoalg::classify::{homomorphism_residual, AlgebraClass, Tag, HOM_TOL};
use evoalg::expr;
use evoalg::scalar::Field;

fn config(name: &str) -> CeaConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name);
    CeaConfig::parse(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn example_configs_load() {
    for i in 1..=8 {
        let cfg = config(&format!("m{i}.toml"));
        assert_eq!(cfg.spec.id(), FamilyId::ALL[i]);
    }
    assert_eq!(config("m5.toml").verify.seed, 7);
}

#[test]
fn witnesses_hold_across_instances() {
    for spec in common::chain_instances() {
        for (s, t) in [(0.5, 1.0), (1.5, 2.5), (2.5, 4.5), (3.5, 7.0)] {
            let p = TimePair::new(s, t).unwrap();
            let Some(tag) = expected_class(&spec, p).unwrap() else {
                continue;
            };
            let canon = AlgebraClass::simple(Field::Complex, tag).canonical_matrix();
            let w = witness(&spec, p).unwrap();
            let res = homomorphism_residual(&spec.matrix(p).unwrap(), &canon, &w);
            assert!(res < HOM_TOL, "{} at ({s}, {t}): {res}", spec.id());
        }
    }
}

#[test]
fn real_field_splits_e2_by_sign() {
    // e1e1 = rho(s) phi(t) e2, e2e2 = (phi(t)/phi(s)) e2. Over the reals a
    // negative rho(s) phi(s) leaves E2.
    let spec = &common::chain_instances()[0];
    let below = TimePair::new(0.5, 2.0).unwrap();
    let above = TimePair::new(1.5, 2.0).unwrap();
    assert_eq!(
        classify_dynamics(spec, below, Field::Complex).unwrap().tag,
        Tag::E2
    );
    assert_eq!(
        classify_dynamics(spec, above, Field::Real).unwrap().tag,
        Tag::E2
    );
    assert_ne!(
        classify_dynamics(spec, below, Field::Real).unwrap().tag,
        Tag::E2
    );
}

#[test]
fn cantor_equation() {
    let e = |t: &str| expr::parse(t).unwrap();
    let ok = verify_cantor(
        &Delta::Expr(e("exp(t - s)")),
        ScalarEquation::Cantor,
        500,
        1,
        1e-9,
    )
    .unwrap();
    assert!(ok.pass, "{ok}");
    let bad = verify_cantor(
        &Delta::Expr(e("t - s")),
        ScalarEquation::Cantor,
        500,
        1,
        1e-9,
    )
    .unwrap();
    assert!(!bad.pass);
    let zero = verify_cantor(&Delta::Zero, ScalarEquation::Degenerate, 100, 1, 1e-12).unwrap();
    assert!(zero.pass);
    let split = Delta::Split { c: 3.0, f: e("1") };
    assert!(
        verify_cantor(&split, ScalarEquation::Degenerate, 500, 1, 1e-12)
            .unwrap()
            .pass
    );
}

#[test]
fn m5_diagram_band() {
    let cfg = config("m5.toml");
    let d = property_diagram(
        &cfg.spec,
        Property::Class(Tag::E4),
        Window::square(0.0, 4.0),
        40,
        Field::Complex,
    )
    .unwrap();
    assert_eq!(d.count(CellLabel::Error), 0);
    // E4 exactly above the threshold t > 2.
    for cell in &d.cells {
        if cell.label == CellLabel::InP {
            assert!(cell.t > 2.0, "{cell:?}");
        }
    }
    assert!(d.count(CellLabel::InP) > 0);
}
