mod common;

use evoalg::classify::Tag;
use evoalg::rotabaxter::catalog::catalog;
use evoalg::rotabaxter::search::{annotate, points_to_csv, search, SearchOptions};
use evoalg::{StructureMatrix, Weight};

fn algebra(name: &str) -> StructureMatrix {
    common::sample_algebras()
        .into_iter()
        .find(|(n, _)| n == name)
        .unwrap()
        .1
}

#[test]
fn every_point_is_cataloged() {
    let opts = SearchOptions {
        starts: 200,
        seed: 3,
        ..SearchOptions::default()
    };
    for tag in [Tag::E1, Tag::E2, Tag::E3, Tag::E4] {
        for w in [Weight::Zero, Weight::One] {
            let a = algebra(&tag.to_string());
            let mut pts = search(&a, w, &opts).unwrap();
            assert!(!pts.is_empty(), "{tag} w{w}");
            annotate(&a, &mut pts, &catalog(tag, w).unwrap(), 1e-6);
            for p in &pts {
                let label = p.family.as_deref().unwrap();
                assert_ne!(label, "uncataloged", "{tag} w{w}: {}", p.operator);
                assert!(p.residual < opts.tol);
            }
        }
    }
}

#[test]
fn weight_zero_points_are_unit_rays() {
    let pts = search(&algebra("E2"), Weight::Zero, &SearchOptions::default()).unwrap();
    assert_eq!(pts.len(), 2);
    for p in &pts {
        let norm: f64 = p.operator.as_slice().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-9);
    }
}

#[test]
fn e6_zero_weight_one_is_the_corrected_set() {
    let a = algebra("E6(0)");
    let opts = SearchOptions {
        starts: 600,
        ..SearchOptions::default()
    };
    let mut pts = search(&a, Weight::One, &opts).unwrap();
    let want = common::e6_zero_solutions(false);
    assert_eq!(pts.len(), want.len());
    for w in &want {
        assert!(
            pts.iter().any(|p| p.operator.max_abs_diff(w) < 1e-6),
            "missing {w}"
        );
    }
    annotate(&a, &mut pts, &catalog(Tag::E6, Weight::One).unwrap(), 1e-6);
    let trivial = pts
        .iter()
        .filter(|p| p.family.as_deref() == Some("trivial"))
        .count();
    assert_eq!(trivial, 1);
    assert!(pts
        .iter()
        .all(|p| p.family.as_deref() != Some("uncataloged")));
}

#[test]
fn csv_is_stable() {
    let a = algebra("E4");
    let opts = SearchOptions {
        starts: 50,
        seed: 9,
        ..SearchOptions::default()
    };
    let first = points_to_csv(&search(&a, Weight::One, &opts).unwrap());
    let second = points_to_csv(&search(&a, Weight::One, &opts).unwrap());
    assert_eq!(first, second);
    assert!(first.starts_with("index,start,hits,residual,family,a_re,"));
}
