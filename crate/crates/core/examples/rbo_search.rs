//! Numeric search for weight-1 operators on E6(0), labeled by table family.
//!
//! cargo run --release --example rbo_search

use evoalg::classify::Tag;
use evoalg::rotabaxter::catalog::catalog;
use evoalg::rotabaxter::search::{annotate, search, SearchOptions};
use evoalg::{StructureMatrix, Weight};

fn main() {
    let a = StructureMatrix::real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
    let opts = SearchOptions {
        starts: 2000,
        ..SearchOptions::default()
    };
    let mut points = search(&a, Weight::One, &opts).unwrap();
    annotate(
        &a,
        &mut points,
        &catalog(Tag::E6, Weight::One).unwrap(),
        1e-6,
    );
    for p in &points {
        println!(
            "{:<12} hits {:>4}  {}",
            p.family.as_deref().unwrap_or(""),
            p.hits,
            p.operator
        );
    }
}
