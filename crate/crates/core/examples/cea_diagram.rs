//! Property diagram of M5 for "isomorphic to E4", written as CSV and SVG
//! into the system temp directory.
//!
//! cargo run --example cea_diagram

use evoalg::cea::{property_diagram, CellLabel, ChainFamilySpec, FamilyId, Property, Window};
use evoalg::classify::Tag;
use evoalg::scalar::Field;

fn main() {
    let spec = ChainFamilySpec::new(FamilyId::M5, &[("Phi", "exp(t)")], Some(2.0)).unwrap();
    let d = property_diagram(
        &spec,
        Property::Class(Tag::E4),
        Window::square(0.0, 4.0),
        48,
        Field::Complex,
    )
    .unwrap();
    println!(
        "{} in, {} out, {} outside the domain",
        d.count(CellLabel::InP),
        d.count(CellLabel::NotInP),
        d.count(CellLabel::OutOfDomain)
    );
    let dir = std::env::temp_dir();
    std::fs::write(dir.join("m5_e4.csv"), d.to_csv()).unwrap();
    std::fs::write(dir.join("m5_e4.svg"), d.to_svg(8)).unwrap();
    println!("wrote {}", dir.join("m5_e4.{csv,svg}").display());
}
