//! Classifies a few 2-dimensional algebras and checks the witnesses.
//!
//! cargo run --example classify_algebra

use evoalg::classify::{classify_with_witness, homomorphism_residual, is_e4_shape};
use evoalg::scalar::Field;
use evoalg::StructureMatrix;

fn main() {
    let inputs = [
        (
            "[[0, 5], [0, 0]]",
            StructureMatrix::real(&[&[0.0, 5.0], &[0.0, 0.0]]).unwrap(),
        ),
        (
            "[[2, 3], [-4, -6]]",
            StructureMatrix::real(&[&[2.0, 3.0], &[-4.0, -6.0]]).unwrap(),
        ),
        (
            "[[1, 2], [3, 1]]",
            StructureMatrix::real(&[&[1.0, 2.0], &[3.0, 1.0]]).unwrap(),
        ),
        (
            "[[0, 2], [2, 1]]",
            StructureMatrix::real(&[&[0.0, 2.0], &[2.0, 1.0]]).unwrap(),
        ),
        (
            "[[0, 1], [-1, 0]]",
            StructureMatrix::real(&[&[0.0, 1.0], &[-1.0, 0.0]]).unwrap(),
        ),
    ];
    for (label, a) in &inputs {
        for field in [Field::Complex, Field::Real] {
            match classify_with_witness(a, field) {
                Ok(c) => {
                    let res = homomorphism_residual(a, &c.class.canonical_matrix(), &c.witness);
                    println!(
                        "{label} over {field}: {} (witness residual {res:.1e})",
                        c.class
                    );
                }
                Err(e) => println!("{label} over {field}: {e}"),
            }
        }
        println!("  E4 shape: {:?}", is_e4_shape(a).unwrap());
    }
}
