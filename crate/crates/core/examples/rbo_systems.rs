//! Polynomial systems for the canonical algebras at both weights.
//!
//! cargo run --example rbo_systems

use evoalg::classify::Tag;
use evoalg::rotabaxter::system::{derive_system, SymbolicAlgebra};
use evoalg::Weight;

fn main() {
    for tag in [Tag::E1, Tag::E2, Tag::E3, Tag::E4, Tag::E5, Tag::E6] {
        for w in [Weight::Zero, Weight::One] {
            let sys = derive_system(&SymbolicAlgebra::canonical(tag), w);
            println!("{tag} weight {w}: {}", sys.render(", "));
            for t in &sys.tautologies {
                println!("  identity: {t}");
            }
        }
    }
}
