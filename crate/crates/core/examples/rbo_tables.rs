//! Sampled verification of every operator family in both tables.
//!
//! cargo run --release --example rbo_tables

use evoalg::rotabaxter::catalog::table;
use evoalg::rotabaxter::verify::{verify_all, verify_alternate, VerifyOptions};
use evoalg::Weight;

fn main() {
    let opts = VerifyOptions::default();
    for w in [Weight::Zero, Weight::One] {
        let fams = table(w);
        for rep in verify_all(&fams, &opts) {
            println!("{rep}");
        }
        for f in &fams {
            if let Some(rep) = verify_alternate(f, &opts) {
                println!("  alternate {}: {rep}", f.alternate.as_ref().unwrap().note);
            }
        }
    }
}
