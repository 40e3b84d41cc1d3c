//! Candidates that solve the weight-1 equations on [[1, x], [y, 1]] only
//! when xy = 1.
//!
//! cargo run --example rbo_exclusions

use evoalg::rotabaxter::exclusions::{control, verify_exclusions};

fn main() {
    for chk in verify_exclusions() {
        println!("{chk}");
    }
    println!("{}", control());
}
