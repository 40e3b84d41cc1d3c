//! Chapman-Kolmogorov checks for every chain family, one instance each.
//!
//! cargo run --example cea_verify

use evoalg::cea::{verify_ck, ChainFamilySpec, FamilyId};

fn main() {
    let specs = [
        (FamilyId::M0, vec![], None),
        (
            FamilyId::M1,
            vec![("rho", "s - 1"), ("phi", "exp(t)")],
            None,
        ),
        (FamilyId::M2, vec![("sigma", "cos(s)")], Some(5.0)),
        (
            FamilyId::M3,
            vec![("f", "sin(t)"), ("phi", "2 + cos(t)")],
            None,
        ),
        (FamilyId::M4, vec![("g", "t^2")], Some(5.0)),
        (FamilyId::M5, vec![("Phi", "exp(t)")], Some(2.0)),
        (
            FamilyId::M6,
            vec![("rho", "s - 1"), ("phi", "1 + t")],
            Some(3.0),
        ),
        (FamilyId::M7, vec![("Psi", "exp(t)")], Some(3.0)),
        (
            FamilyId::M8,
            vec![("sigma", "t - 4"), ("phi", "1 + s")],
            Some(3.0),
        ),
    ];
    for (id, functions, threshold) in specs {
        let spec = ChainFamilySpec::new(id, &functions, threshold).unwrap();
        let report = verify_ck(&spec, 1000, 0, 1e-9).unwrap();
        println!("{report}");
    }
}
