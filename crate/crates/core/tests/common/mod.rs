#![allow(dead_code)]

use evoalg::cea::family::{ChainFamilySpec, FamilyId};
use evoalg::classify::Tag;
use evoalg::rotabaxter::system::SymbolicAlgebra;
use evoalg::scalar::{c, r, Scalar};
use evoalg::{Matrix, StructureMatrix};

/// Three free-function instances per chain family M1..M8. Zero functions
/// are included where the region table splits on them.
pub fn chain_instances() -> Vec<ChainFamilySpec> {
    let mk = |id, f: &[(&str, &str)], th| ChainFamilySpec::new(id, f, th).unwrap();
    use FamilyId::*;
    vec![
        mk(M1, &[("rho", "s-1"), ("phi", "exp(t)")], None),
        mk(M1, &[("rho", "0"), ("phi", "1+t^2")], None),
        mk(M1, &[("rho", "-2"), ("phi", "exp(-t/3)")], None),
        mk(M2, &[("sigma", "s-1")], Some(5.0)),
        mk(M2, &[("sigma", "0")], Some(3.0)),
        mk(M2, &[("sigma", "cos(s)")], Some(6.0)),
        mk(M3, &[("f", "t"), ("phi", "exp(t)")], None),
        mk(M3, &[("f", "sin(t)"), ("phi", "2+cos(t)")], None),
        mk(M3, &[("f", "0"), ("phi", "1+t")], None),
        mk(M4, &[("g", "t^2")], Some(5.0)),
        mk(M4, &[("g", "exp(t)")], Some(3.0)),
        mk(M4, &[("g", "0")], Some(4.0)),
        mk(M5, &[("Phi", "1+t^2")], Some(3.0)),
        mk(M5, &[("Phi", "exp(t)")], Some(2.0)),
        mk(M5, &[("Phi", "2+sin(t)")], Some(4.0)),
        mk(M6, &[("rho", "s-1"), ("phi", "1+t")], Some(3.0)),
        mk(M6, &[("rho", "0"), ("phi", "exp(t)")], Some(2.0)),
        mk(M6, &[("rho", "exp(s)"), ("phi", "2+cos(t)")], Some(4.0)),
        mk(M7, &[("Psi", "exp(t)")], Some(3.0)),
        mk(M7, &[("Psi", "1+t")], Some(2.0)),
        mk(M7, &[("Psi", "2+sin(t)")], Some(5.0)),
        mk(M8, &[("sigma", "t-4"), ("phi", "1+s")], Some(3.0)),
        mk(M8, &[("sigma", "0"), ("phi", "exp(s)")], Some(2.0)),
        mk(M8, &[("sigma", "cos(t)"), ("phi", "2+s^2")], Some(5.0)),
    ]
}

/// The canonical complex algebras, with sample parameters for E5 and E6.
pub fn sample_algebras() -> Vec<(String, StructureMatrix)> {
    let m = |rows: [[Scalar; 2]; 2]| StructureMatrix::from_rows(&rows).unwrap();
    let (o, z) = (r(1.0), r(0.0));
    vec![
        ("E1".into(), m([[o, z], [z, z]])),
        ("E2".into(), m([[o, z], [o, z]])),
        ("E3".into(), m([[o, o], [-o, -o]])),
        ("E4".into(), m([[z, o], [z, z]])),
        (
            "E5(0.3+0.2i,-1.1)".into(),
            m([[o, c(0.3, 0.2)], [r(-1.1), o]]),
        ),
        ("E5(0,0)".into(), m([[o, z], [z, o]])),
        ("E6(0)".into(), m([[z, o], [o, z]])),
        ("E6(1-2i)".into(), m([[z, o], [o, c(1.0, -2.0)]])),
    ]
}

pub fn symbolic(tag: Tag) -> SymbolicAlgebra {
    SymbolicAlgebra::canonical(tag)
}

pub fn m2(a: Scalar, b: Scalar, cc: Scalar, d: Scalar) -> Matrix {
    Matrix::from_rows(&[[a, b], [cc, d]]).unwrap()
}

/// `[[w, 0], [0, w']]` and friends: the operators of weight 1 on E6(0)
/// as printed, `w = (-3 + i sqrt 3)/6`, `z = exp(i pi/6)`. The seventh
/// entry is given both as printed and with the sign that solves the
/// equations.
pub fn e6_zero_solutions(printed_seventh: bool) -> Vec<Matrix> {
    let s = 3f64.sqrt();
    let w = c(-0.5, s / 6.0);
    let wb = w.conj();
    let z = Scalar::from_polar(1.0, std::f64::consts::PI / 6.0);
    let z5 = z.powu(5);
    let i = c(0.0, 1.0);
    let mut out = vec![
        m2(w, r(0.0), r(0.0), wb),
        m2(wb, r(0.0), r(0.0), w),
        m2(w, -i / s, i / s, wb),
        m2(wb, i / s, -i / s, w),
        m2(wb, -z / s, z5 / s, w),
        m2(w, z / s, -z5 / s, wb),
        if printed_seventh {
            m2(w, z5 / s, z / s, wb)
        } else {
            m2(w, z5 / s, -z / s, wb)
        },
        m2(wb, -z5 / s, z / s, w),
    ];
    out.push(m2(r(-1.0), r(0.0), r(0.0), r(-1.0)));
    out.push(Matrix::zeros(2));
    out
}
