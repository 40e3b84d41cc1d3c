//! Candidates that solve the weight-1 system for `E5(x, y) = [[1, x], [y, 1]]`
//! but are absent from the table because they force `xy = 1`, where the
//! algebra is not of type E5.

use std::fmt;

use crate::matrix::{Matrix, StructureMatrix};
use crate::rb::{rb_residual_norm, RotaBaxterOperator, Weight};
use crate::scalar::{c, r, Scalar};

/// An operator together with the `(x, y)` it was derived for.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub operator: Matrix,
    pub x: Scalar,
    pub y: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExclusionCheck {
    pub case: String,
    /// Parameter values tried (1 for an isolated candidate).
    pub samples: usize,
    /// Largest `|xy - 1|` over the samples.
    pub max_xy_gap: f64,
    /// Largest residual of the operator on `[[1, x], [y, 1]]`.
    pub max_residual: f64,
    /// Whether the candidate is justified as absent: `xy = 1` at every
    /// sample, or the residual does not vanish.
    pub excluded: bool,
}

impl fmt::Display for ExclusionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} samples, max |xy-1| {:e}, max residual {:e}: {}",
            self.case,
            self.samples,
            self.max_xy_gap,
            self.max_residual,
            if self.excluded {
                "excluded"
            } else {
                "NOT excluded"
            }
        )
    }
}

pub const XY_TOL: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-9;

fn e5(x: Scalar, y: Scalar) -> StructureMatrix {
    StructureMatrix::from_rows(&[[r(1.0), x], [y, r(1.0)]]).expect("2x2")
}

fn m(a: Scalar, b: Scalar, cc: Scalar, d: Scalar) -> Matrix {
    Matrix::from_rows(&[[a, b], [cc, d]]).expect("2x2")
}

/// Evaluates a candidate generator at each parameter value.
pub fn check(case: &str, params: &[Scalar], gen: impl Fn(Scalar) -> Candidate) -> ExclusionCheck {
    let mut max_xy_gap = 0.0f64;
    let mut max_residual = 0.0f64;
    for &p in params {
        let cand = gen(p);
        max_xy_gap = max_xy_gap.max((cand.x * cand.y - 1.0).norm());
        let op = RotaBaxterOperator::new(cand.operator, Weight::One);
        max_residual =
            max_residual.max(rb_residual_norm(&e5(cand.x, cand.y), &op).unwrap_or(f64::INFINITY));
    }
    ExclusionCheck {
        case: case.to_string(),
        samples: params.len(),
        max_xy_gap,
        max_residual,
        excluded: max_xy_gap < XY_TOL || max_residual > RESIDUAL_TOL,
    }
}

/// Sample points for the parametric cases, away from the poles at
/// `0, -1/2, -1`.
pub fn sample_points() -> Vec<Scalar> {
    vec![
        r(1.0),
        r(2.0),
        r(-3.0),
        r(0.5),
        r(-0.25),
        c(1.0, 1.0),
        c(-0.3, 0.7),
        c(0.2, -1.5),
        c(2.5, 0.4),
        c(-1.7, -0.9),
        c(0.9, 2.2),
        r(3.5),
    ]
}

/// Every rejected candidate of the weight-1 analysis, plus one control row
/// that is in the table and must not be excluded.
pub fn verify_exclusions() -> Vec<ExclusionCheck> {
    let pts = sample_points();
    let one = r(1.0);
    let none = [r(0.0)];
    vec![
        check("Case 1.2.2.2.1: b=c=1, d=0, x=y=-1", &none, |_| Candidate {
            operator: m(r(0.0), one, one, r(0.0)),
            x: -one,
            y: -one,
        }),
        check("Case 1.2.2.2.2.2: b=-1, c=1, d=-2, x=y=-1", &none, |_| {
            Candidate {
                operator: m(r(0.0), -one, one, r(-2.0)),
                x: -one,
                y: -one,
            }
        }),
        check("Case 2.1: a=-1/2, x=-4b², y=-1/(4b²)", &pts, |b| {
            Candidate {
                operator: m(r(-0.5), b, r(0.0), r(0.0)),
                x: -b * b * 4.0,
                y: -one / (b * b * 4.0),
            }
        }),
        check("Case A(a): a=b=c=d=-1, x=y=1 as printed", &none, |_| {
            Candidate {
                operator: m(-one, -one, -one, -one),
                x: one,
                y: one,
            }
        }),
        check("Case A(a): a=b=c=d=-1, x=y=-1", &none, |_| Candidate {
            operator: m(-one, -one, -one, -one),
            x: -one,
            y: -one,
        }),
        check("Case B first solution", &pts, |a| {
            let t = a * 2.0 + 1.0;
            Candidate {
                operator: m(a, t, a.powu(3) / (t * t), a * a / t),
                x: -(t * t) / (a * a),
                y: -(a * a) / (t * t),
            }
        }),
        check("Case B second solution", &pts, |a| {
            let t = a * 2.0 + 1.0;
            Candidate {
                operator: m(a, t, (a + 1.0).powu(3) / (t * t), a * a / t),
                x: -(t * t) / ((a + 1.0) * (a + 1.0)),
                y: -((a + 1.0) * (a + 1.0)) / (t * t),
            }
        }),
        check("Case C first solution", &pts, |d| {
            let t = d * 2.0 + 1.0;
            Candidate {
                operator: m(d * d / t, d.powu(3) / (t * t), t, d),
                x: -(d * d) / (t * t),
                y: -(t * t) / (d * d),
            }
        }),
        check("Case C second solution", &pts, |d| {
            let t = d * 2.0 + 1.0;
            Candidate {
                operator: m(d * d / t, (d + 1.0).powu(3) / (t * t), t, d),
                x: -((d + 1.0) * (d + 1.0)) / (t * t),
                y: -(t * t) / ((d + 1.0) * (d + 1.0)),
            }
        }),
    ]
}

/// A table row for comparison: `[[-1, 0], [0, -1]]` on `E5(x, y)` with
/// `xy != 1`, which must come out as not excluded.
pub fn control() -> ExclusionCheck {
    check(
        "control: [[-1, 0], [0, -1]] on E5(x,y)",
        &sample_points(),
        |p| Candidate {
            operator: m(r(-1.0), r(0.0), r(0.0), r(-1.0)),
            x: p,
            y: p * 0.5 + 0.25,
        },
    )
}
