//! Table of Rota-Baxter operators of weight 0 and 1 on the 2-dimensional
//! complex evolution algebras.
//!
//! Each printed matrix is one [`RboFamily`]. A family maps its free
//! parameters to one or more members, each an algebra instance paired with an
//! operator. Rows written with `±` yield one member per sign, principal
//! square root first.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::classify::{AlgebraClass, Tag};
use crate::lm::{minimize, minimize_complex, LmOptions, Packing};
use crate::matrix::{Matrix, StructureMatrix};
use crate::rb::Weight;
use crate::scalar::{c, r, Field, Scalar};

use super::RboError;

#[derive(Clone, Debug, PartialEq)]
pub struct Member {
    pub algebra: StructureMatrix,
    pub operator: Matrix,
}

/// A parameter value hit a side condition or a non-finite entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Rejection(pub String);

type Built = Result<Vec<Member>, Rejection>;
type Builder = fn(&[Scalar], f64) -> Built;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlternateKind {
    /// The printed formula, which fails the identity; the family stores the
    /// corrected one.
    Erratum,
    /// A different printed parameterization of the same set.
    Equivalent,
}

#[derive(Clone)]
pub struct Alternate {
    pub kind: AlternateKind,
    pub note: &'static str,
    pub template: &'static str,
    builder: Builder,
}

impl Alternate {
    pub fn members(&self, params: &[Scalar], margin: f64) -> Built {
        finite((self.builder)(params, margin)?)
    }
}

impl std::fmt::Debug for Alternate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Alternate")
            .field("kind", &self.kind)
            .field("template", &self.template)
            .finish()
    }
}

#[derive(Clone)]
pub struct RboFamily {
    /// `w<weight>-<row>-<k>`, e.g. `w1-02-3`.
    pub id: String,
    pub weight: Weight,
    pub tag: Tag,
    /// Algebra as printed in the row, e.g. `E5(0,y)`.
    pub algebra: &'static str,
    /// 1-based row in the table for this weight.
    pub row: usize,
    pub template: &'static str,
    pub conditions: &'static str,
    /// Free complex parameters, operator and algebra parameters alike.
    pub free: &'static [&'static str],
    builder: Builder,
    pub alternate: Option<Alternate>,
}

impl std::fmt::Debug for RboFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RboFamily")
            .field("id", &self.id)
            .field("algebra", &self.algebra)
            .field("template", &self.template)
            .finish()
    }
}

fn finite(members: Vec<Member>) -> Built {
    let ok = members.iter().all(|m| {
        m.operator
            .as_slice()
            .iter()
            .chain(m.algebra.matrix().as_slice())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    });
    if ok {
        Ok(members)
    } else {
        Err(Rejection("non-finite entry".into()))
    }
}

impl RboFamily {
    pub fn is_isolated(&self) -> bool {
        self.free.is_empty()
    }

    /// Members at a parameter point; side conditions are enforced with the
    /// given margin (zero keeps only the exact exclusions).
    pub fn members(&self, params: &[Scalar], margin: f64) -> Built {
        if params.len() != self.free.len() {
            return Err(Rejection(format!(
                "expected {} parameters",
                self.free.len()
            )));
        }
        finite((self.builder)(params, margin)?)
    }

    /// Smallest max-norm distance from `(a, op)` to a member, searched over
    /// the free parameters.
    pub fn distance(&self, a: &StructureMatrix, op: &Matrix) -> f64 {
        self.fit(a, Some(op))
    }

    /// Whether some member lives on the algebra `a`.
    pub fn admits_algebra(&self, a: &StructureMatrix, tol: f64) -> bool {
        self.fit(a, None) < tol
    }

    fn fit(&self, a: &StructureMatrix, op: Option<&Matrix>) -> f64 {
        let gap = |p: &[Scalar], k: usize| -> Option<Vec<Scalar>> {
            let members = self.members(p, 0.0).ok()?;
            let m = members.get(k)?;
            let mut out: Vec<Scalar> = m
                .algebra
                .matrix()
                .as_slice()
                .iter()
                .zip(a.matrix().as_slice())
                .map(|(u, v)| u - v)
                .collect();
            if let Some(op) = op {
                out.extend(
                    m.operator
                        .as_slice()
                        .iter()
                        .zip(op.as_slice())
                        .map(|(u, v)| u - v),
                );
            }
            Some(out)
        };
        let norm = |v: &[Scalar]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut values: Vec<Scalar> = a.matrix().as_slice().to_vec();
        if let Some(op) = op {
            values.extend_from_slice(op.as_slice());
        }
        values.extend([r(0.0), r(1.0), r(-1.0)]);
        values.dedup();
        let k = self.free.len();
        let mut starts: Vec<Vec<Scalar>> = vec![Vec::new()];
        for _ in 0..k {
            starts = starts
                .into_iter()
                .flat_map(|s| {
                    values.iter().map(move |v| {
                        let mut t = s.clone();
                        t.push(*v);
                        t
                    })
                })
                .collect();
        }
        let branches = starts
            .iter()
            .filter_map(|s| self.members(s, 0.0).ok().map(|m| m.len()))
            .max()
            .unwrap_or(1);
        let mut best = f64::INFINITY;
        let mut ranked: Vec<(f64, Vec<Scalar>, usize)> = Vec::new();
        for s in &starts {
            for b in 0..branches {
                if let Some(g) = gap(s, b) {
                    let d = norm(&g);
                    best = best.min(d);
                    ranked.push((d, s.clone(), b));
                }
            }
        }
        if best < 1e-12 || k == 0 {
            return best;
        }
        ranked.sort_by(|x, y| x.0.total_cmp(&y.0));
        let opts = LmOptions {
            max_iter: 100,
            ..LmOptions::default()
        };
        for (_, start, b) in ranked.into_iter().take(6) {
            let real = |x: &[f64]| -> Vec<f64> {
                let p = Packing::Complex.unpack(x);
                match gap(&p, b) {
                    Some(g) => g.iter().flat_map(|z| [z.re, z.im]).collect(),
                    None => vec![1e6; if op.is_some() { 16 } else { 8 }],
                }
            };
            let f = |x: &[f64]| {
                let f0 = real(x);
                let mut jac = DMatrix::zeros(f0.len(), x.len());
                for j in 0..x.len() {
                    let h = 1e-7 * (1.0 + x[j].abs());
                    let mut xp = x.to_vec();
                    let mut xm = x.to_vec();
                    xp[j] += h;
                    xm[j] -= h;
                    let (fp, fm) = (real(&xp), real(&xm));
                    for i in 0..f0.len() {
                        jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
                    }
                }
                (f0, jac)
            };
            let res = minimize(&Packing::Complex.pack(&start), f, &opts);
            if let Some(g) = gap(&Packing::Complex.unpack(&res.x), b) {
                best = best.min(norm(&g));
            }
            if best < 1e-12 {
                break;
            }
        }
        best
    }
}

fn m(a: Scalar, b: Scalar, cc: Scalar, d: Scalar) -> Matrix {
    Matrix::from_rows(&[[a, b], [cc, d]]).expect("2x2")
}

fn away(z: Scalar, what: &str, margin: f64) -> Result<(), Rejection> {
    if z.norm() <= margin || (margin == 0.0 && z == r(0.0)) {
        return Err(Rejection(format!("{what} must be nonzero")));
    }
    Ok(())
}

fn fixed(tag: Tag) -> StructureMatrix {
    AlgebraClass::simple(Field::Complex, tag).canonical_matrix()
}

fn e5(x: Scalar, y: Scalar, margin: f64) -> Result<StructureMatrix, Rejection> {
    away(r(1.0) - x * y, "1 - xy", margin)?;
    Ok(StructureMatrix::from_rows(&[[r(1.0), x], [y, r(1.0)]]).expect("2x2"))
}

fn e6(x: Scalar) -> StructureMatrix {
    StructureMatrix::from_rows(&[[r(0.0), r(1.0)], [r(1.0), x]]).expect("2x2")
}

fn one(algebra: StructureMatrix, operator: Matrix) -> Built {
    Ok(vec![Member { algebra, operator }])
}

fn i1() -> Scalar {
    c(0.0, 1.0)
}

fn s3() -> Scalar {
    r(3f64.sqrt())
}

/// `(-3 + i sqrt 3)/6`
fn omega() -> Scalar {
    c(-0.5, 3f64.sqrt() / 6.0)
}

/// `exp(i pi/6)`, the value taken for the sixth root of -1.
fn z6() -> Scalar {
    Scalar::from_polar(1.0, PI / 6.0)
}

fn signs() -> [f64; 2] {
    [1.0, -1.0]
}

/// Roots `b` of a two-equation constraint system at fixed `c`, by
/// multi-start least squares. Sorted by argument, then modulus.
fn constraint_roots(
    cc: Scalar,
    system: fn(Scalar, Scalar) -> ([Scalar; 2], [Scalar; 2]),
    margin: f64,
) -> Vec<Scalar> {
    let scale = cc.norm().max(cc.norm().sqrt()).max(1e-3);
    let opts = LmOptions::default();
    let mut roots: Vec<Scalar> = Vec::new();
    for radius in [0.3, 1.0, 3.0] {
        for k in 0..8 {
            let b0 = Scalar::from_polar(radius * scale, (k as f64 + 0.5) * PI / 4.0);
            let (z, _) = minimize_complex(
                &[b0],
                Packing::Complex,
                |v| {
                    let (f, df) = system(v[0], cc);
                    (f.to_vec(), vec![vec![df[0]], vec![df[1]]])
                },
                &opts,
            );
            let b = z[0];
            let (f, _) = system(b, cc);
            let ok = b.re.is_finite()
                && b.im.is_finite()
                && f.iter().all(|v| v.norm() < 1e-8)
                && b.norm() > margin.max(1e-12);
            if ok
                && !roots
                    .iter()
                    .any(|q| (q - b).norm() < 1e-7 * (1.0 + b.norm()))
            {
                roots.push(b);
            }
        }
    }
    roots.sort_by(|p, q| {
        p.arg()
            .total_cmp(&q.arg())
            .then(p.norm().total_cmp(&q.norm()))
    });
    roots
}

/// Weight 0, `E6(-3b²/4c²)`: `3b⁶/c + 16b³c² + 16c⁵ = 0`, `b³/c + 4c² = 0`.
fn system_w0(b: Scalar, cc: Scalar) -> ([Scalar; 2], [Scalar; 2]) {
    let f1 = b.powu(6) * 3.0 / cc + b.powu(3) * cc * cc * 16.0 + cc.powu(5) * 16.0;
    let f2 = b.powu(3) / cc + cc * cc * 4.0;
    let d1 = b.powu(5) * 18.0 / cc + b * b * cc * cc * 48.0;
    let d2 = b * b * 3.0 / cc;
    ([f1, f2], [d1, d2])
}

/// Weight 1, `E6((-b³-c³)/(bc²))`:
/// `(b⁶ + 5b³c³ + 4c⁶)/c = c(b³ + c³)/b`, `b⁴/c + 4bc² = c`.
fn system_w1(b: Scalar, cc: Scalar) -> ([Scalar; 2], [Scalar; 2]) {
    let (b3, c3) = (b.powu(3), cc.powu(3));
    let f1 = (b.powu(6) + b3 * c3 * 5.0 + c3 * c3 * 4.0) / cc - cc * (b3 + c3) / b;
    let f2 = b.powu(4) / cc + b * cc * cc * 4.0 - cc;
    let d1 = (b.powu(5) * 6.0 + b * b * c3 * 15.0) / cc - cc * (b3 * 2.0 - c3) / (b * b);
    let d2 = b3 * 4.0 / cc + cc * cc * 4.0;
    ([f1, f2], [d1, d2])
}

macro_rules! family {
    ($w:expr, $row:expr, $k:expr, $tag:expr, $alg:expr, $tpl:expr, $cond:expr, $free:expr, $b:expr) => {
        RboFamily {
            id: format!("w{}-{:02}-{}", $w.as_u8(), $row, $k),
            weight: $w,
            tag: $tag,
            algebra: $alg,
            row: $row,
            template: $tpl,
            conditions: $cond,
            free: $free,
            builder: $b,
            alternate: None,
        }
    };
}

fn weight_zero() -> Vec<RboFamily> {
    let w = Weight::Zero;
    vec![
        family!(
            w,
            1,
            1,
            Tag::E1,
            "E1",
            "[[0, b], [0, d]]",
            "",
            &["b", "d"],
            |p, _| one(fixed(Tag::E1), m(r(0.0), p[0], r(0.0), p[1]))
        ),
        family!(
            w,
            2,
            1,
            Tag::E2,
            "E2",
            "[[0, 0], [c, -ic]]",
            "",
            &["c"],
            |p, _| one(fixed(Tag::E2), m(r(0.0), r(0.0), p[0], -i1() * p[0]))
        ),
        family!(
            w,
            2,
            2,
            Tag::E2,
            "E2",
            "[[0, 0], [c, ic]]",
            "",
            &["c"],
            |p, _| one(fixed(Tag::E2), m(r(0.0), r(0.0), p[0], i1() * p[0]))
        ),
        family!(
            w,
            3,
            1,
            Tag::E3,
            "E3",
            "[[a, a], [-a, -a]]",
            "",
            &["a"],
            |p, _| one(fixed(Tag::E3), m(p[0], p[0], -p[0], -p[0]))
        ),
        family!(
            w,
            3,
            2,
            Tag::E3,
            "E3",
            "[[a, -a], [-a, a]]",
            "",
            &["a"],
            |p, _| one(fixed(Tag::E3), m(p[0], -p[0], -p[0], p[0]))
        ),
        family!(
            w,
            4,
            1,
            Tag::E4,
            "E4",
            "[[0, b], [0, d]]",
            "",
            &["b", "d"],
            |p, _| one(fixed(Tag::E4), m(r(0.0), p[0], r(0.0), p[1]))
        ),
        family!(
            w,
            4,
            2,
            Tag::E4,
            "E4",
            "[[a, b], [0, a/2]]",
            "",
            &["a", "b"],
            |p, _| one(fixed(Tag::E4), m(p[0], p[1], r(0.0), p[0] / 2.0))
        ),
        family!(
            w,
            5,
            1,
            Tag::E5,
            "E5(1/4,0)",
            "[[a, a/2], [-2a, -a]]",
            "",
            &["a"],
            |p, mg| one(
                e5(r(0.25), r(0.0), mg)?,
                m(p[0], p[0] / 2.0, -p[0] * 2.0, -p[0])
            )
        ),
        family!(
            w,
            6,
            1,
            Tag::E5,
            "E5(0,1/4)",
            "[[a, 2a], [-a/2, -a]]",
            "",
            &["a"],
            |p, mg| one(
                e5(r(0.0), r(0.25), mg)?,
                m(p[0], p[0] * 2.0, -p[0] / 2.0, -p[0])
            )
        ),
        family!(
            w,
            7,
            1,
            Tag::E5,
            "E5((2a-b)b/3a², (-a²+2ab)/3b²)",
            "[[a, b], [-a²/b, -a]]",
            "a != 2b, b != 2a, a != -b, a != 0, b != 0",
            &["a", "b"],
            |p, mg| {
                let (a, b) = (p[0], p[1]);
                away(a, "a", mg)?;
                away(b, "b", mg)?;
                away(a - b * 2.0, "a - 2b", mg)?;
                away(b - a * 2.0, "b - 2a", mg)?;
                away(a + b, "a + b", mg)?;
                let x = (a * 2.0 - b) * b / (a * a * 3.0);
                let y = (-a * a + a * b * 2.0) / (b * b * 3.0);
                one(e5(x, y, mg)?, m(a, b, -a * a / b, -a))
            }
        ),
        family!(
            w,
            8,
            1,
            Tag::E6,
            "E6(-3b²/4c²)",
            "[[b²/2c, b], [c, -b²/2c]]",
            "b != 0, c != 0; 3b⁶/c + 16b³c² + 16c⁵ = 0, b³/c + 4c² = 0",
            &["c"],
            |p, mg| {
                let cc = p[0];
                away(cc, "c", mg)?;
                let roots = constraint_roots(cc, system_w0, mg);
                if roots.is_empty() {
                    return Err(Rejection("constraint system has no root".into()));
                }
                Ok(roots
                    .into_iter()
                    .map(|b| Member {
                        algebra: e6(-b * b * 3.0 / (cc * cc * 4.0)),
                        operator: m(b * b / (cc * 2.0), b, cc, -b * b / (cc * 2.0)),
                    })
                    .collect())
            }
        ),
    ]
}

fn sqrt_1m4(v: Scalar) -> Scalar {
    (r(1.0) - v * 4.0).sqrt()
}

fn big_y(y: Scalar, sign: f64, mg: f64) -> Result<Matrix, Rejection> {
    away(y, "y", mg)?;
    let q = sqrt_1m4(y);
    away(q, "1 - 4y", mg)?;
    let den = y * 8.0 - 2.0;
    let (one4, s) = (r(1.0) - y * 4.0, q * sign);
    Ok(m((one4 + s) / den, -r(1.0) / s, y / s, (one4 - s) / den))
}

fn big_x(x: Scalar, sign: f64, mg: f64) -> Result<Matrix, Rejection> {
    away(x, "x", mg)?;
    let q = sqrt_1m4(x);
    away(q, "1 - 4x", mg)?;
    let den = x * 8.0 - 2.0;
    let (one4, s) = (r(1.0) - x * 4.0, q * sign);
    Ok(m((one4 + s) / den, -x / s, r(1.0) / s, (one4 - s) / den))
}

fn case_d(p: &[Scalar], mg: f64, printed: bool) -> Built {
    let (cc, d) = (p[0], p[1]);
    away(d, "d", mg)?;
    away(d + 1.0, "d + 1", mg)?;
    let cubic = r(1.0) + d * 3.0 + d * d * 3.0;
    away(cubic, "1 + 3d + 3d²", mg)?;
    away(cc, "c", mg)?;
    away(
        cc * (d * 2.0 + 1.0) - d * (d + 1.0),
        "c(1 + 2d) - d(1 + d)",
        mg,
    )?;
    away(cc - d * 2.0 - 1.0, "c - (1 + 2d)", mg)?;
    let x = d * (d + 1.0) * (cc + cc * d * 2.0 - d * (d + 1.0)) / (cc * cc * cubic);
    let y = if printed {
        cc * (r(1.0) - cc + d * 2.0) / (cc * cc * cubic)
    } else {
        cc * (r(1.0) - cc + d * 2.0) / cubic
    };
    one(e5(x, y, mg)?, m(-d - 1.0, -d * (d + 1.0) / cc, cc, d))
}

fn e6_zero_matrix(k: usize, printed: bool) -> Matrix {
    let (w, wb) = (omega(), omega().conj());
    let (z, z5) = (z6(), z6().powu(5));
    let s = s3();
    let ii = i1();
    match k {
        1 => m(w, r(0.0), r(0.0), wb),
        2 => m(wb, r(0.0), r(0.0), w),
        3 => m(w, -ii / s, ii / s, wb),
        4 => m(wb, ii / s, -ii / s, w),
        5 => m(wb, -z / s, z5 / s, w),
        6 => m(w, z / s, -z5 / s, wb),
        7 if printed => m(w, z5 / s, z / s, wb),
        7 => m(w, z5 / s, -z / s, wb),
        8 => m(wb, -z5 / s, z / s, w),
        _ => unreachable!("eight matrices"),
    }
}

fn weight_one() -> Vec<RboFamily> {
    let w = Weight::One;
    let mut out = vec![
        family!(w, 1, 1, Tag::E1, "E1", "[[-1, 0], [0, d]]", "", &["d"], |p, _| one(
            fixed(Tag::E1),
            m(r(-1.0), r(0.0), r(0.0), p[0])
        )),
        family!(w, 1, 2, Tag::E1, "E1", "[[0, 0], [0, d]]", "", &["d"], |p, _| one(
            fixed(Tag::E1),
            m(r(0.0), r(0.0), r(0.0), p[0])
        )),
        family!(w, 2, 1, Tag::E2, "E2", "[[0, 0], [c, ic]]", "", &["c"], |p, _| one(
            fixed(Tag::E2),
            m(r(0.0), r(0.0), p[0], i1() * p[0])
        )),
        family!(w, 2, 2, Tag::E2, "E2", "[[0, 0], [c, -ic]]", "", &["c"], |p, _| one(
            fixed(Tag::E2),
            m(r(0.0), r(0.0), p[0], -i1() * p[0])
        )),
        family!(w, 2, 3, Tag::E2, "E2", "[[-1/2, i/2], [-i/2, -1/2]]", "", &[], |_, _| one(
            fixed(Tag::E2),
            m(r(-0.5), c(0.0, 0.5), c(0.0, -0.5), r(-0.5))
        )),
        family!(w, 2, 4, Tag::E2, "E2", "[[-1/2, -i/2], [i/2, -1/2]]", "", &[], |_, _| one(
            fixed(Tag::E2),
            m(r(-0.5), c(0.0, -0.5), c(0.0, 0.5), r(-0.5))
        )),
        family!(w, 2, 5, Tag::E2, "E2", "[[-1, 0], [c, -1+ic]]", "", &["c"], |p, _| one(
            fixed(Tag::E2),
            m(r(-1.0), r(0.0), p[0], r(-1.0) + i1() * p[0])
        )),
        family!(w, 2, 6, Tag::E2, "E2", "[[-1, 0], [c, -1-ic]]", "", &["c"], |p, _| one(
            fixed(Tag::E2),
            m(r(-1.0), r(0.0), p[0], r(-1.0) - i1() * p[0])
        )),
        family!(w, 3, 1, Tag::E3, "E3", "[[-1+b, b], [-b, -1-b]]", "", &["b"], |p, _| one(
            fixed(Tag::E3),
            m(p[0] - 1.0, p[0], -p[0], -p[0] - 1.0)
        )),
        family!(w, 3, 2, Tag::E3, "E3", "[[-1-b, b], [b, -1-b]]", "", &["b"], |p, _| one(
            fixed(Tag::E3),
            m(-p[0] - 1.0, p[0], p[0], -p[0] - 1.0)
        )),
        family!(w, 3, 3, Tag::E3, "E3", "[[b, b], [-b, -b]]", "", &["b"], |p, _| one(
            fixed(Tag::E3),
            m(p[0], p[0], -p[0], -p[0])
        )),
        family!(w, 3, 4, Tag::E3, "E3", "[[-b, b], [b, -b]]", "", &["b"], |p, _| one(
            fixed(Tag::E3),
            m(-p[0], p[0], p[0], -p[0])
        )),
        family!(w, 4, 1, Tag::E4, "E4", "[[a, b], [0, a²/(1+2a)]]", "a != -1/2", &["a", "b"], |p, mg| {
            away(p[0] * 2.0 + 1.0, "1 + 2a", mg)?;
            one(fixed(Tag::E4), m(p[0], p[1], r(0.0), p[0] * p[0] / (p[0] * 2.0 + 1.0)))
        }),
        family!(w, 5, 1, Tag::E5, "E5(0,y)", "[[0, 0], [1, 0]]", "", &["y"], |p, mg| one(
            e5(r(0.0), p[0], mg)?,
            m(r(0.0), r(0.0), r(1.0), r(0.0))
        )),
        family!(
            w,
            5,
            2,
            Tag::E5,
            "E5(0,y)",
            "[[0, 0], [c₁₂, -1]], c₁₂ = (-1 ± √(1-4y))/2",
            "",
            &["y"],
            |p, mg| {
                let alg = e5(r(0.0), p[0], mg)?;
                Ok(signs()
                    .iter()
                    .map(|s| Member {
                        algebra: alg.clone(),
                        operator: m(r(0.0), r(0.0), (r(-1.0) + sqrt_1m4(p[0]) * *s) / 2.0, r(-1.0)),
                    })
                    .collect())
            }
        ),
        family!(w, 6, 1, Tag::E5, "E5(0,y)", "[[-1, 0], [-1, -1]]", "y != 0", &["y"], |p, mg| {
            away(p[0], "y", mg)?;
            one(e5(r(0.0), p[0], mg)?, m(r(-1.0), r(0.0), r(-1.0), r(-1.0)))
        }),
        family!(
            w,
            6,
            2,
            Tag::E5,
            "E5(0,y)",
            "[[-1, 0], [c₁₂, 0]], c₁₂ = (1 ± √(1-4y))/2",
            "y != 0, c₁₂ != 0",
            &["y"],
            |p, mg| {
                away(p[0], "y", mg)?;
                let alg = e5(r(0.0), p[0], mg)?;
                signs()
                    .iter()
                    .map(|s| {
                        let c12 = (r(1.0) + sqrt_1m4(p[0]) * *s) / 2.0;
                        away(c12, "c₁₂", mg)?;
                        Ok(Member {
                            algebra: alg.clone(),
                            operator: m(r(-1.0), r(0.0), c12, r(0.0)),
                        })
                    })
                    .collect()
            }
        ),
        family!(
            w,
            7,
            1,
            Tag::E5,
            "E5(0,y)",
            "[[(1-4y+√(1-4y))/(8y-2), -1/√(1-4y)], [y/√(1-4y), (1-4y-√(1-4y))/(8y-2)]]",
            "y != 0, y != 1/4",
            &["y"],
            |p, mg| one(e5(r(0.0), p[0], mg)?, big_y(p[0], 1.0, mg)?)
        ),
        family!(
            w,
            7,
            2,
            Tag::E5,
            "E5(0,y)",
            "[[(1-4y-√(1-4y))/(8y-2), 1/√(1-4y)], [-y/√(1-4y), (1-4y+√(1-4y))/(8y-2)]]",
            "y != 0, y != 1/4",
            &["y"],
            |p, mg| one(e5(r(0.0), p[0], mg)?, big_y(p[0], -1.0, mg)?)
        ),
        family!(w, 8, 1, Tag::E5, "E5(x,0)", "[[0, 1], [0, 0]]", "", &["x"], |p, mg| one(
            e5(p[0], r(0.0), mg)?,
            m(r(0.0), r(1.0), r(0.0), r(0.0))
        )),
        family!(
            w,
            8,
            2,
            Tag::E5,
            "E5(x,0)",
            "[[0, b₁₂], [0, -1]], b₁₂ = (1 ± √(1-4x))/2",
            "b₁₂ != 0",
            &["x"],
            |p, mg| {
                let alg = e5(p[0], r(0.0), mg)?;
                signs()
                    .iter()
                    .map(|s| {
                        let b12 = (r(1.0) + sqrt_1m4(p[0]) * *s) / 2.0;
                        away(b12, "b₁₂", mg)?;
                        Ok(Member {
                            algebra: alg.clone(),
                            operator: m(r(0.0), b12, r(0.0), r(-1.0)),
                        })
                    })
                    .collect()
            }
        ),
        RboFamily {
            alternate: Some(Alternate {
                kind: AlternateKind::Equivalent,
                note: "case analysis writes [[-1, b₁₂], [0, 0]] with b₁₂ = (-1 ± √(1-4x))/2, the same set",
                template: "[[-1, b₁₂], [0, 0]], b₁₂ = (-1 ± √(1-4x))/2",
                builder: |p, mg| {
                    let alg = e5(p[0], r(0.0), mg)?;
                    signs()
                        .iter()
                        .map(|s| {
                            let b12 = (r(-1.0) + sqrt_1m4(p[0]) * *s) / 2.0;
                            away(b12, "b₁₂", mg)?;
                            Ok(Member {
                                algebra: alg.clone(),
                                operator: m(r(-1.0), b12, r(0.0), r(0.0)),
                            })
                        })
                        .collect()
                },
            }),
            ..family!(
                w,
                8,
                3,
                Tag::E5,
                "E5(x,0)",
                "[[-1, -b₁₂], [0, 0]], b₁₂ = (1 ± √(1-4x))/2",
                "b₁₂ != 0",
                &["x"],
                |p, mg| {
                    let alg = e5(p[0], r(0.0), mg)?;
                    signs()
                        .iter()
                        .map(|s| {
                            let b12 = (r(1.0) + sqrt_1m4(p[0]) * *s) / 2.0;
                            away(b12, "b₁₂", mg)?;
                            Ok(Member {
                                algebra: alg.clone(),
                                operator: m(r(-1.0), -b12, r(0.0), r(0.0)),
                            })
                        })
                        .collect()
                }
            )
        },
        family!(w, 8, 4, Tag::E5, "E5(x,0)", "[[-1, -1], [0, -1]]", "", &["x"], |p, mg| one(
            e5(p[0], r(0.0), mg)?,
            m(r(-1.0), r(-1.0), r(0.0), r(-1.0))
        )),
        family!(
            w,
            9,
            1,
            Tag::E5,
            "E5(x,0)",
            "[[(1-4x+√(1-4x))/(8x-2), -x/√(1-4x)], [1/√(1-4x), (1-4x-√(1-4x))/(8x-2)]]",
            "x != 0, x != 1/4",
            &["x"],
            |p, mg| one(e5(p[0], r(0.0), mg)?, big_x(p[0], 1.0, mg)?)
        ),
        family!(
            w,
            9,
            2,
            Tag::E5,
            "E5(x,0)",
            "[[(1-4x-√(1-4x))/(8x-2), x/√(1-4x)], [-1/√(1-4x), (1-4x+√(1-4x))/(8x-2)]]",
            "x != 0, x != 1/4",
            &["x"],
            |p, mg| one(e5(p[0], r(0.0), mg)?, big_x(p[0], -1.0, mg)?)
        ),
        family!(w, 10, 1, Tag::E5, "E5(0,0)", "[[-1, 0], [0, 0]]", "", &[], |_, mg| one(
            e5(r(0.0), r(0.0), mg)?,
            m(r(-1.0), r(0.0), r(0.0), r(0.0))
        )),
        family!(w, 11, 1, Tag::E5, "E5(x,y)", "[[-1, 0], [0, -1]]", "1 - xy != 0", &["x", "y"], |p, mg| one(
            e5(p[0], p[1], mg)?,
            m(r(-1.0), r(0.0), r(0.0), r(-1.0))
        )),
        family!(
            w,
            12,
            1,
            Tag::E5,
            "E5(x,1-x)",
            "[[(-3-i√3)/6, -i/√3], [i/√3, (-3+i√3)/6]]",
            "x != (1 ± i√3)/2",
            &["x"],
            |p, mg| one(e5(p[0], r(1.0) - p[0], mg)?, m(omega().conj(), -i1() / s3(), i1() / s3(), omega()))
        ),
        family!(
            w,
            12,
            2,
            Tag::E5,
            "E5(x,1-x)",
            "[[(-3+i√3)/6, i/√3], [-i/√3, (-3-i√3)/6]]",
            "x != (1 ± i√3)/2",
            &["x"],
            |p, mg| one(e5(p[0], r(1.0) - p[0], mg)?, m(omega(), i1() / s3(), -i1() / s3(), omega().conj()))
        ),
        RboFamily {
            alternate: Some(Alternate {
                kind: AlternateKind::Erratum,
                note: "printed y = c(1-c+2d)/(c²(1+3d+3d²)) carries an extra factor 1/c²; it agrees with the solution only at c = ±1",
                template: "y = c(1-c+2d)/(c²(1+3d+3d²))",
                builder: |p, mg| case_d(p, mg, true),
            }),
            ..family!(
                w,
                13,
                1,
                Tag::E5,
                "E5(x,y), x = d(1+d)(c+2cd-d(1+d))/(c²(1+3d+3d²)), y = c(1-c+2d)/(1+3d+3d²)",
                "[[-1-d, -d(1+d)/c], [c, d]]",
                "d != 0, d != -1, d != (-3 ± i√3)/6, c != 0, c != d(1+d)/(1+2d), c != 1+2d",
                &["c", "d"],
                |p, mg| case_d(p, mg, false)
            )
        },
    ];
    const E6_ZERO: [&str; 8] = [
        "[[(-3+i√3)/6, 0], [0, (-3-i√3)/6]]",
        "[[(-3-i√3)/6, 0], [0, (-3+i√3)/6]]",
        "[[(-3+i√3)/6, -i/√3], [i/√3, (-3-i√3)/6]]",
        "[[(-3-i√3)/6, i/√3], [-i/√3, (-3+i√3)/6]]",
        "[[(-3-i√3)/6, -z/√3], [z⁵/√3, (-3+i√3)/6]], z = exp(iπ/6)",
        "[[(-3+i√3)/6, z/√3], [-z⁵/√3, (-3-i√3)/6]], z = exp(iπ/6)",
        "[[(-3+i√3)/6, z⁵/√3], [-z/√3, (-3-i√3)/6]], z = exp(iπ/6)",
        "[[(-3-i√3)/6, -z⁵/√3], [z/√3, (-3+i√3)/6]], z = exp(iπ/6)",
    ];
    const E6_BUILDERS: [Builder; 8] = [
        |_, _| one(e6(r(0.0)), e6_zero_matrix(1, false)),
        |_, _| one(e6(r(0.0)), e6_zero_matrix(2, false)),
        |_, _| one(e6(r(0.0)), e6_zero_matrix(3, false)),
        |_, _| one(e6(r(0.0)), e6_zero_matrix(4, false)),
        |_, _| one(e6(r(0.0)), e6_zero_matrix(5, false)),
        |_, _| one(e6(r(0.0)), e6_zero_matrix(6, false)),
        |_, _| one(e6(r(0.0)), e6_zero_matrix(7, false)),
        |_, _| one(e6(r(0.0)), e6_zero_matrix(8, false)),
    ];
    for k in 0..8 {
        let mut f = family!(
            w,
            14,
            k + 1,
            Tag::E6,
            "E6(0)",
            E6_ZERO[k],
            "",
            &[],
            E6_BUILDERS[k]
        );
        if k == 6 {
            f.alternate = Some(Alternate {
                kind: AlternateKind::Erratum,
                note: "printed lower-left entry z/√3 has the wrong sign",
                template: "[[(-3+i√3)/6, z⁵/√3], [z/√3, (-3-i√3)/6]]",
                builder: |_, _| one(e6(r(0.0)), e6_zero_matrix(7, true)),
            });
        }
        out.push(f);
    }
    out.push(family!(
        w,
        15,
        1,
        Tag::E6,
        "E6(x)",
        "[[-1, 0], [0, -1]]",
        "",
        &["x"],
        |p, _| one(e6(p[0]), m(r(-1.0), r(0.0), r(0.0), r(-1.0)))
    ));
    out.push(family!(
        w,
        16,
        1,
        Tag::E6,
        "E6((-b³-c³)/(bc²))",
        "[[(b²-c)/2c, b], [c, (-b²-c)/2c]]",
        "-b³-c³ != 0, b != 0, c != 0; (b⁶+5b³c³+4c⁶)/c = c(b³+c³)/b, b⁴/c + 4bc² = c",
        &["c"],
        |p, mg| {
            let cc = p[0];
            away(cc, "c", mg)?;
            let members: Vec<Member> = constraint_roots(cc, system_w1, mg)
                .into_iter()
                .filter(|b| (b.powu(3) + cc.powu(3)).norm() > mg)
                .map(|b| Member {
                    algebra: e6((-b.powu(3) - cc.powu(3)) / (b * cc * cc)),
                    operator: m((b * b - cc) / (cc * 2.0), b, cc, (-b * b - cc) / (cc * 2.0)),
                })
                .collect();
            if members.is_empty() {
                return Err(Rejection("constraint system has no admissible root".into()));
            }
            Ok(members)
        }
    ));
    out
}

/// Every row of the table for one weight, in table order.
pub fn table(weight: Weight) -> Vec<RboFamily> {
    match weight {
        Weight::Zero => weight_zero(),
        Weight::One => weight_one(),
    }
}

/// Number of algebra rows in the table for a weight.
pub fn row_count(weight: Weight) -> usize {
    table(weight).iter().map(|f| f.row).max().unwrap_or(0)
}

/// All families for an algebra type.
pub fn catalog(tag: Tag, weight: Weight) -> Result<Vec<RboFamily>, RboError> {
    if !matches!(
        tag,
        Tag::E1 | Tag::E2 | Tag::E3 | Tag::E4 | Tag::E5 | Tag::E6
    ) {
        return Err(RboError::UnknownAlgebra(tag.to_string()));
    }
    Ok(table(weight).into_iter().filter(|f| f.tag == tag).collect())
}

/// Families with a member on the given complex algebra.
pub fn catalog_for(class: &AlgebraClass, weight: Weight) -> Result<Vec<RboFamily>, RboError> {
    if class.field != Field::Complex {
        return Err(RboError::UnknownAlgebra(format!("{class} over the reals")));
    }
    let families = catalog(class.tag, weight)?;
    if class.params.is_empty() {
        return Ok(families);
    }
    let a = class.canonical_matrix();
    Ok(families
        .into_iter()
        .filter(|f| f.admits_algebra(&a, 1e-9))
        .collect())
}
