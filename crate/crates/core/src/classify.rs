//! Classification of 2-dimensional evolution algebras up to isomorphism.
//!
//! Canonical forms (structure matrices):
//!
//! | tag | complex                | real                     |
//! |-----|------------------------|--------------------------|
//! | E0  | zero                   | zero                     |
//! | E1  | `[[1,0],[0,0]]`        | same                     |
//! | E2  | `[[1,0],[1,0]]`        | same                     |
//! | E3  | `[[1,1],[-1,-1]]`      | same                     |
//! | E4  | `[[0,1],[0,0]]`        | same                     |
//! | E5  | `[[1,x],[y,1]]`        | `[[0,1],[0,-1]]`         |
//! | E6  | `[[0,1],[1,a4]]`       | `[[1,a2],[a3,1]]`        |
//! | E7  |                        | `[[0,1],[1,a4]]`         |
//!
//! Decision procedure: zero test, E4 shape, then rank. For rank 2 the natural
//! basis is unique up to scaling and permutation, so the parameters come from
//! a closed-form rescaling. For rank 1, `e_i e_i = alpha_i u` and the
//! invariant `kappa = sum alpha_i u_i^2` together with the zero rows decide
//! the class. Every candidate witness is confirmed by the homomorphism
//! residual and, failing that, by a numeric search.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::lm::{halton_points, minimize_complex, ComplexEval, LmOptions, Packing};
use crate::matrix::{product_coords, Matrix, MatrixError, StructureMatrix};
use crate::scalar::{
    c, display_scalar, is_zero, lex_cmp, lex_cmp_slice, r, Field, Scalar, ZERO_TOL,
};

/// Acceptance bound on the squared homomorphism residual.
pub const HOM_TOL: f64 = 1e-18;
/// Basis changes with `|det|` at or below this are rejected.
pub const DET_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    E0,
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
}

impl Tag {
    pub const ALL: [Tag; 8] = [
        Tag::E0,
        Tag::E1,
        Tag::E2,
        Tag::E3,
        Tag::E4,
        Tag::E5,
        Tag::E6,
        Tag::E7,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Tag> {
        Tag::ALL.get(i).copied()
    }

    /// Number of continuous parameters of the canonical form.
    pub fn param_count(self, field: Field) -> usize {
        match (field, self) {
            (Field::Complex, Tag::E5) | (Field::Real, Tag::E6) => 2,
            (Field::Complex, Tag::E6) | (Field::Real, Tag::E7) => 1,
            _ => 0,
        }
    }

    pub fn admissible(self, field: Field) -> bool {
        field == Field::Real || self != Tag::E7
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.index())
    }
}

impl std::str::FromStr for Tag {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, ClassifyError> {
        let t = s.trim();
        t.strip_prefix('E')
            .or_else(|| t.strip_prefix('e'))
            .and_then(|d| d.parse::<usize>().ok())
            .and_then(Tag::from_index)
            .ok_or_else(|| ClassifyError::UnknownTag(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("classification needs a 2-dimensional algebra, got dimension {0}")]
    Dimension(usize),
    #[error("unknown class tag `{0}`")]
    UnknownTag(String),
    #[error("{tag} over the {field} field takes {expected} parameter(s), got {got}")]
    ParamCount {
        tag: Tag,
        field: Field,
        expected: usize,
        got: usize,
    },
    #[error("{0} is not a class over the real field")]
    NotReal(Tag),
    #[error("parameters of {0} violate 1 - a2*a3 != 0")]
    Degenerate(Tag),
    #[error("no canonical form matched within tolerance")]
    Unclassifiable,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A canonical class with its continuous parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraClass {
    pub field: Field,
    pub tag: Tag,
    pub params: Vec<Scalar>,
}

impl AlgebraClass {
    pub fn new(field: Field, tag: Tag, params: Vec<Scalar>) -> Result<Self, ClassifyError> {
        if !tag.admissible(field) {
            return Err(ClassifyError::UnknownTag(format!("{tag} ({field})")));
        }
        let expected = tag.param_count(field);
        if params.len() != expected {
            return Err(ClassifyError::ParamCount {
                tag,
                field,
                expected,
                got: params.len(),
            });
        }
        if field == Field::Real && params.iter().any(|p| p.im != 0.0) {
            return Err(ClassifyError::NotReal(tag));
        }
        if expected == 2 && is_zero(r(1.0) - params[0] * params[1], ZERO_TOL) {
            return Err(ClassifyError::Degenerate(tag));
        }
        Ok(Self { field, tag, params })
    }

    pub fn simple(field: Field, tag: Tag) -> Self {
        Self {
            field,
            tag,
            params: Vec::new(),
        }
    }

    /// Structure matrix of the canonical form.
    pub fn canonical_matrix(&self) -> StructureMatrix {
        let z = r(0.0);
        let o = r(1.0);
        let rows = match (self.field, self.tag) {
            (_, Tag::E0) => [[z, z], [z, z]],
            (_, Tag::E1) => [[o, z], [z, z]],
            (_, Tag::E2) => [[o, z], [o, z]],
            (_, Tag::E3) => [[o, o], [-o, -o]],
            (_, Tag::E4) => [[z, o], [z, z]],
            (Field::Real, Tag::E5) => [[z, o], [z, -o]],
            (Field::Complex, Tag::E5) | (Field::Real, Tag::E6) => {
                [[o, self.params[0]], [self.params[1], o]]
            }
            (Field::Complex, Tag::E6) | (Field::Real, Tag::E7) => [[z, o], [o, self.params[0]]],
            (Field::Complex, Tag::E7) => unreachable!("E7 is real only"),
        };
        StructureMatrix::from_rows(&rows).expect("finite canonical entries")
    }

    /// Parameter-aware equality with an absolute tolerance.
    pub fn approx_eq(&self, other: &AlgebraClass, tol: f64) -> bool {
        self.field == other.field
            && self.tag == other.tag
            && self.params.len() == other.params.len()
            && self
                .params
                .iter()
                .zip(&other.params)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Applies the parameter equivalences and picks the lexicographically
    /// smallest representative.
    pub fn canonicalize(mut self) -> Self {
        match self.tag.param_count(self.field) {
            2 => {
                let swapped = [self.params[1], self.params[0]];
                if lex_cmp_slice(&swapped, &self.params, ZERO_TOL).is_lt() {
                    self.params = swapped.to_vec();
                }
            }
            1 if self.field == Field::Complex => {
                self.params[0] = min_cube_rotation(self.params[0]);
            }
            _ => {}
        }
        self
    }
}

fn cube_roots_of_unity() -> [Scalar; 3] {
    let h = 3f64.sqrt() / 2.0;
    [r(1.0), c(-0.5, h), c(-0.5, -h)]
}

fn min_cube_rotation(a: Scalar) -> Scalar {
    let mut best = a;
    for w in cube_roots_of_unity().into_iter().skip(1) {
        let cand = a * w;
        if lex_cmp(cand, best, ZERO_TOL).is_lt() {
            best = cand;
        }
    }
    best
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if self.params.is_empty() {
            return Ok(());
        }
        let parts: Vec<String> = self.params.iter().map(|p| display_scalar(*p)).collect();
        let sep = if self.field == Field::Real {
            "; "
        } else {
            ", "
        };
        write!(f, "({})", parts.join(sep))
    }
}

impl AlgebraClass {
    /// Parses `E5(0.1, 0.2)`, `E6(0)`, `E6(1; 2)` or a bare tag.
    pub fn parse(text: &str, field: Field) -> Result<Self, ClassifyError> {
        let t = text.trim();
        let (head, args) = match t.find('(') {
            Some(open) => {
                let close = t
                    .strip_suffix(')')
                    .ok_or_else(|| ClassifyError::UnknownTag(text.to_string()))?;
                (&t[..open], Some(&close[open + 1..]))
            }
            None => (t, None),
        };
        let tag: Tag = head.parse()?;
        let params = match args {
            None => Vec::new(),
            Some(a) => a
                .split([',', ';'])
                .map(|p| {
                    crate::scalar::parse_scalar(p)
                        .map_err(|_| ClassifyError::UnknownTag(text.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        AlgebraClass::new(field, tag, params)
    }
}

/// A basis change: row `i` holds the coordinates of the `i`-th new basis
/// vector in the natural basis of the target algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    matrix: Matrix,
}

impl BasisChange {
    pub fn new(matrix: Matrix) -> Result<Self, ClassifyError> {
        if matrix.dim() != 2 {
            return Err(ClassifyError::Dimension(matrix.dim()));
        }
        if matrix.det2().norm() <= DET_TOL {
            return Err(ClassifyError::Unclassifiable);
        }
        Ok(Self { matrix })
    }

    pub fn identity() -> Self {
        Self {
            matrix: Matrix::identity(2),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn det(&self) -> Scalar {
        self.matrix.det2()
    }

    pub fn inverse(&self) -> Self {
        Self {
            matrix: self.matrix.inverse2().expect("nonsingular by construction"),
        }
    }
}

/// Shape of an E4 structure matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum E4Shape {
    /// `[[0, beta], [0, 0]]`
    M1(Scalar),
    /// `[[0, 0], [gamma, 0]]`
    M2(Scalar),
}

fn require_dim2(a: &StructureMatrix) -> Result<(), ClassifyError> {
    if a.dim() != 2 {
        return Err(ClassifyError::Dimension(a.dim()));
    }
    Ok(())
}

/// An algebra is E4 exactly when its structure matrix has one of the two
/// shapes with the marked entry nonzero. The zero pattern is matched exactly;
/// the marked entry must exceed [`ZERO_TOL`] in modulus.
pub fn is_e4_shape(a: &StructureMatrix) -> Result<Option<E4Shape>, ClassifyError> {
    require_dim2(a)?;
    let z = |i, j| a.get(i, j) == r(0.0);
    let nz = |i, j| !is_zero(a.get(i, j), ZERO_TOL);
    if z(0, 0) && z(1, 0) && z(1, 1) && nz(0, 1) {
        return Ok(Some(E4Shape::M1(a.get(0, 1))));
    }
    if z(0, 0) && z(0, 1) && z(1, 1) && nz(1, 0) {
        return Ok(Some(E4Shape::M2(a.get(1, 0))));
    }
    Ok(None)
}

/// Residual equations of `g(f_i f_j) = g(f_i) g(f_j)` for `i <= j`, where
/// `g(f_i) = sum_j t_ij e_j`, `f` is the basis of `b` and `e` that of `a`.
fn hom_equations(a: &Matrix, b: &Matrix, t: &[Scalar]) -> Vec<Scalar> {
    let n = 2;
    let mut out = Vec::with_capacity(6);
    for i in 0..n {
        for j in i..n {
            let prod = product_coords(a, &t[i * n..i * n + n], &t[j * n..j * n + n]);
            for k in 0..n {
                let mut lhs = r(0.0);
                if i == j {
                    for m in 0..n {
                        lhs += b[(i, m)] * t[m * n + k];
                    }
                }
                out.push(lhs - prod[k]);
            }
        }
    }
    out
}

fn hom_jacobian(a: &Matrix, b: &Matrix, t: &[Scalar]) -> Vec<Vec<Scalar>> {
    let n = 2;
    let mut rows = Vec::with_capacity(6);
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let mut row = vec![r(0.0); n * n];
                for u in 0..n {
                    for v in 0..n {
                        let mut d = r(0.0);
                        if i == j && v == k {
                            d += b[(i, u)];
                        }
                        if u == i {
                            d -= t[j * n + v] * a[(v, k)];
                        }
                        if u == j {
                            d -= t[i * n + v] * a[(v, k)];
                        }
                        row[u * n + v] = d;
                    }
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Squared homomorphism residual `sum_{i<=j} |g(f_i f_j) - g(f_i) g(f_j)|^2`
/// of the map `g: B -> A` given by `t`.
pub fn homomorphism_residual(a: &StructureMatrix, b: &StructureMatrix, t: &BasisChange) -> f64 {
    hom_equations(a.matrix(), b.matrix(), t.matrix().as_slice())
        .iter()
        .map(|z| z.norm_sqr())
        .sum()
}

fn accepts(a: &StructureMatrix, b: &StructureMatrix, t: &Matrix) -> bool {
    t.det2().norm() > DET_TOL
        && t.as_slice()
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        && homomorphism_residual(a, b, &BasisChange { matrix: t.clone() }) < HOM_TOL
}

#[derive(Clone, Debug)]
pub struct IsoOptions {
    pub field: Field,
    pub starts: usize,
    pub seed: u64,
    /// Weight of the `beta / det(T)` barrier in the first phase.
    pub barrier: f64,
}

impl IsoOptions {
    pub fn new(field: Field) -> Self {
        Self {
            field,
            starts: 200,
            seed: 0,
            barrier: 1e-3,
        }
    }
}

fn packing(field: Field) -> Packing {
    match field {
        Field::Real => Packing::RealOnly,
        Field::Complex => Packing::Complex,
    }
}

fn lm_opts() -> LmOptions {
    LmOptions {
        max_iter: 150,
        cost_tol: 1e-32,
        ..LmOptions::default()
    }
}

/// Barrier phase, then an unpenalized polish.
fn solve_from(a: &Matrix, b: &Matrix, t0: &[Scalar], opts: &IsoOptions) -> (Vec<Scalar>, f64) {
    let pack = packing(opts.field);
    let beta = opts.barrier;
    let barrier = |t: &[Scalar]| -> ComplexEval {
        let mut f = hom_equations(a, b, t);
        let mut j = hom_jacobian(a, b, t);
        let det = t[0] * t[3] - t[1] * t[2];
        let g = -beta / (det * det);
        f.push(beta / det);
        j.push(vec![g * t[3], -g * t[2], -g * t[1], g * t[0]]);
        (f, j)
    };
    let (t1, _) = minimize_complex(t0, pack, barrier, &lm_opts());
    let plain = |t: &[Scalar]| -> ComplexEval { (hom_equations(a, b, t), hom_jacobian(a, b, t)) };
    minimize_complex(&t1, pack, plain, &lm_opts())
}

fn polish(a: &Matrix, b: &Matrix, t0: &[Scalar], field: Field) -> Vec<Scalar> {
    let plain = |t: &[Scalar]| -> ComplexEval { (hom_equations(a, b, t), hom_jacobian(a, b, t)) };
    minimize_complex(t0, packing(field), plain, &lm_opts()).0
}

/// Searches for an isomorphism witness `g: B -> A` by multi-start damped least
/// squares. Starts are Halton points in `[-3, 3]` per real coordinate. The
/// reduction keeps the lowest residual, ties broken by start index.
/// `None` is a numeric verdict: nothing was found within the start budget.
pub fn find_isomorphism(
    a: &StructureMatrix,
    b: &StructureMatrix,
    opts: &IsoOptions,
) -> Result<Option<BasisChange>, ClassifyError> {
    require_dim2(a)?;
    require_dim2(b)?;
    if a == b {
        return Ok(Some(BasisChange::identity()));
    }
    let dim = packing(opts.field).real_len(4);
    let starts = halton_points(opts.starts, dim, opts.seed, -3.0, 3.0);
    let (am, bm) = (a.matrix(), b.matrix());
    let results: Vec<(usize, f64, Vec<Scalar>)> = starts
        .par_iter()
        .enumerate()
        .filter_map(|(idx, x0)| {
            let t0 = packing(opts.field).unpack(x0);
            let (t, _) = solve_from(am, bm, &t0, opts);
            let m = Matrix::new(2, t.clone()).ok()?;
            accepts(a, b, &m).then(|| {
                (
                    idx,
                    homomorphism_residual(a, b, &BasisChange { matrix: m }),
                    t,
                )
            })
        })
        .collect();
    let best = results
        .into_iter()
        .min_by(|x, y| x.1.total_cmp(&y.1).then(x.0.cmp(&y.0)));
    Ok(best.map(|(_, _, t)| BasisChange {
        matrix: Matrix::new(2, t).expect("finite"),
    }))
}

/// Classification result with the witness `g: canonical -> input`.
#[derive(Clone, Debug)]
pub struct Classified {
    pub class: AlgebraClass,
    pub witness: BasisChange,
    /// True when the closed-form witness needed numeric refinement or search.
    pub numeric: bool,
}

pub fn classify(a: &StructureMatrix, field: Field) -> Result<AlgebraClass, ClassifyError> {
    Ok(classify_with_witness(a, field)?.class)
}

pub fn classify_with_witness(
    a: &StructureMatrix,
    field: Field,
) -> Result<Classified, ClassifyError> {
    classify_with_options(a, &IsoOptions::new(field))
}

/// Like [`classify_with_witness`], with the start budget and seed of the
/// fallback search exposed.
pub fn classify_with_options(
    a: &StructureMatrix,
    opts: &IsoOptions,
) -> Result<Classified, ClassifyError> {
    let field = opts.field;
    require_dim2(a)?;
    if field == Field::Real && !a.matrix().is_real() {
        return Err(ClassifyError::NotReal(Tag::E0));
    }
    let (class, t) = candidate(a, field)?;
    let canon = class.canonical_matrix();
    let tm = Matrix::from_rows(&t)?;
    if accepts(a, &canon, &tm) {
        return Ok(Classified {
            class,
            witness: BasisChange { matrix: tm },
            numeric: false,
        });
    }
    let polished = polish(a.matrix(), canon.matrix(), tm.as_slice(), field);
    if let Ok(pm) = Matrix::new(2, polished) {
        if accepts(a, &canon, &pm) {
            return Ok(Classified {
                class,
                witness: BasisChange { matrix: pm },
                numeric: true,
            });
        }
    }
    log::debug!("closed-form witness for {class} rejected, running multi-start search");
    match find_isomorphism(a, &canon, opts)? {
        Some(w) => Ok(Classified {
            class,
            witness: w,
            numeric: true,
        }),
        None => Err(ClassifyError::Unclassifiable),
    }
}

type Rows = [[Scalar; 2]; 2];

fn candidate(a: &StructureMatrix, field: Field) -> Result<(AlgebraClass, Rows), ClassifyError> {
    let z = r(0.0);
    let o = r(1.0);
    if a.is_zero(ZERO_TOL) {
        return Ok((AlgebraClass::simple(field, Tag::E0), [[o, z], [z, o]]));
    }
    if let Some(shape) = is_e4_shape(a)? {
        let t = match shape {
            E4Shape::M1(beta) => [[o, z], [z, beta]],
            E4Shape::M2(gamma) => [[z, o], [gamma, z]],
        };
        return Ok((AlgebraClass::simple(field, Tag::E4), t));
    }
    if a.rank(ZERO_TOL) == 2 {
        rank_two(a, field)
    } else {
        rank_one(a, field)
    }
}

fn rank_two(a: &StructureMatrix, field: Field) -> Result<(AlgebraClass, Rows), ClassifyError> {
    let g = |i, j| a.get(i, j);
    let z = r(0.0);
    let d0 = !is_zero(g(0, 0), ZERO_TOL);
    let d1 = !is_zero(g(1, 1), ZERO_TOL);
    if d0 && d1 {
        let c1 = g(0, 0).inv();
        let c2 = g(1, 1).inv();
        let x = g(0, 1) * g(1, 1) / (g(0, 0) * g(0, 0));
        let y = g(1, 0) * g(0, 0) / (g(1, 1) * g(1, 1));
        let tag = if field == Field::Complex {
            Tag::E5
        } else {
            Tag::E6
        };
        let keep = AlgebraClass::new(field, tag, vec![x, y])?;
        let canon = keep.clone().canonicalize();
        if canon.params[0] == x && canon.params[1] == y {
            return Ok((keep, [[c1, z], [z, c2]]));
        }
        let class = AlgebraClass::new(field, tag, vec![y, x])?;
        return Ok((class, [[z, c2], [c1, z]]));
    }
    // permute so the zero diagonal entry sits at (0, 0)
    let (p0, p1) = if d0 { (1, 0) } else { (0, 1) };
    let a12 = g(p0, p1);
    let a21 = g(p1, p0);
    let a22 = g(p1, p1);
    let base = (a12 * a12 * a21).inv();
    let roots: Vec<Scalar> = match field {
        Field::Real => vec![r(base.re.cbrt())],
        Field::Complex => {
            let c0 = base.powf(1.0 / 3.0);
            cube_roots_of_unity().iter().map(|w| c0 * w).collect()
        }
    };
    let mut best: Option<(Scalar, Scalar, Scalar)> = None;
    for c1 in roots {
        let c2 = c1 * c1 * a12;
        let a4 = c2 * a22;
        if best.is_none_or(|(b4, _, _)| lex_cmp(a4, b4, ZERO_TOL).is_lt()) {
            best = Some((a4, c1, c2));
        }
    }
    let (a4, c1, c2) = best.expect("at least one root");
    let a4 = if field == Field::Real { r(a4.re) } else { a4 };
    let tag = if field == Field::Complex {
        Tag::E6
    } else {
        Tag::E7
    };
    let mut t = [[z, z], [z, z]];
    t[0][p0] = c1;
    t[1][p1] = c2;
    Ok((AlgebraClass::new(field, tag, vec![a4])?, t))
}

fn rank_one(a: &StructureMatrix, field: Field) -> Result<(AlgebraClass, Rows), ClassifyError> {
    let g = |i, j| a.get(i, j);
    let z = r(0.0);
    let o = r(1.0);
    let row_zero = |i: usize| is_zero(g(i, 0), ZERO_TOL) && is_zero(g(i, 1), ZERO_TOL);
    // u: the row of largest norm, alpha_i: the multiple of u in row i
    let norm = |i: usize| g(i, 0).norm() + g(i, 1).norm();
    let lead = if norm(0) >= norm(1) { 0 } else { 1 };
    let u = [g(lead, 0), g(lead, 1)];
    let k = if u[0].norm() >= u[1].norm() { 0 } else { 1 };
    let alpha = [g(0, k) / u[k], g(1, k) / u[k]];
    let kappa = alpha[0] * u[0] * u[0] + alpha[1] * u[1] * u[1];
    let kappa_zero = is_zero(kappa, ZERO_TOL);
    let simple = |tag| AlgebraClass::simple(field, tag);
    if row_zero(0) || row_zero(1) {
        let j = if row_zero(0) { 0 } else { 1 };
        if kappa_zero {
            // e_i e_i = beta e_j with e_j e_j negligible: E4 up to rounding
            let i = 1 - j;
            let mut t = [[z, z], [z, z]];
            t[0][i] = o;
            t[1][j] = g(i, j);
            return Ok((simple(Tag::E4), t));
        }
        let mut ej = [z, z];
        ej[j] = o;
        return Ok((simple(Tag::E1), [[u[0] / kappa, u[1] / kappa], ej]));
    }
    if kappa_zero {
        let kk = if (alpha[0] * u[0]).norm() >= (alpha[1] * u[1]).norm() {
            0
        } else {
            1
        };
        let s = (alpha[kk] * u[kk]).inv();
        let mut f1 = [z, z];
        f1[kk] = s;
        let mu = s / u[kk];
        let f2 = [mu * u[0] - f1[0], mu * u[1] - f1[1]];
        return Ok((simple(Tag::E3), [f1, f2]));
    }
    let prod = alpha[0] * alpha[1];
    let xhat = [alpha[1] * u[1], -alpha[0] * u[0]];
    if field == Field::Real && prod.re < 0.0 {
        let nu = (kappa.re.abs() * (-prod.re).sqrt()).recip();
        return Ok((
            simple(Tag::E5),
            [[xhat[0] * nu, xhat[1] * nu], [-u[0] / kappa, -u[1] / kappa]],
        ));
    }
    let nu = (kappa * prod.sqrt()).inv();
    Ok((
        simple(Tag::E2),
        [[u[0] / kappa, u[1] / kappa], [xhat[0] * nu, xhat[1] * nu]],
    ))
}
