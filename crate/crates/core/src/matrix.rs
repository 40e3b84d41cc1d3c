//! Square complex matrices, structure matrices of evolution algebras and the
//! evolution product.
//!
//! An evolution algebra with natural basis `e_1..e_n` multiplies basis
//! vectors as `e_i e_i = sum_k a_ik e_k` and `e_i e_j = 0` for `i != j`, so the
//! whole algebra is determined by its matrix of structure constants `A`.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::scalar::{format_scalar, is_finite, parse_scalar, Field, Scalar, ZERO_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("matrix dimension must be positive")]
    EmptyDimension,
    #[error("expected {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Dense square matrix of complex scalars, row-major, all entries finite.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(n: usize, data: Vec<Scalar>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::EmptyDimension);
        }
        if data.len() != n * n {
            return Err(MatrixError::WrongLength {
                expected: n * n,
                got: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !is_finite(*z)) {
            return Err(MatrixError::NonFinite {
                row: pos / n,
                col: pos % n,
            });
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Self {
            n,
            data: vec![Scalar::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Scalar::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows<R: AsRef<[Scalar]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(MatrixError::WrongLength {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    /// Builds a matrix from real rows.
    pub fn real(rows: &[&[f64]]) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::new(v, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::new(0.0, 0.0);
                for k in 0..n {
                    acc += self[(i, k)] * other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Scalar) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entrywise modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// 2x2 determinant; panics for other sizes.
    pub fn det2(&self) -> Scalar {
        assert_eq!(self.n, 2, "det2 on a {}x{} matrix", self.n, self.n);
        self.data[0] * self.data[3] - self.data[1] * self.data[2]
    }

    /// Inverse of a 2x2 matrix, `None` when the determinant vanishes.
    pub fn inverse2(&self) -> Option<Matrix> {
        let det = self.det2();
        if det.norm() == 0.0 {
            return None;
        }
        let [a, b, c, d] = [self.data[0], self.data[1], self.data[2], self.data[3]];
        Matrix::new(2, vec![d / det, -b / det, -c / det, a / det]).ok()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&crate::scalar::display_scalar(self[(i, j)]))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Matrix of structure constants `A = (a_ij)`: `e_i e_i = sum_j a_ij e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureMatrix(Matrix);

impl StructureMatrix {
    pub fn new(m: Matrix) -> Self {
        Self(m)
    }

    pub fn real(rows: &[&[f64]]) -> Result<Self, MatrixError> {
        Matrix::real(rows).map(Self)
    }

    pub fn from_rows<R: AsRef<[Scalar]>>(rows: &[R]) -> Result<Self, MatrixError> {
        Matrix::from_rows(rows).map(Self)
    }

    pub fn zero(n: usize) -> Self {
        Self(Matrix::zeros(n))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.0[(i, j)]
    }

    /// The smallest field the entries live in.
    pub fn field(&self) -> Field {
        if self.0.is_real() {
            Field::Real
        } else {
            Field::Complex
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.0.max_norm() <= tol
    }

    /// Natural-basis change `e'_i = d_i e_{perm[i]}`: the new structure
    /// constants are `a'_ij = d_i^2 a_{p(i) p(j)} / d_j`.
    pub fn rescale_permute(&self, d: &[Scalar], perm: &[usize]) -> Result<Self, MatrixError> {
        let n = self.dim();
        if d.len() != n || perm.len() != n {
            return Err(MatrixError::DimensionMismatch {
                left: n,
                right: d.len().min(perm.len()),
            });
        }
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = d[i] * d[i] * self.get(perm[i], perm[j]) / d[j];
            }
        }
        Matrix::new(n, out.data).map(Self)
    }

    /// Reads the plain-text matrix format: a line with `n`, then `n` rows of
    /// `n` whitespace-separated complex numbers written `re+imi`.
    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, first) = lines.next().ok_or(MatrixError::Parse {
            line: 1,
            msg: "missing dimension line".into(),
        })?;
        let n: usize = first.parse().map_err(|_| MatrixError::Parse {
            line: line_no,
            msg: format!("expected a positive integer dimension, found `{first}`"),
        })?;
        if n == 0 {
            return Err(MatrixError::EmptyDimension);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in 0..n {
            let (line_no, line) = lines.next().ok_or(MatrixError::Parse {
                line: line_no + row + 1,
                msg: format!("expected {n} rows, found {row}"),
            })?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != n {
                return Err(MatrixError::Parse {
                    line: line_no,
                    msg: format!("expected {n} entries, found {}", entries.len()),
                });
            }
            for e in entries {
                data.push(parse_scalar(e).map_err(|err| MatrixError::Parse {
                    line: line_no,
                    msg: err.0,
                })?);
            }
        }
        if let Some((line_no, extra)) = lines.next() {
            return Err(MatrixError::Parse {
                line: line_no,
                msg: format!("unexpected trailing content `{extra}`"),
            });
        }
        Matrix::new(n, data).map(Self)
    }

    pub fn to_text(&self) -> String {
        let n = self.dim();
        let mut out = format!("{n}\n");
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| format_scalar(self.get(i, j))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// `dim E^2`: the rank of the structure matrix. Only decided exactly for
    /// `n <= 2`; larger matrices use Gaussian elimination with tolerance.
    pub fn rank(&self, tol: f64) -> usize {
        let n = self.dim();
        let mut m: Vec<Vec<Scalar>> = (0..n).map(|i| self.0.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n)
                .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
                .filter(|&p| m[p][col].norm() > tol);
            let Some(p) = pivot else { continue };
            m.swap(rank, p);
            for r in 0..n {
                if r != rank {
                    let f = m[r][col] / m[rank][col];
                    for k in col..n {
                        let v = m[rank][k];
                        m[r][k] -= f * v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Display for StructureMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Coordinates of an algebra element in the natural basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement(pub Vec<Scalar>);

impl AlgebraElement {
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![Scalar::new(0.0, 0.0); n];
        v[i] = Scalar::new(1.0, 0.0);
        Self(v)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![Scalar::new(0.0, 0.0); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_norm() <= tol
    }

    pub fn scale(&self, f: Scalar) -> Self {
        Self(self.0.iter().map(|z| z * f).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// Evolution product: `(x y)_k = sum_i x_i y_i a_ik`.
pub fn multiply(
    a: &StructureMatrix,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement, MatrixError> {
    let n = a.dim();
    for len in [x.dim(), y.dim()] {
        if len != n {
            return Err(MatrixError::DimensionMismatch {
                left: n,
                right: len,
            });
        }
    }
    Ok(AlgebraElement(product_coords(a.matrix(), &x.0, &y.0)))
}

/// Unchecked evolution product on raw coordinate slices.
pub(crate) fn product_coords(a: &Matrix, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = a.dim();
    let mut out = vec![Scalar::new(0.0, 0.0); n];
    for i in 0..n {
        let w = x[i] * y[i];
        if w == Scalar::new(0.0, 0.0) {
            continue;
        }
        for (k, o) in out.iter_mut().enumerate() {
            *o += w * a[(i, k)];
        }
    }
    out
}

/// `true` when every entry is within the structural zero tolerance.
pub fn is_structurally_zero(z: Scalar) -> bool {
    z.norm() <= ZERO_TOL
}
