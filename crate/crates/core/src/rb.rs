//! Rota-Baxter operators on evolution algebras and the residual of the
//! defining identity
//!
//! ```text
//! P(x) P(y) = P(x P(y) + P(x) y + lambda x y)
//! ```
//!
//! evaluated on every pair of natural basis vectors. With `P(e_i) = sum_j r_ij e_j`
//! the diagonal pairs expand to
//! `sum_p r_ip^2 a_pk = (2 r_ii + lambda) (A R)_ik` and the off-diagonal pairs to
//! `sum_p r_ip r_jp a_pk = r_ji (A R)_ik + r_ij (A R)_jk`.

use std::fmt;

use thiserror::Error;

use crate::matrix::{Matrix, MatrixError, StructureMatrix};
use crate::scalar::Scalar;

/// Weight of a Rota-Baxter operator. Any nonzero weight `mu` reduces to
/// weight one by rescaling the operator with `1/mu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Zero,
    One,
}

impl Weight {
    pub fn value(self) -> Scalar {
        match self {
            Weight::Zero => Scalar::new(0.0, 0.0),
            Weight::One => Scalar::new(1.0, 0.0),
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Weight::Zero => 0,
            Weight::One => 1,
        }
    }
}

impl TryFrom<u8> for Weight {
    type Error = RbError;

    fn try_from(v: u8) -> Result<Self, RbError> {
        match v {
            0 => Ok(Weight::Zero),
            1 => Ok(Weight::One),
            other => Err(RbError::UnsupportedWeight(other.to_string())),
        }
    }
}

impl std::str::FromStr for Weight {
    type Err = RbError;

    fn from_str(s: &str) -> Result<Self, RbError> {
        match s.trim() {
            "0" => Ok(Weight::Zero),
            "1" => Ok(Weight::One),
            other => Err(RbError::UnsupportedWeight(other.to_string())),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RbError {
    #[error("weight must be 0 or 1, got `{0}`")]
    UnsupportedWeight(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A linear map `P(e_i) = sum_j r_ij e_j` together with its weight.
#[derive(Clone, Debug, PartialEq)]
pub struct RotaBaxterOperator {
    pub matrix: Matrix,
    pub weight: Weight,
}

impl RotaBaxterOperator {
    pub fn new(matrix: Matrix, weight: Weight) -> Self {
        Self { matrix, weight }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Residual grid: entry `(i, j)` is `LHS - RHS` of the identity on `(e_i, e_j)`
/// as a coordinate vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    n: usize,
    cells: Vec<Vec<Scalar>>,
}

impl Residual {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.cells[i * self.n + j]
    }

    /// Max-norm over every pair and coordinate.
    pub fn max_norm(&self) -> f64 {
        self.cells
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

fn check_dims(a: &StructureMatrix, r: &Matrix) -> Result<(), RbError> {
    if a.dim() != r.dim() {
        return Err(MatrixError::DimensionMismatch {
            left: a.dim(),
            right: r.dim(),
        }
        .into());
    }
    Ok(())
}

/// Evaluates the identity on every basis pair `i <= j` and fills in the
/// symmetric half.
pub fn rb_residual(a: &StructureMatrix, op: &RotaBaxterOperator) -> Result<Residual, RbError> {
    rb_residual_weighted(a, &op.matrix, op.weight.value())
}

/// Same as [`rb_residual`] for an arbitrary complex weight.
pub fn rb_residual_weighted(
    a: &StructureMatrix,
    r: &Matrix,
    lambda: Scalar,
) -> Result<Residual, RbError> {
    check_dims(a, r)?;
    let n = a.dim();
    let q = a.matrix().mul(r)?;
    let mut cells = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in i..n {
            let mut cell = Vec::with_capacity(n);
            for k in 0..n {
                let mut lhs = Scalar::new(0.0, 0.0);
                for p in 0..n {
                    lhs += r[(i, p)] * r[(j, p)] * a.get(p, k);
                }
                let rhs = if i == j {
                    (r[(i, i)] * 2.0 + lambda) * q[(i, k)]
                } else {
                    r[(j, i)] * q[(i, k)] + r[(i, j)] * q[(j, k)]
                };
                cell.push(lhs - rhs);
            }
            if i != j {
                cells[j * n + i] = cell.clone();
            }
            cells[i * n + j] = cell;
        }
    }
    Ok(Residual { n, cells })
}

/// Max-norm of the residual; zero exactly when the operator satisfies the
/// identity.
pub fn rb_residual_norm(a: &StructureMatrix, op: &RotaBaxterOperator) -> Result<f64, RbError> {
    Ok(rb_residual(a, op)?.max_norm())
}

/// Flattened residual equations in the order `(i, j)` with `i <= j`
/// row-major, then coordinate `k`.
pub fn rb_equations(
    a: &StructureMatrix,
    r: &Matrix,
    lambda: Scalar,
) -> Result<Vec<Scalar>, RbError> {
    let res = rb_residual_weighted(a, r, lambda)?;
    let n = a.dim();
    let mut out = Vec::with_capacity(n * (n + 1) / 2 * n);
    for i in 0..n {
        for j in i..n {
            out.extend_from_slice(res.get(i, j));
        }
    }
    Ok(out)
}

/// Complex Jacobian of [`rb_equations`] with respect to the entries `r_uv`
/// (row-major). Rows follow the equation order, columns the entry order.
pub fn rb_jacobian(
    a: &StructureMatrix,
    r: &Matrix,
    lambda: Scalar,
) -> Result<Vec<Vec<Scalar>>, RbError> {
    check_dims(a, r)?;
    let n = a.dim();
    let q = a.matrix().mul(r)?;
    let zero = Scalar::new(0.0, 0.0);
    let delta = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let mut row = vec![zero; n * n];
                for u in 0..n {
                    for v in 0..n {
                        let mut dl = zero;
                        if u == i {
                            dl += r[(j, v)] * a.get(v, k);
                        }
                        if u == j {
                            dl += r[(i, v)] * a.get(v, k);
                        }
                        let dr = if i == j {
                            q[(i, k)] * (2.0 * delta(u, i) * delta(v, i))
                                + (r[(i, i)] * 2.0 + lambda) * a.get(i, u) * delta(v, k)
                        } else {
                            q[(i, k)] * (delta(u, j) * delta(v, i))
                                + r[(j, i)] * a.get(i, u) * delta(v, k)
                                + q[(j, k)] * (delta(u, i) * delta(v, j))
                                + r[(i, j)] * a.get(j, u) * delta(v, k)
                        };
                        row[u * n + v] = dl - dr;
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{multiply, AlgebraElement};
    use crate::scalar::{c, r};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Brute-force oracle: applies the definition element-wise through the
    /// evolution product and the linear map, without the index formulas.
    fn brute_force(a: &StructureMatrix, rm: &Matrix, lambda: Scalar) -> Vec<Vec<Vec<Scalar>>> {
        let n = a.dim();
        let apply = |x: &AlgebraElement| {
            let mut out = AlgebraElement::zero(n);
            for (i, xi) in x.coords().iter().enumerate() {
                let row = AlgebraElement(rm.row(i).to_vec());
                out = out.add(&row.scale(*xi));
            }
            out
        };
        let mut grid = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let ei = AlgebraElement::basis(n, i);
                let ej = AlgebraElement::basis(n, j);
                let pi = apply(&ei);
                let pj = apply(&ej);
                let lhs = multiply(a, &pi, &pj).unwrap();
                let inner = multiply(a, &ei, &pj)
                    .unwrap()
                    .add(&multiply(a, &pi, &ej).unwrap())
                    .add(&multiply(a, &ei, &ej).unwrap().scale(lambda));
                grid[i][j] = lhs.sub(&apply(&inner)).0;
            }
        }
        grid
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        let data = (0..n * n)
            .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        Matrix::new(n, data).unwrap()
    }

    #[test]
    fn agrees_with_brute_force_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 3] {
            for _ in 0..50 {
                let a = StructureMatrix::new(random_matrix(&mut rng, n));
                let rm = random_matrix(&mut rng, n);
                let lambda = if rng.gen_bool(0.5) { r(1.0) } else { r(0.0) };
                let res = rb_residual_weighted(&a, &rm, lambda).unwrap();
                let oracle = brute_force(&a, &rm, lambda);
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let d = (res.get(i, j)[k] - oracle[i][j][k]).norm();
                            assert!(d < 1e-12, "n={n} ({i},{j},{k}) diff {d}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn zero_operator_has_zero_residual() {
        let a = StructureMatrix::real(&[&[1.0, 3.0], &[-2.0, 0.5]]).unwrap();
        for w in [Weight::Zero, Weight::One] {
            let op = RotaBaxterOperator::new(Matrix::zeros(2), w);
            assert_eq!(rb_residual_norm(&a, &op).unwrap(), 0.0);
        }
    }

    #[test]
    fn e1_weight_zero_family_vanishes() {
        let a = StructureMatrix::real(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        for (b, d) in [(1.5, -2.0), (0.0, 3.0), (-7.0, 0.25)] {
            let op = RotaBaxterOperator::new(
                Matrix::real(&[&[0.0, b], &[0.0, d]]).unwrap(),
                Weight::Zero,
            );
            assert_eq!(rb_residual_norm(&a, &op).unwrap(), 0.0);
        }
    }

    #[test]
    fn e2_projection_residual_matches_hand_expansion() {
        // E2: e1e1 = e1, e2e2 = e1, P = [[1,0],[0,0]], weight 0:
        // (1,1): P(e1)P(e1) = e1, P(2 e1 e1) = 2 e1, so residual -e1
        let a = StructureMatrix::real(&[&[1.0, 0.0], &[1.0, 0.0]]).unwrap();
        let op = RotaBaxterOperator::new(
            Matrix::real(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap(),
            Weight::Zero,
        );
        let res = rb_residual(&a, &op).unwrap();
        assert_eq!(res.get(0, 0), &[r(-1.0), r(0.0)]);
        assert_eq!(res.get(0, 1), &[r(0.0), r(0.0)]);
        assert_eq!(res.get(1, 1), &[r(0.0), r(0.0)]);
    }

    #[test]
    fn e2_weight_zero_table_row() {
        let a = StructureMatrix::real(&[&[1.0, 0.0], &[1.0, 0.0]]).unwrap();
        let cc = r(3.0);
        let op = RotaBaxterOperator::new(
            Matrix::from_rows(&[[r(0.0), r(0.0)], [cc, c(0.0, 1.0) * cc]]).unwrap(),
            Weight::Zero,
        );
        assert!(rb_residual_norm(&a, &op).unwrap() < 1e-12);
    }

    #[test]
    fn e4_weight_one_table_row() {
        let a = StructureMatrix::real(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let av = 1.0;
        let op = RotaBaxterOperator::new(
            Matrix::real(&[&[av, 0.0], &[0.0, av * av / (1.0 + 2.0 * av)]]).unwrap(),
            Weight::One,
        );
        assert!(rb_residual_norm(&a, &op).unwrap() < 1e-12);
    }

    #[test]
    fn residual_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = StructureMatrix::new(random_matrix(&mut rng, 3));
        let rm = random_matrix(&mut rng, 3);
        let res = rb_residual_weighted(&a, &rm, r(1.0)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(res.get(i, j), res.get(j, i));
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = StructureMatrix::zero(2);
        let op = RotaBaxterOperator::new(Matrix::zeros(3), Weight::Zero);
        assert!(rb_residual(&a, &op).is_err());
    }

    #[test]
    fn weight_parsing() {
        assert_eq!("1".parse::<Weight>().unwrap(), Weight::One);
        assert!("2".parse::<Weight>().is_err());
        assert!(Weight::try_from(3).is_err());
    }
}
