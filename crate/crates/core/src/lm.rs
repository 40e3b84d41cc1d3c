//! Damped least squares (Levenberg-Marquardt) and quasi-random starting points.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct LmOptions {
    pub max_iter: usize,
    /// Stop once the squared residual norm drops below this value.
    pub cost_tol: f64,
    /// Stop when the step is below `step_tol * (1 + |x|)`.
    pub step_tol: f64,
    pub lambda0: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        Self {
            max_iter: 200,
            cost_tol: 1e-30,
            step_tol: 1e-15,
            lambda0: 1e-3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LmResult {
    pub x: Vec<f64>,
    /// Squared Euclidean norm of the residual at `x`.
    pub cost: f64,
    pub iterations: usize,
}

/// Residual plus Jacobian of a real least-squares problem.
pub type Eval = (Vec<f64>, DMatrix<f64>);

fn sq(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

/// Minimizes `|f(x)|^2` from `x0`. `f` returns the residual vector and its
/// Jacobian (rows: residuals, columns: unknowns).
pub fn minimize<F>(x0: &[f64], f: F, opts: &LmOptions) -> LmResult
where
    F: Fn(&[f64]) -> Eval,
{
    let m = x0.len();
    let mut x = x0.to_vec();
    let (mut r, mut jac) = f(&x);
    let mut cost = sq(&r);
    let mut lambda = opts.lambda0;
    let mut iterations = 0;
    while iterations < opts.max_iter && cost.is_finite() && cost > opts.cost_tol {
        iterations += 1;
        let jt = jac.transpose();
        let h = &jt * &jac;
        let g = &jt * DVector::from_column_slice(&r);
        let mut accepted = false;
        while lambda < 1e16 {
            let mut damped = h.clone();
            for i in 0..m {
                damped[(i, i)] += lambda * h[(i, i)].max(1e-12);
            }
            let rhs = -&g;
            let step = match damped.clone().cholesky() {
                Some(ch) => ch.solve(&rhs),
                None => match damped.lu().solve(&rhs) {
                    Some(s) => s,
                    None => {
                        lambda *= 4.0;
                        continue;
                    }
                },
            };
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let (tr, tj) = f(&trial);
            let tc = sq(&tr);
            if tc.is_finite() && tc < cost {
                let xnorm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                let small = step.norm() <= opts.step_tol * (1.0 + xnorm);
                x = trial;
                r = tr;
                jac = tj;
                cost = tc;
                lambda = (lambda / 3.0).max(1e-15);
                accepted = true;
                if small {
                    return LmResult {
                        x,
                        cost,
                        iterations,
                    };
                }
                break;
            }
            lambda *= 4.0;
        }
        if !accepted {
            break;
        }
    }
    LmResult {
        x,
        cost,
        iterations,
    }
}

/// Complex residual with its complex (holomorphic) Jacobian.
pub type ComplexEval = (Vec<Scalar>, Vec<Vec<Scalar>>);

/// Packing of complex unknowns into real coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Packing {
    /// `[re z0, im z0, re z1, im z1, ...]`
    Complex,
    /// `[z0, z1, ...]` with every imaginary part fixed at zero.
    RealOnly,
}

impl Packing {
    pub fn real_len(self, n: usize) -> usize {
        match self {
            Packing::Complex => 2 * n,
            Packing::RealOnly => n,
        }
    }

    pub fn unpack(self, x: &[f64]) -> Vec<Scalar> {
        match self {
            Packing::Complex => x.chunks(2).map(|p| Scalar::new(p[0], p[1])).collect(),
            Packing::RealOnly => x.iter().map(|&v| Scalar::new(v, 0.0)).collect(),
        }
    }

    pub fn pack(self, z: &[Scalar]) -> Vec<f64> {
        match self {
            Packing::Complex => z.iter().flat_map(|w| [w.re, w.im]).collect(),
            Packing::RealOnly => z.iter().map(|w| w.re).collect(),
        }
    }
}

/// Turns a holomorphic system into a real one: every complex equation gives
/// its real and imaginary parts, and the Cauchy-Riemann relations fill the
/// real Jacobian.
pub fn realify(packing: Packing, z_eval: ComplexEval) -> Eval {
    let (fz, jz) = z_eval;
    let p = fz.len();
    let n = jz.first().map_or(0, |row| row.len());
    let cols = packing.real_len(n);
    let mut r = Vec::with_capacity(2 * p);
    let mut jac = DMatrix::zeros(2 * p, cols);
    for (k, (fk, row)) in fz.iter().zip(&jz).enumerate() {
        r.push(fk.re);
        r.push(fk.im);
        for (j, d) in row.iter().enumerate() {
            match packing {
                Packing::Complex => {
                    jac[(2 * k, 2 * j)] = d.re;
                    jac[(2 * k, 2 * j + 1)] = -d.im;
                    jac[(2 * k + 1, 2 * j)] = d.im;
                    jac[(2 * k + 1, 2 * j + 1)] = d.re;
                }
                Packing::RealOnly => {
                    jac[(2 * k, j)] = d.re;
                    jac[(2 * k + 1, j)] = d.im;
                }
            }
        }
    }
    (r, jac)
}

/// Minimizes a holomorphic system over complex (or real-only) unknowns.
pub fn minimize_complex<F>(
    z0: &[Scalar],
    packing: Packing,
    f: F,
    opts: &LmOptions,
) -> (Vec<Scalar>, f64)
where
    F: Fn(&[Scalar]) -> ComplexEval,
{
    let x0 = packing.pack(z0);
    let res = minimize(&x0, |x| realify(packing, f(&packing.unpack(x))), opts);
    (packing.unpack(&res.x), res.cost)
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut out = 0.0;
    while i > 0 {
        f /= base as f64;
        out += f * (i % base) as f64;
        i /= base;
    }
    out
}

/// `count` Halton points in `[lo, hi]^dim`, shifted by a seeded random
/// rotation (Cranley-Patterson) so different seeds give different grids.
pub fn halton_points(count: usize, dim: usize, seed: u64, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    assert!(dim <= PRIMES.len(), "Halton dimension {dim} too large");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
    (1..=count as u64)
        .map(|i| {
            (0..dim)
                .map(|d| {
                    let u = (radical_inverse(i, PRIMES[d]) + shift[d]).fract();
                    lo + (hi - lo) * u
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| {
            let r = vec![10.0 * (x[1] - x[0] * x[0]), 1.0 - x[0]];
            let j = DMatrix::from_row_slice(2, 2, &[-20.0 * x[0], 10.0, -1.0, 0.0]);
            (r, j)
        };
        let res = minimize(&[-1.2, 1.0], f, &LmOptions::default());
        assert!((res.x[0] - 1.0).abs() < 1e-10 && (res.x[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn complex_square_root() {
        // z^2 = i has roots +-(1+i)/sqrt(2)
        let f = |z: &[Scalar]| {
            (
                vec![z[0] * z[0] - Scalar::new(0.0, 1.0)],
                vec![vec![z[0] * 2.0]],
            )
        };
        let (z, cost) = minimize_complex(
            &[Scalar::new(1.0, 0.5)],
            Packing::Complex,
            f,
            &LmOptions::default(),
        );
        assert!(cost < 1e-28);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z[0] - Scalar::new(h, h)).norm() < 1e-12);
    }

    #[test]
    fn real_only_keeps_imaginary_zero() {
        let f = |z: &[Scalar]| (vec![z[0] * z[0] - 4.0], vec![vec![z[0] * 2.0]]);
        let (z, _) = minimize_complex(
            &[Scalar::new(3.0, 0.0)],
            Packing::RealOnly,
            f,
            &LmOptions::default(),
        );
        assert_eq!(z[0].im, 0.0);
        assert!((z[0].re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn halton_is_deterministic_and_bounded() {
        let a = halton_points(50, 8, 3, -2.0, 2.0);
        assert_eq!(a, halton_points(50, 8, 3, -2.0, 2.0));
        assert_ne!(a, halton_points(50, 8, 4, -2.0, 2.0));
        assert!(a.iter().flatten().all(|v| (-2.0..=2.0).contains(v)));
    }
}
