//! Multi-start search for Rota-Baxter operators on a 2-dimensional algebra:
//! least squares on the residual equations over the eight real unknowns
//! `re, im` of `a, b, c, d`.
//!
//! At weight 0 the equations are homogeneous, solutions come in lines
//! through the origin and the origin itself attracts most starts. There each
//! start also carries the chart `<v, z> = 1` with `v = conj(z0)/|z0|^2`, and
//! points are reported as unit vectors with the first entry of largest
//! modulus real and positive. The zero operator is not reported.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::lm::{halton_points, minimize_complex, LmOptions, Packing};
use crate::matrix::{Matrix, StructureMatrix};
use crate::rb::{rb_equations, rb_jacobian, rb_residual_norm, RotaBaxterOperator, Weight};
use crate::scalar::Scalar;

use super::catalog::RboFamily;
use super::RboError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub starts: usize,
    pub seed: u64,
    /// Residual max-norm for a converged point.
    pub tol: f64,
    /// Starts are drawn from `[-box_half, box_half]^8`.
    pub box_half: f64,
    /// Euclidean radius in `R^8` for merging points.
    pub dedup_radius: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            starts: 500,
            seed: 0,
            tol: 1e-9,
            box_half: 2.0,
            dedup_radius: 1e-5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionPoint {
    pub operator: Matrix,
    pub residual: f64,
    /// Index of the start that produced the representative.
    pub start: usize,
    /// Number of converged starts merged into this point.
    pub hits: usize,
    /// Catalog family id, `trivial` for the zero map, or `uncataloged`.
    pub family: Option<String>,
}

fn euclid(a: &Matrix, b: &Matrix) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(u, v)| (u - v).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Unit representative of the line through `z`: the first entry within
/// `1e-6` relative of the largest modulus is made real positive.
fn normalize_ray(z: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let norm = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    let big = z.iter().map(|w| w.norm()).fold(0.0, f64::max);
    if !(norm.is_finite() && norm > 1e-8) {
        return None;
    }
    let pivot = z.iter().find(|w| w.norm() >= big * (1.0 - 1e-6))?;
    let phase = pivot.conj() / (pivot.norm() * norm);
    Some(z.iter().map(|w| w * phase).collect())
}

/// Converged, deduplicated points in order of first discovery.
pub fn search(
    a: &StructureMatrix,
    weight: Weight,
    opts: &SearchOptions,
) -> Result<Vec<SolutionPoint>, RboError> {
    if a.dim() != 2 {
        return Err(RboError::Dimension(a.dim()));
    }
    let lambda = weight.value();
    let projective = weight == Weight::Zero;
    let lm = LmOptions::default();
    let starts = halton_points(opts.starts, 8, opts.seed, -opts.box_half, opts.box_half);
    let found: Vec<Option<(Matrix, f64)>> = starts
        .par_iter()
        .map(|x0| {
            let z0 = Packing::Complex.unpack(x0);
            let chart = projective.then(|| {
                let n2: f64 = z0.iter().map(|z| z.norm_sqr()).sum();
                z0.iter().map(|z| z.conj() / n2).collect::<Vec<Scalar>>()
            });
            let (z, _) = minimize_complex(
                &z0,
                Packing::Complex,
                |z| {
                    let r = Matrix::new(2, z.to_vec()).expect("4 entries");
                    let mut f = rb_equations(a, &r, lambda).expect("dims match");
                    let mut j = rb_jacobian(a, &r, lambda).expect("dims match");
                    if let Some(v) = &chart {
                        f.push(v.iter().zip(z).map(|(u, w)| u * w).sum::<Scalar>() - 1.0);
                        j.push(v.clone());
                    }
                    (f, j)
                },
                &lm,
            );
            let z = if projective { normalize_ray(z)? } else { z };
            let r = Matrix::new(2, z).ok()?;
            let res = rb_residual_norm(a, &RotaBaxterOperator::new(r.clone(), weight)).ok()?;
            (res < opts.tol).then_some((r, res))
        })
        .collect();
    let mut points: Vec<SolutionPoint> = Vec::new();
    for (idx, hit) in found.into_iter().enumerate() {
        let Some((r, res)) = hit else { continue };
        match points
            .iter_mut()
            .find(|p| euclid(&p.operator, &r) < opts.dedup_radius)
        {
            Some(p) => {
                p.hits += 1;
                if res < p.residual {
                    p.operator = r;
                    p.residual = res;
                    p.start = idx;
                }
            }
            None => points.push(SolutionPoint {
                operator: r,
                residual: res,
                start: idx,
                hits: 1,
                family: None,
            }),
        }
    }
    Ok(points)
}

/// Labels each point with the first family within `tol` of it.
pub fn annotate(
    a: &StructureMatrix,
    points: &mut [SolutionPoint],
    families: &[RboFamily],
    tol: f64,
) {
    let labels: Vec<String> = points
        .par_iter()
        .map(|p| {
            if p.operator.max_norm() < tol {
                return "trivial".to_string();
            }
            families
                .iter()
                .find(|f| f.distance(a, &p.operator) < tol)
                .map_or_else(|| "uncataloged".to_string(), |f| f.id.clone())
        })
        .collect();
    for (p, l) in points.iter_mut().zip(labels) {
        p.family = Some(l);
    }
}

/// `index,start,hits,residual,family,a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im`
pub fn points_to_csv(points: &[SolutionPoint]) -> String {
    let mut out =
        String::from("index,start,hits,residual,family,a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im\n");
    for (i, p) in points.iter().enumerate() {
        let _ = write!(
            out,
            "{i},{},{},{:e},{}",
            p.start,
            p.hits,
            p.residual,
            p.family.as_deref().unwrap_or("")
        );
        for z in p.operator.as_slice() {
            let _ = write!(out, ",{:.12e},{:.12e}", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_algebra_everything_converges() {
        let pts = search(
            &StructureMatrix::zero(2),
            Weight::Zero,
            &SearchOptions {
                starts: 10,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(pts.len(), 10);
        assert!(pts.iter().all(|p| p.residual == 0.0 && p.hits == 1));
    }

    #[test]
    fn rejects_other_dimensions() {
        assert!(search(
            &StructureMatrix::zero(3),
            Weight::One,
            &SearchOptions::default()
        )
        .is_err());
    }
}
