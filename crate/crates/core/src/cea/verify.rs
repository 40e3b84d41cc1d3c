//! Sampled checks of the Chapman-Kolmogorov equation
//! `M(s,t) = M(s,tau) M(tau,t)` and of the scalar equations
//! `d(s,tau) d(tau,t) = d(s,t)` (Cantor) and `d(s,tau) d(tau,t) = 0`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::Expr;
use crate::matrix::Matrix;

use super::family::{ChainFamilySpec, TimePair};
use super::CeaError;

/// Triple sampling: `s ~ U(0.1, t_max/3)`, `tau ~ U(s+eps, 2 t_max/3)`,
/// `t ~ U(tau+eps, t_max)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sampling {
    pub t_max: f64,
    pub eps: f64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            t_max: 10.0,
            eps: 1e-3,
        }
    }
}

impl Sampling {
    pub fn triples(&self, samples: usize, seed: u64) -> Vec<(f64, f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                let s = rng.gen_range(0.1..self.t_max / 3.0);
                let tau = rng.gen_range(s + self.eps..2.0 * self.t_max / 3.0);
                let t = rng.gen_range(tau + self.eps..self.t_max);
                (s, tau, t)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub label: String,
    pub samples: usize,
    pub tol: f64,
    pub max_violation: f64,
    /// Triple with the largest violation.
    pub worst: Option<(f64, f64, f64)>,
    pub pass: bool,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} samples, max violation {:e}, tol {:e}: {}",
            self.label,
            self.samples,
            self.max_violation,
            self.tol,
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        if let (false, Some((s, tau, t))) = (self.pass, self.worst) {
            write!(f, " (worst at s={s}, tau={tau}, t={t})")?;
        }
        Ok(())
    }
}

fn run<F>(
    label: String,
    samples: usize,
    seed: u64,
    tol: f64,
    sampling: Sampling,
    f: F,
) -> Result<CheckReport, CeaError>
where
    F: Fn(f64, f64, f64) -> Result<f64, CeaError>,
{
    let mut max_violation = 0.0f64;
    let mut worst = None;
    for (s, tau, t) in sampling.triples(samples, seed) {
        let v = f(s, tau, t).map_err(|e| CeaError::AtTriple {
            s,
            tau,
            t,
            source: Box::new(e),
        })?;
        if worst.is_none() || v > max_violation {
            max_violation = v;
            worst = Some((s, tau, t));
        }
    }
    Ok(CheckReport {
        label,
        samples,
        tol,
        max_violation,
        worst,
        pass: max_violation < tol,
    })
}

/// Chapman-Kolmogorov check for any matrix-valued chain.
pub fn verify_ck_with<F>(
    label: &str,
    chain: F,
    samples: usize,
    seed: u64,
    tol: f64,
    sampling: Sampling,
) -> Result<CheckReport, CeaError>
where
    F: Fn(TimePair) -> Result<Matrix, CeaError>,
{
    run(
        label.to_string(),
        samples,
        seed,
        tol,
        sampling,
        |s, tau, t| {
            let left = chain(TimePair::new(s, tau)?)?;
            let right = chain(TimePair::new(tau, t)?)?;
            let whole = chain(TimePair::new(s, t)?)?;
            Ok(left.mul(&right)?.max_abs_diff(&whole))
        },
    )
}

pub fn verify_ck(
    spec: &ChainFamilySpec,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport, CeaError> {
    verify_ck_sampled(spec, samples, seed, tol, Sampling::default())
}

pub fn verify_ck_sampled(
    spec: &ChainFamilySpec,
    samples: usize,
    seed: u64,
    tol: f64,
    sampling: Sampling,
) -> Result<CheckReport, CeaError> {
    verify_ck_with(
        &format!("{} Chapman-Kolmogorov", spec.id()),
        |p| Ok(spec.matrix(p)?.into_matrix()),
        samples,
        seed,
        tol,
        sampling,
    )
}

/// A scalar two-time function.
#[derive(Clone, Debug, PartialEq)]
pub enum Delta {
    /// `d(s, t)` given directly by an expression in `s` and `t`.
    Expr(Expr),
    /// Identically zero.
    Zero,
    /// Zero when `C <= s < t` or `s < t <= C`, and `f(s, t)` when `s < C < t`.
    Split { c: f64, f: Expr },
}

impl Delta {
    pub fn eval(&self, s: f64, t: f64) -> Result<f64, CeaError> {
        match self {
            Delta::Zero => Ok(0.0),
            Delta::Expr(e) => e.eval(s, t).map_err(CeaError::from),
            Delta::Split { c, f } => {
                if s < *c && *c < t {
                    f.eval(s, t).map_err(CeaError::from)
                } else {
                    Ok(0.0)
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarEquation {
    /// `d(s,tau) d(tau,t) = d(s,t)`
    Cantor,
    /// `d(s,tau) d(tau,t) = 0`
    Degenerate,
}

pub fn verify_cantor(
    delta: &Delta,
    equation: ScalarEquation,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport, CeaError> {
    let label = match equation {
        ScalarEquation::Cantor => "Cantor equation",
        ScalarEquation::Degenerate => "degenerate equation",
    };
    run(
        label.to_string(),
        samples,
        seed,
        tol,
        Sampling::default(),
        |s, tau, t| {
            let prod = delta.eval(s, tau)? * delta.eval(tau, t)?;
            let rhs = match equation {
                ScalarEquation::Cantor => delta.eval(s, t)?,
                ScalarEquation::Degenerate => 0.0,
            };
            Ok((prod - rhs).abs())
        },
    )
}
