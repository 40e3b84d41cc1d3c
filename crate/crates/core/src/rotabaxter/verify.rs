//! Sampled verification of catalog families.

use std::fmt;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::rb::{rb_residual_norm, RotaBaxterOperator};
use crate::scalar::{format_scalar, Scalar};

use super::catalog::{Member, RboFamily, Rejection};

/// Free parameters are drawn with real and imaginary parts uniform in
/// `[-box_half, box_half]`; draws within `margin` of a side condition are
/// redrawn, at most `max_attempts` times in total.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub box_half: f64,
    pub margin: f64,
    pub max_attempts: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            samples: 200,
            seed: 0,
            tol: 1e-9,
            box_half: 2.0,
            margin: 1e-3,
            max_attempts: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub id: String,
    pub algebra: String,
    pub template: String,
    /// Parameter points evaluated (1 for an isolated matrix).
    pub samples: usize,
    /// Draws rejected by side conditions.
    pub rejected: usize,
    pub worst_residual: f64,
    pub worst_params: Vec<Scalar>,
    pub pass: bool,
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {} samples, worst residual {:e}: {}",
            self.id,
            self.algebra,
            self.template,
            self.samples,
            self.worst_residual,
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        if !self.worst_params.is_empty() && !self.pass {
            let ps: Vec<String> = self
                .worst_params
                .iter()
                .map(|z| format_scalar(*z))
                .collect();
            write!(f, " (at {})", ps.join(", "))?;
        }
        Ok(())
    }
}

fn stream_seed(seed: u64, id: &str) -> u64 {
    id.bytes().fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn worst_member(members: &[Member], weight: crate::rb::Weight) -> f64 {
    members
        .iter()
        .map(|m| {
            rb_residual_norm(
                &m.algebra,
                &RotaBaxterOperator::new(m.operator.clone(), weight),
            )
            .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max)
}

fn run<B>(f: &RboFamily, opts: &VerifyOptions, build: B) -> FamilyReport
where
    B: Fn(&[Scalar], f64) -> Result<Vec<Member>, Rejection>,
{
    let mut report = FamilyReport {
        id: f.id.clone(),
        algebra: f.algebra.to_string(),
        template: f.template.to_string(),
        samples: 0,
        rejected: 0,
        worst_residual: 0.0,
        worst_params: Vec::new(),
        pass: false,
    };
    if f.is_isolated() {
        match build(&[], opts.margin) {
            Ok(members) => {
                report.samples = 1;
                report.worst_residual = worst_member(&members, f.weight);
            }
            Err(e) => {
                log::warn!("{}: {}", f.id, e.0);
                report.worst_residual = f64::INFINITY;
            }
        }
        report.pass = report.worst_residual < opts.tol;
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(opts.seed, &f.id));
    let mut attempts = 0;
    while report.samples < opts.samples && attempts < opts.max_attempts {
        attempts += 1;
        let p: Vec<Scalar> = f
            .free
            .iter()
            .map(|_| {
                Scalar::new(
                    rng.gen_range(-opts.box_half..opts.box_half),
                    rng.gen_range(-opts.box_half..opts.box_half),
                )
            })
            .collect();
        match build(&p, opts.margin) {
            Ok(members) => {
                report.samples += 1;
                let res = worst_member(&members, f.weight);
                if res > report.worst_residual || report.worst_params.is_empty() {
                    report.worst_residual = res;
                    report.worst_params = p;
                }
            }
            Err(_) => report.rejected += 1,
        }
    }
    report.pass = report.samples >= opts.samples && report.worst_residual < opts.tol;
    report
}

/// Residual of every member at `samples` admissible parameter draws.
pub fn verify_family(f: &RboFamily, opts: &VerifyOptions) -> FamilyReport {
    run(f, opts, |p, mg| f.members(p, mg))
}

/// The same check applied to the family's alternate printed form, if any.
pub fn verify_alternate(f: &RboFamily, opts: &VerifyOptions) -> Option<FamilyReport> {
    let alt = f.alternate.as_ref()?;
    let mut rep = run(f, opts, |p, mg| alt.members(p, mg));
    rep.template = alt.template.to_string();
    Some(rep)
}

/// Verifies families in parallel; reports keep the input order.
pub fn verify_all(families: &[RboFamily], opts: &VerifyOptions) -> Vec<FamilyReport> {
    families
        .par_iter()
        .map(|f| verify_family(f, opts))
        .collect()
}

/// `family_id,samples,worst_residual,pass`
pub fn reports_to_csv(reports: &[FamilyReport]) -> String {
    let mut out = String::from("family_id,samples,worst_residual,pass\n");
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{:e},{}",
            r.id, r.samples, r.worst_residual, r.pass
        );
    }
    out
}
