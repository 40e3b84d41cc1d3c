//! Time-dependent isomorphism class of a chain, the region table it must
//! follow, and explicit basis changes for each region.

use crate::classify::{classify, AlgebraClass, BasisChange, Tag};
use crate::matrix::Matrix;
use crate::scalar::{r, Field, Scalar};

use super::family::{Branch, ChainFamilySpec, FamilyId, Slot, TimePair};
use super::CeaError;

/// Classifies the algebra of the chain at `p`.
pub fn classify_dynamics(
    spec: &ChainFamilySpec,
    p: TimePair,
    field: Field,
) -> Result<AlgebraClass, CeaError> {
    let m = spec.matrix(p)?;
    Ok(classify(&m, field)?)
}

/// The region table, written from the family definitions alone (no
/// classifier involved). `None` where the table says nothing (for example
/// `s = t` for M1). Complex field.
pub fn expected_class(spec: &ChainFamilySpec, p: TimePair) -> Result<Option<Tag>, CeaError> {
    let (s, t) = (p.s, p.t);
    let th = spec.threshold().unwrap_or(0.0);
    let zero = |slot: Slot, u: f64| -> Result<bool, CeaError> { Ok(spec.f(slot, u)? == 0.0) };
    let tag = match spec.id() {
        FamilyId::M0 => Some(Tag::E0),
        FamilyId::M1 if s < t => Some(if zero(Slot::Rho, s)? {
            Tag::E1
        } else {
            Tag::E2
        }),
        FamilyId::M1 => None,
        FamilyId::M2 if s < t && t < th && s > 0.0 => Some(if zero(Slot::Sigma, s)? {
            Tag::E1
        } else {
            Tag::E2
        }),
        FamilyId::M4 if s < t && t < th && s > 0.0 => Some(Tag::E1),
        FamilyId::M2 | FamilyId::M4 if t >= th => Some(Tag::E0),
        FamilyId::M2 | FamilyId::M4 => None,
        FamilyId::M3 => Some(Tag::E1),
        FamilyId::M5 if s < t && t <= th => Some(Tag::E0),
        FamilyId::M5 if t > th => Some(Tag::E4),
        FamilyId::M6 if s < t && t <= th => Some(Tag::E0),
        FamilyId::M6 if t > th => Some(if zero(Slot::Rho, s)? {
            Tag::E0
        } else {
            Tag::E4
        }),
        FamilyId::M5 | FamilyId::M6 => None,
        FamilyId::M7 => Some(if s < th { Tag::E4 } else { Tag::E0 }),
        FamilyId::M8 if s < th => Some(if zero(Slot::Sigma, t)? {
            Tag::E0
        } else {
            Tag::E4
        }),
        FamilyId::M8 => Some(Tag::E0),
    };
    Ok(tag)
}

/// Distance from `p` to the nearest region boundary of the table, counting
/// the diagonal `s = t`, the axis `s = 0`, the threshold lines, and small
/// nonzero values of the split functions (`0 < |rho| < margin` counts as
/// on the boundary).
pub fn near_boundary(spec: &ChainFamilySpec, p: TimePair, margin: f64) -> Result<bool, CeaError> {
    let (s, t) = (p.s, p.t);
    if t - s < margin || s < margin {
        return Ok(true);
    }
    if let Some(th) = spec.threshold() {
        if (t - th).abs() < margin || (s - th).abs() < margin {
            return Ok(true);
        }
    }
    let tiny = |v: f64| v != 0.0 && v.abs() < margin;
    let split = match spec.id() {
        FamilyId::M1 | FamilyId::M6 => tiny(spec.f(Slot::Rho, s)?),
        FamilyId::M2 => tiny(spec.f(Slot::Sigma, s)?),
        FamilyId::M8 => tiny(spec.f(Slot::Sigma, t)?),
        _ => false,
    };
    Ok(split)
}

fn rows(m: [[Scalar; 2]; 2]) -> Result<BasisChange, CeaError> {
    Ok(BasisChange::new(Matrix::from_rows(&m)?)?)
}

/// A basis change from the canonical algebra of [`expected_class`] to the
/// chain's algebra at `p` (rows: canonical basis vectors in the natural basis
/// of the chain).
pub fn witness(spec: &ChainFamilySpec, p: TimePair) -> Result<BasisChange, CeaError> {
    let (s, t) = (p.s, p.t);
    let z = r(0.0);
    let o = r(1.0);
    let branch = spec.branch(p).ok_or(CeaError::OutOfDomain { s, t })?;
    let m = spec.matrix(p)?;
    if branch == Branch::Zero || m.is_zero(0.0) {
        return Ok(BasisChange::identity());
    }
    let g = |i, j| m.get(i, j);
    match spec.id() {
        FamilyId::M0 => Ok(BasisChange::identity()),
        FamilyId::M1 | FamilyId::M2 => {
            // e1 e1 = b e2, e2 e2 = q e2
            let (b, q) = (g(0, 1), g(1, 1));
            let f1 = [z, q.inv()];
            if b == z {
                rows([f1, [o, z]])
            } else {
                let k = (b * q).inv().sqrt();
                rows([f1, [k, z]])
            }
        }
        FamilyId::M3 | FamilyId::M4 => {
            // e2 e2 = c e1 + q e2
            let (c, q) = (g(1, 0), g(1, 1));
            let y = q.inv();
            rows([[y * y * c, y], [o, z]])
        }
        FamilyId::M5 | FamilyId::M6 => rows([[o, z], [z, g(0, 1)]]),
        FamilyId::M7 | FamilyId::M8 => rows([[z, o], [g(1, 0), z]]),
    }
}

/// The basis changes as printed in the proof of the region table, with the
/// repeated `e'_2` in the M3 case read as `e'_1` and `sigma` in the M4 case
/// read as `g`. Only some of them are homomorphisms; see the tests.
pub fn printed_witness(spec: &ChainFamilySpec, p: TimePair) -> Result<Option<Matrix>, CeaError> {
    let (s, t) = (p.s, p.t);
    let z = 0.0;
    let m = match spec.id() {
        FamilyId::M1 => {
            let ratio = spec.f(Slot::Phi, s)? / spec.f(Slot::Phi, t)?;
            let rho = spec.f(Slot::Rho, s)?;
            if rho == 0.0 {
                [[1.0, z], [z, ratio]]
            } else {
                [[1.0 / (rho * spec.f(Slot::Phi, t)?), z], [z, ratio]]
            }
        }
        FamilyId::M2 => {
            let sigma = spec.f(Slot::Sigma, s)?;
            if sigma == 0.0 {
                [[1.0, z], [z, 1.0]]
            } else {
                [[1.0 / sigma, z], [z, 1.0]]
            }
        }
        FamilyId::M3 => {
            let (ps, pt) = (spec.f(Slot::Phi, s)?, spec.f(Slot::Phi, t)?);
            [[spec.f(Slot::F, t)? * ps / (pt * pt), ps / pt], [1.0, z]]
        }
        FamilyId::M4 => [[spec.f(Slot::G, t)?, 1.0], [1.0, z]],
        FamilyId::M5 => [
            [spec.f(Slot::CapPhi, s)? / spec.f(Slot::CapPhi, t)?, z],
            [z, 1.0],
        ],
        FamilyId::M6 => [[spec.f(Slot::Phi, t)? / spec.f(Slot::Rho, s)?, z], [z, 1.0]],
        FamilyId::M7 => [[spec.f(Slot::Psi, s)? / spec.f(Slot::Psi, t)?, z], [z, 1.0]],
        FamilyId::M8 => [
            [spec.f(Slot::Phi, s)? / spec.f(Slot::Sigma, t)?, z],
            [z, 1.0],
        ],
        FamilyId::M0 => return Ok(None),
    };
    Ok(Some(Matrix::from_rows(&m.map(|row| row.map(r)))?))
}
