//! The chain families M0 to M8 and their structure matrices.

use std::collections::BTreeMap;
use std::fmt;

use crate::expr::{self, Expr};
use crate::matrix::StructureMatrix;
use crate::scalar::r;

use super::CeaError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    M0,
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7,
    M8,
}

impl FamilyId {
    pub const ALL: [FamilyId; 9] = [
        FamilyId::M0,
        FamilyId::M1,
        FamilyId::M2,
        FamilyId::M3,
        FamilyId::M4,
        FamilyId::M5,
        FamilyId::M6,
        FamilyId::M7,
        FamilyId::M8,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Free-function slots the family needs.
    pub fn slots(self) -> &'static [Slot] {
        use Slot::*;
        match self {
            FamilyId::M0 => &[],
            FamilyId::M1 => &[Rho, Phi],
            FamilyId::M2 => &[Sigma],
            FamilyId::M3 => &[F, Phi],
            FamilyId::M4 => &[G],
            FamilyId::M5 => &[CapPhi],
            FamilyId::M6 => &[Rho, Phi],
            FamilyId::M7 => &[Psi],
            FamilyId::M8 => &[Sigma, Phi],
        }
    }

    /// Name of the threshold constant, if any.
    pub fn threshold_name(self) -> Option<&'static str> {
        match self {
            FamilyId::M2 | FamilyId::M4 => Some("a"),
            FamilyId::M5 | FamilyId::M6 | FamilyId::M7 | FamilyId::M8 => Some("C"),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}", self.index())
    }
}

impl std::str::FromStr for FamilyId {
    type Err = CeaError;

    fn from_str(s: &str) -> Result<Self, CeaError> {
        s.trim()
            .strip_prefix(['M', 'm'])
            .and_then(|d| d.parse::<usize>().ok())
            .and_then(|i| FamilyId::ALL.get(i).copied())
            .ok_or_else(|| CeaError::Config(format!("unknown family `{s}`")))
    }
}

/// Free-function slot names as they appear in config files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Rho,
    Phi,
    Sigma,
    F,
    G,
    /// Capital phi, the function of M5.
    CapPhi,
    Psi,
}

impl Slot {
    pub const ALL: [Slot; 7] = [
        Slot::Rho,
        Slot::Phi,
        Slot::Sigma,
        Slot::F,
        Slot::G,
        Slot::CapPhi,
        Slot::Psi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Slot::Rho => "rho",
            Slot::Phi => "phi",
            Slot::Sigma => "sigma",
            Slot::F => "f",
            Slot::G => "g",
            Slot::CapPhi => "Phi",
            Slot::Psi => "Psi",
        }
    }

    pub fn from_name(name: &str) -> Option<Slot> {
        Slot::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A free function of one variable. The expression may be written in `s` or
/// in `t` (not both); either letter stands for the argument.
#[derive(Clone, Debug, PartialEq)]
pub struct UnaryFn {
    slot: Slot,
    expr: Expr,
}

impl UnaryFn {
    pub fn parse(slot: Slot, text: &str) -> Result<Self, CeaError> {
        let expr = expr::parse(text).map_err(|source| CeaError::Parse { slot, source })?;
        if expr.vars() == (true, true) {
            return Err(CeaError::Bivariate(slot));
        }
        Ok(Self { slot, expr })
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn eval(&self, u: f64) -> Result<f64, CeaError> {
        self.expr.eval(u, u).map_err(|source| CeaError::Eval {
            slot: self.slot,
            arg: u,
            source,
        })
    }
}

/// A family id with its free functions and threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainFamilySpec {
    id: FamilyId,
    functions: BTreeMap<Slot, UnaryFn>,
    threshold: Option<f64>,
}

impl ChainFamilySpec {
    /// `functions` must name exactly the slots of `id`; `threshold` is
    /// required (and must be positive) for the threshold families.
    pub fn new(
        id: FamilyId,
        functions: &[(&str, &str)],
        threshold: Option<f64>,
    ) -> Result<Self, CeaError> {
        let mut map = BTreeMap::new();
        for (name, text) in functions {
            let slot = Slot::from_name(name)
                .filter(|s| id.slots().contains(s))
                .ok_or_else(|| CeaError::Config(format!("{id} has no function slot `{name}`")))?;
            if map.insert(slot, UnaryFn::parse(slot, text)?).is_some() {
                return Err(CeaError::Config(format!("slot `{name}` given twice")));
            }
        }
        for slot in id.slots() {
            if !map.contains_key(slot) {
                return Err(CeaError::Config(format!("{id} needs function `{slot}`")));
            }
        }
        match (id.threshold_name(), threshold) {
            (Some(name), None) => {
                return Err(CeaError::Config(format!("{id} needs threshold `{name}`")))
            }
            (Some(name), Some(v)) if !(v.is_finite() && v > 0.0) => {
                return Err(CeaError::Config(format!(
                    "threshold `{name}` must be positive, got {v}"
                )))
            }
            (None, Some(_)) => return Err(CeaError::Config(format!("{id} takes no threshold"))),
            _ => {}
        }
        Ok(Self {
            id,
            functions: map,
            threshold,
        })
    }

    pub fn id(&self) -> FamilyId {
        self.id
    }

    pub fn threshold(&self) -> Option<f64> {
        self.threshold
    }

    pub fn function(&self, slot: Slot) -> &UnaryFn {
        &self.functions[&slot]
    }

    pub(crate) fn f(&self, slot: Slot, u: f64) -> Result<f64, CeaError> {
        self.function(slot).eval(u)
    }

    fn th(&self) -> f64 {
        self.threshold.unwrap_or(0.0)
    }

    /// Which printed branch covers `(s, t)`, or `None` outside every branch.
    pub fn branch(&self, p: TimePair) -> Option<Branch> {
        let (s, t) = (p.s, p.t);
        let th = self.th();
        match self.id {
            FamilyId::M0 | FamilyId::M1 | FamilyId::M3 => Some(Branch::Main),
            FamilyId::M2 | FamilyId::M4 => {
                if 0.0 < s && t < th {
                    Some(Branch::Main)
                } else if t >= th {
                    Some(Branch::Zero)
                } else {
                    None
                }
            }
            FamilyId::M5 | FamilyId::M6 => {
                if s < t && t <= th {
                    Some(Branch::Zero)
                } else if t > th {
                    Some(Branch::Main)
                } else {
                    None
                }
            }
            FamilyId::M7 | FamilyId::M8 => {
                if s < th {
                    Some(Branch::Main)
                } else {
                    Some(Branch::Zero)
                }
            }
        }
    }

    fn nonzero(&self, slot: Slot, arg: &'static str, u: f64, p: TimePair) -> Result<f64, CeaError> {
        let v = self.f(slot, u)?;
        if v == 0.0 {
            return Err(CeaError::Constraint {
                name: format!("{slot}({arg}) != 0"),
                s: p.s,
                t: p.t,
            });
        }
        Ok(v)
    }

    /// The printed structure matrix at `(s, t)`.
    pub fn matrix(&self, p: TimePair) -> Result<StructureMatrix, CeaError> {
        let branch = self
            .branch(p)
            .ok_or(CeaError::OutOfDomain { s: p.s, t: p.t })?;
        let (s, t) = (p.s, p.t);
        let rows: [[f64; 2]; 2] = match (self.id, branch) {
            (_, Branch::Zero) | (FamilyId::M0, _) => [[0.0, 0.0], [0.0, 0.0]],
            (FamilyId::M1, _) => {
                let phs = self.nonzero(Slot::Phi, "s", s, p)?;
                let pht = self.f(Slot::Phi, t)?;
                [[0.0, self.f(Slot::Rho, s)? * pht], [0.0, pht / phs]]
            }
            (FamilyId::M2, _) => [[0.0, self.f(Slot::Sigma, s)?], [0.0, 1.0]],
            (FamilyId::M3, _) => {
                let phs = self.nonzero(Slot::Phi, "s", s, p)?;
                [
                    [0.0, 0.0],
                    [self.f(Slot::F, t)? / phs, self.f(Slot::Phi, t)? / phs],
                ]
            }
            (FamilyId::M4, _) => [[0.0, 0.0], [self.f(Slot::G, t)?, 1.0]],
            (FamilyId::M5, _) => {
                let den = self.nonzero(Slot::CapPhi, "s", s, p)?;
                [[0.0, self.f(Slot::CapPhi, t)? / den], [0.0, 0.0]]
            }
            (FamilyId::M6, _) => {
                let den = self.nonzero(Slot::Phi, "t", t, p)?;
                [[0.0, self.f(Slot::Rho, s)? / den], [0.0, 0.0]]
            }
            (FamilyId::M7, _) => {
                let den = self.nonzero(Slot::Psi, "s", s, p)?;
                [[0.0, 0.0], [self.f(Slot::Psi, t)? / den, 0.0]]
            }
            (FamilyId::M8, _) => {
                let den = self.nonzero(Slot::Phi, "s", s, p)?;
                [[0.0, 0.0], [self.f(Slot::Sigma, t)? / den, 0.0]]
            }
        };
        for v in rows.iter().flatten() {
            if !v.is_finite() {
                return Err(CeaError::NonFinite { s, t });
            }
        }
        let m = rows.map(|row| row.map(r));
        Ok(StructureMatrix::from_rows(&m)?)
    }
}

/// Which printed case of a piecewise family applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// The nonzero matrix.
    Main,
    /// The zero matrix.
    Zero,
}

/// A time pair `0 <= s <= t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimePair {
    pub s: f64,
    pub t: f64,
}

impl TimePair {
    pub fn new(s: f64, t: f64) -> Result<Self, CeaError> {
        if !(s.is_finite() && t.is_finite() && 0.0 <= s && s <= t) {
            return Err(CeaError::OutOfDomain { s, t });
        }
        Ok(Self { s, t })
    }
}

/// Convenience wrapper: the matrix of `spec` at `(s, t)`.
pub fn family_matrix(spec: &ChainFamilySpec, s: f64, t: f64) -> Result<StructureMatrix, CeaError> {
    spec.matrix(TimePair::new(s, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn m1_example() {
        let spec =
            ChainFamilySpec::new(FamilyId::M1, &[("rho", "s"), ("phi", "exp(t)")], None).unwrap();
        let m = family_matrix(&spec, 1.0, 2.0).unwrap();
        assert!((m.get(0, 1).re - E * E).abs() < 1e-12);
        assert!((m.get(1, 1).re - E).abs() < 1e-12);
        assert_eq!(m.get(0, 0), r(0.0));
        assert_eq!(m.get(1, 0), r(0.0));
    }

    #[test]
    fn m0_zero() {
        let spec = ChainFamilySpec::new(FamilyId::M0, &[], None).unwrap();
        assert!(family_matrix(&spec, 0.3, 7.0).unwrap().is_zero(0.0));
    }

    #[test]
    fn m5_branches() {
        let spec = ChainFamilySpec::new(FamilyId::M5, &[("Phi", "exp(t)")], Some(5.0)).unwrap();
        assert!(family_matrix(&spec, 1.0, 3.0).unwrap().is_zero(0.0));
        let m = family_matrix(&spec, 1.0, 6.0).unwrap();
        assert!((m.get(0, 1).re - E.powi(5)).abs() < 1e-9);
        // s = t <= C is on no printed branch
        assert!(matches!(
            family_matrix(&spec, 2.0, 2.0),
            Err(CeaError::OutOfDomain { .. })
        ));
        assert!(matches!(
            family_matrix(&spec, 3.0, 2.0),
            Err(CeaError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn threshold_boundaries_follow_printed_inequalities() {
        let m2 = ChainFamilySpec::new(FamilyId::M2, &[("sigma", "s+1")], Some(2.0)).unwrap();
        assert!(family_matrix(&m2, 1.0, 2.0).unwrap().is_zero(0.0));
        let below = family_matrix(&m2, 1.0, 2.0 - 1e-12).unwrap();
        assert_eq!(below.get(0, 1), r(2.0));
        assert_eq!(below.get(1, 1), r(1.0));
        assert!(family_matrix(&m2, 0.0, 1.0).is_err());

        let m7 = ChainFamilySpec::new(FamilyId::M7, &[("Psi", "1+t")], Some(2.0)).unwrap();
        assert!(family_matrix(&m7, 2.0, 3.0).unwrap().is_zero(0.0));
        assert_eq!(
            family_matrix(&m7, 2.0 - 1e-12, 3.0).unwrap().get(1, 0).re,
            4.0 / (3.0 - 1e-12)
        );
    }

    #[test]
    fn spec_validation() {
        assert!(ChainFamilySpec::new(FamilyId::M1, &[("rho", "s")], None).is_err());
        assert!(ChainFamilySpec::new(
            FamilyId::M1,
            &[("rho", "s"), ("phi", "t"), ("g", "t")],
            None
        )
        .is_err());
        assert!(ChainFamilySpec::new(FamilyId::M2, &[("sigma", "s")], None).is_err());
        assert!(ChainFamilySpec::new(FamilyId::M2, &[("sigma", "s")], Some(-1.0)).is_err());
        assert!(
            ChainFamilySpec::new(FamilyId::M1, &[("rho", "s"), ("phi", "1")], Some(1.0)).is_err()
        );
        assert!(matches!(
            ChainFamilySpec::new(FamilyId::M1, &[("rho", "s*t"), ("phi", "1")], None),
            Err(CeaError::Bivariate(Slot::Rho))
        ));
    }

    #[test]
    fn constraint_violation_is_named() {
        let spec =
            ChainFamilySpec::new(FamilyId::M1, &[("rho", "1"), ("phi", "s-1")], None).unwrap();
        match family_matrix(&spec, 1.0, 2.0) {
            Err(CeaError::Constraint { name, .. }) => assert_eq!(name, "phi(s) != 0"),
            other => panic!("{other:?}"),
        }
    }
}
