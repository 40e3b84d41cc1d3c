//! Chains of evolution algebras: two-time families `M(s,t)` of structure
//! matrices meant to satisfy `M(s,t) = M(s,tau) M(tau,t)` for `s < tau < t`.

pub mod config;
pub mod diagram;
pub mod dynamics;
pub mod family;
pub mod verify;

use thiserror::Error;

use crate::classify::ClassifyError;
use crate::expr::{EvalError, ParseError};
use crate::matrix::MatrixError;

pub use config::CeaConfig;
pub use diagram::{property_diagram, CellLabel, Property, PropertyDiagram, Window};
pub use dynamics::{classify_dynamics, expected_class, witness};
pub use family::{family_matrix, ChainFamilySpec, FamilyId, Slot, TimePair};
pub use verify::{verify_cantor, verify_ck, CheckReport, Delta, ScalarEquation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CeaError {
    #[error("config: {0}")]
    Config(String),
    #[error("function `{slot}`: {source}")]
    Parse {
        slot: family::Slot,
        source: ParseError,
    },
    #[error("function `{0}` must depend on a single variable")]
    Bivariate(family::Slot),
    #[error("function `{slot}` at {arg}: {source}")]
    Eval {
        slot: family::Slot,
        arg: f64,
        source: EvalError,
    },
    #[error(transparent)]
    Expr(#[from] EvalError),
    #[error("(s, t) = ({s}, {t}) is outside the domain")]
    OutOfDomain { s: f64, t: f64 },
    #[error("constraint {name} violated at (s, t) = ({s}, {t})")]
    Constraint { name: String, s: f64, t: f64 },
    #[error("non-finite matrix entry at (s, t) = ({s}, {t})")]
    NonFinite { s: f64, t: f64 },
    #[error("at (s, tau, t) = ({s}, {tau}, {t}): {source}")]
    AtTriple {
        s: f64,
        tau: f64,
        t: f64,
        source: Box<CeaError>,
    },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}
