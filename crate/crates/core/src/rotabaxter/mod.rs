//! Rota-Baxter operators of weight 0 and 1 on 2-dimensional complex
//! evolution algebras: the table of known operators, sampled verification,
//! symbolic systems, rejected candidates and a numeric search.

pub mod catalog;
pub mod exclusions;
pub mod poly;
pub mod search;
pub mod system;
pub mod verify;

use thiserror::Error;

pub use catalog::{catalog, catalog_for, table, Member, RboFamily};
pub use exclusions::{verify_exclusions, ExclusionCheck};
pub use search::{annotate, points_to_csv, search, SearchOptions, SolutionPoint};
pub use system::{derive_system, PolySystem, SymbolicAlgebra};
pub use verify::{reports_to_csv, verify_all, verify_family, FamilyReport, VerifyOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RboError {
    #[error("no table for algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("search needs a 2-dimensional algebra, got dimension {0}")]
    Dimension(usize),
}
