//! Evolution algebras over the real and complex numbers.
//!
//! * [`matrix`] and [`rb`]: structure matrices, the evolution product, and the
//!   Rota-Baxter residual in any dimension.
//! * [`classify`]: canonical forms of 2-dimensional algebras and isomorphism
//!   witnesses.
//! * [`expr`]: the small expression language used for free functions.
//! * [`cea`]: chains of evolution algebras, Chapman-Kolmogorov checks,
//!   dynamics and property diagrams.
//! * [`rotabaxter`]: operator tables, polynomial systems and numeric search.
//! * [`cli`]: the `evoalg` command line.

#![allow(clippy::needless_range_loop)]

pub mod cea;
pub mod classify;
pub mod cli;
pub mod expr;
pub mod lm;
pub mod matrix;
pub mod rb;
pub mod rotabaxter;
pub mod scalar;

pub use matrix::{multiply, AlgebraElement, Matrix, MatrixError, StructureMatrix};
pub use rb::{rb_residual, rb_residual_norm, RotaBaxterOperator, Weight};
pub use scalar::{Field, Scalar};
