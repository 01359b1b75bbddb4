//! Computation of mode-k generalized eigenpairs of dense complex tensors.
//!
//! The solver deforms a product-form start system with known roots into the
//! augmented eigen-system along a linear homotopy and traces every solution
//! path with an adaptive Euler/Newton predictor-corrector. Endpoints are
//! refined, classified (regular / singular / positive-dimensional), grouped
//! into equivalence classes, and optionally filtered down to real eigenpairs
//! (Z- and H-eigenpairs of real tensors).
//!
//! Entry points live in [`eig`]: `teig` (equal orders), `teneig` (mixed
//! orders), `eeig` (E-eigenpairs), `zeig` and `heig` (real pairs).

pub mod eig;
pub(crate) mod linalg;
pub mod polysys;
pub(crate) mod rng;
pub mod tensor;
pub mod tracker;

use thiserror::Error;

/// Errors reported by tensor construction and solver front ends.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tensor: {0}")]
    InvalidTensor(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("mode {mode} out of range for order-{order} tensor")]
    ModeOutOfRange { mode: usize, order: usize },
    #[error("invalid system: {0}")]
    InvalidSystem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
