//! Exact dense linear algebra over the rationals.

mod matrix;
mod rat;
mod subspace;

pub use matrix::{quotient_coords, BasisExtension, RatMatrix};
pub use rat::{ParseRatError, Rat};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
}
