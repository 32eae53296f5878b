//! Exact linear algebra over the rationals.

mod formal_sum;
mod scalar;
mod subspace;

pub use formal_sum::FormalSum;
pub use scalar::Scalar;
pub use subspace::{kernel, rank_of, Subspace};
