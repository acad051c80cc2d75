//! Exact scalars and dense linear algebra.

mod matrix;
mod scalar;

pub use matrix::{greedy_independent, rank_and_kernel, solve, DenseMatrix, Echelon};
pub use scalar::{odd, parse_rational, Field, Scalar};
