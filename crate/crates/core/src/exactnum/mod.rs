//! Exact arithmetic over the Gaussian rationals.

mod matrix;
mod scalar;

pub use matrix::{AffineSolutionSet, Echelon, LinearSystem, Matrix};
pub use scalar::Scalar;
