//! Exact arithmetic: rationals, sparse polynomials over the rationals, and exact linear
//! algebra. Nothing in this crate uses floating point.

mod echelon;
mod matrix;
mod poly;
mod rational;

pub use echelon::{SparseEchelon, SparseRow};
pub use matrix::{nilpotent_jordan_type, rref_rank_kernel, JordanType, RatMatrix, RrefRankKernel};
pub use poly::{Monomial, Polynomial};
pub use rational::Rational;
