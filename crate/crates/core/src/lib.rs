//! Exact construction and verification of finite-dimensional Leibniz and Lie
//! superalgebras given by structure constants.

pub mod algebra;
pub mod derivations;
pub mod error;
pub mod exactmath;
pub mod families;
pub mod invariants;
pub mod sdf;
pub mod verify;

pub use algebra::{GradedSubspace, GradedVector, Parity, SuperAlgebra};
pub use error::{Error, Result};
pub use exactmath::{Polynomial, RatMatrix, Rational};
