//! Exact cyclotomic arithmetic, dense matrices over it, and the
//! double-precision fallback.

pub mod cyc;
pub mod fnmatrix;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use cyc::Cyc;
pub use fnmatrix::FnMatrix;
pub use matrix::{ExactMatrix, FloatMatrix, Matrix, DEFAULT_TOL};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use scalar::Scalar;
