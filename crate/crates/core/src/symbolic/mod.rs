//! Exact symbolic substrate: rationals, polynomials, rational functions,
//! polynomial matrices and matrix differential operators.

pub mod diffop;
pub mod matrix;
pub mod poly;
pub mod ratfn;
pub mod rational;
pub mod symmetric;

use alloc::string::String;

pub use diffop::{DerivIndex, MatrixDiffOp, Side};
pub use matrix::{PolyMatrix, QMatrix};
pub use poly::{Monomial, MultiPoly, Vars};
pub use ratfn::RationalFn;
pub use rational::Rational;
pub use symmetric::symmetric_reduce;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("variable mismatch: {left} vs {right}")]
    VariableMismatch { left: String, right: String },
    #[error("arity error: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("odd exponent in {0}")]
    Parity(String),
    #[error("polynomial is not invariant under c1 <-> c2")]
    Asymmetry,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator does not cancel")]
    NonPolynomial,
}
