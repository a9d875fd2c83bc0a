use alloc::string::String;

use crate::symbolic::SymbolicError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("radial operator left a non-polynomial residue in M-type {component}")]
    NonPolynomialResidue { component: usize },
    #[error("zero normaliser in expansion of {0}")]
    ZeroNormalizer(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("odd exponent in integrand: {0}")]
    ParityViolation(String),
}
