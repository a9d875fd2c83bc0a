//! Exact construction of the BC2-type matrix orthogonal polynomials attached
//! to the pair `(SU(m+2), S(U(2) x U(m)))` with K-type `mu = a w1 + b w2`,
//! together with checkers for every closed-form identity they satisfy.
//!
//! Everything symbolic is exact over the rationals. The only floating point
//! code lives in the companion crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod casimir;
pub mod coords;
pub mod duality;
pub mod expansion;
pub mod krawtchouk;
pub mod leading;
pub mod lie;
pub mod orthogonality;
pub mod reference;
pub mod report;
pub mod suites;
pub mod symbolic;

mod error;

pub use error::Error;
