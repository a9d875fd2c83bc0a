//! File formats, numeric cross-checks and the parallel suite runner for
//! `bc2-core`.

pub mod error;
pub mod export;
pub mod json;
pub mod numeric;
pub mod runner;

pub use error::CliError;
