pub mod chowla;
pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod format;
pub mod golden;
pub mod intervals;
pub mod multiplicative;
pub mod sieve;

pub use error::{Error, Result};
