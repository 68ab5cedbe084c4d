//! Semidefinite bounds on quantum channel capacities and magic resources
//! built on the geometric Rényi divergence.

pub mod error;
pub mod bounds;
pub mod channels;
pub mod cli;
pub mod conic;
pub mod divergences;
pub mod linalg;
pub mod magic;

pub use error::{Error, Result};
