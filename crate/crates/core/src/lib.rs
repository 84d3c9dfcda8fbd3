//! Weighted monomial norms, Γ-hulls and lattice geometry for polynomial
//! spaces defined by a support polytope.

pub mod analysis;
pub mod cones;
pub mod error;
pub mod exec;
pub mod field;
pub mod geometry;
pub mod integrals;
pub mod linalg;
pub mod random;

pub use error::{Error, Result};
pub use exec::Execution;
