//! Exact and numerical checks for sl2-triple Fock models attached to
//! semisimple Jordan algebras with a quartic polynomial Q.

pub mod bernstein;
pub mod error;
pub mod fock;
pub mod jordan;
pub mod kernel;
pub mod linalg;
pub mod polyalg;
pub mod rational;
pub mod report;
pub mod sl2;
pub mod special;
pub mod structure;
pub mod suites;

pub use error::{Error, Result};
pub use rational::Q;
