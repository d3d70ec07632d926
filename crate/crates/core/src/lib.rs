//! Kinetic solver, diffusion-limit solver and verification harness for the
//! stationary linear Boltzmann equation with a rapidly oscillating
//! scattering coefficient `sigma(x / eps^beta)` on a one-dimensional slab.

pub mod diffusion;
pub mod error;
pub mod estimates;
pub mod grid;
pub mod harness;
pub mod kinetic;
pub mod scattering;
pub mod sobolev;
pub mod table;
pub mod tridiag;
pub mod velocity;

pub use error::{Error, Result};
