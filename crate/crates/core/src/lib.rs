//! Frequency-dependent truncation (quasi-reversibility) stabilization for the
//! Cauchy problem of the Helmholtz equation `Δu + k²u = 0` on the unit square.
//!
//! The crate is `no_std` (it needs `alloc`) and carries the numerical core:
//!
//! * [`spectral`]: Dirichlet sine basis, frequency partition and the
//!   truncation / stabilized operators acting on y-slices.
//! * [`forward`]: well-posed central finite-difference Helmholtz solvers used
//!   to generate data (four-sided Dirichlet problem) and for the `U` system
//!   carrying the Neumann datum.
//! * [`marching`]: explicit x-marching of the stabilized hyperbolic system,
//!   both linearized (`V` sweeps) and direct.
//! * [`oracle`]: closed-form mode solutions, the exponential relation for
//!   growing modes and the L² error bound.
//! * [`noise`]: seeded additive noise, grid-constraint checks and error
//!   metrics.
//! * [`problems`]: the two reference boundary-data sets.
//!
//! IO, configuration and the command line live in the companion `helmstab-harness`
//! crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod banded;
mod error;
pub mod forward;
pub mod grid;
pub mod marching;
pub mod noise;
pub mod oracle;
pub mod problems;
pub mod spectral;

pub use error::{Error, Result};
pub use grid::{GridFunction2D, GridSpec};
