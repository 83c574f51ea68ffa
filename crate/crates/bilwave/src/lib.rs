//! Numerical verification toolkit for sharp bilinear space-time estimates
//! for the half-wave propagator.
//!
//! The crate is organised bottom-up:
//! - [`numerics`]: quadrature building blocks (Gauss–Jacobi, double
//!   exponential rules, tanh–sinh, sphere rules, log-gamma);
//! - [`model`]: admissible parameter settings and Fourier-side data classes;
//! - [`constants`]: closed-form sharp constants and their identities;
//! - [`functionals`]: the quadrature engines for both sides of the
//!   estimates (space-time norms, sphere pairings, the I functional);
//! - [`geometry`]: Lorentz boosts, cone-slice ellipsoid integrals and the
//!   pointwise geometric inequality behind the sharp constant;
//! - [`experiments`]: end-to-end verification drivers producing structured
//!   reports;
//! - [`report`] / [`cli`]: serialization and the command-line front end.

pub mod constants;
pub mod error;
pub mod experiments;
pub mod functionals;
pub mod geometry;
pub mod model;
pub mod numerics;
pub mod report;
pub mod cli;
mod util;

pub use error::{Error, Result};
