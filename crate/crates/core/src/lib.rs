//! Droplet evaporation in a compressible gas.
//!
//! The pipeline has three stages:
//!
//! 1. [`hyperbolic`] evaluates the surrounding gas (density and velocity) from
//!    the Riemann invariants of the isentropic Euler system in spherical
//!    symmetry, using the method of characteristics.
//! 2. [`radius`] integrates the droplet-radius ODE driven by the gas state at
//!    the interface.
//! 3. [`galerkin`] solves the rescaled liquid mass fraction problem on the
//!    fixed domain `(0, 1)` with a P1 Galerkin method in the `x²`-weighted
//!    Sobolev space, using the radius history for its coefficients.
//!
//! [`scenario`] ties the stages together behind a TOML configuration and
//! writes CSV and SVG artifacts. [`numerics`] holds the shared primitives.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod galerkin;
pub mod hyperbolic;
pub mod numerics;
pub mod radius;
pub mod scenario;

pub use error::{Error, Result};
