//! Pseudospectral simulation and verification tools for the 2D
//! non-resistive incompressible MHD system linearized around the uniform
//! field `(0, 1)`.
//!
//! Everything numerical is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod nonlinear;
pub mod propagator;
pub mod regions;
pub mod scalar;
pub mod spectral;
pub mod tolerances;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Grid = spectral::Grid2D<f64>;
pub type Field = spectral::SpectralField<f64>;
pub type Physical = spectral::PhysicalField<f64>;
pub type State = spectral::StateSpectral<f64>;
