//! Discrete Fourier representation of real periodic fields and the
//! frequency-side operators built on it.

pub mod dump;
pub mod fft;
pub mod field;
pub mod grid;
pub mod ops;
pub mod state;
pub mod symbols;

pub use fft::Transformer;
pub use field::{forward_transform, inverse_transform, PhysicalField, SpectralField};
pub use grid::Grid2D;
pub use ops::{
    apply_symbol, dealiased_product, dealiased_product_physical, leray_project, lp_project, truncate, LpKind,
};
pub use state::StateSpectral;
