//! Norm catalogue, decay exponents and power-law fits.

pub mod catalogue;
pub mod fit;
pub mod norms;
pub mod report;

pub use catalogue::{compute_norms, theoretical_exponent, theoretical_exponents, NormReport, CATALOGUE};
pub use fit::{bracket, fit_decay, fit_decay_with, validity_window, validity_window_with, Abscissa, DecayFit};
pub use report::{decay_table, read_decay_csv, read_norms_csv, write_decay_csv, write_norms_csv, DecayRow};
