//! Deep-water capillary-gravity solitary waves with constant vorticity.
//!
//! The crate is organised bottom-up:
//!
//! * [`params`] physical parameters and the nondimensional reduction,
//! * [`dispersion`] linear branch speeds, critical points and NLS coefficients,
//! * [`radicals`] the closed-form critical frequencies of the nondimensional quartic,
//! * [`interval`] outward-rounded interval arithmetic and the verified enclosure of `V*`,
//! * [`spectral`] periodic Fourier collocation (multipliers, windows, norms),
//! * [`babenko`] the Babenko residual, its linearisation and the Newton solver.

pub mod babenko;
pub mod dispersion;
pub mod error;
pub mod interval;
pub mod linalg;
pub mod params;
pub mod radicals;
pub mod spectral;

pub use error::{Error, Result};
pub use params::{NondimParams, PhysicalParams, ScaleFactors};
