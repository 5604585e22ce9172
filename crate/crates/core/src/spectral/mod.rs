//! Periodic Fourier collocation on `[−L/2, L/2)`.
//!
//! Spectral coefficients follow the unnormalised forward DFT,
//! `F_k = Σ_j f_j e^{−2πijk/n}`. The Nyquist mode carries no multiplier
//! (H, ∂ and |D| all vanish there).

mod cosine;
mod fft;
mod field;
mod grid;
mod norms;
mod ops;

pub use cosine::{from_cosine, to_cosine};
pub(crate) use cosine::cosine_spectrum;
pub use fft::{forward, inverse};
pub use field::{ComplexField, RealField};
pub use grid::PeriodicGrid;
pub use norms::{h_s, l2, scaled_e_omega, Norms};
pub use ops::{
    abs_d, d_alpha, dealiased_product, freq_window, hilbert, proj_neg, window_symbol, Window,
};

/// Fixed 17-significant-digit rendering used in every CSV artifact.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
