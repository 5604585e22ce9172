//! Outward-rounded interval arithmetic, interval Newton, and the verified
//! enclosure of the critical parameter `V*`.

mod arith;
mod dual;
pub mod focusing;
mod newton;

pub use arith::Interval;
pub use dual::Dual;
pub use focusing::{f_of_v, f_prime_of_v, omega_plus_of_v, verify_asymptotic_lemmas, vstar, LemmaReport, VStar};
pub use newton::{interval_newton, NewtonConfig, RootEnclosure};
