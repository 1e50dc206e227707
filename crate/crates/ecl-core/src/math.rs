//! Float helpers that work with and without `std`.
//!
//! Without `std`, `f64` has no inherent transcendental methods; routing every
//! call through [`num_traits::Float`] picks the platform library or `libm`
//! as appropriate.

use num_complex::Complex64;
use num_traits::Float;

pub(crate) fn sqrt(x: f64) -> f64 {
    Float::sqrt(x)
}

pub(crate) fn round(x: f64) -> f64 {
    Float::round(x)
}

pub(crate) fn powi(x: f64, n: i32) -> f64 {
    Float::powi(x, n)
}

/// Complex exponential `e^{z}`.
pub(crate) fn cexp(z: Complex64) -> Complex64 {
    z.exp()
}

/// `2πi`.
pub(crate) fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * core::f64::consts::PI)
}
