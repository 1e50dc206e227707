//! Core of the elliptic Casimir connection toolkit.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled; the `std` feature only switches float intrinsics to the
//! platform library and enables parallel checking with rayon.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected, and the dense
// matrix code indexes several arrays by the same loop variable.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod connection;
pub mod constants;
pub mod elliptic;
pub mod error;
pub mod glpoly;
mod math;
pub mod monodromy;
pub mod rootsys;

pub use error::{Error, Result};
