//! Simulation core for unoperation devices.
//!
//! An unoperation maps an operation's output back to the full set of
//! inputs that could have produced it. This crate simulates the two
//! arithmetic unoperations built from a quantum full-unadder gate:
//!
//! - unaddition, via the Ripple-Carry-Unadder ([`unadd`]): all `(a, b,
//!   c_in)` with `a + b + c_in = sum`;
//! - unmultiplication, via chained unadders with feedback ([`unmult`]):
//!   all factor pairs `(x, y)` with `x · y = p` after classical
//!   post-processing.
//!
//! [`qsim`] provides the underlying gate-level simulator with dense and
//! sparse state-vector backends, and [`oracle`] the brute-force classical
//! references everything is verified against.
//!
//! The crate is `no_std` (with `alloc`) unless the default `std` feature
//! is enabled.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod oracle;
pub mod qsim;
pub mod unadd;
pub mod unmult;

pub use error::{Error, Result};
pub use qsim::Backend;
pub use unadd::{RunMode, Triple};
pub use unmult::FactorPair;
