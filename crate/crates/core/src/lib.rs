//! Exact computer algebra for weight enumerators of q-ary stabilizer codes.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod code;
pub mod distributions;
pub mod error;
pub mod error_basis;
pub mod field;
pub mod invariant;
pub mod macwilliams;

pub use error::{Error, Result};
