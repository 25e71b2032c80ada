//! Exact computations with representations of multiplicative preprojective
//! algebras, their graded `k[t]`-module lifts and the associated Ext complexes.
#![no_std]

extern crate alloc;

pub mod error;
pub mod ext;
pub mod matrix;
pub mod ncpath;
pub mod quiver;
pub mod rep;
pub mod scalar;
pub mod stability;

pub use error::{Error, Result};
