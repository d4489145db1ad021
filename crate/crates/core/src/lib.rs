//! Exact local algebra at the origin of affine space.
//!
//! The crate is `no_std` (it needs `alloc`). Layers, bottom up:
//! [`polyalg`] for polynomial arithmetic, [`groebner`] for bases and ideal
//! operations, [`localalg`] for tangent cones and Hilbert–Samuel
//! multiplicities, and [`intersect`] for Serre's intersection multiplicity.
#![no_std]

extern crate alloc;

pub mod error;
pub mod groebner;
pub mod intersect;
pub mod localalg;
pub mod polyalg;
pub mod settings;

pub use error::{Error, ErrorKind, Result};
pub use settings::{Budget, Settings};
