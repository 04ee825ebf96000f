#![cfg_attr(not(feature = "std"), no_std)]
//! Exact arithmetic for self-affine measures `μ_{M,D}`.
//!
//! Everything that produces a verdict (zero sets, Hadamard triples,
//! orthogonality, non-spectrality certificates) works over big integers and
//! rationals. Floating point is used only in [`fourier`], whose Q-function
//! scans corroborate spectrality numerically.

extern crate alloc;

pub mod conjugacy;
pub mod error;
mod graph;
pub mod fourier;
pub mod hadamard;
pub mod maskzero;
pub mod modlin;
pub mod ortho;

pub use error::{Error, Result};
pub use maskzero::{DigitSet, RationalPoint, ZeroSet};
pub use modlin::{FpMatrix, IntMatrix};
