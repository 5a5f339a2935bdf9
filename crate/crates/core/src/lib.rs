//! Numerical Paley–Wiener theory for slice regular quaternionic functions.
//!
//! The crate covers quaternion arithmetic, the structure of slice regular
//! functions, the left-sided one-dimensional quaternion Fourier transform,
//! band-limited synthesis on ℍ, Hardy-space synthesis on the right
//! half-space and sinc-series sampling reconstruction. Each result is
//! exposed as an operation together with a checkable invariant.

pub mod error;
pub mod fixtures;
pub mod grid;
pub mod hardy;
pub mod paley_wiener;
pub mod qft;
pub mod quaternion;
pub mod sampling;
pub mod slice;
pub mod verify;
pub mod sum;

pub use error::{Error, Result};
pub use grid::{LineSamples, Spectrum, UniformGrid};
pub use quaternion::{ImaginaryUnit, Quaternion, SlicePoint};
