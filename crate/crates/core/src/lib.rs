//! Steklov transmission eigenvalues for rotationally symmetric circle
//! configurations, and the minimal surfaces that maximise them.
//!
//! The crate has three computational pillars that check each other:
//!
//! * [`cylinder`] computes the transmission spectrum of N weighted circles
//!   on the infinite flat cylinder by Fourier-mode separation and small
//!   generalized tridiagonal eigenproblems;
//! * [`drum`] carries the closed-form N = 2 spectrum and the explicit
//!   optimisation of the critical two-circle drum;
//! * [`catenoid`] constructs the balanced configurations of stacked
//!   catenoids with flat caps in the unit ball by a shooting method, and
//!   maps them back to cylinder data.
//!
//! [`optimizer`] maximises the normalized first eigenvalue over
//! configuration space and is expected to land on the catenoid-derived
//! candidates; `2 * area` of the balanced configuration of order N equals
//! the maximal normalized eigenvalue for N circles.
//!
//! All operations are pure functions of their inputs and safe to call
//! concurrently.

pub mod catenoid;
pub mod cylinder;
pub mod drum;
pub mod error;
pub mod mesh;
pub mod numerics;
pub mod optimizer;
pub mod tridiag;

pub use cylinder::{transmission_spectrum, CircleConfig, TransmissionSpectrum};
pub use error::{Error, Result};
