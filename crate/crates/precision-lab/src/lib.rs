//! A numerical-precision drift laboratory.
//!
//! Iterative computations drift away from their exact results because every
//! arithmetic step rounds. This crate makes that drift measurable: a decimal
//! rounding operator is injected into otherwise ordinary computations —
//! iterated 2D rotations, a matrix squaring cascade, and Lorenz integration —
//! so error accumulation can be observed at chosen precision levels, and a
//! software double-double type supplies an extended-precision reference path.
//!
//! Modules:
//!
//! - [`precision`] — the rounding operator and injection policy
//! - [`extended`] — double-double arithmetic and trigonometry
//! - [`rotation`] — iterated rotations and the squaring cascade
//! - [`lorenz`] — rounding-injected Lorenz integration and twin runs
//! - [`qc`] — digit-agreement quality control between runs

pub mod error;
pub mod extended;
pub mod lorenz;
pub mod precision;
pub mod qc;
pub mod rotation;

pub use error::{Error, Result};
pub use precision::{PrecisionSpec, RoundingPolicy, TieRule};
