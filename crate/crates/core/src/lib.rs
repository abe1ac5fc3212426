//! Exact computational homological algebra over the mod-2 Steenrod algebra.
//!
//! The crate builds the ζ-generator dual Steenrod algebra with its total-square
//! right action, realizes the finite subalgebras A(n) as operator algebras on a
//! degree-truncated dual, constructs the homology modules of HZ, bo and tmf with
//! their weight filtrations and Brown–Gitler submodules, and computes minimal
//! free resolutions over A(1) together with the resulting Ext charts, Adams-cover
//! comparisons and chart renderings.
//!
//! Everything is exact arithmetic over F2 on bit-packed words; no floating point
//! is used anywhere. The crate is `no_std` (with `alloc`): IO, file formats and
//! the command line live in the companion `a1ext` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod chart;
pub mod error;
pub mod f2;
pub mod module;
pub mod render;
pub mod resolution;
pub mod spectra;
pub mod steenrod;
pub mod textio;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
