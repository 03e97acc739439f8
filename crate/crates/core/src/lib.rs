//! Casimir pressure between two dispersive, absorbing multilayer walls.
//!
//! Everything here works on the positive imaginary frequency axis
//! `ω = iξ`, where permittivities are real and at least one and the
//! generalized reflection coefficients are real and bounded by one.
//!
//! The crate is `no_std` and only needs `alloc`; IO, configuration files
//! and the command line live in the companion `casimir` crate.
//!
//! Units are SI throughout: rad/s, metres, kelvin, N/m².

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod constants;
mod error;
pub mod force;
pub mod materials;
pub mod oned;
pub mod quadrature;
pub mod specialfn;
pub mod stack;

pub use error::{Error, Result};
pub use force::{casimir_ideal, ForceResult, SchemeLabel};
pub use materials::{DrudeLorentzParams, Permittivity, PermittivityTable};
pub use quadrature::{MatsubaraSettings, QuadratureSettings, Scheme};
pub use stack::{Layer, Polarization, ReflectionPair, Stack, Thickness};
