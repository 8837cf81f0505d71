//! Crystal combinatorics of flag Bott–Samelson varieties.
//!
//! The crate is layered bottom-up: [`rootsys`] supplies finite-type root
//! data, [`crystal`] realizes `B(λ)` and tensor products through Littelmann
//! paths, [`demazure`] builds generalized Demazure crystals and their string
//! parametrizations, [`stringpoly`] counts lattice points of the resulting
//! polytopes, [`bundles`] evaluates the explicit integer-vector formulas, and
//! [`twistedcube`] handles Grossberg–Karshon twisted cubes.

pub mod bundles;
pub mod crystal;
pub mod demazure;
pub mod error;
pub mod rootsys;
pub mod stringpoly;
pub mod twistedcube;

pub use error::{Error, Result};
pub use rootsys::{CartanMatrix, RootSystem, Weight};
