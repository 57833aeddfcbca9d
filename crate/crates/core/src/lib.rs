//! Exact algebra for Conley index data of isolated invariant sets of
//! homeomorphisms, Dold sequences of fixed point indices and their
//! realization by finite maps.
//!
//! All arithmetic is over the rationals and exact. The crate is `no_std`
//! and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod conley;
pub mod degree;
pub mod dold;
pub mod error;
pub mod finite_map;
pub mod linalg;
pub mod perm_endo;
pub mod poly;
pub mod radial;
pub mod rational;
pub mod realize;

#[cfg(test)]
mod testutil;

pub use conley::{ConleyIndexData, Orientation};
pub use dold::{DoldCoefficients, IndexSequence};
pub use error::{Error, Result};
pub use finite_map::{CycleCounts, FiniteMap};
pub use linalg::RationalMatrix;
pub use poly::Polynomial;
pub use rational::Rational;
