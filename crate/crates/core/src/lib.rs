//! Measurement logic over orthomodular lattices.
//!
//! The crate models the possibilistic behaviour of projective measurements:
//!
//! - [`oml`]: finite orthomodular lattices given by order and orthocomplement tables,
//!   plus the [`OrthoLattice`] interface shared with the Hilbert lattice.
//! - [`hilbert`]: the lattice of subspaces of `C^d` with numerical subspace arithmetic,
//!   the Sasaki projection as a projector image and the spectral compatibility test.
//! - [`observables`]: finite observables, eigenspace decomposition and Kochen–Specker
//!   refuting observables.
//! - [`filters`]: Sasaki filters over finite lattices and over `L(C^d)`.
//! - [`models`]: labelled-graph models (explicit graphs, the Hilbert graph and the lattice
//!   graph), the verification relation and the axiom checker.
//! - [`language`]: deciders for whether a word of outcomes labels a path in a model.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod filters;
pub mod hilbert;
pub mod language;
mod lattice;
pub mod models;
pub mod observables;
pub mod oml;

pub use error::{Error, Result};
pub use hilbert::{CMat, CVec, Complex64, CompatReport, HilbertLattice, Subspace, Tolerances};
pub use lattice::OrthoLattice;
pub use oml::{FiniteOml, LatticeElement};
