//! Finite-dimensional operator-algebra kernel.
//!
//! This crate builds the crossed-product matrix algebras attached to a
//! finite group acting on a finite measure space, and verifies their
//! structure algorithmically: commutants, bicommutants, lattice duality,
//! projector comparability and relative dimension, type classification,
//! and a matrix model of measurement entanglement.
//!
//! The crate is `no_std` (with `alloc`); all linear algebra is dense,
//! self-contained, and deterministic for a fixed seed.
//!
//! Layout convention: the hybrid space is indexed group-major, so every
//! hybrid operator is literally a |G|×|G| grid of |X|×|X| blocks.
//! Internally all operators are stored in measure-orthonormal coordinates
//! (basis vectors carry a factor √μ(x)), which turns the generators into
//! exact permutation/diagonal matrices; raw-coordinate entries are
//! recovered on demand.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod base_space;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod classifier;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod measurement;
pub mod operators;
pub mod projectors;

pub use algebra::VNAlgebra;
pub use base_space::{
    Ergodicity, FiniteGroup, Freedom, GroupAction, Invariance, MeasureSpace, SubsetOfX,
};
pub use classifier::{FactorType, TypeReport};
pub use error::Error;
pub use hilbert::Space;
pub use linalg::{CMatrix, Complex64};
pub use operators::{DiscreteSystem, Operator, Side, Symbol};
pub use projectors::{Comparison, Factor, Normalization, PartialIsometry};

/// Default numerical tolerance for residual and rank decisions.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default cap on the hybrid dimension |X|·|G|.
pub const DEFAULT_CAP: usize = 1024;
