//! Symmetry groups of multipartite finite Heisenberg groups.
//!
//! A system of `k` qudits with dimensions `n_1, ..., n_k` has a finite
//! Heisenberg group generated by the clock and shift matrices on each
//! subsystem. Its unitary normalizer acts on the Weyl operators through a
//! group of symplectic block matrices over the phase-space ring. This crate
//! enumerates that group, realizes its generators as unitaries, and builds
//! complete sets of mutually unbiased bases in prime-power dimension from
//! abelian subgroups of it.

pub mod error;
pub mod heisenberg;
pub mod io;
pub mod modarith;
pub mod mub;
pub mod phasering;
pub mod sympgroup;

pub use error::{Error, Result};
pub use heisenberg::{DenseUnitary, MonomialUnitary, Unitary, WeylIndex};
pub use modarith::{FieldElement, FieldSpec, ModInt};
pub use mub::{ClassMatrix, MubFamily, SymmetricSystem};
pub use phasering::{BlockMatrix, DimensionProfile, PhaseVector};
pub use sympgroup::{ColumnPair, SymplecticJ};
