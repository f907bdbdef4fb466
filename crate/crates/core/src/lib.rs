//! Exact computational workbench for possibly-nonunital finite-dimensional
//! rings and their modules.
//!
//! Rings are given by structure constants over `Q` or `F_p`. On top of an
//! exact linear-algebra layer the crate decides the unitality hierarchy
//! (unital, s-unital, unitary, firm, locally unital), builds balanced tensor
//! products, solves and verifies separability of ring extensions, constructs
//! Maschke splittings for group rings, computes semisimple decompositions,
//! and searches finite categories for separability structures on functors.

pub mod category;
pub mod error;
pub mod format;
pub mod linalg;
pub mod module;
pub mod ring;
pub mod scalar;
pub mod semisimple;
pub mod separability;
pub mod tensor;

pub use error::*;
pub use linalg::{Mat, QuotientSpace, Subspace};
pub use ring::{FiniteGroup, IdempotentFamily, RingMorphism, StructureRing};
pub use scalar::{Rational, Scalar, ScalarField};
