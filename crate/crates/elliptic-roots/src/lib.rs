//! Exact combinatorics of marked elliptic root systems (mERS) with
//! non-reduced affine quotient.
//!
//! An elliptic root system lives in a space carrying a positive semi-definite
//! form with a two-dimensional radical spanned by `a` and `b`; the marking is
//! the line through `a`. Every system handled here is built on the finite
//! root system of type `BC_l`: each length class (short, middle, long) is
//! translated by a subset of the radical lattice `Za + Zb`, and those subsets
//! are always finite unions of cosets of a product sublattice. That makes
//! every question about the infinite root set decidable by exact residue
//! arithmetic.
//!
//! Modules:
//!
//! - [`coset`]: residue-set algebra on `Z^2` (the translation sets) and
//!   unimodular maps of the radical.
//! - [`finite`]: the finite `BC_l` data, reflections, and the symbolic
//!   closure conditions they induce on translation sets.
//! - [`catalog`]: the named catalog of marked systems, axiom checkers
//!   (symbolic and windowed brute force), reducedness, tier numbers.
//! - [`quotient`]: projection along the marking and identification of the
//!   non-reduced affine quotient type.
//! - [`iso`]: isomorphisms of the radical (including translation twists),
//!   canonical forms under the marked and unmarked groups, deduplication.
//! - [`search`]: exhaustive re-derivation of the classification at a fixed
//!   working modulus.

#![forbid(unsafe_code)]

pub mod catalog;
pub mod coset;
mod error;
pub mod finite;
pub mod iso;
mod mask;
pub mod quotient;
pub mod search;

pub use error::{Error, Result};
