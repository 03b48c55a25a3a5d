//! Finite semirings, finite semimodules, and the machinery that makes their
//! category computable on desk-scale instances.
//!
//! Carriers are dense index sets `0..n` with the additive identity pinned at
//! index `0`; operations are lookup tables. On top of that sit:
//!
//! - validation of the semiring/semimodule axioms with complete, deterministic
//!   violation lists ([`semiring`], [`semimodule`]),
//! - a small builtin catalog (Boolean semiring, Golan's `B(3,1)`, cyclic
//!   monoids, direct sums, 2x2 matrix semirings) in [`builtin`],
//! - linear maps, hom-set enumeration, and normality classification
//!   ([`morphism`], [`hom`]),
//! - subsemimodules, subtractive closure, congruences, and quotients
//!   ([`subquot`]),
//! - direct sums, pullbacks, pushouts and their universal-property checker
//!   ([`category`]),
//! - classification of sequences under the four exactness notions and
//!   splitting search ([`exact`]),
//! - relative projectivity deciders for the plain/k/e/normally flavors
//!   ([`projective`]),
//! - seeded instance generators and executable law suites ([`universe`],
//!   [`laws`]).
//!
//! Everything is a pure function over immutable instances, so concurrent
//! read access is safe and every result is deterministic.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod budget;
pub mod builtin;
pub mod category;
pub mod error;
pub mod exact;
pub mod hom;
pub mod laws;
pub mod morphism;
pub mod projective;
pub mod semimodule;
pub mod semiring;
pub mod subquot;
mod table;
pub mod universe;

pub use budget::Budget;
pub use error::{AlgebraError, Result, Violation};
pub use morphism::LinearMap;
pub use semimodule::{FiniteSemimodule, ScalarDomain};
pub use semiring::FiniteSemiring;

/// Element of a finite carrier, always a dense index in `0..n`.
pub type Elem = usize;
