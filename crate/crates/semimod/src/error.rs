//! Error and violation types shared across the crate.
//!
//! Axiom failures are data, not panics: validators return the complete list
//! of violated axioms, each carrying the lexicographically least witness
//! tuple, so violation lists are deterministic and diffable.

use alloc::string::String;
use alloc::vec::Vec;
use serde::Serialize;
use thiserror::Error;

use crate::Elem;

/// A violated axiom together with the lexicographically least witness tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Name of the violated axiom, e.g. `"add-associativity"`.
    pub axiom: String,
    /// Witness elements, in the order the axiom quantifies them.
    pub witness: Vec<Elem>,
}

impl Violation {
    pub fn new(axiom: &str, witness: &[Elem]) -> Self {
        Violation {
            axiom: String::from(axiom),
            witness: witness.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// Malformed input: wrong table shape, out-of-range entry, bad index.
    #[error("structural error: {0}")]
    Structure(String),

    /// The input is well-formed but violates axioms; the complete list.
    #[error("{} axiom violation(s), first: {}", .0.len(), .0.first().map(|v| v.axiom.as_str()).unwrap_or("none"))]
    Violations(Vec<Violation>),

    /// An enumeration would exceed the configured resource budget.
    #[error("budget exceeded: {what} would exceed {bound}")]
    Budget { what: &'static str, bound: u64 },

    /// Two objects that must share a scalar domain do not.
    #[error("scalar domains differ: {0} vs {1}")]
    ScalarMismatch(String, String),

    /// Endpoint mismatch in a composition or construction.
    #[error("objects do not match: {0}")]
    Mismatch(String),

    #[error("unknown builtin name: {0}")]
    UnknownName(String),

    #[error("unknown law suite: {0}")]
    UnknownSuite(String),

    /// Input the operation refuses, e.g. the zero module where the
    /// question is undefined.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = core::result::Result<T, AlgebraError>;

impl AlgebraError {
    pub fn structure(msg: impl Into<String>) -> Self {
        AlgebraError::Structure(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        AlgebraError::Mismatch(msg.into())
    }
}
