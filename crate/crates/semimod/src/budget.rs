//! Resource budgets for the enumerating operations.
//!
//! Hom-set enumeration, congruence enumeration, and isomorphism search are
//! all exponential in the worst case. Each enumerating entry point takes a
//! [`Budget`] and fails with [`AlgebraError::Budget`](crate::AlgebraError)
//! naming the bound instead of running away.

use serde::Serialize;

use crate::error::{AlgebraError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Cap on `|cod|^generators(dom)` candidate assignments in hom
    /// enumeration and isomorphism search.
    pub hom_candidates: u64,
    /// Cap on the number of congruences enumerated for one carrier.
    pub congruences: u64,
    /// Cap on the number of subsemimodules enumerated for one carrier.
    pub subsemimodules: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            hom_candidates: 1 << 24,
            congruences: 1 << 16,
            subsemimodules: 1 << 16,
        }
    }
}

impl Budget {
    pub fn with_hom_candidates(mut self, cap: u64) -> Self {
        self.hom_candidates = cap;
        self
    }

    pub(crate) fn check_hom_candidates(&self, candidates: u64) -> Result<()> {
        if candidates > self.hom_candidates {
            return Err(AlgebraError::Budget {
                what: "hom candidate assignments",
                bound: self.hom_candidates,
            });
        }
        Ok(())
    }

    pub(crate) fn check_congruences(&self, count: usize) -> Result<()> {
        if count as u64 > self.congruences {
            return Err(AlgebraError::Budget {
                what: "congruence count",
                bound: self.congruences,
            });
        }
        Ok(())
    }

    pub(crate) fn check_subsemimodules(&self, count: usize) -> Result<()> {
        if count as u64 > self.subsemimodules {
            return Err(AlgebraError::Budget {
                what: "subsemimodule count",
                bound: self.subsemimodules,
            });
        }
        Ok(())
    }
}
