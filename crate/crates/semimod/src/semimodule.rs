//! Finite semimodules: a commutative monoid carrier with a scalar action.
//!
//! The scalar domain is either a validated [`FiniteSemiring`] with an
//! explicit `|S| x m` action table, or `Naturals`, in which case the module
//! is a bare commutative monoid: the action of `n` is `n`-fold addition and
//! is never stored, and linearity degenerates to additivity.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use serde::Serialize;

use crate::error::{AlgebraError, Result, Violation};
use crate::semiring::{
    cancellative_of_table, check_commutative_monoid, CancellativeSet, FiniteSemiring,
    SemiringSnapshot,
};
use crate::table::{swap_to_front, Action, BinOp};
use crate::Elem;

/// The scalar domain of a semimodule.
#[derive(Clone, Debug)]
pub enum ScalarDomain {
    /// Nonnegative integers acting by iterated addition; semimodules are
    /// exactly commutative monoids and linear maps are monoid maps.
    Naturals,
    Semiring(Arc<FiniteSemiring>),
}

impl ScalarDomain {
    pub fn describe(&self) -> String {
        match self {
            ScalarDomain::Naturals => String::from("naturals"),
            ScalarDomain::Semiring(s) => String::from(s.name()),
        }
    }

    pub fn semiring(&self) -> Option<&Arc<FiniteSemiring>> {
        match self {
            ScalarDomain::Naturals => None,
            ScalarDomain::Semiring(s) => Some(s),
        }
    }
}

impl PartialEq for ScalarDomain {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ScalarDomain::Naturals, ScalarDomain::Naturals) => true,
            (ScalarDomain::Semiring(a), ScalarDomain::Semiring(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for ScalarDomain {}

/// A validated finite semimodule. The additive identity is always index `0`.
#[derive(Clone, Debug)]
pub struct FiniteSemimodule {
    name: String,
    scalars: ScalarDomain,
    add: BinOp,
    action: Option<Action>,
}

/// Structural equality; names are labels and do not count.
impl PartialEq for FiniteSemimodule {
    fn eq(&self, other: &Self) -> bool {
        self.scalars == other.scalars && self.add == other.add && self.action == other.action
    }
}
impl Eq for FiniteSemimodule {}

impl FiniteSemimodule {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn scalars(&self) -> &ScalarDomain {
        &self.scalars
    }

    pub fn size(&self) -> usize {
        self.add.size()
    }

    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add.at(a, b)
    }

    /// Scalar action. In `Naturals` mode `s` is a nonnegative integer and
    /// the action is `s`-fold addition.
    pub fn act(&self, s: usize, m: Elem) -> Elem {
        match &self.action {
            Some(table) => table.at(s, m),
            None => self.nat_mul(s, m),
        }
    }

    /// `k`-fold sum of `m`.
    pub fn nat_mul(&self, k: usize, m: Elem) -> Elem {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.add.at(acc, m);
        }
        acc
    }

    /// Number of scalar rows the action table carries: `|S|` in finite
    /// scalar mode, `0` in `Naturals` mode (nothing to scan).
    pub fn scalar_rows(&self) -> usize {
        match &self.scalars {
            ScalarDomain::Naturals => 0,
            ScalarDomain::Semiring(s) => s.size(),
        }
    }

    pub fn same_scalars(&self, other: &FiniteSemimodule) -> bool {
        self.scalars == other.scalars
    }

    pub fn add_flat(&self) -> &[Elem] {
        self.add.flat()
    }

    pub fn action_flat(&self) -> Option<&[Elem]> {
        self.action.as_ref().map(|a| a.flat())
    }

    pub fn rename(&self, name: &str) -> Self {
        let mut m = self.clone();
        m.name = String::from(name);
        m
    }

    pub fn is_zero_module(&self) -> bool {
        self.size() == 1
    }

    pub fn cancellative_elements(&self) -> CancellativeSet {
        cancellative_of_table(&self.add)
    }

    /// Idempotents of the additive monoid, handy for hom reasoning.
    pub fn idempotents(&self) -> Vec<Elem> {
        (0..self.size()).filter(|&x| self.add(x, x) == x).collect()
    }

    /// A structural fingerprint: scalars, size, and both tables flattened.
    /// Equal fingerprints mean structurally equal modules.
    pub fn fingerprint(&self) -> Vec<usize> {
        let mut key = Vec::new();
        match &self.scalars {
            ScalarDomain::Naturals => key.push(0),
            ScalarDomain::Semiring(s) => {
                key.push(1);
                key.push(s.size());
                key.push(s.one());
                key.extend_from_slice(s.add_flat());
                key.extend_from_slice(s.mul_flat());
            }
        }
        key.push(self.size());
        key.extend_from_slice(self.add.flat());
        if let Some(a) = &self.action {
            key.extend_from_slice(a.flat());
        }
        key
    }

    pub fn snapshot(&self) -> ModuleSnapshot {
        ModuleSnapshot {
            name: self.name.clone(),
            scalars: match &self.scalars {
                ScalarDomain::Naturals => ScalarSnapshot::Naturals,
                ScalarDomain::Semiring(s) => ScalarSnapshot::Semiring(s.snapshot()),
            },
            size: self.size(),
            add: self.add.flat().to_vec(),
            action: self.action.as_ref().map(|a| a.flat().to_vec()),
        }
    }

    /// Builds a module directly from closed tables, relabeling so the given
    /// zero sits at index 0. Debug-asserts validity; use
    /// [`validate_semimodule`] for untrusted input.
    pub(crate) fn from_tables_unchecked(
        name: String,
        scalars: ScalarDomain,
        add: BinOp,
        action: Option<Action>,
    ) -> Arc<FiniteSemimodule> {
        let m = Arc::new(FiniteSemimodule {
            name,
            scalars,
            add,
            action,
        });
        debug_assert!(
            validate_semimodule(
                m.name(),
                m.scalars.clone(),
                m.size(),
                m.add.flat().to_vec(),
                0,
                m.action.as_ref().map(|a| a.flat().to_vec()),
            )
            .is_ok(),
            "internally constructed module failed validation: {}",
            m.name()
        );
        m
    }
}

/// Validates raw semimodule tables over an already validated scalar domain.
/// Returns the instance (zero relabeled to index 0) or the complete list of
/// violated axioms with witness tuples.
pub fn validate_semimodule(
    name: &str,
    scalars: ScalarDomain,
    size: usize,
    add: Vec<Elem>,
    zero: Elem,
    action: Option<Vec<Elem>>,
) -> Result<Arc<FiniteSemimodule>> {
    if size == 0 {
        return Err(AlgebraError::structure("carrier must be nonempty"));
    }
    if zero >= size {
        return Err(AlgebraError::structure(format!(
            "zero={zero} out of range 0..{size}"
        )));
    }
    let add = BinOp::new(size, add)?;
    let perm = swap_to_front(size, zero);
    let add = add.relabel(&perm);

    let action = match (&scalars, action) {
        (ScalarDomain::Naturals, None) => None,
        (ScalarDomain::Naturals, Some(_)) => {
            return Err(AlgebraError::structure(
                "naturals-mode semimodules carry no action table",
            ));
        }
        (ScalarDomain::Semiring(s), Some(table)) => {
            Some(Action::new(s.size(), size, table)?.relabel_elements(&perm))
        }
        (ScalarDomain::Semiring(_), None) => {
            return Err(AlgebraError::structure(
                "finite scalar domain requires an action table",
            ));
        }
    };

    let mut violations = Vec::new();
    check_commutative_monoid(&add, 0, "add", &mut violations);

    if let (ScalarDomain::Semiring(s), Some(act)) = (&scalars, &action) {
        let ns = s.size();
        // s(m + m') = sm + sm'
        'a: for sc in 0..ns {
            for m in 0..size {
                for m2 in 0..size {
                    if act.at(sc, add.at(m, m2)) != add.at(act.at(sc, m), act.at(sc, m2)) {
                        violations.push(Violation::new("action-add-distributivity", &[sc, m, m2]));
                        break 'a;
                    }
                }
            }
        }
        // (s + s')m = sm + s'm
        'b: for sc in 0..ns {
            for sc2 in 0..ns {
                for m in 0..size {
                    if act.at(s.add(sc, sc2), m) != add.at(act.at(sc, m), act.at(sc2, m)) {
                        violations.push(Violation::new("scalar-add-distributivity", &[sc, sc2, m]));
                        break 'b;
                    }
                }
            }
        }
        // (s s')m = s(s'm)
        'c: for sc in 0..ns {
            for sc2 in 0..ns {
                for m in 0..size {
                    if act.at(s.mul(sc, sc2), m) != act.at(sc, act.at(sc2, m)) {
                        violations.push(Violation::new("action-associativity", &[sc, sc2, m]));
                        break 'c;
                    }
                }
            }
        }
        if let Some(m) = (0..size).find(|&m| act.at(s.one(), m) != m) {
            violations.push(Violation::new("action-identity", &[m]));
        }
        if let Some(sc) = (0..ns).find(|&sc| act.at(sc, 0) != 0) {
            violations.push(Violation::new("action-zero-right", &[sc]));
        }
        if let Some(m) = (0..size).find(|&m| act.at(0, m) != 0) {
            violations.push(Violation::new("action-zero-left", &[m]));
        }
    }

    if violations.is_empty() {
        Ok(Arc::new(FiniteSemimodule {
            name: String::from(name),
            scalars,
            add,
            action,
        }))
    } else {
        Err(AlgebraError::Violations(violations))
    }
}

/// Serializable snapshot of a module, flat row-major tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleSnapshot {
    pub name: String,
    pub scalars: ScalarSnapshot,
    pub size: usize,
    pub add: Vec<Elem>,
    pub action: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarSnapshot {
    Naturals,
    Semiring(SemiringSnapshot),
}
