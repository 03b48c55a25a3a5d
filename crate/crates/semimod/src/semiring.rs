//! Finite semirings given by addition and multiplication tables.
//!
//! A semiring here is a commutative monoid `(S, +, 0)` and a monoid
//! `(S, *, 1)` with `0 != 1`, where `0` annihilates and `*` distributes over
//! `+` on both sides. Validation scans the tables and reports every violated
//! axiom with its least witness.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use serde::Serialize;

use crate::error::{AlgebraError, Result, Violation};
use crate::table::{swap_to_front, BinOp};
use crate::Elem;

/// A validated finite semiring. The additive identity is always index `0`;
/// raw tables with a different zero are relabeled on ingest.
#[derive(Clone, Debug)]
pub struct FiniteSemiring {
    name: String,
    add: BinOp,
    mul: BinOp,
    one: Elem,
}

/// Structural equality; the display name is a label and does not count.
impl PartialEq for FiniteSemiring {
    fn eq(&self, other: &Self) -> bool {
        self.add == other.add && self.mul == other.mul && self.one == other.one
    }
}
impl Eq for FiniteSemiring {}

impl FiniteSemiring {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.add.size()
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add.at(a, b)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul.at(a, b)
    }

    pub fn add_flat(&self) -> &[Elem] {
        self.add.flat()
    }

    pub fn mul_flat(&self) -> &[Elem] {
        self.mul.flat()
    }

    pub fn rename(&self, name: &str) -> Self {
        let mut s = self.clone();
        s.name = String::from(name);
        s
    }

    /// K+(S): the elements `x` such that adding `x` is injective, plus a
    /// flag telling whether that is the whole carrier.
    pub fn cancellative_elements(&self) -> CancellativeSet {
        cancellative_of_table(&self.add)
    }

    /// Comp(S): elements `t` with a complement `t~` satisfying
    /// `t + t~ = 1` and `t * t~ = 0 = t~ * t`.
    pub fn comp_elements(&self) -> Vec<Elem> {
        let n = self.size();
        let mut out = Vec::new();
        for t in 0..n {
            let has = (0..n).any(|c| {
                self.add(t, c) == self.one && self.mul(t, c) == 0 && self.mul(c, t) == 0
            });
            if has {
                out.push(t);
            }
        }
        out
    }

    pub fn snapshot(&self) -> SemiringSnapshot {
        SemiringSnapshot {
            name: self.name.clone(),
            size: self.size(),
            add: self.add.flat().to_vec(),
            mul: self.mul.flat().to_vec(),
            one: self.one,
        }
    }
}

/// The additively cancellative elements of a carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellativeSet {
    pub elements: Vec<Elem>,
    /// True when every element is cancellative.
    pub is_cancellative: bool,
}

pub(crate) fn cancellative_of_table(add: &BinOp) -> CancellativeSet {
    let n = add.size();
    let mut elements = Vec::new();
    for x in 0..n {
        let mut seen = alloc::vec![false; n];
        let mut injective = true;
        for y in 0..n {
            let v = add.at(x, y);
            if seen[v] {
                injective = false;
                break;
            }
            seen[v] = true;
        }
        if injective {
            elements.push(x);
        }
    }
    let all = elements.len() == n;
    CancellativeSet {
        elements,
        is_cancellative: all,
    }
}

/// Validates raw semiring tables. Returns the instance (with `zero`
/// relabeled to index 0) or the complete list of violated axioms.
pub fn validate_semiring(
    name: &str,
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    zero: Elem,
    one: Elem,
) -> Result<Arc<FiniteSemiring>> {
    if size == 0 {
        return Err(AlgebraError::structure("carrier must be nonempty"));
    }
    if zero >= size || one >= size {
        return Err(AlgebraError::structure(format!(
            "zero={zero} or one={one} out of range 0..{size}"
        )));
    }
    let add = BinOp::new(size, add)?;
    let mul = BinOp::new(size, mul)?;

    // Normalize: the additive identity lives at index 0.
    let perm = swap_to_front(size, zero);
    let add = add.relabel(&perm);
    let mul = mul.relabel(&perm);
    let one = perm[one];

    let mut violations = Vec::new();
    check_commutative_monoid(&add, 0, "add", &mut violations);
    check_monoid(&mul, one, "mul", &mut violations);
    if one == 0 {
        violations.push(Violation::new("zero-ne-one", &[0]));
    }
    if let Some(a) = (0..size).find(|&a| mul.at(a, 0) != 0 || mul.at(0, a) != 0) {
        violations.push(Violation::new("zero-annihilation", &[a]));
    }
    'left: for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                if mul.at(a, add.at(b, c)) != add.at(mul.at(a, b), mul.at(a, c)) {
                    violations.push(Violation::new("distributivity-left", &[a, b, c]));
                    break 'left;
                }
            }
        }
    }
    'right: for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                if mul.at(add.at(a, b), c) != add.at(mul.at(a, c), mul.at(b, c)) {
                    violations.push(Violation::new("distributivity-right", &[a, b, c]));
                    break 'right;
                }
            }
        }
    }

    if violations.is_empty() {
        Ok(Arc::new(FiniteSemiring {
            name: String::from(name),
            add,
            mul,
            one,
        }))
    } else {
        Err(AlgebraError::Violations(violations))
    }
}

pub(crate) fn check_commutative_monoid(
    op: &BinOp,
    identity: Elem,
    tag: &str,
    violations: &mut Vec<Violation>,
) {
    let n = op.size();
    if let Some(a) = (0..n).find(|&a| op.at(a, identity) != a || op.at(identity, a) != a) {
        violations.push(Violation::new(&format!("{tag}-identity"), &[a]));
    }
    'comm: for a in 0..n {
        for b in (a + 1)..n {
            if op.at(a, b) != op.at(b, a) {
                violations.push(Violation::new(&format!("{tag}-commutativity"), &[a, b]));
                break 'comm;
            }
        }
    }
    push_assoc_violation(op, tag, violations);
}

pub(crate) fn check_monoid(op: &BinOp, identity: Elem, tag: &str, violations: &mut Vec<Violation>) {
    let n = op.size();
    if let Some(a) = (0..n).find(|&a| op.at(a, identity) != a || op.at(identity, a) != a) {
        violations.push(Violation::new(&format!("{tag}-identity"), &[a]));
    }
    push_assoc_violation(op, tag, violations);
}

fn push_assoc_violation(op: &BinOp, tag: &str, violations: &mut Vec<Violation>) {
    let n = op.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if op.at(op.at(a, b), c) != op.at(a, op.at(b, c)) {
                    violations.push(Violation::new(&format!("{tag}-associativity"), &[a, b, c]));
                    return;
                }
            }
        }
    }
}

/// Serializable snapshot of a semiring, flat row-major tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiringSnapshot {
    pub name: String,
    pub size: usize,
    pub add: Vec<Elem>,
    pub mul: Vec<Elem>,
    pub one: Elem,
}
