//! Subsemimodules, subtractive closure, congruences, and quotients.
//!
//! The subtractive closure of a subset `L` of `M` is
//! `{m | m + l = l' for some l, l' in L}`; `L` is subtractive when it equals
//! its closure. Quotients come in two forms: by a congruence (classes become
//! the carrier with induced tables) and by a subsemimodule `L`, which first
//! forms the relation `m ~ m'  iff  m + l = m' + l'` for some `l, l'` in `L`
//! and then quotients. The kernel of that projection is exactly the closure
//! of `L`, and the projection is always k-normal.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::morphism::LinearMap;
use crate::semimodule::FiniteSemimodule;
use crate::table::{Action, BinOp};
use crate::Elem;

/// A subset of a module carrier containing 0 and closed under addition and
/// the scalar action.
#[derive(Clone, Debug)]
pub struct Subsemimodule {
    parent: Arc<FiniteSemimodule>,
    /// Sorted ascending; always starts with 0.
    elems: Vec<Elem>,
}

impl PartialEq for Subsemimodule {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elems == other.elems
    }
}
impl Eq for Subsemimodule {}

impl Subsemimodule {
    /// Validates a subset as a subsemimodule.
    pub fn new(parent: &Arc<FiniteSemimodule>, elems: &[Elem]) -> Result<Self> {
        let mut sorted: Vec<Elem> = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&e| e >= parent.size()) {
            return Err(AlgebraError::structure("subset element out of range"));
        }
        if sorted.first() != Some(&0) {
            return Err(AlgebraError::structure("a subsemimodule must contain 0"));
        }
        let inside = member_mask(parent.size(), &sorted);
        for &a in &sorted {
            for &b in &sorted {
                if !inside[parent.add(a, b)] {
                    return Err(AlgebraError::structure(format!(
                        "subset not closed under addition: {a} + {b}"
                    )));
                }
            }
            for s in 0..parent.scalar_rows() {
                if !inside[parent.act(s, a)] {
                    return Err(AlgebraError::structure(format!(
                        "subset not closed under the action: {s} * {a}"
                    )));
                }
            }
        }
        Ok(Subsemimodule {
            parent: Arc::clone(parent),
            elems: sorted,
        })
    }

    pub(crate) fn from_elems_unchecked(parent: &Arc<FiniteSemimodule>, elems: Vec<Elem>) -> Self {
        debug_assert!(Subsemimodule::new(parent, &elems).is_ok());
        Subsemimodule {
            parent: Arc::clone(parent),
            elems,
        }
    }

    pub fn parent(&self) -> &Arc<FiniteSemimodule> {
        &self.parent
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elems.len() == self.parent.size()
    }

    pub fn is_subtractive(&self) -> bool {
        subtractive_closure(&self.parent, &self.elems).is_subtractive
    }

    /// The subsemimodule as a standalone module (carrier relabeled to
    /// `0..len`) together with the inclusion into the parent.
    pub fn to_module(&self) -> (Arc<FiniteSemimodule>, LinearMap) {
        let k = self.elems.len();
        let rank_of = {
            let mut rank = alloc::vec![usize::MAX; self.parent.size()];
            for (i, &e) in self.elems.iter().enumerate() {
                rank[e] = i;
            }
            rank
        };
        let add = BinOp::from_fn(k, |a, b| rank_of[self.parent.add(self.elems[a], self.elems[b])]);
        let action = self.parent.scalars().semiring().map(|s| {
            Action::from_fn(s.size(), k, |sc, m| rank_of[self.parent.act(sc, self.elems[m])])
        });
        let module = FiniteSemimodule::from_tables_unchecked(
            format!("{}|{}", self.parent.name(), describe_subset(&self.elems)),
            self.parent.scalars().clone(),
            add,
            action,
        );
        let inclusion = LinearMap::unchecked(&module, &self.parent, self.elems.clone());
        (module, inclusion)
    }

    pub fn snapshot(&self) -> SubsetSnapshot {
        SubsetSnapshot {
            parent: String::from(self.parent.name()),
            elems: self.elems.clone(),
        }
    }
}

fn describe_subset(elems: &[Elem]) -> String {
    let mut s = String::from("{");
    for (i, e) in elems.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&format!("{e}"));
    }
    s.push('}');
    s
}

fn member_mask(n: usize, elems: &[Elem]) -> Vec<bool> {
    let mut mask = alloc::vec![false; n];
    for &e in elems {
        mask[e] = true;
    }
    mask
}

/// Result of a subtractive closure computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub closure: Vec<Elem>,
    pub is_subtractive: bool,
}

/// Computes `{m | m + l = l' for some l, l' in L}` for an arbitrary subset
/// `L` and flags whether it equals `L`.
pub fn subtractive_closure(m: &Arc<FiniteSemimodule>, subset: &[Elem]) -> ClosureReport {
    let inside = member_mask(m.size(), subset);
    let closure: Vec<Elem> = (0..m.size())
        .filter(|&x| subset.iter().any(|&l| inside[m.add(x, l)]))
        .collect();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let is_subtractive = closure == sorted;
    ClosureReport {
        closure,
        is_subtractive,
    }
}

/// Least subsemimodule containing `seed`.
pub fn generated_subsemimodule(m: &Arc<FiniteSemimodule>, seed: &[Elem]) -> Subsemimodule {
    let n = m.size();
    let mut inside = alloc::vec![false; n];
    inside[0] = true;
    let mut stack: Vec<Elem> = alloc::vec![0];
    for &e in seed {
        if !inside[e] {
            inside[e] = true;
            stack.push(e);
        }
    }
    let mut members: Vec<Elem> = stack.clone();
    while let Some(a) = stack.pop() {
        for i in 0..members.len() {
            let s = m.add(a, members[i]);
            if !inside[s] {
                inside[s] = true;
                members.push(s);
                stack.push(s);
            }
        }
        for sc in 0..m.scalar_rows() {
            let v = m.act(sc, a);
            if !inside[v] {
                inside[v] = true;
                members.push(v);
                stack.push(v);
            }
        }
    }
    members.sort_unstable();
    Subsemimodule::from_elems_unchecked(m, members)
}

/// Every subsemimodule of `m`, ordered by size then lexicographically.
pub fn enumerate_subsemimodules(
    m: &Arc<FiniteSemimodule>,
    budget: &Budget,
) -> Result<Vec<Subsemimodule>> {
    // Grow the closed-set lattice upward from {0}: repeatedly adjoin one
    // element and close. Avoids scanning all 2^n subsets.
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let zero = generated_subsemimodule(m, &[]);
    let mut frontier = alloc::vec![zero.elems().to_vec()];
    seen.insert(frontier[0].clone());
    while let Some(current) = frontier.pop() {
        for e in 0..m.size() {
            if current.binary_search(&e).is_ok() {
                continue;
            }
            let mut seed = current.clone();
            seed.push(e);
            let bigger = generated_subsemimodule(m, &seed);
            if seen.insert(bigger.elems().to_vec()) {
                budget.check_subsemimodules(seen.len())?;
                frontier.push(bigger.elems().to_vec());
            }
        }
    }
    let mut sets: Vec<Vec<Elem>> = seen.into_iter().collect();
    sets.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
    Ok(sets
        .into_iter()
        .map(|elems| Subsemimodule::from_elems_unchecked(m, elems))
        .collect())
}

/// Whether the only subsemimodules are `{0}` and the whole carrier; on a
/// negative answer, the least proper nonzero subsemimodule is the witness.
/// The zero module is refused as degenerate.
pub fn is_ideal_simple(
    m: &Arc<FiniteSemimodule>,
    budget: &Budget,
) -> Result<(bool, Option<Subsemimodule>)> {
    if m.size() < 2 {
        return Err(AlgebraError::Degenerate(String::from(
            "ideal-simplicity is undefined for the zero module",
        )));
    }
    let subs = enumerate_subsemimodules(m, budget)?;
    let witness = subs.into_iter().find(|s| !s.is_zero() && !s.is_whole());
    Ok((witness.is_none(), witness))
}

/// A partition of a module carrier compatible with addition and the scalar
/// action. Class ids are normalized by least member, so the class of 0 is
/// class 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    parent: Arc<FiniteSemimodule>,
    class_of: Vec<usize>,
    num_classes: usize,
}

impl Congruence {
    /// Validates a class-id array as a congruence.
    pub fn new(parent: &Arc<FiniteSemimodule>, class_of: &[usize]) -> Result<Self> {
        if class_of.len() != parent.size() {
            return Err(AlgebraError::structure("class array length mismatch"));
        }
        let c = Congruence::from_class_array(parent, class_of.to_vec());
        match c.compatibility_witness() {
            None => Ok(c),
            Some((a, b, reason)) => Err(AlgebraError::structure(format!(
                "not a congruence: {a} ~ {b} breaks under {reason}"
            ))),
        }
    }

    fn from_class_array(parent: &Arc<FiniteSemimodule>, raw: Vec<usize>) -> Self {
        let (class_of, num_classes) = normalize_classes(&raw);
        Congruence {
            parent: Arc::clone(parent),
            class_of,
            num_classes,
        }
    }

    /// First incompatibility, if any: a related pair and the operation
    /// breaking it.
    pub(crate) fn compatibility_witness(&self) -> Option<(Elem, Elem, String)> {
        let n = self.parent.size();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.class_of[a] != self.class_of[b] {
                    continue;
                }
                for c in 0..n {
                    if self.class_of[self.parent.add(a, c)]
                        != self.class_of[self.parent.add(b, c)]
                    {
                        return Some((a, b, format!("translation by {c}")));
                    }
                }
                for s in 0..self.parent.scalar_rows() {
                    if self.class_of[self.parent.act(s, a)]
                        != self.class_of[self.parent.act(s, b)]
                    {
                        return Some((a, b, format!("scalar {s}")));
                    }
                }
            }
        }
        None
    }

    pub fn diagonal(parent: &Arc<FiniteSemimodule>) -> Self {
        Congruence {
            parent: Arc::clone(parent),
            class_of: (0..parent.size()).collect(),
            num_classes: parent.size(),
        }
    }

    pub fn full(parent: &Arc<FiniteSemimodule>) -> Self {
        Congruence {
            parent: Arc::clone(parent),
            class_of: alloc::vec![0; parent.size()],
            num_classes: if parent.size() == 0 { 0 } else { 1 },
        }
    }

    pub fn parent(&self) -> &Arc<FiniteSemimodule> {
        &self.parent
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_diagonal(&self) -> bool {
        self.num_classes == self.parent.size()
    }

    /// Classes as sorted element lists, ordered by class id (= least member).
    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut classes = alloc::vec![Vec::new(); self.num_classes];
        for (e, &c) in self.class_of.iter().enumerate() {
            classes[c].push(e);
        }
        classes
    }

    /// True when every related pair of `self` is related in `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let n = self.parent.size();
        (0..n).all(|a| {
            (a + 1..n).all(|b| !self.related(a, b) || other.related(a, b))
        })
    }

    /// Join in the congruence lattice: the equivalence closure of the union
    /// (already compatible, no further saturation needed).
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut dsu = Dsu::new(self.parent.size());
        for part in [&self.class_of, &other.class_of] {
            let mut rep_of_class: Vec<Option<Elem>> = alloc::vec![None; self.parent.size()];
            for (e, &c) in part.iter().enumerate() {
                match rep_of_class[c] {
                    None => rep_of_class[c] = Some(e),
                    Some(r) => {
                        dsu.union(e, r);
                    }
                }
            }
        }
        Congruence::from_class_array(&self.parent, dsu.class_array())
    }

    pub fn snapshot(&self) -> CongruenceSnapshot {
        CongruenceSnapshot {
            parent: String::from(self.parent.name()),
            class_of: self.class_of.clone(),
        }
    }
}

fn normalize_classes(raw: &[usize]) -> (Vec<usize>, usize) {
    let mut remap: Vec<Option<usize>> = alloc::vec![None; raw.len()];
    let mut next = 0;
    let mut out = alloc::vec![0; raw.len()];
    for (e, &c) in raw.iter().enumerate() {
        let id = match remap[c] {
            Some(id) => id,
            None => {
                let id = next;
                remap[c] = Some(id);
                next += 1;
                id
            }
        };
        out[e] = id;
    }
    (out, next)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the roots were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    fn class_array(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|e| self.find(e)).collect()
    }
}

/// Least congruence containing the given pairs: union-find saturation under
/// translation by every element and every scalar row, to fixpoint.
pub fn generated_congruence(m: &Arc<FiniteSemimodule>, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = m.size();
    let mut dsu = Dsu::new(n);
    let mut worklist: Vec<(Elem, Elem)> = pairs.to_vec();
    while let Some((a, b)) = worklist.pop() {
        if !dsu.union(a, b) {
            continue;
        }
        for c in 0..n {
            worklist.push((m.add(a, c), m.add(b, c)));
        }
        for s in 0..m.scalar_rows() {
            worklist.push((m.act(s, a), m.act(s, b)));
        }
    }
    Congruence::from_class_array(m, dsu.class_array())
}

/// The congruence `m ~ m'  iff  m + l = m' + l'` for some `l, l'` in the
/// subsemimodule; transitive because the subsemimodule is closed under
/// addition, and asserted compatible.
pub fn bourne_congruence(m: &Arc<FiniteSemimodule>, sub: &Subsemimodule) -> Congruence {
    assert!(
        Arc::ptr_eq(sub.parent(), m) || sub.parent() == m,
        "subsemimodule of a different module"
    );
    let n = m.size();
    let mut reach: Vec<BTreeSet<Elem>> = Vec::with_capacity(n);
    for x in 0..n {
        reach.push(sub.elems().iter().map(|&l| m.add(x, l)).collect());
    }
    let mut dsu = Dsu::new(n);
    for a in 0..n {
        for b in (a + 1)..n {
            if !reach[a].is_disjoint(&reach[b]) {
                dsu.union(a, b);
            }
        }
    }
    let cong = Congruence::from_class_array(m, dsu.class_array());
    debug_assert!(cong.compatibility_witness().is_none());
    cong
}

/// Every congruence of `m`: the join-closure of the principal congruences.
/// (Every congruence is the join of the principal congruences it contains,
/// so this is the complete lattice, without scanning all set partitions.)
/// Ordered: more classes first, then class arrays lexicographically; the
/// diagonal comes first and the full relation last.
pub fn enumerate_congruences(
    m: &Arc<FiniteSemimodule>,
    budget: &Budget,
) -> Result<Vec<Congruence>> {
    let n = m.size();
    let mut principals: Vec<Congruence> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(Congruence::diagonal(m).class_of().to_vec());
    for a in 0..n {
        for b in (a + 1)..n {
            let c = generated_congruence(m, &[(a, b)]);
            if seen.insert(c.class_of().to_vec()) {
                principals.push(c);
            }
        }
    }
    let mut all: BTreeSet<Vec<usize>> = seen.clone();
    let mut frontier: Vec<Congruence> = all
        .iter()
        .map(|cls| Congruence::from_class_array(m, cls.clone()))
        .collect();
    while let Some(current) = frontier.pop() {
        for p in &principals {
            let joined = current.join(p);
            if all.insert(joined.class_of().to_vec()) {
                budget.check_congruences(all.len())?;
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Congruence> = all
        .into_iter()
        .map(|cls| Congruence::from_class_array(m, cls))
        .collect();
    out.sort_by(|a, b| {
        (core::cmp::Reverse(a.num_classes), a.class_of())
            .cmp(&(core::cmp::Reverse(b.num_classes), b.class_of()))
    });
    Ok(out)
}

/// The kernel congruence of a map: `a ~ b  iff  f(a) = f(b)`.
pub fn kernel_congruence(f: &LinearMap) -> Congruence {
    let cong = Congruence::from_class_array(f.dom(), f.map().to_vec());
    debug_assert!(cong.compatibility_witness().is_none());
    cong
}

/// A quotient module together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: Arc<FiniteSemimodule>,
    pub projection: LinearMap,
    pub congruence: Congruence,
}

/// Quotient by a congruence: the carrier is the set of classes ordered by
/// least member, tables are induced, and the projection sends an element to
/// its class.
pub fn quotient_by_congruence(m: &Arc<FiniteSemimodule>, rho: &Congruence) -> Quotient {
    assert!(rho.parent() == m, "congruence on a different module");
    let classes = rho.classes();
    let reps: Vec<Elem> = classes.iter().map(|c| c[0]).collect();
    let k = reps.len();
    let add = BinOp::from_fn(k, |a, b| rho.class_of()[m.add(reps[a], reps[b])]);
    let action = m
        .scalars()
        .semiring()
        .map(|s| Action::from_fn(s.size(), k, |sc, a| rho.class_of()[m.act(sc, reps[a])]));
    let module = FiniteSemimodule::from_tables_unchecked(
        format!("{}/~", m.name()),
        m.scalars().clone(),
        add,
        action,
    );
    let projection = LinearMap::unchecked(m, &module, rho.class_of().to_vec());
    Quotient {
        module,
        projection,
        congruence: rho.clone(),
    }
}

/// Quotient by a subsemimodule `L`: forms the relation
/// `m ~ m' iff m + l = m' + l'` and quotients by it. The kernel of the
/// projection is the subtractive closure of `L`.
pub struct SubQuotient {
    pub module: Arc<FiniteSemimodule>,
    pub projection: LinearMap,
    pub congruence: Congruence,
    /// The kernel of the projection, i.e. the closure of the divisor.
    pub kernel: Subsemimodule,
}

pub fn quotient_by_subsemimodule(m: &Arc<FiniteSemimodule>, sub: &Subsemimodule) -> SubQuotient {
    let rho = bourne_congruence(m, sub);
    let q = quotient_by_congruence(m, &rho);
    let module = Arc::new(
        (*q.module).clone().rename(&format!(
            "{}/{}",
            m.name(),
            describe_subset(sub.elems())
        )),
    );
    let projection = LinearMap::unchecked(m, &module, q.projection.map().to_vec());
    let kernel_elems = projection.kernel_elems();
    debug_assert_eq!(
        kernel_elems,
        subtractive_closure(m, sub.elems()).closure,
        "kernel of the projection must be the subtractive closure"
    );
    let kernel = Subsemimodule::from_elems_unchecked(m, kernel_elems);
    SubQuotient {
        module,
        projection,
        congruence: rho,
        kernel,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetSnapshot {
    pub parent: String,
    pub elems: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceSnapshot {
    pub parent: String,
    pub class_of: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::morphism::classify_normality;

    fn b31() -> Arc<FiniteSemimodule> {
        builtin::builtin_module("B31").unwrap()
    }

    #[test]
    fn closure_of_02_in_b31_is_subtractive() {
        let report = subtractive_closure(&b31(), &[0, 2]);
        assert_eq!(report.closure, alloc::vec![0, 2]);
        assert!(report.is_subtractive);
    }

    #[test]
    fn closure_of_01_in_b31_is_everything() {
        let report = subtractive_closure(&b31(), &[0, 1]);
        assert_eq!(report.closure, alloc::vec![0, 1, 2]);
        assert!(!report.is_subtractive);
    }

    #[test]
    fn closure_of_zero_in_b31() {
        let report = subtractive_closure(&b31(), &[0]);
        assert_eq!(report.closure, alloc::vec![0]);
    }

    #[test]
    fn generated_subsemimodules_of_b31() {
        assert_eq!(generated_subsemimodule(&b31(), &[1]).elems(), &[0, 1, 2]);
        assert_eq!(generated_subsemimodule(&b31(), &[]).elems(), &[0]);
        assert_eq!(generated_subsemimodule(&b31(), &[2]).elems(), &[0, 2]);
    }

    #[test]
    fn subsemimodules_of_b31() {
        let subs = enumerate_subsemimodules(&b31(), &Budget::default()).unwrap();
        let sets: Vec<&[Elem]> = subs.iter().map(|s| s.elems()).collect();
        assert_eq!(sets, alloc::vec![&[0][..], &[0, 2][..], &[0, 1, 2][..]]);
    }

    #[test]
    fn subsemimodule_counts() {
        let z2 = builtin::builtin_module("Z2").unwrap();
        assert_eq!(
            enumerate_subsemimodules(&z2, &Budget::default()).unwrap().len(),
            2
        );
        let zero = builtin::zero_module();
        assert_eq!(
            enumerate_subsemimodules(&zero, &Budget::default()).unwrap().len(),
            1
        );
    }

    #[test]
    fn ideal_simplicity() {
        let z2 = builtin::builtin_module("Z2").unwrap();
        assert!(is_ideal_simple(&z2, &Budget::default()).unwrap().0);
        let (simple, witness) = is_ideal_simple(&b31(), &Budget::default()).unwrap();
        assert!(!simple);
        assert_eq!(witness.unwrap().elems(), &[0, 2]);
        let zero = builtin::zero_module();
        assert!(matches!(
            is_ideal_simple(&zero, &Budget::default()),
            Err(AlgebraError::Degenerate(_))
        ));
        let b = builtin::module_over_self(&builtin::boolean_semiring());
        assert!(is_ideal_simple(&b, &Budget::default()).unwrap().0);
    }

    #[test]
    fn generated_congruence_on_b31() {
        let c = generated_congruence(&b31(), &[(0, 2)]);
        assert_eq!(c.class_of(), &[0, 1, 0]);
        let diag = generated_congruence(&b31(), &[]);
        assert!(diag.is_diagonal());
    }

    #[test]
    fn generated_congruence_on_boolean_square() {
        let b = builtin::builtin_module("C(1,1)").unwrap();
        let bb = builtin::direct_sum_module(&b, &b);
        // (1,0) ~ (0,1) forces all three nonzero elements together.
        let c = generated_congruence(&bb, &[(2, 1)]);
        assert_eq!(c.class_of(), &[0, 1, 1, 1]);
    }

    #[test]
    fn congruences_of_b31_in_order() {
        let congs = enumerate_congruences(&b31(), &Budget::default()).unwrap();
        let arrays: Vec<&[usize]> = congs.iter().map(|c| c.class_of()).collect();
        assert_eq!(
            arrays,
            alloc::vec![
                &[0, 1, 2][..],
                &[0, 1, 0][..],
                &[0, 1, 1][..],
                &[0, 0, 0][..],
            ]
        );
    }

    #[test]
    fn congruence_counts() {
        let z2 = builtin::builtin_module("Z2").unwrap();
        assert_eq!(enumerate_congruences(&z2, &Budget::default()).unwrap().len(), 2);
        let zero = builtin::zero_module();
        assert_eq!(enumerate_congruences(&zero, &Budget::default()).unwrap().len(), 1);
    }

    /// Brute-force oracle: all set partitions filtered by compatibility.
    fn congruences_by_brute_force(m: &Arc<FiniteSemimodule>) -> BTreeSet<Vec<usize>> {
        let n = m.size();
        let mut out = BTreeSet::new();
        // Enumerate partitions via restricted growth strings.
        let mut rgs = alloc::vec![0usize; n];
        loop {
            let cong = Congruence::from_class_array(m, rgs.clone());
            if cong.compatibility_witness().is_none() {
                out.insert(cong.class_of().to_vec());
            }
            // next restricted growth string
            let mut i = n;
            loop {
                if i == 1 {
                    return out;
                }
                i -= 1;
                let max_prev = rgs[..i].iter().copied().max().unwrap_or(0);
                if rgs[i] <= max_prev {
                    rgs[i] += 1;
                    for v in rgs[i + 1..].iter_mut() {
                        *v = 0;
                    }
                    break;
                }
                rgs[i] = 0;
            }
        }
    }

    #[test]
    fn join_closure_agrees_with_brute_force() {
        for name in ["B31", "Z2", "C(2,2)", "Z2(+)Z2", "C(1,1)(+)C(1,1)", "C(3,1)"] {
            let m = builtin::builtin_module(name).unwrap();
            let fast: BTreeSet<Vec<usize>> = enumerate_congruences(&m, &Budget::default())
                .unwrap()
                .into_iter()
                .map(|c| c.class_of().to_vec())
                .collect();
            assert_eq!(fast, congruences_by_brute_force(&m), "mismatch for {name}");
        }
    }

    #[test]
    fn quotient_of_b31_by_02_is_z2() {
        let m = b31();
        let sub = Subsemimodule::new(&m, &[0, 2]).unwrap();
        let q = quotient_by_subsemimodule(&m, &sub);
        let z2 = builtin::builtin_module("Z2").unwrap();
        assert_eq!(*q.module, *z2);
        assert_eq!(q.projection.map(), &[0, 1, 0]);
        assert_eq!(q.kernel.elems(), &[0, 2]);
        assert!(classify_normality(&q.projection).k_normal);
    }

    #[test]
    fn quotient_by_diagonal_is_bijective() {
        let m = b31();
        let q = quotient_by_congruence(&m, &Congruence::diagonal(&m));
        assert!(q.projection.is_injective() && q.projection.is_surjective());
        assert_eq!(*q.module, *m);
    }

    #[test]
    fn quotient_of_b31_collapsing_12_is_boolean() {
        let m = b31();
        let rho = Congruence::new(&m, &[0, 1, 1]).unwrap();
        let q = quotient_by_congruence(&m, &rho);
        let b = builtin::builtin_module("C(1,1)").unwrap();
        assert_eq!(*q.module, *b);
    }

    #[test]
    fn incompatible_partition_is_rejected() {
        // {{0,1},{2}} on B31: 0 ~ 1 forces 1 ~ 2 under translation by 1.
        let err = Congruence::new(&b31(), &[0, 0, 1]).unwrap_err();
        assert!(matches!(err, AlgebraError::Structure(_)));
    }

    #[test]
    fn bourne_congruence_of_nonsubtractive_divisor() {
        // {0} in Z2 is subtractive; {0,1} in B31 is not, and its relation
        // matches the relation of its closure.
        let m = b31();
        let sub = generated_subsemimodule(&m, &[1]);
        let whole = bourne_congruence(&m, &sub);
        assert_eq!(whole.num_classes(), 1);
    }
}
