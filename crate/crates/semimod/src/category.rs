//! Limits and colimits: direct sums, pullbacks, pushouts, and retracts.
//!
//! Pushouts are built constructively as a quotient of the direct sum by the
//! congruence generated by identifying the two images of the shared domain.
//! The universal property is not assumed: [`verify_pushout_universal`]
//! checks, by hom enumeration, that a candidate cospan admits exactly one
//! mediating map to every cocone it is given.
//!
//! The explicit relation of the C-pushout (the pushout of the cancellative
//! subcategory) is also provided; it is coarser than the pushout congruence
//! in general and coincides with it on cancellative inputs.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::hom::{HomCache, HomSet};
use crate::morphism::{compose, LinearMap};
use crate::semimodule::FiniteSemimodule;
use crate::subquot::{
    enumerate_congruences, generated_congruence, quotient_by_congruence, Congruence, Subsemimodule,
};
use crate::Elem;

/// A direct sum with its canonical injections and projections. The element
/// `(a, b)` sits at index `a * |right| + b`.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Arc<FiniteSemimodule>,
    pub left: Arc<FiniteSemimodule>,
    pub right: Arc<FiniteSemimodule>,
    pub inj_left: LinearMap,
    pub inj_right: LinearMap,
    pub proj_left: LinearMap,
    pub proj_right: LinearMap,
}

impl DirectSum {
    #[inline]
    pub fn pair(&self, a: Elem, b: Elem) -> Elem {
        a * self.right.size() + b
    }

    #[inline]
    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        (x / self.right.size(), x % self.right.size())
    }
}

pub fn direct_sum(
    left: &Arc<FiniteSemimodule>,
    right: &Arc<FiniteSemimodule>,
) -> Result<DirectSum> {
    if !left.same_scalars(right) {
        return Err(AlgebraError::ScalarMismatch(
            left.scalars().describe(),
            right.scalars().describe(),
        ));
    }
    let module = crate::builtin::direct_sum_module(left, right);
    let nr = right.size();
    let inj_left = LinearMap::unchecked(
        left,
        &module,
        (0..left.size()).map(|a| a * nr).collect(),
    );
    let inj_right = LinearMap::unchecked(right, &module, (0..right.size()).collect());
    let proj_left = LinearMap::unchecked(
        &module,
        left,
        (0..module.size()).map(|x| x / nr).collect(),
    );
    let proj_right = LinearMap::unchecked(
        &module,
        right,
        (0..module.size()).map(|x| x % nr).collect(),
    );
    Ok(DirectSum {
        module,
        left: Arc::clone(left),
        right: Arc::clone(right),
        inj_left,
        inj_right,
        proj_left,
        proj_right,
    })
}

/// Witness for a failed internal direct-sum decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SumWitness {
    /// An element not of the form `k + l`.
    NotCovered(Elem),
    /// An element with two distinct decompositions `(k, l)`.
    TwoDecompositions(Elem, (Elem, Elem), (Elem, Elem)),
}

/// Whether `m` is the internal direct sum of the subsemimodules `k` and
/// `l`: every element is `k + l` in exactly one way.
pub fn is_direct_sum(
    m: &Arc<FiniteSemimodule>,
    k: &Subsemimodule,
    l: &Subsemimodule,
) -> (bool, Option<SumWitness>) {
    let n = m.size();
    let mut decomp: Vec<Option<(Elem, Elem)>> = alloc::vec![None; n];
    for &a in k.elems() {
        for &b in l.elems() {
            let s = m.add(a, b);
            match decomp[s] {
                None => decomp[s] = Some((a, b)),
                Some(first) if first != (a, b) => {
                    return (false, Some(SumWitness::TwoDecompositions(s, first, (a, b))));
                }
                _ => {}
            }
        }
    }
    if let Some(e) = (0..n).find(|&e| decomp[e].is_none()) {
        return (false, Some(SumWitness::NotCovered(e)));
    }
    (true, None)
}

/// A pair of maps out of a shared domain: `f : L -> M`, `g : L -> N`.
#[derive(Clone, Debug)]
pub struct Span {
    pub f: LinearMap,
    pub g: LinearMap,
}

impl Span {
    pub fn new(f: LinearMap, g: LinearMap) -> Result<Self> {
        if f.dom() != g.dom() {
            return Err(AlgebraError::mismatch("span legs must share their domain"));
        }
        Ok(Span { f, g })
    }
}

/// A pair of maps into a shared codomain: `from_m : M -> P`, `from_n : N -> P`.
#[derive(Clone, Debug)]
pub struct Cospan {
    pub from_m: LinearMap,
    pub from_n: LinearMap,
}

impl Cospan {
    pub fn new(from_m: LinearMap, from_n: LinearMap) -> Result<Self> {
        if from_m.cod() != from_n.cod() {
            return Err(AlgebraError::mismatch(
                "cospan legs must share their codomain",
            ));
        }
        Ok(Cospan { from_m, from_n })
    }

    pub fn apex(&self) -> &Arc<FiniteSemimodule> {
        self.from_m.cod()
    }

    /// Whether this cospan commutes over the span: `from_m . f = from_n . g`.
    pub fn commutes_over(&self, span: &Span) -> bool {
        (0..span.f.dom().size())
            .all(|l| self.from_m.apply(span.f.apply(l)) == self.from_n.apply(span.g.apply(l)))
    }
}

/// The pullback of `f : A -> C` and `g : B -> C`: the subsemimodule
/// `{(a, b) | f(a) = g(b)}` of `A (+) B` with the restricted projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: Arc<FiniteSemimodule>,
    pub to_a: LinearMap,
    pub to_b: LinearMap,
    pub ambient: Subsemimodule,
    pub sum: DirectSum,
}

pub fn pullback(f: &LinearMap, g: &LinearMap) -> Result<Pullback> {
    if f.cod() != g.cod() {
        return Err(AlgebraError::mismatch("pullback legs must share a codomain"));
    }
    let sum = direct_sum(f.dom(), g.dom())?;
    let elems: Vec<Elem> = (0..sum.module.size())
        .filter(|&x| {
            let (a, b) = sum.split(x);
            f.apply(a) == g.apply(b)
        })
        .collect();
    let ambient = Subsemimodule::new(&sum.module, &elems)?;
    let (object, inclusion) = ambient.to_module();
    let object = Arc::new((*object).clone().rename(&format!(
        "PB({},{})",
        f.dom().name(),
        g.dom().name()
    )));
    let inclusion = LinearMap::unchecked(&object, &sum.module, inclusion.map().to_vec());
    let to_a = compose(&sum.proj_left, &inclusion)?;
    let to_b = compose(&sum.proj_right, &inclusion)?;
    Ok(Pullback {
        object,
        to_a,
        to_b,
        ambient,
        sum,
    })
}

/// A pushout, realized as a quotient of the direct sum.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub sum: DirectSum,
    pub rho: Congruence,
    pub apex: Arc<FiniteSemimodule>,
    /// Leg `M -> apex`, `m -> [(m, 0)]`.
    pub from_m: LinearMap,
    /// Leg `N -> apex`, `n -> [(0, n)]`.
    pub from_n: LinearMap,
}

impl Pushout {
    pub fn cospan(&self) -> Cospan {
        Cospan {
            from_m: self.from_m.clone(),
            from_n: self.from_n.clone(),
        }
    }
}

/// The pushout of a span `f : L -> M`, `g : L -> N`: the quotient of
/// `M (+) N` by the congruence generated by `(f(l), 0) ~ (0, g(l))`.
pub fn pushout(span: &Span) -> Result<Pushout> {
    let sum = direct_sum(span.f.cod(), span.g.cod())?;
    let pairs: Vec<(Elem, Elem)> = (0..span.f.dom().size())
        .map(|l| {
            (
                sum.pair(span.f.apply(l), 0),
                sum.pair(0, span.g.apply(l)),
            )
        })
        .collect();
    let rho = generated_congruence(&sum.module, &pairs);
    let q = quotient_by_congruence(&sum.module, &rho);
    let apex = Arc::new((*q.module).clone().rename(&format!(
        "PO({},{})",
        span.f.cod().name(),
        span.g.cod().name()
    )));
    let from_m = LinearMap::unchecked(
        span.f.cod(),
        &apex,
        (0..span.f.cod().size())
            .map(|m| rho.class_of()[sum.pair(m, 0)])
            .collect(),
    );
    let from_n = LinearMap::unchecked(
        span.g.cod(),
        &apex,
        (0..span.g.cod().size())
            .map(|n| rho.class_of()[sum.pair(0, n)])
            .collect(),
    );
    debug_assert!(
        Cospan {
            from_m: from_m.clone(),
            from_n: from_n.clone()
        }
        .commutes_over(span),
        "pushout legs must commute over the span"
    );
    Ok(Pushout {
        sum,
        rho,
        apex,
        from_m,
        from_n,
    })
}

/// The C-pushout of a span: the quotient of `M (+) N` by the explicit
/// relation
///
/// ```text
/// (m1, n1) ~ (m2, n2)  iff  there are l1, l2 with
///     m1 + f(l1) = m2 + f(l2)  and  n1 + g(l2) = n2 + g(l1)
/// ```
///
/// The relation is checked to be a congruence (an equivalence already, and
/// compatible); failure would be a soundness bug, so it panics.
pub fn c_pushout(span: &Span) -> Result<Pushout> {
    let sum = direct_sum(span.f.cod(), span.g.cod())?;
    let size = sum.module.size();
    let l_size = span.f.dom().size();
    let related = |x: Elem, y: Elem| -> bool {
        let (m1, n1) = sum.split(x);
        let (m2, n2) = sum.split(y);
        (0..l_size).any(|l1| {
            (0..l_size).any(|l2| {
                span.f.cod().add(m1, span.f.apply(l1)) == span.f.cod().add(m2, span.f.apply(l2))
                    && span.g.cod().add(n1, span.g.apply(l2))
                        == span.g.cod().add(n2, span.g.apply(l1))
            })
        })
    };
    let mut class_of: Vec<usize> = (0..size).collect();
    for x in 0..size {
        for y in (x + 1)..size {
            if class_of[y] == y && related(x, y) {
                class_of[y] = class_of[x];
            }
        }
    }
    // The relation must already be transitive: members of one class are
    // pairwise related directly.
    let rho = Congruence::new(&sum.module, &class_of)
        .expect("the C-pushout relation must be a congruence");
    for x in 0..size {
        for y in (x + 1)..size {
            assert_eq!(
                rho.related(x, y),
                related(x, y),
                "the C-pushout relation must be transitive"
            );
        }
    }
    let q = quotient_by_congruence(&sum.module, &rho);
    let apex = Arc::new((*q.module).clone().rename(&format!(
        "CP({},{})",
        span.f.cod().name(),
        span.g.cod().name()
    )));
    let from_m = LinearMap::unchecked(
        span.f.cod(),
        &apex,
        (0..span.f.cod().size())
            .map(|m| rho.class_of()[sum.pair(m, 0)])
            .collect(),
    );
    let from_n = LinearMap::unchecked(
        span.g.cod(),
        &apex,
        (0..span.g.cod().size())
            .map(|n| rho.class_of()[sum.pair(0, n)])
            .collect(),
    );
    Ok(Pushout {
        sum,
        rho,
        apex,
        from_m,
        from_n,
    })
}

/// The distinct quotients of `M (+) N`, one module per congruence, deduped
/// structurally. These are the canonical cocone apexes for spans into `M`
/// and `N`.
pub fn quotient_targets(
    m: &Arc<FiniteSemimodule>,
    n: &Arc<FiniteSemimodule>,
    budget: &Budget,
) -> Result<Vec<Arc<FiniteSemimodule>>> {
    let sum = direct_sum(m, n)?;
    let mut apexes: Vec<Arc<FiniteSemimodule>> = Vec::new();
    let mut seen: alloc::collections::BTreeSet<Vec<usize>> = alloc::collections::BTreeSet::new();
    for rho in enumerate_congruences(&sum.module, budget)? {
        let q = quotient_by_congruence(&sum.module, &rho);
        if seen.insert(q.module.fingerprint()) {
            apexes.push(q.module);
        }
    }
    Ok(apexes)
}

/// Every commuting cospan from the span into the given apex.
pub fn cocones_into(
    span: &Span,
    apex: &Arc<FiniteSemimodule>,
    budget: &Budget,
    cache: &mut HomCache,
) -> Result<Vec<Cospan>> {
    let mut cocones = Vec::new();
    let homs_m = cache.homs(span.f.cod(), apex, budget)?;
    let homs_n = cache.homs(span.g.cod(), apex, budget)?;
    for hm in homs_m.iter() {
        for hn in homs_n.iter() {
            let cospan = Cospan {
                from_m: hm.clone(),
                from_n: hn.clone(),
            };
            if cospan.commutes_over(span) {
                cocones.push(cospan);
            }
        }
    }
    Ok(cocones)
}

/// The cocone catalog for a span: every commuting cospan into each quotient
/// of `M (+) N` and into each extra target, found by hom enumeration.
pub fn cocone_catalog(
    span: &Span,
    targets: &[Arc<FiniteSemimodule>],
    budget: &Budget,
    cache: &mut HomCache,
) -> Result<Vec<Cospan>> {
    let sum = direct_sum(span.f.cod(), span.g.cod())?;
    let mut apexes = quotient_targets(span.f.cod(), span.g.cod(), budget)?;
    let mut seen: alloc::collections::BTreeSet<Vec<usize>> =
        apexes.iter().map(|a| a.fingerprint()).collect();
    for t in targets {
        if t.same_scalars(&sum.module) && seen.insert(t.fingerprint()) {
            apexes.push(Arc::clone(t));
        }
    }
    let mut cocones = Vec::new();
    for apex in &apexes {
        cocones.extend(cocones_into(span, apex, budget, cache)?);
    }
    Ok(cocones)
}

/// Per-cocone mediating-map count from a universal-property check.
#[derive(Clone, Debug, Serialize)]
pub struct MediatingFailure {
    pub cocone_index: usize,
    pub apex: String,
    pub count: usize,
}

/// Result of checking a candidate cospan for the pushout universal
/// property against a list of cocones.
#[derive(Clone, Debug, Serialize)]
pub struct UniversalReport {
    /// The candidate's own legs commute over the span.
    pub candidate_commutes: bool,
    pub cocones_checked: usize,
    /// Cocones admitting no or several mediating maps.
    pub failures: Vec<MediatingFailure>,
    pub ok: bool,
}

/// Checks that `candidate` has the pushout universal property relative to
/// the given cocones: for each cocone there is exactly one map from the
/// candidate apex commuting with both legs. Mediating maps are found by
/// enumerating the hom-set from the apex and indexing it by its two
/// restrictions.
pub fn verify_pushout_universal(
    span: &Span,
    candidate: &Cospan,
    cocones: &[Cospan],
    budget: &Budget,
    cache: &mut HomCache,
) -> Result<UniversalReport> {
    let candidate_commutes = candidate.commutes_over(span);
    let apex = candidate.apex();
    let mut failures = Vec::new();

    // Group cocones by codomain so each hom-set is enumerated and indexed
    // once per target.
    let mut by_target: alloc::collections::BTreeMap<Vec<usize>, Vec<usize>> =
        alloc::collections::BTreeMap::new();
    for (i, cocone) in cocones.iter().enumerate() {
        by_target
            .entry(cocone.apex().fingerprint())
            .or_default()
            .push(i);
    }
    for indices in by_target.values() {
        let target = cocones[indices[0]].apex();
        let homs: Arc<HomSet> = cache.homs(apex, target, budget)?;
        let mut by_restriction: alloc::collections::BTreeMap<(Vec<Elem>, Vec<Elem>), usize> =
            alloc::collections::BTreeMap::new();
        for phi in homs.maps() {
            let restr_m: Vec<Elem> = candidate.from_m.map().iter().map(|&x| phi[x]).collect();
            let restr_n: Vec<Elem> = candidate.from_n.map().iter().map(|&x| phi[x]).collect();
            *by_restriction.entry((restr_m, restr_n)).or_insert(0) += 1;
        }
        for &i in indices {
            let key = (
                cocones[i].from_m.map().to_vec(),
                cocones[i].from_n.map().to_vec(),
            );
            let count = by_restriction.get(&key).copied().unwrap_or(0);
            if count != 1 {
                failures.push(MediatingFailure {
                    cocone_index: i,
                    apex: String::from(target.name()),
                    count,
                });
            }
        }
    }
    failures.sort_by_key(|f| f.cocone_index);
    let ok = candidate_commutes && failures.is_empty();
    Ok(UniversalReport {
        candidate_commutes,
        cocones_checked: cocones.len(),
        failures,
        ok,
    })
}

/// Searches for maps exhibiting `n` as a retract of `m`: a surjection
/// `theta : M -> N` and a section `psi : N -> M` with `theta . psi = id`.
/// Returns the first pair in lexicographic `(psi, theta)` order.
pub fn retract_check(
    n: &Arc<FiniteSemimodule>,
    m: &Arc<FiniteSemimodule>,
    budget: &Budget,
) -> Result<Option<(LinearMap, LinearMap)>> {
    if !n.same_scalars(m) {
        return Err(AlgebraError::ScalarMismatch(
            n.scalars().describe(),
            m.scalars().describe(),
        ));
    }
    let sections = crate::hom::enumerate_hom(n, m, budget)?;
    let retractions = crate::hom::enumerate_hom(m, n, budget)?;
    for psi in sections.iter() {
        if !psi.is_injective() {
            continue;
        }
        for theta in retractions.iter() {
            if (0..n.size()).all(|x| theta.apply(psi.apply(x)) == x) {
                return Ok(Some((theta, psi)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::morphism::{are_isomorphic, classify_normality};
    use crate::subquot::quotient_by_subsemimodule;

    fn b31() -> Arc<FiniteSemimodule> {
        builtin::builtin_module("B31").unwrap()
    }

    fn z2() -> Arc<FiniteSemimodule> {
        builtin::builtin_module("Z2").unwrap()
    }

    fn boolean() -> Arc<FiniteSemimodule> {
        builtin::builtin_module("C(1,1)").unwrap()
    }

    #[test]
    fn direct_sum_shapes() {
        let s = direct_sum(&z2(), &z2()).unwrap();
        assert_eq!(s.module.size(), 4);
        let bb = direct_sum(&boolean(), &boolean()).unwrap();
        // (1,0) + (0,1) = (1,1)
        assert_eq!(bb.module.add(bb.pair(1, 0), bb.pair(0, 1)), bb.pair(1, 1));
        let zero = builtin::zero_module();
        let mz = direct_sum(&b31(), &zero).unwrap();
        assert!(are_isomorphic(&mz.module, &b31(), &Budget::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn internal_direct_sum_checks() {
        let m = b31();
        let whole = Subsemimodule::new(&m, &[0, 1, 2]).unwrap();
        let zero = Subsemimodule::new(&m, &[0]).unwrap();
        assert!(is_direct_sum(&m, &whole, &zero).0);

        let b = boolean();
        let all = Subsemimodule::new(&b, &[0, 1]).unwrap();
        let (ok, witness) = is_direct_sum(&b, &all, &all);
        assert!(!ok);
        assert_eq!(
            witness.unwrap(),
            SumWitness::TwoDecompositions(1, (0, 1), (1, 0))
        );

        let bb = direct_sum(&b, &b).unwrap();
        let left = Subsemimodule::new(&bb.module, &[0, bb.pair(1, 0)]).unwrap();
        let right = Subsemimodule::new(&bb.module, &[0, bb.pair(0, 1)]).unwrap();
        assert!(is_direct_sum(&bb.module, &left, &right).0);
    }

    #[test]
    fn pullback_of_identity_pair_is_diagonal() {
        let b = boolean();
        let id = LinearMap::identity(&b);
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.object.size(), 2);
        assert!(are_isomorphic(&pb.object, &b, &Budget::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn pullback_of_projection_and_identity_is_b31() {
        let pi = LinearMap::new(&b31(), &z2(), alloc::vec![0, 1, 0]).unwrap();
        let pb = pullback(&pi, &LinearMap::identity(&z2())).unwrap();
        assert_eq!(pb.object.size(), 3);
        assert!(are_isomorphic(&pb.object, &b31(), &Budget::default())
            .unwrap()
            .is_some());
        // Legs commute: pi . to_a = id . to_b.
        for x in 0..pb.object.size() {
            assert_eq!(pi.apply(pb.to_a.apply(x)), pb.to_b.apply(x));
        }
    }

    #[test]
    fn pullback_of_zero_and_identity_is_the_source() {
        let m = b31();
        let zero = LinearMap::zero(&m, &z2()).unwrap();
        let pb = pullback(&zero, &LinearMap::identity(&z2())).unwrap();
        assert!(are_isomorphic(&pb.object, &m, &Budget::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn pushout_along_identities_is_the_domain() {
        let l = b31();
        let span = Span::new(LinearMap::identity(&l), LinearMap::identity(&l)).unwrap();
        let po = pushout(&span).unwrap();
        assert!(are_isomorphic(&po.apex, &l, &Budget::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn pushout_of_inclusion_against_zero_is_the_quotient() {
        let m = b31();
        let sub = Subsemimodule::new(&m, &[0, 2]).unwrap();
        let (l_mod, incl) = sub.to_module();
        let zero_mod = builtin::zero_module();
        let span = Span::new(incl, LinearMap::zero(&l_mod, &zero_mod).unwrap()).unwrap();
        let po = pushout(&span).unwrap();
        assert!(are_isomorphic(&po.apex, &z2(), &Budget::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn surjective_leg_transfers() {
        // f surjective implies the opposite pushout leg is surjective.
        let pi = LinearMap::new(&b31(), &z2(), alloc::vec![0, 1, 0]).unwrap();
        let id = LinearMap::identity(&b31());
        let span = Span::new(pi, id).unwrap();
        let po = pushout(&span).unwrap();
        assert!(po.from_n.is_surjective());
    }

    #[test]
    fn c_pushout_of_zero_span_is_the_sum() {
        let zero = builtin::zero_module();
        let span = Span::new(
            LinearMap::zero(&zero, &b31()).unwrap(),
            LinearMap::zero(&zero, &z2()).unwrap(),
        )
        .unwrap();
        let cp = c_pushout(&span).unwrap();
        assert_eq!(cp.apex.size(), 6);
    }

    #[test]
    fn pushout_refines_c_pushout() {
        let m = b31();
        let sub = Subsemimodule::new(&m, &[0, 2]).unwrap();
        let (l_mod, incl) = sub.to_module();
        let span = Span::new(incl.clone(), LinearMap::identity(&l_mod)).unwrap();
        let po = pushout(&span).unwrap();
        let cp = c_pushout(&span).unwrap();
        assert!(po.rho.refines(&cp.rho));
    }

    #[test]
    fn c_pushout_equals_pushout_on_groups() {
        let z = z2();
        let id = LinearMap::identity(&z);
        let span = Span::new(id.clone(), id).unwrap();
        let po = pushout(&span).unwrap();
        let cp = c_pushout(&span).unwrap();
        assert_eq!(po.rho, cp.rho);
    }

    #[test]
    fn pushout_satisfies_universal_property_on_a_small_catalog() {
        let m = b31();
        let sub = Subsemimodule::new(&m, &[0, 2]).unwrap();
        let (l_mod, incl) = sub.to_module();
        let zero_mod = builtin::zero_module();
        let span = Span::new(incl, LinearMap::zero(&l_mod, &zero_mod).unwrap()).unwrap();
        let po = pushout(&span).unwrap();
        let mut cache = HomCache::new();
        let targets = [z2(), b31(), builtin::zero_module()];
        let cocones = cocone_catalog(&span, &targets, &Budget::default(), &mut cache).unwrap();
        assert!(!cocones.is_empty());
        let report = verify_pushout_universal(
            &span,
            &po.cospan(),
            &cocones,
            &Budget::default(),
            &mut cache,
        )
        .unwrap();
        assert!(report.ok, "failures: {:?}", report.failures);
    }

    #[test]
    fn too_coarse_candidate_fails_existence() {
        // Quotient everything: the collapsed cospan commutes but admits no
        // mediating map to the real pushout cocone.
        let m = b31();
        let sub = Subsemimodule::new(&m, &[0, 2]).unwrap();
        let (l_mod, incl) = sub.to_module();
        let zero_mod = builtin::zero_module();
        let span = Span::new(incl, LinearMap::zero(&l_mod, &zero_mod).unwrap()).unwrap();
        let po = pushout(&span).unwrap();
        let collapsed = Cospan::new(
            LinearMap::zero(&m, &zero_mod).unwrap(),
            LinearMap::zero(&zero_mod, &zero_mod).unwrap(),
        )
        .unwrap();
        let mut cache = HomCache::new();
        let report = verify_pushout_universal(
            &span,
            &collapsed,
            &[po.cospan()],
            &Budget::default(),
            &mut cache,
        )
        .unwrap();
        assert!(!report.ok);
        assert_eq!(report.failures[0].count, 0);
    }

    #[test]
    fn padded_candidate_fails_uniqueness() {
        // Direct-sum the real apex with Z2: mediating maps are no longer
        // unique because the extra summand is unconstrained.
        let m = b31();
        let sub = Subsemimodule::new(&m, &[0, 2]).unwrap();
        let (l_mod, incl) = sub.to_module();
        let zero_mod = builtin::zero_module();
        let span = Span::new(incl, LinearMap::zero(&l_mod, &zero_mod).unwrap()).unwrap();
        let po = pushout(&span).unwrap();
        let padded = direct_sum(&po.apex, &z2()).unwrap();
        let candidate = Cospan::new(
            compose(&padded.inj_left, &po.from_m).unwrap(),
            compose(&padded.inj_left, &po.from_n).unwrap(),
        )
        .unwrap();
        let mut cache = HomCache::new();
        let cocone = Cospan::new(
            compose(&padded.inj_left, &po.from_m).unwrap(),
            compose(&padded.inj_left, &po.from_n).unwrap(),
        )
        .unwrap();
        let report = verify_pushout_universal(
            &span,
            &candidate,
            &[cocone],
            &Budget::default(),
            &mut cache,
        )
        .unwrap();
        assert!(!report.ok);
        assert!(report.failures[0].count > 1);
    }

    #[test]
    fn retract_examples() {
        let m = b31();
        let sub = Subsemimodule::new(&m, &[0, 2]).unwrap();
        let (l_mod, _) = sub.to_module();
        let found = retract_check(&l_mod, &m, &Budget::default()).unwrap();
        let (theta, psi) = found.expect("the two-element subsemimodule is a retract");
        assert_eq!(compose(&theta, &psi).unwrap(), LinearMap::identity(&l_mod));
        // theta is the left splitting x -> 2 (as index 1 in the submodule).
        assert_eq!(theta.map(), &[0, 1, 1]);

        assert!(retract_check(&z2(), &m, &Budget::default())
            .unwrap()
            .is_none());
        assert!(retract_check(&m, &m, &Budget::default()).unwrap().is_some());
    }

    #[test]
    fn summands_match_complemented_endomorphisms() {
        // Cross-check of the two summand characterizations: K is a direct
        // summand iff K is the image of some complemented idempotent
        // endomorphism.
        use crate::hom::{endomorphism_semiring, enumerate_hom};
        use crate::subquot::enumerate_subsemimodules;
        use alloc::collections::BTreeSet;
        for name in ["B31", "Z2", "C(2,1)", "Z2(+)Z2", "C(1,1)(+)C(1,1)"] {
            let m = builtin::builtin_module(name).unwrap();
            let subs = enumerate_subsemimodules(&m, &Budget::default()).unwrap();
            let by_complement: BTreeSet<Vec<usize>> = subs
                .iter()
                .filter(|k| subs.iter().any(|l| is_direct_sum(&m, k, l).0))
                .map(|k| k.elems().to_vec())
                .collect();
            let end = endomorphism_semiring(&m, &Budget::default()).unwrap();
            let homs = enumerate_hom(&m, &m, &Budget::default()).unwrap();
            let by_comp: BTreeSet<Vec<usize>> = end
                .comp_elements()
                .into_iter()
                .map(|t| homs.get(t).image_elems())
                .collect();
            assert_eq!(by_complement, by_comp, "mismatch for {name}");
        }
    }

    #[test]
    fn pushout_projection_normality_transfer() {
        // f a normal epimorphism implies its transferred leg is one too.
        let m = b31();
        let sub = Subsemimodule::new(&m, &[0, 2]).unwrap();
        let q = quotient_by_subsemimodule(&m, &sub);
        let span = Span::new(q.projection.clone(), LinearMap::identity(&m)).unwrap();
        let po = pushout(&span).unwrap();
        let report = classify_normality(&po.from_n);
        assert!(report.surjective && report.k_normal);
    }
}
