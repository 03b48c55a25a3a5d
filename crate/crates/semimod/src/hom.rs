//! Hom-set enumeration by generator images.
//!
//! A linear map is determined by where it sends a generating set, so
//! enumeration walks candidate generator images depth-first, extends each
//! partial assignment through the span of the generators assigned so far,
//! and rejects on the first broken equation. The enumerated hom-set is
//! closed under pointwise addition and carries a commutative monoid
//! structure with the zero map as identity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::Result;
use crate::morphism::LinearMap;
use crate::semimodule::{FiniteSemimodule, ScalarDomain};
use crate::semiring::{validate_semiring, FiniteSemiring};
use crate::table::BinOp;
use crate::Elem;

/// How an element of the carrier is reached from the generators.
#[derive(Clone, Copy, Debug)]
enum Deriv {
    Zero,
    Gen,
    Add(Elem, Elem),
    Act(usize, Elem),
}

/// A deterministic generating set together with a construction order for
/// the whole carrier. Greedy: repeatedly adjoin the least element outside
/// the span of the generators chosen so far.
pub(crate) struct SpanBasis {
    pub gens: Vec<Elem>,
    /// `(element, derivation)` in definition order; derivations only refer
    /// to earlier entries.
    steps: Vec<(Elem, Deriv)>,
    /// `steps[..wave_bounds[d]]` is the span of `gens[..=d]`.
    wave_bounds: Vec<usize>,
}

impl SpanBasis {
    pub fn of(m: &FiniteSemimodule) -> SpanBasis {
        let n = m.size();
        let mut defined = alloc::vec![false; n];
        defined[0] = true;
        let mut steps: Vec<(Elem, Deriv)> = alloc::vec![(0, Deriv::Zero)];
        let mut gens = Vec::new();
        let mut wave_bounds = Vec::new();
        close(m, &mut defined, &mut steps);
        while let Some(next) = (0..n).find(|&e| !defined[e]) {
            gens.push(next);
            defined[next] = true;
            steps.push((next, Deriv::Gen));
            close(m, &mut defined, &mut steps);
            wave_bounds.push(steps.len());
        }
        SpanBasis {
            gens,
            steps,
            wave_bounds,
        }
    }
}

fn close(m: &FiniteSemimodule, defined: &mut [bool], steps: &mut Vec<(Elem, Deriv)>) {
    let mut frontier = 0;
    while frontier < steps.len() {
        let (a, _) = steps[frontier];
        for i in 0..=frontier {
            let b = steps[i].0;
            let s = m.add(a, b);
            if !defined[s] {
                defined[s] = true;
                steps.push((s, Deriv::Add(a, b)));
            }
        }
        for sc in 0..m.scalar_rows() {
            let v = m.act(sc, a);
            if !defined[v] {
                defined[v] = true;
                steps.push((v, Deriv::Act(sc, a)));
            }
        }
        frontier += 1;
    }
}

/// Depth-first walk over candidate maps `dom -> cod`, in lexicographic
/// order of generator images. Each complete candidate is linear by
/// construction of the incremental checks. The callback may return
/// `Some(t)` to stop the walk early.
pub(crate) fn search_maps<T>(
    dom: &FiniteSemimodule,
    cod: &FiniteSemimodule,
    basis: &SpanBasis,
    injective_only: bool,
    on_leaf: &mut dyn FnMut(&[Elem]) -> Option<T>,
) -> Option<T> {
    let mut img = alloc::vec![0; dom.size()];
    let mut used = alloc::vec![false; cod.size()];
    rec(dom, cod, basis, injective_only, 0, &mut img, &mut used, on_leaf)
}

#[allow(clippy::too_many_arguments)]
fn rec<T>(
    dom: &FiniteSemimodule,
    cod: &FiniteSemimodule,
    basis: &SpanBasis,
    injective_only: bool,
    depth: usize,
    img: &mut Vec<Elem>,
    used: &mut Vec<bool>,
    on_leaf: &mut dyn FnMut(&[Elem]) -> Option<T>,
) -> Option<T> {
    if depth == basis.gens.len() {
        return on_leaf(img);
    }
    let lo = if depth == 0 { 1 } else { basis.wave_bounds[depth - 1] };
    let hi = basis.wave_bounds[depth];
    'candidate: for c in 0..cod.size() {
        // Extend the candidate through this wave of the span.
        for idx in lo..hi {
            let (e, deriv) = basis.steps[idx];
            img[e] = match deriv {
                Deriv::Zero => 0,
                Deriv::Gen => c,
                Deriv::Add(a, b) => cod.add(img[a], img[b]),
                Deriv::Act(s, a) => cod.act(s, img[a]),
            };
        }
        // Every pair inside the span must agree with addition, and every
        // scalar row with the action; the span is closed, so both sides
        // are always defined.
        for idx in lo..hi {
            let e = basis.steps[idx].0;
            for jdx in 0..hi {
                let x = basis.steps[jdx].0;
                if img[dom.add(e, x)] != cod.add(img[e], img[x]) {
                    continue 'candidate;
                }
            }
            for sc in 0..dom.scalar_rows() {
                if img[dom.act(sc, e)] != cod.act(sc, img[e]) {
                    continue 'candidate;
                }
            }
        }
        if injective_only {
            used.iter_mut().for_each(|u| *u = false);
            for idx in 0..hi {
                let e = basis.steps[idx].0;
                if core::mem::replace(&mut used[img[e]], true) {
                    continue 'candidate;
                }
            }
        }
        if let Some(t) = rec(dom, cod, basis, injective_only, depth + 1, img, used, on_leaf) {
            return Some(t);
        }
    }
    None
}

/// The complete hom-set between two semimodules, maps sorted
/// lexicographically (so the zero map is index 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSet {
    dom: Arc<FiniteSemimodule>,
    cod: Arc<FiniteSemimodule>,
    maps: Vec<Vec<Elem>>,
}

/// Enumerates every linear map `dom -> cod`.
pub fn enumerate_hom(
    dom: &Arc<FiniteSemimodule>,
    cod: &Arc<FiniteSemimodule>,
    budget: &Budget,
) -> Result<HomSet> {
    if !dom.same_scalars(cod) {
        return Err(crate::error::AlgebraError::ScalarMismatch(
            dom.scalars().describe(),
            cod.scalars().describe(),
        ));
    }
    let basis = SpanBasis::of(dom);
    budget.check_hom_candidates(
        (cod.size() as u64)
            .checked_pow(basis.gens.len() as u32)
            .unwrap_or(u64::MAX),
    )?;
    let mut maps: Vec<Vec<Elem>> = Vec::new();
    search_maps::<()>(dom, cod, &basis, false, &mut |map| {
        maps.push(map.to_vec());
        None
    });
    maps.sort_unstable();
    debug_assert!(!maps.is_empty(), "the zero map is always linear");
    Ok(HomSet {
        dom: Arc::clone(dom),
        cod: Arc::clone(cod),
        maps,
    })
}

impl HomSet {
    pub fn dom(&self) -> &Arc<FiniteSemimodule> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteSemimodule> {
        &self.cod
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[Vec<Elem>] {
        &self.maps
    }

    pub fn get(&self, i: usize) -> LinearMap {
        LinearMap::unchecked(&self.dom, &self.cod, self.maps[i].clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = LinearMap> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    pub fn index_of(&self, map: &[Elem]) -> Option<usize> {
        self.maps.binary_search_by(|m| m.as_slice().cmp(map)).ok()
    }

    /// Index of the pointwise sum of two members; total because hom-sets
    /// are closed under pointwise addition.
    pub fn add_index(&self, i: usize, j: usize) -> usize {
        let sum: Vec<Elem> = (0..self.dom.size())
            .map(|a| self.cod.add(self.maps[i][a], self.maps[j][a]))
            .collect();
        self.index_of(&sum)
            .expect("hom-set is closed under pointwise addition")
    }

    /// The hom-set as a commutative monoid under pointwise addition; always
    /// a naturals-mode module, whatever the scalars of the endpoints.
    pub fn monoid(&self) -> Arc<FiniteSemimodule> {
        let n = self.len();
        let add = BinOp::from_fn(n, |i, j| self.add_index(i, j));
        FiniteSemimodule::from_tables_unchecked(
            format!("Hom({},{})", self.dom.name(), self.cod.name()),
            ScalarDomain::Naturals,
            add,
            None,
        )
    }
}

/// The map `Hom(P,M) -> Hom(P,N)` given by post-composition with
/// `f : M -> N`, realized on the hom monoids.
#[derive(Clone, Debug)]
pub struct InducedHom {
    pub source: HomSet,
    pub target: HomSet,
    pub source_monoid: Arc<FiniteSemimodule>,
    pub target_monoid: Arc<FiniteSemimodule>,
    /// The index map between the monoids; additive by linearity of
    /// post-composition.
    pub map: LinearMap,
}

pub fn induced_hom_map(
    p: &Arc<FiniteSemimodule>,
    f: &LinearMap,
    budget: &Budget,
) -> Result<InducedHom> {
    let source = enumerate_hom(p, f.dom(), budget)?;
    let target = enumerate_hom(p, f.cod(), budget)?;
    let source_monoid = source.monoid();
    let target_monoid = target.monoid();
    let idx_map: Vec<Elem> = source
        .maps()
        .iter()
        .map(|h| {
            let composed: Vec<Elem> = h.iter().map(|&v| f.apply(v)).collect();
            target
                .index_of(&composed)
                .expect("post-composition stays in the hom-set")
        })
        .collect();
    let map = LinearMap::unchecked(&source_monoid, &target_monoid, idx_map);
    Ok(InducedHom {
        source,
        target,
        source_monoid,
        target_monoid,
        map,
    })
}

/// The endomorphisms of `m` as a semiring: pointwise addition, composition
/// as multiplication, the identity map as one. Fails the validator's
/// `zero-ne-one` axiom when `m` is the zero module.
pub fn endomorphism_semiring(
    m: &Arc<FiniteSemimodule>,
    budget: &Budget,
) -> Result<Arc<FiniteSemiring>> {
    let end = enumerate_hom(m, m, budget)?;
    let n = end.len();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            add.push(end.add_index(i, j));
            let composed: Vec<Elem> = end.maps()[j].iter().map(|&v| end.maps()[i][v]).collect();
            mul.push(end.index_of(&composed).expect("composition of endos is an endo"));
        }
    }
    let identity: Vec<Elem> = (0..m.size()).collect();
    let one = end.index_of(&identity).expect("identity is an endo");
    validate_semiring(&format!("End({})", m.name()), n, add, mul, 0, one)
}

/// Memoizing cache for hom-sets keyed by structural fingerprints; shared by
/// the universal-property sweeps, which revisit the same pairs constantly.
#[derive(Default)]
pub struct HomCache {
    map: BTreeMap<(Vec<usize>, Vec<usize>), Arc<HomSet>>,
}

impl HomCache {
    pub fn new() -> Self {
        HomCache::default()
    }

    pub fn homs(
        &mut self,
        dom: &Arc<FiniteSemimodule>,
        cod: &Arc<FiniteSemimodule>,
        budget: &Budget,
    ) -> Result<Arc<HomSet>> {
        let key = (dom.fingerprint(), cod.fingerprint());
        if let Some(hit) = self.map.get(&key) {
            return Ok(Arc::clone(hit));
        }
        let homs = Arc::new(enumerate_hom(dom, cod, budget)?);
        self.map.insert(key, Arc::clone(&homs));
        Ok(homs)
    }
}
