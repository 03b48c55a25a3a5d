//! Linear maps between finite semimodules.
//!
//! A map is a total function on carrier indices preserving `0`, `+`, and the
//! scalar action; in naturals mode that is exactly a monoid homomorphism.
//! Classification distinguishes the two normality notions that split apart
//! for semimodules:
//!
//! - *k-normal*: whenever `f(a) = f(b)` there are `k, k'` in the kernel with
//!   `a + k = b + k'` (the kernel determines the fibers up to translation),
//! - *i-normal*: the image equals its subtractive closure in the codomain.
//!
//! Surjective maps are i-normal and injective maps are k-normal; a map that
//! is both k- and i-normal is called normal.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result, Violation};
use crate::hom::{self, SpanBasis};
use crate::semimodule::FiniteSemimodule;
use crate::subquot::{self, Subsemimodule};
use crate::Elem;

/// A validated linear map.
#[derive(Clone)]
pub struct LinearMap {
    dom: Arc<FiniteSemimodule>,
    cod: Arc<FiniteSemimodule>,
    map: Vec<Elem>,
}

impl core::fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "{:?} : {} -> {}",
            self.map,
            self.dom.name(),
            self.cod.name()
        )
    }
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.map == other.map
    }
}
impl Eq for LinearMap {}

impl LinearMap {
    /// Validates an index array as a linear map. Returns the map or the
    /// list of violated linearity equations, one least witness per axiom.
    pub fn new(
        dom: &Arc<FiniteSemimodule>,
        cod: &Arc<FiniteSemimodule>,
        map: Vec<Elem>,
    ) -> Result<Self> {
        if !dom.same_scalars(cod) {
            return Err(AlgebraError::ScalarMismatch(
                dom.scalars().describe(),
                cod.scalars().describe(),
            ));
        }
        if map.len() != dom.size() {
            return Err(AlgebraError::structure(format!(
                "map has {} entries, expected {}",
                map.len(),
                dom.size()
            )));
        }
        if let Some(pos) = map.iter().position(|&e| e >= cod.size()) {
            return Err(AlgebraError::structure(format!(
                "map entry {} at index {} is out of range 0..{}",
                map[pos],
                pos,
                cod.size()
            )));
        }

        let mut violations = Vec::new();
        if map[0] != 0 {
            violations.push(Violation::new("preserves-zero", &[0]));
        }
        'add: for a in 0..dom.size() {
            for b in a..dom.size() {
                if map[dom.add(a, b)] != cod.add(map[a], map[b]) {
                    violations.push(Violation::new("additivity", &[a, b]));
                    break 'add;
                }
            }
        }
        'act: for s in 0..dom.scalar_rows() {
            for a in 0..dom.size() {
                if map[dom.act(s, a)] != cod.act(s, map[a]) {
                    violations.push(Violation::new("scalar-action", &[s, a]));
                    break 'act;
                }
            }
        }
        if violations.is_empty() {
            Ok(LinearMap {
                dom: Arc::clone(dom),
                cod: Arc::clone(cod),
                map,
            })
        } else {
            Err(AlgebraError::Violations(violations))
        }
    }

    /// Constructs without validating; for internal use where linearity
    /// holds by construction.
    pub(crate) fn unchecked(
        dom: &Arc<FiniteSemimodule>,
        cod: &Arc<FiniteSemimodule>,
        map: Vec<Elem>,
    ) -> Self {
        debug_assert!(LinearMap::new(dom, cod, map.clone()).is_ok());
        LinearMap {
            dom: Arc::clone(dom),
            cod: Arc::clone(cod),
            map,
        }
    }

    pub fn identity(m: &Arc<FiniteSemimodule>) -> Self {
        LinearMap {
            dom: Arc::clone(m),
            cod: Arc::clone(m),
            map: (0..m.size()).collect(),
        }
    }

    pub fn zero(dom: &Arc<FiniteSemimodule>, cod: &Arc<FiniteSemimodule>) -> Result<Self> {
        if !dom.same_scalars(cod) {
            return Err(AlgebraError::ScalarMismatch(
                dom.scalars().describe(),
                cod.scalars().describe(),
            ));
        }
        Ok(LinearMap {
            dom: Arc::clone(dom),
            cod: Arc::clone(cod),
            map: alloc::vec![0; dom.size()],
        })
    }

    pub fn dom(&self) -> &Arc<FiniteSemimodule> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteSemimodule> {
        &self.cod
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e]
    }

    pub fn is_zero_map(&self) -> bool {
        self.map.iter().all(|&v| v == 0)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = alloc::vec![false; self.cod.size()];
        self.map.iter().all(|&v| !core::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = alloc::vec![false; self.cod.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Sorted image set.
    pub fn image_elems(&self) -> Vec<Elem> {
        let mut seen = alloc::vec![false; self.cod.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        (0..self.cod.size()).filter(|&v| seen[v]).collect()
    }

    /// Sorted preimage of zero.
    pub fn kernel_elems(&self) -> Vec<Elem> {
        (0..self.dom.size()).filter(|&a| self.map[a] == 0).collect()
    }

    /// Pointwise sum of two parallel maps; linear because addition is
    /// commutative.
    pub fn pointwise_add(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(AlgebraError::mismatch("pointwise sum needs parallel maps"));
        }
        let map = (0..self.dom.size())
            .map(|a| self.cod.add(self.map[a], other.map[a]))
            .collect();
        Ok(LinearMap {
            dom: Arc::clone(&self.dom),
            cod: Arc::clone(&self.cod),
            map,
        })
    }

    pub fn snapshot(&self) -> MapSnapshot {
        MapSnapshot {
            dom: String::from(self.dom.name()),
            cod: String::from(self.cod.name()),
            map: self.map.clone(),
        }
    }
}

/// `g` after `f`.
pub fn compose(g: &LinearMap, f: &LinearMap) -> Result<LinearMap> {
    if f.cod() != g.dom() {
        return Err(AlgebraError::mismatch(format!(
            "cannot compose: cod({}) != dom({})",
            f.cod.name(),
            g.dom.name()
        )));
    }
    let map = f.map.iter().map(|&v| g.map[v]).collect();
    Ok(LinearMap {
        dom: Arc::clone(&f.dom),
        cod: Arc::clone(&g.cod),
        map,
    })
}

/// Kernel and image of `f` as subsemimodules of its endpoints.
pub fn kernel_image(f: &LinearMap) -> (Subsemimodule, Subsemimodule) {
    let ker = Subsemimodule::from_elems_unchecked(f.dom(), f.kernel_elems());
    let im = Subsemimodule::from_elems_unchecked(f.cod(), f.image_elems());
    (ker, im)
}

/// Verdicts of the normality classification, with least witnesses for every
/// failing predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub injective: bool,
    pub surjective: bool,
    pub k_normal: bool,
    pub i_normal: bool,
    pub normal: bool,
    /// Least pair identified by a non-injective map.
    pub injective_witness: Option<(Elem, Elem)>,
    /// Least codomain element missed by a non-surjective map.
    pub surjective_witness: Option<Elem>,
    /// Least pair `(a, b)` with `f(a) = f(b)` that no kernel translation
    /// reconciles.
    pub k_witness: Option<(Elem, Elem)>,
    /// Least element of the subtractive closure of the image that is not in
    /// the image.
    pub i_witness: Option<Elem>,
}

pub fn classify_normality(f: &LinearMap) -> NormalityReport {
    let kernel = f.kernel_elems();
    let n = f.dom().size();

    let mut injective_witness = None;
    'inj: for a in 0..n {
        for b in (a + 1)..n {
            if f.apply(a) == f.apply(b) {
                injective_witness = Some((a, b));
                break 'inj;
            }
        }
    }
    let image = f.image_elems();
    let surjective_witness = (0..f.cod().size()).find(|e| image.binary_search(e).is_err());
    let injective = injective_witness.is_none();
    let surjective = surjective_witness.is_none();

    let mut k_witness = None;
    'outer: for a in 0..n {
        for b in (a + 1)..n {
            if f.apply(a) != f.apply(b) {
                continue;
            }
            let reconciled = kernel.iter().any(|&k| {
                let ak = f.dom().add(a, k);
                kernel.iter().any(|&k2| ak == f.dom().add(b, k2))
            });
            if !reconciled {
                k_witness = Some((a, b));
                break 'outer;
            }
        }
    }

    let closure = subquot::subtractive_closure(f.cod(), &image);
    let i_witness = closure
        .closure
        .iter()
        .find(|e| image.binary_search(e).is_err())
        .copied();

    let k_normal = k_witness.is_none();
    let i_normal = i_witness.is_none();
    NormalityReport {
        injective,
        surjective,
        k_normal,
        i_normal,
        normal: k_normal && i_normal,
        injective_witness,
        surjective_witness,
        k_witness,
        i_witness,
    }
}

/// Searches for an isomorphism between `m` and `n` (a bijective linear map;
/// the inverse of a linear bijection is automatically linear). Returns the
/// lexicographically least one by generator images, if any.
pub fn are_isomorphic(
    m: &Arc<FiniteSemimodule>,
    n: &Arc<FiniteSemimodule>,
    budget: &Budget,
) -> Result<Option<LinearMap>> {
    if !m.same_scalars(n) || m.size() != n.size() {
        return Ok(None);
    }
    let basis = SpanBasis::of(m);
    budget.check_hom_candidates(
        (n.size() as u64)
            .checked_pow(basis.gens.len() as u32)
            .unwrap_or(u64::MAX),
    )?;
    let found = hom::search_maps(m, n, &basis, true, &mut |map| {
        // Bijective because injective between equal finite sizes.
        Some(LinearMap::unchecked(m, n, map.to_vec()))
    });
    Ok(found)
}

/// Serializable snapshot of a map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapSnapshot {
    pub dom: String,
    pub cod: String,
    pub map: Vec<Elem>,
}
