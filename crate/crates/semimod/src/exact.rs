//! Sequence classification under the four exactness notions.
//!
//! At a position `L -f-> M -g-> N` a sequence is
//!
//! - a *chain* when `g . f = 0`,
//! - *proper-exact* when `f(L) = Ker(g)`,
//! - *semi-exact* when the subtractive closure of `f(L)` equals `Ker(g)`,
//! - *quasi-exact* when it is semi-exact and `g` is k-normal,
//! - *exact* when it is proper-exact and `g` is k-normal.
//!
//! So exact implies both proper-exact and quasi-exact, and each of those
//! implies semi-exact. Zero objects at the ends are implicit: the leading
//! position of `0 -> L -> M` is exact iff the first map is injective, the
//! trailing position of `M -> N -> 0` iff the last map is surjective.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::hom::enumerate_hom;
use crate::morphism::{classify_normality, compose, kernel_image, LinearMap, NormalityReport};
use crate::semimodule::FiniteSemimodule;
use crate::subquot::{quotient_by_subsemimodule, subtractive_closure};
use crate::Elem;

/// An ordered list of composable maps; zero objects at both ends are
/// implicit.
#[derive(Clone, Debug)]
pub struct SequenceSpec {
    maps: Vec<LinearMap>,
}

impl SequenceSpec {
    pub fn new(maps: Vec<LinearMap>) -> Result<Self> {
        if maps.is_empty() {
            return Err(AlgebraError::mismatch("a sequence needs at least one map"));
        }
        for w in maps.windows(2) {
            if w[0].cod() != w[1].dom() {
                return Err(AlgebraError::mismatch(format!(
                    "sequence break: cod({}) != dom({})",
                    w[0].cod().name(),
                    w[1].dom().name()
                )));
            }
        }
        Ok(SequenceSpec { maps })
    }

    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }

    /// The objects `M_0, .., M_k` along the sequence.
    pub fn objects(&self) -> Vec<Arc<FiniteSemimodule>> {
        let mut out = alloc::vec![Arc::clone(self.maps[0].dom())];
        out.extend(self.maps.iter().map(|f| Arc::clone(f.cod())));
        out
    }
}

/// Verdicts at one position, with least witnesses for failures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionReport {
    pub index: usize,
    pub object: String,
    pub chain: bool,
    pub proper_exact: bool,
    pub semi_exact: bool,
    pub quasi_exact: bool,
    pub exact: bool,
    /// Element of the incoming image outside the outgoing kernel.
    pub chain_witness: Option<Elem>,
    /// Element separating the incoming image from the outgoing kernel.
    pub proper_witness: Option<Elem>,
    /// Element separating the closure of the image from the kernel.
    pub semi_witness: Option<Elem>,
    /// Pair witnessing that the outgoing map is not k-normal.
    pub k_normal_witness: Option<(Elem, Elem)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub positions: Vec<PositionReport>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.positions.iter().all(|p| p.exact)
    }

    pub fn all_proper_exact(&self) -> bool {
        self.positions.iter().all(|p| p.proper_exact)
    }

    pub fn all_semi_exact(&self) -> bool {
        self.positions.iter().all(|p| p.semi_exact)
    }

    pub fn all_quasi_exact(&self) -> bool {
        self.positions.iter().all(|p| p.quasi_exact)
    }

    pub fn is_chain(&self) -> bool {
        self.positions.iter().all(|p| p.chain)
    }
}

fn sorted_diff_witness(a: &[Elem], b: &[Elem]) -> Option<Elem> {
    // Least element in exactly one of two sorted sets.
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            core::cmp::Ordering::Less => return Some(a[i]),
            core::cmp::Ordering::Greater => return Some(b[j]),
        }
    }
    a.get(i).or_else(|| b.get(j)).copied()
}

/// Classifies every position of the sequence, including the implicit
/// boundary positions.
pub fn classify_exactness(seq: &SequenceSpec) -> ExactnessReport {
    let objects = seq.objects();
    let k = seq.maps.len();
    let mut positions = Vec::with_capacity(k + 1);
    for (i, object) in objects.iter().enumerate() {
        // Incoming image: {0} at the left boundary.
        let image: Vec<Elem> = if i == 0 {
            alloc::vec![0]
        } else {
            seq.maps[i - 1].image_elems()
        };
        // Outgoing kernel and k-normality: the collapse map at the right
        // boundary has full kernel and is k-normal.
        let (kernel, k_normal, k_normal_witness): (Vec<Elem>, bool, Option<(Elem, Elem)>) =
            if i == k {
                ((0..object.size()).collect(), true, None)
            } else {
                let g = &seq.maps[i];
                let report = classify_normality(g);
                (g.kernel_elems(), report.k_normal, report.k_witness)
            };
        let closure = subtractive_closure(object, &image).closure;

        let chain_witness = image
            .iter()
            .find(|e| kernel.binary_search(e).is_err())
            .copied();
        let proper_witness = sorted_diff_witness(&image, &kernel);
        let semi_witness = sorted_diff_witness(&closure, &kernel);
        let proper = proper_witness.is_none();
        let semi = semi_witness.is_none();
        positions.push(PositionReport {
            index: i,
            object: String::from(object.name()),
            chain: chain_witness.is_none(),
            proper_exact: proper,
            semi_exact: semi,
            quasi_exact: semi && k_normal,
            exact: proper && k_normal,
            chain_witness,
            proper_witness,
            semi_witness,
            k_normal_witness: if k_normal { None } else { k_normal_witness },
        });
    }
    ExactnessReport { positions }
}

/// Report for a two-map candidate short exact sequence
/// `0 -> L -f-> M -g-> N -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortExactReport {
    pub holds: bool,
    pub f_injective: bool,
    pub image_equals_kernel: bool,
    pub g_surjective: bool,
    pub g_k_normal: bool,
    /// Cross-check: the left object is isomorphic to `Ker(g)`.
    pub left_iso_kernel: bool,
    /// Cross-check: the right object is isomorphic to `M / f(L)`.
    pub right_iso_quotient: bool,
}

/// Determines whether `(f, g)` forms a short exact sequence, with the
/// isomorphism cross-checks `L ~ Ker(g)` and `N ~ M/f(L)`.
pub fn is_short_exact(f: &LinearMap, g: &LinearMap, budget: &Budget) -> Result<ShortExactReport> {
    if f.cod() != g.dom() {
        return Err(AlgebraError::mismatch("maps do not compose"));
    }
    let f_injective = f.is_injective();
    let image = f.image_elems();
    let kernel = g.kernel_elems();
    let image_equals_kernel = image == kernel;
    let g_report = classify_normality(g);
    let holds = f_injective && image_equals_kernel && g_report.surjective && g_report.k_normal;

    let (ker_mod, _) = kernel_image(g).0.to_module();
    let left_iso_kernel =
        crate::morphism::are_isomorphic(f.dom(), &ker_mod, budget)?.is_some();
    let im_sub = kernel_image(f).1;
    let q = quotient_by_subsemimodule(f.cod(), &im_sub);
    let right_iso_quotient =
        crate::morphism::are_isomorphic(g.cod(), &q.module, budget)?.is_some();
    if holds {
        debug_assert!(left_iso_kernel && right_iso_quotient);
    }
    Ok(ShortExactReport {
        holds,
        f_injective,
        image_equals_kernel,
        g_surjective: g_report.surjective,
        g_k_normal: g_report.k_normal,
        left_iso_kernel,
        right_iso_quotient,
    })
}

/// Splitting maps for a short exact sequence `0 -> A -f-> B -g-> C -> 0`.
#[derive(Clone, Debug)]
pub struct Splittings {
    /// `f' : B -> A` with `f' . f = id`, if any.
    pub left: Option<LinearMap>,
    /// `g' : C -> B` with `g . g' = id`, if any.
    pub right: Option<LinearMap>,
}

/// Exhaustively searches both hom-sets for splitting maps; returns the
/// lexicographically least witnesses.
pub fn find_splittings(f: &LinearMap, g: &LinearMap, budget: &Budget) -> Result<Splittings> {
    if f.cod() != g.dom() {
        return Err(AlgebraError::mismatch("maps do not compose"));
    }
    let id_a = LinearMap::identity(f.dom());
    let id_c = LinearMap::identity(g.cod());
    let left = enumerate_hom(f.cod(), f.dom(), budget)?
        .iter()
        .find(|h| compose(h, f).map(|c| c == id_a).unwrap_or(false));
    let right = enumerate_hom(g.cod(), g.dom(), budget)?
        .iter()
        .find(|h| compose(g, h).map(|c| c == id_c).unwrap_or(false));
    Ok(Splittings { left, right })
}

/// The kernel-cokernel sequence of a map, with its classification and the
/// normality report of the map itself.
#[derive(Clone, Debug)]
pub struct KerCokerSequence {
    /// `0 -> Ker -> X -gamma-> Y -> Coker -> 0` as three maps.
    pub seq: SequenceSpec,
    pub report: ExactnessReport,
    pub gamma_normality: NormalityReport,
    pub kernel: Arc<FiniteSemimodule>,
    pub cokernel: Arc<FiniteSemimodule>,
}

/// Builds `0 -> Ker(gamma) -> X -> Y -> Y/gamma(X) -> 0`. The sequence is
/// always semi-exact, and exact exactly when `gamma` is normal.
pub fn ker_coker_sequence(gamma: &LinearMap) -> KerCokerSequence {
    let (ker_sub, im_sub) = kernel_image(gamma);
    let (ker_mod, ker_incl) = ker_sub.to_module();
    let coker = quotient_by_subsemimodule(gamma.cod(), &im_sub);
    let seq = SequenceSpec::new(alloc::vec![
        ker_incl,
        gamma.clone(),
        coker.projection.clone()
    ])
    .expect("kernel-cokernel endpoints line up");
    let report = classify_exactness(&seq);
    debug_assert!(report.all_semi_exact());
    KerCokerSequence {
        seq,
        report,
        gamma_normality: classify_normality(gamma),
        kernel: ker_mod,
        cokernel: coker.module,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::morphism::are_isomorphic;
    use crate::subquot::Subsemimodule;

    fn b31() -> Arc<FiniteSemimodule> {
        builtin::builtin_module("B31").unwrap()
    }

    fn z2() -> Arc<FiniteSemimodule> {
        builtin::builtin_module("Z2").unwrap()
    }

    fn b31_ses() -> (LinearMap, LinearMap) {
        let m = b31();
        let sub = Subsemimodule::new(&m, &[0, 2]).unwrap();
        let (_, incl) = sub.to_module();
        let q = quotient_by_subsemimodule(&m, &sub);
        (incl, q.projection)
    }

    #[test]
    fn b31_sequence_is_exact_everywhere() {
        let (incl, proj) = b31_ses();
        let seq = SequenceSpec::new(alloc::vec![incl, proj]).unwrap();
        let report = classify_exactness(&seq);
        assert_eq!(report.positions.len(), 3);
        assert!(report.all_exact(), "{report:?}");
    }

    #[test]
    fn collapsing_boolean_square_is_proper_but_not_exact() {
        // Quotient B(+)B by the congruence generated by (1,0) ~ (0,1): the
        // projection has trivial kernel but is not k-normal.
        let b = builtin::builtin_module("C(1,1)").unwrap();
        let bb = crate::category::direct_sum(&b, &b).unwrap();
        let rho = crate::subquot::generated_congruence(&bb.module, &[(2, 1)]);
        let q = crate::subquot::quotient_by_congruence(&bb.module, &rho);
        let zero = builtin::zero_module();
        let z_map = LinearMap::zero(&zero, &bb.module).unwrap();
        let seq = SequenceSpec::new(alloc::vec![z_map, q.projection]).unwrap();
        let report = classify_exactness(&seq);
        let middle = &report.positions[1];
        assert!(middle.proper_exact && !middle.exact);
        assert_eq!(middle.k_normal_witness, Some((1, 2)));
    }

    #[test]
    fn identity_sequence_is_exact() {
        let m = b31();
        let seq = SequenceSpec::new(alloc::vec![LinearMap::identity(&m)]).unwrap();
        assert!(classify_exactness(&seq).all_exact());
    }

    #[test]
    fn short_exactness_of_the_b31_sequence() {
        let (incl, proj) = b31_ses();
        let report = is_short_exact(&incl, &proj, &Budget::default()).unwrap();
        assert!(report.holds);
        assert!(report.left_iso_kernel && report.right_iso_quotient);
    }

    #[test]
    fn degenerate_short_exact_sequences() {
        let m = b31();
        let zero = builtin::zero_module();
        // 0 -> M -id-> M -> 0 -> 0: holds.
        let collapse = LinearMap::zero(&m, &zero).unwrap();
        let report =
            is_short_exact(&LinearMap::identity(&m), &collapse, &Budget::default()).unwrap();
        assert!(report.holds);
        // 0 -> 0 -> M -id-> M -> 0: holds.
        let from_zero = LinearMap::zero(&zero, &m).unwrap();
        let report =
            is_short_exact(&from_zero, &LinearMap::identity(&m), &Budget::default()).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn b31_sequence_splits_left_but_not_right() {
        let (incl, proj) = b31_ses();
        let s = find_splittings(&incl, &proj, &Budget::default()).unwrap();
        let left = s.left.expect("left splitting exists");
        assert_eq!(left.map(), &[0, 1, 1]);
        assert!(s.right.is_none());
    }

    #[test]
    fn canonical_sum_sequence_splits_both_ways() {
        let m = z2();
        let b = builtin::builtin_module("C(1,1)").unwrap();
        let s = crate::category::direct_sum(&m, &b).unwrap();
        let spl = find_splittings(&s.inj_left, &s.proj_right, &Budget::default()).unwrap();
        assert!(spl.left.is_some() && spl.right.is_some());
    }

    #[test]
    fn identity_sequence_splittings_are_degenerate() {
        let m = b31();
        let zero = builtin::zero_module();
        let collapse = LinearMap::zero(&m, &zero).unwrap();
        let s = find_splittings(&LinearMap::identity(&m), &collapse, &Budget::default()).unwrap();
        assert_eq!(s.left.unwrap(), LinearMap::identity(&m));
        assert!(s.right.unwrap().is_zero_map());
    }

    #[test]
    fn ker_coker_of_the_projection_is_exact() {
        let (_, proj) = b31_ses();
        let kc = ker_coker_sequence(&proj);
        assert!(kc.report.all_exact());
        assert!(kc.gamma_normality.normal);
        assert!(kc.cokernel.is_zero_module());
        assert_eq!(kc.kernel.size(), 2);
    }

    #[test]
    fn ker_coker_of_identity() {
        let m = b31();
        let kc = ker_coker_sequence(&LinearMap::identity(&m));
        assert!(kc.report.all_exact());
        assert!(kc.kernel.is_zero_module() && kc.cokernel.is_zero_module());
    }

    #[test]
    fn ker_coker_of_the_inclusion() {
        let (incl, _) = b31_ses();
        let kc = ker_coker_sequence(&incl);
        // {0,2} is subtractive, so the inclusion is normal and the sequence
        // is exact; the cokernel is the quotient.
        assert!(kc.gamma_normality.normal);
        assert!(kc.report.all_exact());
        assert!(
            are_isomorphic(&kc.cokernel, &z2(), &Budget::default())
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn non_normal_map_gives_semi_but_not_exact() {
        // B -> C(2,1), 1 -> 2: the image {0,2} is not subtractive in
        // C(2,1) (1 + 2 = 2 pulls 1 into the closure), so the map is not
        // i-normal and its kernel-cokernel sequence is semi-exact only.
        let b = builtin::builtin_module("C(1,1)").unwrap();
        let c21 = builtin::builtin_module("C(2,1)").unwrap();
        let g = LinearMap::new(&b, &c21, alloc::vec![0, 2]).unwrap();
        let kc = ker_coker_sequence(&g);
        assert!(kc.report.all_semi_exact());
        assert!(!kc.gamma_normality.i_normal);
        assert!(!kc.report.all_exact());
    }
}
