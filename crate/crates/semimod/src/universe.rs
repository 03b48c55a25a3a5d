//! Instance universes and a seeded generator of small test instances.
//!
//! The catalogs are deterministic lists of small modules; the generator
//! derives further instances by quotienting and cutting out subsemimodules,
//! which keeps every drawn instance valid by construction.

use alloc::sync::Arc;
use alloc::vec::Vec;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::builtin::{
    boolean_semiring, cyclic_monoid, direct_sum_module, free_module, module_over_self, zero_module,
};
use crate::category::Span;
use crate::hom::enumerate_hom;
use crate::morphism::LinearMap;
use crate::semimodule::{FiniteSemimodule, ScalarDomain};
use crate::subquot::{
    enumerate_subsemimodules, generated_congruence, generated_subsemimodule,
    quotient_by_congruence, quotient_by_subsemimodule, Subsemimodule,
};
use crate::table::Action;

/// Every cyclic monoid of size up to `max_size`, the zero module, and the
/// direct sums of two non-trivial cyclics that still fit. Naturals mode.
pub fn naturals_catalog(max_size: usize) -> Vec<Arc<FiniteSemimodule>> {
    let mut out = alloc::vec![zero_module()];
    let mut cyclics = Vec::new();
    for size in 2..=max_size {
        for k in 0..size {
            let c = cyclic_monoid(k, size - k).expect("period >= 1");
            cyclics.push(Arc::clone(&c));
            out.push(c);
        }
    }
    for i in 0..cyclics.len() {
        for j in i..cyclics.len() {
            if cyclics[i].size() * cyclics[j].size() <= max_size {
                out.push(direct_sum_module(&cyclics[i], &cyclics[j]));
            }
        }
    }
    out
}

/// Semimodules over the Boolean semiring up to `max_size`: the zero module
/// and the free modules of rank 1 and 2.
pub fn boolean_catalog(max_size: usize) -> Vec<Arc<FiniteSemimodule>> {
    let b = boolean_semiring();
    let zero = crate::semimodule::FiniteSemimodule::from_tables_unchecked(
        alloc::string::String::from("Zero"),
        ScalarDomain::Semiring(Arc::clone(&b)),
        crate::table::BinOp::from_fn(1, |_, _| 0),
        Some(Action::from_fn(b.size(), 1, |_, _| 0)),
    );
    let mut out = alloc::vec![zero];
    if max_size >= 2 {
        out.push(module_over_self(&b));
    }
    if max_size >= 4 {
        out.push(free_module(&b, 2));
    }
    out
}

/// Seeded generator of small naturals-mode instances: catalog members plus
/// random quotients and subsemimodules of random direct sums.
pub struct InstanceGen {
    rng: ChaCha8Rng,
    pool: Vec<Arc<FiniteSemimodule>>,
    budget: Budget,
}

impl InstanceGen {
    pub fn new(seed: u64, size_cap: usize) -> Self {
        InstanceGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: naturals_catalog(size_cap.max(2)),
            budget: Budget::default(),
        }
    }

    pub fn pool(&self) -> &[Arc<FiniteSemimodule>] {
        &self.pool
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.rng.next_u64() % n.max(1) as u64) as usize
    }

    fn pool_member(&mut self) -> Arc<FiniteSemimodule> {
        let i = self.below(self.pool.len());
        Arc::clone(&self.pool[i])
    }

    /// A random small module: a catalog member, a quotient of one, or a
    /// subsemimodule of one.
    pub fn module(&mut self) -> Arc<FiniteSemimodule> {
        let base = self.pool_member();
        match self.below(4) {
            0 | 1 => base,
            2 => {
                let a = self.below(base.size());
                let b = self.below(base.size());
                let rho = generated_congruence(&base, &[(a, b)]);
                quotient_by_congruence(&base, &rho).module
            }
            _ => {
                let seed = [self.below(base.size())];
                let sub = generated_subsemimodule(&base, &seed);
                sub.to_module().0
            }
        }
    }

    /// A uniformly chosen member of the hom-set.
    pub fn map_between(
        &mut self,
        dom: &Arc<FiniteSemimodule>,
        cod: &Arc<FiniteSemimodule>,
    ) -> LinearMap {
        let homs = enumerate_hom(dom, cod, &self.budget).expect("generator instances are small");
        let i = self.below(homs.len());
        homs.get(i)
    }

    pub fn span(&mut self) -> Span {
        let l = self.module();
        let m = self.module();
        let n = self.module();
        let f = self.map_between(&l, &m);
        let g = self.map_between(&l, &n);
        Span::new(f, g).expect("legs share the domain")
    }

    /// A composable pair `(f : L -> M, g : M -> N)`.
    pub fn composable_pair(&mut self) -> (LinearMap, LinearMap) {
        let l = self.module();
        let m = self.module();
        let n = self.module();
        let f = self.map_between(&l, &m);
        let g = self.map_between(&m, &n);
        (f, g)
    }

    /// A random subsemimodule of a random module.
    pub fn module_with_sub(&mut self) -> (Arc<FiniteSemimodule>, Subsemimodule) {
        let m = self.module();
        let subs = enumerate_subsemimodules(&m, &self.budget).expect("small carrier");
        let i = self.below(subs.len());
        (Arc::clone(&m), subs[i].clone())
    }

    /// A canonical short exact sequence: the inclusion of a random
    /// subtractive subsemimodule and the projection onto its quotient.
    pub fn canonical_ses(&mut self) -> (LinearMap, LinearMap) {
        loop {
            let (m, sub) = self.module_with_sub();
            if !sub.is_subtractive() {
                continue;
            }
            let (_, incl) = sub.to_module();
            let q = quotient_by_subsemimodule(&m, &sub);
            return (incl, q.projection);
        }
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        assert_eq!(naturals_catalog(4).len(), 13);
        assert_eq!(boolean_catalog(4).len(), 3);
        assert!(naturals_catalog(4).iter().all(|m| m.size() <= 4));
    }

    #[test]
    fn generator_is_deterministic() {
        let mut a = InstanceGen::new(7, 4);
        let mut b = InstanceGen::new(7, 4);
        for _ in 0..20 {
            let (fa, ga) = a.composable_pair();
            let (fb, gb) = b.composable_pair();
            assert_eq!(fa.map(), fb.map());
            assert_eq!(ga.map(), gb.map());
        }
    }

    #[test]
    fn generated_instances_are_small_and_valid() {
        let mut g = InstanceGen::new(3, 4);
        for _ in 0..50 {
            let m = g.module();
            assert!(m.size() <= 4);
        }
    }
}
