//! Executable law suites.
//!
//! Each suite draws randomized instances from the seeded generator and
//! checks one family of facts about them, reporting the first failure with
//! a full reproduction bundle. A failing suite is a soundness bug somewhere
//! in the engine (or a genuinely false law), so the command-line runner
//! turns counterexamples into a nonzero exit code.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use serde::Serialize;

use crate::budget::Budget;
use crate::category::{
    c_pushout, cocone_catalog, direct_sum, is_direct_sum, pullback, pushout, retract_check,
    verify_pushout_universal,
};
use crate::error::{AlgebraError, Result};
use crate::exact::{classify_exactness, is_short_exact, ker_coker_sequence, SequenceSpec};
use crate::hom::{enumerate_hom, HomCache};
use crate::morphism::{are_isomorphic, classify_normality, compose, LinearMap, MapSnapshot};
use crate::projective::{relative_projectivity, Flavor};
use crate::semimodule::{FiniteSemimodule, ModuleSnapshot};
use crate::subquot::{
    enumerate_subsemimodules, is_ideal_simple, quotient_by_subsemimodule, subtractive_closure,
    Subsemimodule,
};
use crate::universe::InstanceGen;

/// The registry of suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "ideal-simple-surjective",
    "cancellative-closed",
    "hom-monoid-closed",
    "composition-associative",
    "composition-normality",
    "closure-idempotent",
    "generated-congruence-monotone",
    "exactness-equivalences",
    "exactness-implications",
    "quotient-exactness",
    "ses-normal-morphisms",
    "kernel-cokernel",
    "pushout-transfer",
    "cpushout-congruence",
    "pushout-refines-cpushout",
    "pushout-universal",
    "direct-sum-quotient",
    "hom-left-exact",
    "char-k-proj",
    "e-equals-normally",
    "flavor-monotonicity",
    "proj-implies-e",
    "retract-closure",
    "dsum-e-projective",
    "subtractive-summands",
    "ses-ends-e-projective",
];

/// A reproduction bundle for a failed check.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub description: String,
    pub modules: Vec<ModuleSnapshot>,
    pub maps: Vec<MapSnapshot>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub seed: u64,
    pub samples: u64,
    pub size_cap: usize,
    /// Total individual checks performed.
    pub checks: u64,
    /// Checks per sub-law, for suites that verify several statements.
    pub details: BTreeMap<String, u64>,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

struct Ctx {
    gen: InstanceGen,
    budget: Budget,
    checks: u64,
    details: BTreeMap<String, u64>,
    failure: Option<Counterexample>,
}

impl Ctx {
    fn tick(&mut self, key: &str) {
        self.checks += 1;
        *self.details.entry(String::from(key)).or_insert(0) += 1;
    }

    fn fail(&mut self, description: String, modules: &[&Arc<FiniteSemimodule>], maps: &[&LinearMap]) {
        if self.failure.is_none() {
            self.failure = Some(Counterexample {
                description,
                modules: modules.iter().map(|m| m.snapshot()).collect(),
                maps: maps.iter().map(|f| f.snapshot()).collect(),
            });
        }
    }

    fn done(&self) -> bool {
        self.failure.is_some()
    }
}

/// Runs a named suite over `samples` randomized draws with the given seed.
pub fn run_suite(
    name: &str,
    samples: u64,
    seed: u64,
    size_cap: usize,
    budget: &Budget,
) -> Result<SuiteOutcome> {
    if !SUITES.contains(&name) {
        return Err(AlgebraError::UnknownSuite(String::from(name)));
    }
    let mut ctx = Ctx {
        gen: InstanceGen::new(seed, size_cap),
        budget: *budget,
        checks: 0,
        details: BTreeMap::new(),
        failure: None,
    };
    let runner: fn(&mut Ctx, u64) -> Result<()> = match name {
        "ideal-simple-surjective" => ideal_simple_surjective,
        "cancellative-closed" => cancellative_closed,
        "hom-monoid-closed" => hom_monoid_closed,
        "composition-associative" => composition_associative,
        "composition-normality" => composition_normality,
        "closure-idempotent" => closure_idempotent,
        "generated-congruence-monotone" => generated_congruence_monotone,
        "exactness-equivalences" => exactness_equivalences,
        "exactness-implications" => exactness_implications,
        "quotient-exactness" => quotient_exactness,
        "ses-normal-morphisms" => ses_normal_morphisms,
        "kernel-cokernel" => kernel_cokernel,
        "pushout-transfer" => pushout_transfer,
        "cpushout-congruence" => cpushout_congruence,
        "pushout-refines-cpushout" => pushout_refines_cpushout,
        "pushout-universal" => pushout_universal,
        "direct-sum-quotient" => direct_sum_quotient,
        "hom-left-exact" => hom_left_exact,
        "char-k-proj" => char_k_proj,
        "e-equals-normally" => e_equals_normally,
        "flavor-monotonicity" => flavor_monotonicity,
        "proj-implies-e" => proj_implies_e,
        "retract-closure" => retract_closure,
        "dsum-e-projective" => dsum_e_projective,
        "subtractive-summands" => subtractive_summands,
        "ses-ends-e-projective" => ses_ends_e_projective,
        _ => unreachable!("registry checked above"),
    };
    runner(&mut ctx, samples)?;
    Ok(SuiteOutcome {
        suite: String::from(name),
        seed,
        samples,
        size_cap,
        checks: ctx.checks,
        details: ctx.details,
        pass: ctx.failure.is_none(),
        counterexample: ctx.failure,
    })
}

/// A module is ideal-simple iff every nonzero map into it (from the pool)
/// is surjective; a non-simple module admits a nonzero non-surjective map.
fn ideal_simple_surjective(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let m = ctx.gen.module();
        if m.size() < 2 {
            continue;
        }
        let (simple, witness) = is_ideal_simple(&m, &ctx.budget)?;
        if simple {
            for n in ctx.gen.pool().to_vec() {
                let homs = enumerate_hom(&n, &m, &ctx.budget)?;
                for h in homs.iter() {
                    ctx.tick("nonzero-into-simple-surjective");
                    if !h.is_zero_map() && !h.is_surjective() {
                        ctx.fail(
                            String::from("nonzero map into an ideal-simple module is not surjective"),
                            &[&n, &m],
                            &[&h],
                        );
                        return Ok(());
                    }
                }
            }
        } else {
            ctx.tick("non-simple-has-nonsurjective");
            let sub = witness.expect("witness accompanies a negative verdict");
            let (_, incl) = sub.to_module();
            if incl.is_zero_map() || incl.is_surjective() {
                ctx.fail(
                    String::from("witness inclusion is not a nonzero non-surjective map"),
                    &[&m],
                    &[&incl],
                );
            }
        }
    }
    Ok(())
}

/// The cancellative elements contain 0 and are closed under addition.
fn cancellative_closed(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let m = ctx.gen.module();
        let set = m.cancellative_elements().elements;
        ctx.tick("cancellative-closed");
        if set.binary_search(&0).is_err() {
            ctx.fail(String::from("0 is not cancellative"), &[&m], &[]);
            continue;
        }
        for &x in &set {
            for &y in &set {
                if set.binary_search(&m.add(x, y)).is_err() {
                    ctx.fail(
                        format!("cancellative elements not closed: {x} + {y}"),
                        &[&m],
                        &[],
                    );
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// Hom-sets contain the zero map and are closed under pointwise addition.
fn hom_monoid_closed(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let p = ctx.gen.module();
        let m = ctx.gen.module();
        let homs = enumerate_hom(&p, &m, &ctx.budget)?;
        ctx.tick("hom-monoid-closed");
        if !homs.get(0).is_zero_map() {
            ctx.fail(String::from("zero map is not at index 0"), &[&p, &m], &[]);
            continue;
        }
        for i in 0..homs.len() {
            for j in 0..homs.len() {
                // add_index panics if the sum is missing; surface it as a
                // failure instead.
                let sum: Vec<usize> = (0..p.size())
                    .map(|a| m.add(homs.maps()[i][a], homs.maps()[j][a]))
                    .collect();
                if homs.index_of(&sum).is_none() {
                    ctx.fail(
                        String::from("pointwise sum escaped the hom-set"),
                        &[&p, &m],
                        &[],
                    );
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn composition_associative(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let (f, g) = ctx.gen.composable_pair();
        let n = Arc::clone(g.cod());
        let o = ctx.gen.module();
        let h = ctx.gen.map_between(&n, &o);
        ctx.tick("composition-associative");
        let left = compose(&h, &compose(&g, &f)?)?;
        let right = compose(&compose(&h, &g)?, &f)?;
        if left != right {
            ctx.fail(String::from("composition is not associative"), &[], &[&f, &g, &h]);
        }
    }
    Ok(())
}

/// The six composition-normality statements, under their side conditions.
fn composition_normality(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let (f, g) = ctx.gen.composable_pair();
        let gf = compose(&g, &f)?;
        let rf = classify_normality(&f);
        let rg = classify_normality(&g);
        let rgf = classify_normality(&gf);
        if rg.injective {
            ctx.tick("inj-k-iff");
            if rf.k_normal != rgf.k_normal {
                ctx.fail(
                    String::from("with g injective: f k-normal iff g.f k-normal failed"),
                    &[],
                    &[&f, &g],
                );
            }
            ctx.tick("inj-i-forward");
            if rgf.i_normal && !rf.i_normal {
                ctx.fail(
                    String::from("with g injective: g.f i-normal must force f i-normal"),
                    &[],
                    &[&f, &g],
                );
            }
            if rg.i_normal {
                ctx.tick("inj-i-iff");
                if rf.i_normal != rgf.i_normal {
                    ctx.fail(
                        String::from("with g an i-normal injection: f i-normal iff g.f i-normal failed"),
                        &[],
                        &[&f, &g],
                    );
                }
            }
        }
        if rf.surjective {
            ctx.tick("surj-i-iff");
            if rg.i_normal != rgf.i_normal {
                ctx.fail(
                    String::from("with f surjective: g i-normal iff g.f i-normal failed"),
                    &[],
                    &[&f, &g],
                );
            }
            ctx.tick("surj-k-forward");
            if rgf.k_normal && !rg.k_normal {
                ctx.fail(
                    String::from("with f surjective: g.f k-normal must force g k-normal"),
                    &[],
                    &[&f, &g],
                );
            }
            if rf.k_normal {
                ctx.tick("surj-k-iff");
                if rg.k_normal != rgf.k_normal {
                    ctx.fail(
                        String::from("with f a k-normal surjection: g k-normal iff g.f k-normal failed"),
                        &[],
                        &[&f, &g],
                    );
                }
            }
        }
        // Unconditional remarks: surjective maps are i-normal, injective
        // maps are k-normal.
        ctx.tick("surjective-i-normal");
        if rf.surjective && !rf.i_normal {
            ctx.fail(String::from("a surjective map must be i-normal"), &[], &[&f]);
        }
        ctx.tick("injective-k-normal");
        if rf.injective && !rf.k_normal {
            ctx.fail(String::from("an injective map must be k-normal"), &[], &[&f]);
        }
    }
    Ok(())
}

/// Subtractive closure is extensive and idempotent on subsemimodules, and
/// closes subsemimodules into subsemimodules.
fn closure_idempotent(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let (m, sub) = ctx.gen.module_with_sub();
        ctx.tick("closure-idempotent");
        let once = subtractive_closure(&m, sub.elems());
        if sub.elems().iter().any(|e| once.closure.binary_search(e).is_err()) {
            ctx.fail(String::from("closure is not extensive"), &[&m], &[]);
            continue;
        }
        let twice = subtractive_closure(&m, &once.closure);
        if twice.closure != once.closure {
            ctx.fail(String::from("closure is not idempotent"), &[&m], &[]);
            continue;
        }
        if Subsemimodule::new(&m, &once.closure).is_err() {
            ctx.fail(
                String::from("closure of a subsemimodule is not a subsemimodule"),
                &[&m],
                &[],
            );
        }
    }
    Ok(())
}

/// Generated congruences are monotone in the pair set and idempotent.
fn generated_congruence_monotone(ctx: &mut Ctx, samples: u64) -> Result<()> {
    use crate::subquot::generated_congruence;
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let m = ctx.gen.module();
        let n = m.size();
        let a = (ctx.gen.below(n), ctx.gen.below(n));
        let b = (ctx.gen.below(n), ctx.gen.below(n));
        ctx.tick("generated-congruence-monotone");
        let small = generated_congruence(&m, &[a]);
        let large = generated_congruence(&m, &[a, b]);
        if !small.refines(&large) {
            ctx.fail(String::from("generated congruence is not monotone"), &[&m], &[]);
            continue;
        }
        // Closing again over a transversal of the classes changes nothing.
        let mut pairs = Vec::new();
        for class in large.classes() {
            for w in class.windows(2) {
                pairs.push((w[0], w[1]));
            }
        }
        let reclosed = generated_congruence(&m, &pairs);
        if reclosed != large {
            ctx.fail(String::from("generated congruence is not idempotent"), &[&m], &[]);
        }
    }
    Ok(())
}

/// The boundary and interior exactness equivalences on canonical and random
/// data.
fn exactness_equivalences(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        // Boundary equivalences on a random map.
        let (f, g) = ctx.gen.composable_pair();
        let single = SequenceSpec::new(alloc::vec![f.clone()])?;
        let report = classify_exactness(&single);
        ctx.tick("left-exact-iff-injective");
        if report.positions[0].exact != f.is_injective() {
            ctx.fail(
                String::from("leading exactness must be injectivity"),
                &[],
                &[&f],
            );
            continue;
        }
        ctx.tick("right-exact-iff-surjective");
        if report.positions[1].exact != f.is_surjective() {
            ctx.fail(
                String::from("trailing exactness must be surjectivity"),
                &[],
                &[&f],
            );
            continue;
        }
        // Forward direction on a random composable pair.
        let pair = SequenceSpec::new(alloc::vec![f.clone(), g.clone()])?;
        let pr = classify_exactness(&pair);
        if pr.positions[0].exact && pr.positions[1].exact {
            ctx.tick("exact-forcing-kernel-iso");
            let (ker, _) = crate::morphism::kernel_image(&g);
            let (ker_mod, _) = ker.to_module();
            if are_isomorphic(f.dom(), &ker_mod, &ctx.budget)?.is_none()
                || !classify_normality(&g).k_normal
            {
                ctx.fail(
                    String::from("exactness must force L ~ Ker(g) with g k-normal"),
                    &[],
                    &[&f, &g],
                );
                continue;
            }
        }
        if pr.positions[1].exact && pr.positions[2].exact {
            ctx.tick("exact-forcing-quotient-iso");
            let (_, im) = crate::morphism::kernel_image(&f);
            let q = quotient_by_subsemimodule(f.cod(), &im);
            if are_isomorphic(g.cod(), &q.module, &ctx.budget)?.is_none()
                || !classify_normality(&f).i_normal
            {
                ctx.fail(
                    String::from("exactness must force N ~ M/f(L) with f i-normal"),
                    &[],
                    &[&f, &g],
                );
                continue;
            }
        }
        // Two-sided equivalences on the canonical pair of a random
        // subsemimodule: everything reduces to subtractivity.
        let (m, sub) = ctx.gen.module_with_sub();
        let (l_mod, incl) = sub.to_module();
        let q = quotient_by_subsemimodule(&m, &sub);
        let seq = SequenceSpec::new(alloc::vec![incl.clone(), q.projection.clone()])?;
        let cr = classify_exactness(&seq);
        let subtractive = sub.is_subtractive();
        let (kmod, _) = crate::morphism::kernel_image(&q.projection).0.to_module();
        let kernel_iso = are_isomorphic(&l_mod, &kmod, &ctx.budget)?.is_some();
        ctx.tick("canonical-exact-iff-subtractive");
        if cr.all_exact() != subtractive || kernel_iso != subtractive {
            ctx.fail(
                String::from("canonical sequence exactness must match subtractivity"),
                &[&m],
                &[&incl, &q.projection],
            );
            continue;
        }
        ctx.tick("canonical-semi-exact");
        if !cr.positions[1].semi_exact {
            ctx.fail(
                String::from("canonical sequence must be semi-exact in the middle"),
                &[&m],
                &[&incl, &q.projection],
            );
        }
    }
    Ok(())
}

/// The implication lattice among the four notions at every position.
fn exactness_implications(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let (f, g) = ctx.gen.composable_pair();
        let seq = SequenceSpec::new(alloc::vec![f.clone(), g.clone()])?;
        let report = classify_exactness(&seq);
        for p in &report.positions {
            ctx.tick("exactness-implications");
            let ok = (!p.exact || (p.proper_exact && p.quasi_exact))
                && (!p.proper_exact || p.semi_exact)
                && (!p.quasi_exact || p.semi_exact)
                && (!p.exact || p.chain)
                && (!p.proper_exact || p.chain);
            if !ok {
                ctx.fail(
                    format!("implication lattice broken at position {}", p.index),
                    &[],
                    &[&f, &g],
                );
                break;
            }
        }
    }
    Ok(())
}

/// Quotient exactness: the closed divisor sequence is exact, the raw
/// divisor sequence is exact iff the divisor is subtractive, and the
/// projection is a k-normal surjection with kernel the closure.
fn quotient_exactness(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let (m, sub) = ctx.gen.module_with_sub();
        let q = quotient_by_subsemimodule(&m, &sub);
        let closure = subtractive_closure(&m, sub.elems());
        ctx.tick("kernel-is-closure");
        if q.projection.kernel_elems() != closure.closure {
            ctx.fail(
                String::from("kernel of the projection must be the closure"),
                &[&m],
                &[&q.projection],
            );
            continue;
        }
        let pr = classify_normality(&q.projection);
        ctx.tick("projection-normal-epi");
        if !pr.surjective || !pr.k_normal {
            ctx.fail(
                String::from("quotient projection must be a k-normal surjection"),
                &[&m],
                &[&q.projection],
            );
            continue;
        }
        let kernel_sub = Subsemimodule::new(&m, &closure.closure)?;
        let (_, closed_incl) = kernel_sub.to_module();
        let closed_seq = SequenceSpec::new(alloc::vec![closed_incl, q.projection.clone()])?;
        ctx.tick("closed-divisor-exact");
        if !classify_exactness(&closed_seq).all_exact() {
            ctx.fail(
                String::from("closure -> module -> quotient must be exact"),
                &[&m],
                &[&q.projection],
            );
            continue;
        }
        let (_, raw_incl) = sub.to_module();
        let raw_seq = SequenceSpec::new(alloc::vec![raw_incl, q.projection.clone()])?;
        let raw = classify_exactness(&raw_seq);
        ctx.tick("raw-divisor-exact-iff-subtractive");
        if raw.all_exact() != sub.is_subtractive() || !raw.all_semi_exact() {
            ctx.fail(
                String::from("raw divisor sequence must be semi-exact, exact iff subtractive"),
                &[&m],
                &[&q.projection],
            );
        }
    }
    Ok(())
}

/// Both maps of a short exact sequence are normal morphisms.
fn ses_normal_morphisms(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let (f, g) = ctx.gen.canonical_ses();
        ctx.tick("ses-maps-normal");
        if !is_short_exact(&f, &g, &ctx.budget)?.holds {
            ctx.fail(String::from("canonical sequence is not short exact"), &[], &[&f, &g]);
            continue;
        }
        if !classify_normality(&f).normal || !classify_normality(&g).normal {
            ctx.fail(
                String::from("short exact sequence maps must be normal"),
                &[],
                &[&f, &g],
            );
        }
    }
    Ok(())
}

/// The kernel-cokernel sequence is always semi-exact and exact iff the map
/// is normal; both derived boundary sequences are exact.
fn kernel_cokernel(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let (f, _) = ctx.gen.composable_pair();
        let kc = ker_coker_sequence(&f);
        ctx.tick("ker-coker-semi-exact");
        if !kc.report.all_semi_exact() {
            ctx.fail(String::from("kernel-cokernel sequence must be semi-exact"), &[], &[&f]);
            continue;
        }
        ctx.tick("ker-coker-exact-iff-normal");
        if kc.report.all_exact() != kc.gamma_normality.normal {
            ctx.fail(
                String::from("kernel-cokernel exactness must match normality"),
                &[],
                &[&f],
            );
            continue;
        }
        // 0 -> closure(Im f) -> Y -> Y/Im(f) -> 0 is exact.
        let im = crate::morphism::kernel_image(&f).1;
        let closed = Subsemimodule::new(
            f.cod(),
            &subtractive_closure(f.cod(), im.elems()).closure,
        )?;
        let (_, incl) = closed.to_module();
        let q = quotient_by_subsemimodule(f.cod(), &im);
        let seq = SequenceSpec::new(alloc::vec![incl, q.projection])?;
        ctx.tick("image-closure-sequence-exact");
        if !classify_exactness(&seq).all_exact() {
            ctx.fail(
                String::from("closure of the image must give an exact quotient sequence"),
                &[],
                &[&f],
            );
            continue;
        }
        // 0 -> Ker(f) -> X -> X/Ker(f) -> 0 is exact (kernels are
        // subtractive).
        let ker = crate::morphism::kernel_image(&f).0;
        let (_, kincl) = ker.to_module();
        let kq = quotient_by_subsemimodule(f.dom(), &ker);
        let kseq = SequenceSpec::new(alloc::vec![kincl, kq.projection])?;
        ctx.tick("kernel-quotient-sequence-exact");
        if !classify_exactness(&kseq).all_exact() {
            ctx.fail(
                String::from("kernel quotient sequence must be exact"),
                &[],
                &[&f],
            );
        }
    }
    Ok(())
}

/// The four pushout transfer statements, in both orientations.
fn pushout_transfer(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let span = ctx.gen.span();
        let po = pushout(&span)?;
        let rf = classify_normality(&span.f);
        let rg = classify_normality(&span.g);
        // Orientation 1: hypotheses on f, conclusions on the leg from N.
        let opposite = classify_normality(&po.from_n);
        if rf.surjective {
            ctx.tick("surjective-transfers");
            if !opposite.surjective {
                ctx.fail(String::from("surjectivity did not transfer"), &[], &[&span.f, &span.g]);
                continue;
            }
        }
        if rf.i_normal {
            ctx.tick("i-normal-transfers");
            if !opposite.i_normal {
                ctx.fail(String::from("i-normality did not transfer"), &[], &[&span.f, &span.g]);
                continue;
            }
        }
        if rf.surjective && rf.k_normal {
            ctx.tick("normal-epi-transfers");
            if !(opposite.surjective && opposite.k_normal) {
                ctx.fail(String::from("normal epimorphisms did not transfer"), &[], &[&span.f, &span.g]);
                continue;
            }
        }
        if rf.injective && rg.surjective && rg.k_normal {
            ctx.tick("injective-transfers");
            if !opposite.injective {
                ctx.fail(String::from("injectivity did not transfer"), &[], &[&span.f, &span.g]);
                continue;
            }
        }
        // Orientation 2: hypotheses on g, conclusions on the leg from M.
        let mirror = classify_normality(&po.from_m);
        if rg.surjective {
            ctx.tick("surjective-transfers");
            if !mirror.surjective {
                ctx.fail(String::from("surjectivity did not transfer (mirrored)"), &[], &[&span.f, &span.g]);
                continue;
            }
        }
        if rg.i_normal {
            ctx.tick("i-normal-transfers");
            if !mirror.i_normal {
                ctx.fail(String::from("i-normality did not transfer (mirrored)"), &[], &[&span.f, &span.g]);
                continue;
            }
        }
        if rg.surjective && rg.k_normal {
            ctx.tick("normal-epi-transfers");
            if !(mirror.surjective && mirror.k_normal) {
                ctx.fail(String::from("normal epimorphisms did not transfer (mirrored)"), &[], &[&span.f, &span.g]);
                continue;
            }
        }
        if rg.injective && rf.surjective && rf.k_normal {
            ctx.tick("injective-transfers");
            if !mirror.injective {
                ctx.fail(String::from("injectivity did not transfer (mirrored)"), &[], &[&span.f, &span.g]);
            }
        }
    }
    Ok(())
}

/// The explicit C-pushout relation really is a congruence (the constructor
/// asserts it; this suite exercises the assertion on random spans).
fn cpushout_congruence(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let span = ctx.gen.span();
        let _ = c_pushout(&span)?;
        ctx.tick("cpushout-congruence");
    }
    Ok(())
}

/// The pushout congruence refines the C-pushout congruence, and the two
/// agree when every carrier is cancellative.
fn pushout_refines_cpushout(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let span = ctx.gen.span();
        let po = pushout(&span)?;
        let cp = c_pushout(&span)?;
        ctx.tick("pushout-refines-cpushout");
        if !po.rho.refines(&cp.rho) {
            ctx.fail(
                String::from("pushout congruence must refine the C-pushout congruence"),
                &[],
                &[&span.f, &span.g],
            );
            continue;
        }
        let cancellative = span.f.dom().cancellative_elements().is_cancellative
            && span.f.cod().cancellative_elements().is_cancellative
            && span.g.cod().cancellative_elements().is_cancellative;
        if cancellative {
            ctx.tick("cancellative-agree");
            if po.rho != cp.rho {
                ctx.fail(
                    String::from("pushout and C-pushout must agree on cancellative spans"),
                    &[],
                    &[&span.f, &span.g],
                );
            }
        }
    }
    Ok(())
}

/// The constructed pushout has the universal property against a cocone
/// catalog built from quotients of the sum and small pool targets.
fn pushout_universal(ctx: &mut Ctx, samples: u64) -> Result<()> {
    let mut cache = HomCache::new();
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let span = ctx.gen.span();
        if span.f.cod().size() * span.g.cod().size() > 9 {
            continue;
        }
        let po = pushout(&span)?;
        let targets: Vec<Arc<FiniteSemimodule>> = ctx
            .gen
            .pool()
            .iter()
            .filter(|m| m.size() <= 3)
            .cloned()
            .collect();
        let cocones = cocone_catalog(&span, &targets, &ctx.budget, &mut cache)?;
        let report =
            verify_pushout_universal(&span, &po.cospan(), &cocones, &ctx.budget, &mut cache)?;
        ctx.tick("pushout-universal");
        if !report.ok {
            ctx.fail(
                format!(
                    "pushout failed the universal property against {} cocones",
                    report.cocones_checked
                ),
                &[],
                &[&span.f, &span.g],
            );
        }
    }
    Ok(())
}

/// When `M = K (+) L` internally: `K` and `L` meet only in 0 and
/// `M/K ~ L`.
fn direct_sum_quotient(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let (m, k) = ctx.gen.module_with_sub();
        let subs = enumerate_subsemimodules(&m, &ctx.budget)?;
        for l in &subs {
            if !is_direct_sum(&m, &k, l).0 {
                continue;
            }
            ctx.tick("direct-sum-quotient");
            let meet: Vec<usize> = k
                .elems()
                .iter()
                .copied()
                .filter(|&e| l.contains(e))
                .collect();
            if meet != alloc::vec![0] {
                ctx.fail(
                    String::from("a direct decomposition must meet only in zero"),
                    &[&m],
                    &[],
                );
                break;
            }
            let q = quotient_by_subsemimodule(&m, &k);
            let (l_mod, _) = l.to_module();
            if are_isomorphic(&q.module, &l_mod, &ctx.budget)?.is_none() {
                ctx.fail(
                    String::from("M/K must be isomorphic to the complement"),
                    &[&m, &q.module, &l_mod],
                    &[],
                );
                break;
            }
        }
    }
    Ok(())
}

/// Hom(P,-) is left exact on short exact sequences: the induced inclusion
/// is injective and normal and its image is the kernel of the induced
/// projection.
fn hom_left_exact(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let (f, g) = ctx.gen.canonical_ses();
        let p = ctx.gen.module();
        let homs_pl = enumerate_hom(&p, f.dom(), &ctx.budget)?;
        let homs_pm = enumerate_hom(&p, f.cod(), &ctx.budget)?;
        let homs_pn = enumerate_hom(&p, g.cod(), &ctx.budget)?;
        let inc_map: Vec<usize> = homs_pl
            .maps()
            .iter()
            .map(|h| {
                let composed: Vec<usize> = h.iter().map(|&v| f.apply(v)).collect();
                homs_pm.index_of(&composed).expect("composite is linear")
            })
            .collect();
        let proj_map: Vec<usize> = homs_pm
            .maps()
            .iter()
            .map(|h| {
                let composed: Vec<usize> = h.iter().map(|&v| g.apply(v)).collect();
                homs_pn.index_of(&composed).expect("composite is linear")
            })
            .collect();
        ctx.tick("induced-injective");
        let mut seen = alloc::vec![false; homs_pm.len()];
        let mut injective = true;
        for &i in &inc_map {
            if core::mem::replace(&mut seen[i], true) {
                injective = false;
            }
        }
        if !injective {
            ctx.fail(String::from("induced inclusion must be injective"), &[&p], &[&f, &g]);
            continue;
        }
        ctx.tick("induced-image-is-kernel");
        if (0..homs_pm.len()).any(|i| seen[i] != (proj_map[i] == 0)) {
            ctx.fail(
                String::from("image of induced inclusion must be the kernel of the induced projection"),
                &[&p],
                &[&f, &g],
            );
            continue;
        }
        ctx.tick("induced-inclusion-normal");
        let pl = homs_pl.monoid();
        let pm = homs_pm.monoid();
        let induced = LinearMap::unchecked(&pl, &pm, inc_map);
        if !classify_normality(&induced).normal {
            ctx.fail(String::from("induced inclusion must be normal"), &[&p], &[&f, &g]);
        }
    }
    Ok(())
}

/// The two sides of the k-projectivity characterization over a finite
/// pool: the bounded k-projectivity verdict, and right-splittability of
/// every enumerated short exact sequence ending (up to isomorphism) in the
/// subject. The enumeration covers the canonical quotient sequences of the
/// pool and the pullback sequences arising from the lifting grid, which is
/// exactly what makes the equivalence finite.
pub fn k_projectivity_sides(
    p: &Arc<FiniteSemimodule>,
    pool: &[Arc<FiniteSemimodule>],
    budget: &Budget,
) -> Result<(bool, bool)> {
    let mut k_projective = true;
    for m in pool {
        if !relative_projectivity(p, m, Flavor::K, budget)?.verdict {
            k_projective = false;
            break;
        }
    }
    let mut all_split = true;
    'outer: for b in pool {
        for sub in crate::projective::subtractive_subsemimodules(b, budget)? {
            let q = quotient_by_subsemimodule(b, &sub);
            // Canonical sequences whose quotient is isomorphic to p.
            if let Some(iso) = are_isomorphic(&q.module, p, budget)? {
                let g = compose(&iso, &q.projection)?;
                let homs = enumerate_hom(p, b, budget)?;
                let id = LinearMap::identity(p);
                if !homs
                    .iter()
                    .any(|s| compose(&g, &s).map(|c| c == id).unwrap_or(false))
                {
                    all_split = false;
                    break 'outer;
                }
            }
            // Pullback sequences from the lifting grid.
            for g in enumerate_hom(p, &q.module, budget)?.iter() {
                let pb = pullback(&q.projection, &g)?;
                // The second leg is the projection onto p.
                let pi_p = pb.to_b.clone();
                let homs = enumerate_hom(p, &pb.object, budget)?;
                let id = LinearMap::identity(p);
                if !homs
                    .iter()
                    .any(|s| compose(&pi_p, &s).map(|c| c == id).unwrap_or(false))
                {
                    all_split = false;
                    break 'outer;
                }
            }
        }
    }
    Ok((k_projective, all_split))
}

/// Bounded k-projectivity over the pool agrees with right-splitting of
/// every enumerated short exact sequence ending in the subject.
fn char_k_proj(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let p = ctx.gen.module();
        let pool = ctx.gen.pool().to_vec();
        let (k_projective, all_split) = k_projectivity_sides(&p, &pool, &ctx.budget)?;
        ctx.tick("char-k-proj");
        if k_projective != all_split {
            ctx.fail(
                format!(
                    "k-projectivity ({k_projective}) must match right-splitting ({all_split})"
                ),
                &[&p],
                &[],
            );
        }
    }
    Ok(())
}

/// The hom-functor flavor and the lifting-certificate flavor agree.
fn e_equals_normally(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let p = ctx.gen.module();
        let m = ctx.gen.module();
        let e = relative_projectivity(&p, &m, Flavor::E, &ctx.budget)?;
        let n = relative_projectivity(&p, &m, Flavor::Normally, &ctx.budget)?;
        ctx.tick("e-equals-normally");
        if e.verdict != n.verdict || e.cross_check_agrees != Some(true) {
            ctx.fail(
                format!("e ({}) and normally ({}) disagree", e.verdict, n.verdict),
                &[&p, &m],
                &[],
            );
        }
    }
    Ok(())
}

/// Projective and e-projective subjects are k-projective: both the plain
/// and the e verdict imply the k verdict, per pair.
fn flavor_monotonicity(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let p = ctx.gen.module();
        let m = ctx.gen.module();
        let k = relative_projectivity(&p, &m, Flavor::K, &ctx.budget)?.verdict;
        ctx.tick("e-implies-k");
        if relative_projectivity(&p, &m, Flavor::E, &ctx.budget)?.verdict && !k {
            ctx.fail(String::from("e-projective but not k-projective"), &[&p, &m], &[]);
            continue;
        }
        ctx.tick("plain-implies-k");
        if relative_projectivity(&p, &m, Flavor::Plain, &ctx.budget)?.verdict && !k {
            ctx.fail(String::from("plain-projective but not k-projective"), &[&p, &m], &[]);
        }
    }
    Ok(())
}

/// A subject that lifts along every surjection out of every pool member is
/// e-projective relative to every pool member.
fn proj_implies_e(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let p = ctx.gen.module();
        let pool = ctx.gen.pool().to_vec();
        let plain_everywhere = {
            let mut ok = true;
            for m in &pool {
                if !relative_projectivity(&p, m, Flavor::Plain, &ctx.budget)?.verdict {
                    ok = false;
                    break;
                }
            }
            ok
        };
        ctx.tick("proj-implies-e");
        if plain_everywhere {
            for m in &pool {
                if !relative_projectivity(&p, m, Flavor::E, &ctx.budget)?.verdict {
                    ctx.fail(
                        String::from("plain-projective over the pool but not e-projective"),
                        &[&p, m],
                        &[],
                    );
                    break;
                }
            }
        }
    }
    Ok(())
}

/// Retracts inherit relative e-projectivity.
fn retract_closure(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let p = ctx.gen.module();
        let k = ctx.gen.module();
        if retract_check(&k, &p, &ctx.budget)?.is_none() {
            continue;
        }
        let m = ctx.gen.module();
        ctx.tick("retract-closure");
        let p_proj = relative_projectivity(&p, &m, Flavor::E, &ctx.budget)?;
        if p_proj.verdict {
            let k_proj = relative_projectivity(&k, &m, Flavor::E, &ctx.budget)?;
            if !k_proj.verdict {
                ctx.fail(
                    String::from("a retract of an e-projective module must be e-projective"),
                    &[&p, &k, &m],
                    &[],
                );
            }
        }
    }
    Ok(())
}

/// A direct sum is e-projective relative to `M` iff both summands are.
fn dsum_e_projective(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let p1 = ctx.gen.module();
        let p2 = ctx.gen.module();
        if p1.size() * p2.size() > 8 {
            continue;
        }
        let m = ctx.gen.module();
        let sum = direct_sum(&p1, &p2)?;
        ctx.tick("dsum-e-projective");
        let whole = relative_projectivity(&sum.module, &m, Flavor::E, &ctx.budget)?.verdict;
        let left = relative_projectivity(&p1, &m, Flavor::E, &ctx.budget)?.verdict;
        let right = relative_projectivity(&p2, &m, Flavor::E, &ctx.budget)?.verdict;
        if whole != (left && right) {
            ctx.fail(
                format!("sum verdict {whole} vs components {left} and {right}"),
                &[&p1, &p2, &m],
                &[],
            );
        }
    }
    Ok(())
}

/// If every subtractive subsemimodule of `M` is a direct summand, every
/// subject is `M`-e-projective.
fn subtractive_summands(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let m = ctx.gen.module();
        let subs = enumerate_subsemimodules(&m, &ctx.budget)?;
        let all_summands = {
            let mut ok = true;
            'subs: for sub in &subs {
                if !sub.is_subtractive() {
                    continue;
                }
                for complement in &subs {
                    if is_direct_sum(&m, sub, complement).0 {
                        continue 'subs;
                    }
                }
                ok = false;
                break;
            }
            ok
        };
        if !all_summands {
            continue;
        }
        for _ in 0..2 {
            let p = ctx.gen.module();
            ctx.tick("subtractive-summands");
            if !relative_projectivity(&p, &m, Flavor::E, &ctx.budget)?.verdict {
                ctx.fail(
                    String::from("target with summand subtractives admits a non-e-projective subject"),
                    &[&p, &m],
                    &[],
                );
                break;
            }
        }
    }
    Ok(())
}

/// e-projectivity relative to the middle of a short exact sequence passes
/// to both ends.
fn ses_ends_e_projective(ctx: &mut Ctx, samples: u64) -> Result<()> {
    for _ in 0..samples {
        if ctx.done() {
            break;
        }
        let (incl, proj) = ctx.gen.canonical_ses();
        let l_mid = Arc::clone(incl.cod());
        let k_end = Arc::clone(incl.dom());
        let m_end = Arc::clone(proj.cod());
        let p = ctx.gen.module();
        if !relative_projectivity(&p, &l_mid, Flavor::E, &ctx.budget)?.verdict {
            continue;
        }
        ctx.tick("ses-ends-e-projective");
        let k_ok = relative_projectivity(&p, &k_end, Flavor::E, &ctx.budget)?.verdict;
        let m_ok = relative_projectivity(&p, &m_end, Flavor::E, &ctx.budget)?.verdict;
        if !k_ok || !m_ok {
            ctx.fail(
                format!("middle e-projectivity did not pass to the ends ({k_ok}, {m_ok})"),
                &[&p, &l_mid],
                &[&incl, &proj],
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("nope", 1, 0, 3, &Budget::default()),
            Err(AlgebraError::UnknownSuite(_))
        ));
    }

    #[test]
    fn quick_suites_pass_on_small_samples() {
        for suite in [
            "cancellative-closed",
            "hom-monoid-closed",
            "composition-associative",
            "closure-idempotent",
            "generated-congruence-monotone",
            "exactness-implications",
        ] {
            let outcome = run_suite(suite, 10, 42, 4, &Budget::default()).unwrap();
            assert!(outcome.pass, "{suite}: {:?}", outcome.counterexample);
            assert!(outcome.checks > 0);
        }
    }

    #[test]
    fn suite_outcomes_are_deterministic() {
        let a = run_suite("composition-normality", 15, 9, 4, &Budget::default()).unwrap();
        let b = run_suite("composition-normality", 15, 9, 4, &Budget::default()).unwrap();
        assert_eq!(a.checks, b.checks);
        assert_eq!(a.details, b.details);
        assert_eq!(a.pass, b.pass);
    }
}
