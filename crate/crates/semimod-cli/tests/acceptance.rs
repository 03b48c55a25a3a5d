//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criteria in brief:
//!  1. the B(3,1) splitting example reproduces exactly;
//!  2. constructed pushouts satisfy the universal property against the full
//!     cocone catalog, exhaustively over a catalog slice of size <= 4;
//!  3. the four pushout transfer statements hold on >= 500 qualifying
//!     spans;
//!  4. the six composition-normality statements hold on >= 1000 qualifying
//!     composable pairs;
//!  5. the exactness equivalences and the subtractive-iff-exact criterion
//!     hold for every subsemimodule of every catalog module of size <= 5;
//!  6. the hom-functor and lifting-certificate projectivity flavors agree
//!     on >= 100 pairs across the naturals and Boolean universes;
//!  7. bounded k-projectivity coincides with right-splittability of every
//!     enumerated short exact sequence ending in the subject;
//!  8. the remaining projectivity suites (plain implies e, retracts,
//!     direct sums, sequence ends, summand-rich targets) hold exhaustively
//!     on the size <= 4 universe;
//!  9. the exact-rational matrix witness passes;
//! 10. corpus and law-suite reports are byte-identical across runs.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use semimod::budget::Budget;
use semimod::builtin;
use semimod::category::{
    cocones_into, direct_sum, is_direct_sum, pushout, quotient_targets, retract_check,
    verify_pushout_universal, Span,
};
use semimod::exact::{classify_exactness, find_splittings, is_short_exact, SequenceSpec};
use semimod::hom::{enumerate_hom, HomCache};
use semimod::laws;
use semimod::morphism::{are_isomorphic, classify_normality};
use semimod::projective::{relative_projectivity, subtractive_subsemimodules, Flavor};
use semimod::semimodule::FiniteSemimodule;
use semimod::subquot::{
    enumerate_subsemimodules, quotient_by_subsemimodule, subtractive_closure, Subsemimodule,
};
use semimod::universe::{boolean_catalog, naturals_catalog};

use semimod_cli::corpus::{corpus_report, B31_FIXTURE};
use semimod_cli::model::{canonical_json, parse_model};
use semimod_cli::rational::rational_witness_check;

fn report(criterion: &str, ok: bool, detail: &str, t0: Instant) {
    println!(
        "[{}] {criterion}: {detail} ({:.2?})",
        if ok { "PASS" } else { "FAIL" },
        t0.elapsed()
    );
    assert!(ok, "{criterion} failed: {detail}");
}

/// Criterion 1: the B(3,1) splitting example, exactly.
#[test]
fn criterion_01_b31_example_block() {
    let t0 = Instant::now();
    let budget = Budget::default();
    let model = parse_model(B31_FIXTURE).unwrap();
    let seq = model.sequence("ses").unwrap();
    let exact = classify_exactness(&seq).all_exact();

    let iota = model.morphism("iota").unwrap();
    let pi = model.morphism("pi").unwrap();
    let splittings = find_splittings(iota, pi, &budget).unwrap();
    let left_ok = splittings.left.as_ref().map(|f| f.map()) == Some(&[0, 1, 1][..]);
    let right_absent = splittings.right.is_none();

    let z2 = model.module("Z2").unwrap();
    let b31 = model.module("B31").unwrap();
    let hom_count = enumerate_hom(&z2, &b31, &budget).unwrap().len();

    report(
        "criterion-1 b31-example",
        exact && left_ok && right_absent && hom_count == 1,
        &format!(
            "exact={exact} left={left_ok} right_absent={right_absent} hom_count={hom_count}"
        ),
        t0,
    );
}

/// The catalog slice for the pushout sweeps: all of size <= 4, cyclic or a
/// sum of two cyclics, so generator counts stay small.
fn span_sweep_catalog() -> Vec<Arc<FiniteSemimodule>> {
    [
        "Zero",
        "C(1,1)",   // Boolean monoid
        "Z2",       // = C(0,2)
        "B31",      // additive monoid, = C(1,2)
        "C(2,1)",
        "C(0,4)",   // Z4
        "Z2(+)Z2",
    ]
    .iter()
    .map(|name| builtin::builtin_module(name).unwrap())
    .collect()
}

/// Criterion 2: every constructed pushout over the catalog slice passes
/// the universal-property check against the full cocone catalog (all
/// quotients of M (+) N plus the catalog targets).
#[test]
fn criterion_02_pushout_universal_property() {
    let t0 = Instant::now();
    let budget = Budget::default();
    let catalog = span_sweep_catalog();
    // Extra cocone targets: the whole size <= 4 catalog, beyond the slice
    // the spans themselves are drawn from.
    let extra_targets = naturals_catalog(4);
    let mut cache = HomCache::new();
    // Quotient targets per (M, N), computed once per pair.
    let mut targets_for: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Arc<FiniteSemimodule>>> =
        BTreeMap::new();

    let mut spans = 0usize;
    let mut cocones = 0usize;
    let mut failures = 0usize;
    for l in &catalog {
        for m in &catalog {
            let homs_lm = enumerate_hom(l, m, &budget).unwrap();
            for n in &catalog {
                let homs_ln = enumerate_hom(l, n, &budget).unwrap();
                let key = (m.fingerprint(), n.fingerprint());
                if !targets_for.contains_key(&key) {
                    let mut targets = quotient_targets(m, n, &budget).unwrap();
                    let mut seen: std::collections::BTreeSet<Vec<usize>> =
                        targets.iter().map(|t| t.fingerprint()).collect();
                    for extra in catalog.iter().chain(&extra_targets) {
                        if seen.insert(extra.fingerprint()) {
                            targets.push(Arc::clone(extra));
                        }
                    }
                    targets_for.insert(key.clone(), targets);
                }
                let targets = &targets_for[&key];
                for f in homs_lm.iter() {
                    for g in homs_ln.iter() {
                        let span = Span::new(f.clone(), g.clone()).unwrap();
                        let po = pushout(&span).unwrap();
                        let cospan = po.cospan();
                        spans += 1;
                        for q in targets {
                            let batch = cocones_into(&span, q, &budget, &mut cache).unwrap();
                            cocones += batch.len();
                            let result = verify_pushout_universal(
                                &span, &cospan, &batch, &budget, &mut cache,
                            )
                            .unwrap();
                            if !result.ok {
                                failures += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    report(
        "criterion-2 pushout-universal",
        spans >= 200 && failures == 0,
        &format!("spans={spans} cocones={cocones} failures={failures}"),
        t0,
    );
}

/// Criterion 3: the four pushout transfer statements on >= 500 qualifying
/// spans each.
#[test]
fn criterion_03_pushout_transfers() {
    let t0 = Instant::now();
    let outcome = laws::run_suite("pushout-transfer", 4000, 20260809, 4, &Budget::default())
        .unwrap();
    let need = [
        "surjective-transfers",
        "i-normal-transfers",
        "normal-epi-transfers",
        "injective-transfers",
    ];
    let counts: Vec<u64> = need
        .iter()
        .map(|k| outcome.details.get(*k).copied().unwrap_or(0))
        .collect();
    let enough = counts.iter().all(|&c| c >= 500);
    report(
        "criterion-3 pushout-transfers",
        outcome.pass && enough,
        &format!("pass={} counts={need:?}={counts:?}", outcome.pass),
        t0,
    );
}

/// Criterion 4: the six composition-normality statements on >= 1000
/// qualifying composable pairs each.
#[test]
fn criterion_04_composition_normality() {
    let t0 = Instant::now();
    let outcome = laws::run_suite(
        "composition-normality",
        9000,
        20260809,
        4,
        &Budget::default(),
    )
    .unwrap();
    let need = [
        "inj-k-iff",
        "inj-i-forward",
        "inj-i-iff",
        "surj-i-iff",
        "surj-k-forward",
        "surj-k-iff",
    ];
    let counts: Vec<u64> = need
        .iter()
        .map(|k| outcome.details.get(*k).copied().unwrap_or(0))
        .collect();
    let enough = counts.iter().all(|&c| c >= 1000);
    report(
        "criterion-4 composition-normality",
        outcome.pass && enough,
        &format!("pass={} counts={need:?}={counts:?}", outcome.pass),
        t0,
    );
}

/// Criterion 5: exactness equivalences and the subtractive-iff-exact
/// criterion for every subsemimodule of every catalog module of size <= 5.
#[test]
fn criterion_05_exactness_equivalences() {
    let t0 = Instant::now();
    let budget = Budget::default();
    let mut checked = 0usize;
    let mut failures: Vec<String> = Vec::new();
    for m in naturals_catalog(5) {
        for sub in enumerate_subsemimodules(&m, &budget).unwrap() {
            checked += 1;
            let closure = subtractive_closure(&m, sub.elems());
            let subtractive = closure.is_subtractive;
            let (l_mod, incl) = sub.to_module();
            let q = quotient_by_subsemimodule(&m, &sub);

            // Boundary statements: leading exactness is injectivity,
            // trailing exactness is surjectivity.
            for map in [&incl, &q.projection] {
                let r = classify_exactness(&SequenceSpec::new(vec![map.clone()]).unwrap());
                if r.positions[0].exact != map.is_injective()
                    || r.positions[1].exact != map.is_surjective()
                {
                    failures.push(format!("boundary mismatch on {}", m.name()));
                }
            }

            // The raw divisor sequence: semi-exact always, exact iff the
            // divisor is subtractive, in which case it is short exact with
            // both maps normal.
            let seq = SequenceSpec::new(vec![incl.clone(), q.projection.clone()]).unwrap();
            let r = classify_exactness(&seq);
            if !r.all_semi_exact() {
                failures.push(format!("not semi-exact: {} / {:?}", m.name(), sub.elems()));
            }
            if r.all_exact() != subtractive {
                failures.push(format!(
                    "exact != subtractive: {} / {:?}",
                    m.name(),
                    sub.elems()
                ));
            }
            let short = is_short_exact(&incl, &q.projection, &budget).unwrap();
            if short.holds != subtractive {
                failures.push(format!(
                    "short-exact != subtractive: {} / {:?}",
                    m.name(),
                    sub.elems()
                ));
            }
            if short.holds
                && !(classify_normality(&incl).normal
                    && classify_normality(&q.projection).normal)
            {
                failures.push(format!(
                    "short exact maps not normal: {} / {:?}",
                    m.name(),
                    sub.elems()
                ));
            }

            // Kernel equivalences: L ~ Ker(pi) iff subtractive (finite, so
            // the abstract isomorphism collapses to set equality).
            let (ker_mod, ker_incl) =
                Subsemimodule::new(&m, &q.projection.kernel_elems())
                    .unwrap()
                    .to_module();
            let kernel_iso = are_isomorphic(&l_mod, &ker_mod, &budget).unwrap().is_some();
            if kernel_iso != subtractive {
                failures.push(format!(
                    "kernel iso != subtractive: {} / {:?}",
                    m.name(),
                    sub.elems()
                ));
            }
            // Normality of the inclusion is equivalent to the kernel
            // isomorphism on the canonical pair (the sequence is already
            // semi-exact in the middle).
            if classify_normality(&incl).normal != kernel_iso {
                failures.push(format!(
                    "inclusion normality != kernel iso: {} / {:?}",
                    m.name(),
                    sub.elems()
                ));
            }
            // And the projection is always normal, which pins the cokernel
            // route unconditionally.
            if !classify_normality(&q.projection).normal {
                failures.push(format!(
                    "projection not normal: {} / {:?}",
                    m.name(),
                    sub.elems()
                ));
            }

            // The closed divisor gives a short exact sequence; its
            // cokernel route agrees (N ~ M/f(L)).
            let closed_seq =
                SequenceSpec::new(vec![ker_incl.clone(), q.projection.clone()]).unwrap();
            if !classify_exactness(&closed_seq).all_exact() {
                failures.push(format!(
                    "closed divisor not exact: {} / {:?}",
                    m.name(),
                    sub.elems()
                ));
            }
            let im = semimod::morphism::kernel_image(&incl).1;
            let q2 = quotient_by_subsemimodule(&m, &im);
            if are_isomorphic(&q2.module, q.projection.cod(), &budget)
                .unwrap()
                .is_none()
            {
                failures.push(format!(
                    "quotient route mismatch: {} / {:?}",
                    m.name(),
                    sub.elems()
                ));
            }
        }
    }
    report(
        "criterion-5 exactness-equivalences",
        failures.is_empty(),
        &format!("subsemimodules={checked} failures={failures:?}"),
        t0,
    );
}

/// Criterion 6: flavors `e` and `normally` agree on every pair from the
/// naturals and Boolean universes of size <= 4.
#[test]
fn criterion_06_e_equals_normally() {
    let t0 = Instant::now();
    let budget = Budget::default();
    let mut pairs = 0usize;
    let mut disagreements = 0usize;
    for universe in [naturals_catalog(4), boolean_catalog(4)] {
        for p in &universe {
            for m in &universe {
                pairs += 1;
                let e = relative_projectivity(p, m, Flavor::E, &budget).unwrap();
                let n = relative_projectivity(p, m, Flavor::Normally, &budget).unwrap();
                if e.verdict != n.verdict || e.cross_check_agrees != Some(true) {
                    disagreements += 1;
                }
            }
        }
    }
    report(
        "criterion-6 e-equals-normally",
        pairs >= 100 && disagreements == 0,
        &format!("pairs={pairs} disagreements={disagreements}"),
        t0,
    );
}

/// Criterion 7: bounded k-projectivity equals right-splittability of every
/// enumerated short exact sequence ending in the subject, for every
/// subject in the size <= 4 universe.
#[test]
fn criterion_07_k_projectivity_characterization() {
    let t0 = Instant::now();
    let budget = Budget::default();
    let pool = naturals_catalog(4);
    let mut disagreements = 0usize;
    for p in &pool {
        let (k_proj, all_split) = laws::k_projectivity_sides(p, &pool, &budget).unwrap();
        if k_proj != all_split {
            disagreements += 1;
        }
    }
    report(
        "criterion-7 k-projectivity-characterization",
        disagreements == 0,
        &format!("subjects={} disagreements={disagreements}", pool.len()),
        t0,
    );
}

/// Criterion 8: the remaining projectivity facts, exhaustively on the
/// size <= 4 universe.
#[test]
fn criterion_08_projectivity_suites() {
    let t0 = Instant::now();
    let budget = Budget::default();
    let pool = naturals_catalog(4);
    let mut failures: Vec<String> = Vec::new();

    // Plain projectivity over the whole pool implies e-projectivity over
    // the whole pool.
    for p in &pool {
        let plain_everywhere = pool.iter().all(|m| {
            relative_projectivity(p, m, Flavor::Plain, &budget)
                .unwrap()
                .verdict
        });
        if plain_everywhere {
            for m in &pool {
                if !relative_projectivity(p, m, Flavor::E, &budget).unwrap().verdict {
                    failures.push(format!("plain->e broken for {} at {}", p.name(), m.name()));
                }
            }
        }
    }

    // Retracts inherit e-projectivity.
    for p in &pool {
        for k in &pool {
            if retract_check(k, p, &budget).unwrap().is_none() {
                continue;
            }
            for m in &pool {
                let p_ok = relative_projectivity(p, m, Flavor::E, &budget).unwrap().verdict;
                if p_ok
                    && !relative_projectivity(k, m, Flavor::E, &budget).unwrap().verdict
                {
                    failures.push(format!(
                        "retract {} of {} not e-projective at {}",
                        k.name(),
                        p.name(),
                        m.name()
                    ));
                }
            }
        }
    }

    // Direct sums: the sum is e-projective iff both summands are, on pairs
    // with |P1 (+) P2| <= 8.
    for p1 in &pool {
        for p2 in &pool {
            if p1.size() * p2.size() > 8 {
                continue;
            }
            let sum = direct_sum(p1, p2).unwrap();
            for m in &pool {
                let whole = relative_projectivity(&sum.module, m, Flavor::E, &budget)
                    .unwrap()
                    .verdict;
                let parts = relative_projectivity(p1, m, Flavor::E, &budget).unwrap().verdict
                    && relative_projectivity(p2, m, Flavor::E, &budget).unwrap().verdict;
                if whole != parts {
                    failures.push(format!(
                        "dsum mismatch for {} (+) {} at {}",
                        p1.name(),
                        p2.name(),
                        m.name()
                    ));
                }
            }
        }
    }

    // e-projectivity relative to the middle of a short exact sequence
    // passes to both ends.
    for mid in &pool {
        for sub in subtractive_subsemimodules(mid, &budget).unwrap() {
            let (k_mod, _) = sub.to_module();
            let q = quotient_by_subsemimodule(mid, &sub);
            for p in &pool {
                if !relative_projectivity(p, mid, Flavor::E, &budget).unwrap().verdict {
                    continue;
                }
                if !relative_projectivity(p, &k_mod, Flavor::E, &budget).unwrap().verdict
                    || !relative_projectivity(p, &q.module, Flavor::E, &budget)
                        .unwrap()
                        .verdict
                {
                    failures.push(format!(
                        "sequence ends broken for {} over {}",
                        p.name(),
                        mid.name()
                    ));
                }
            }
        }
    }

    // Targets whose subtractive subsemimodules are all direct summands
    // make every subject e-projective.
    for m in &pool {
        let subs = enumerate_subsemimodules(m, &budget).unwrap();
        let all_summands = subs
            .iter()
            .filter(|s| s.is_subtractive())
            .all(|s| subs.iter().any(|c| is_direct_sum(m, s, c).0));
        if !all_summands {
            continue;
        }
        for p in &pool {
            if !relative_projectivity(p, m, Flavor::E, &budget).unwrap().verdict {
                failures.push(format!(
                    "summand-rich target {} admits non-e-projective {}",
                    m.name(),
                    p.name()
                ));
            }
        }
    }

    report(
        "criterion-8 projectivity-suites",
        failures.is_empty(),
        &format!("universe={} failures={failures:?}", pool.len()),
        t0,
    );
}

/// Criterion 9: the exact-rational matrix witness.
#[test]
fn criterion_09_rational_witness() {
    let t0 = Instant::now();
    let witness = rational_witness_check();
    report(
        "criterion-9 rational-witness",
        witness.pass,
        &format!(
            "sums_equal={} components_differ={} memberships={}",
            witness.sums_equal,
            witness.components_differ,
            witness.first_components_in_column_ideal
                && witness.second_components_in_dominated_ideal
        ),
        t0,
    );
}

/// Criterion 10: identical seeds give byte-identical reports, for the
/// corpus and for every law suite.
#[test]
fn criterion_10_determinism() {
    let t0 = Instant::now();
    let budget = Budget::default();
    let corpus_a = canonical_json(&corpus_report(&budget));
    let corpus_b = canonical_json(&corpus_report(&budget));
    let mut stable = corpus_a == corpus_b;
    let mut drifted: Vec<&str> = Vec::new();
    for suite in laws::SUITES {
        let a = laws::run_suite(suite, 20, 7, 4, &budget).unwrap();
        let b = laws::run_suite(suite, 20, 7, 4, &budget).unwrap();
        let (ja, jb) = (
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap(),
        );
        if ja != jb {
            stable = false;
            drifted.push(suite);
        }
    }
    report(
        "criterion-10 determinism",
        stable,
        &format!("corpus_stable={} drifted_suites={drifted:?}", corpus_a == corpus_b),
        t0,
    );
}
