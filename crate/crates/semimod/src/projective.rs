//! Relative projectivity deciders.
//!
//! Four flavors, all decided by exhaustive search over quotients of the
//! target:
//!
//! - `Plain`: liftings exist along every surjection out of `M`. Every
//!   surjection is, as an arrow under `M`, the projection onto a quotient
//!   by some congruence, so the sweep ranges over all congruences of `M`.
//! - `K`: liftings exist along every normal (surjective + k-normal)
//!   epimorphism out of `M`. Those are exactly the projections onto
//!   quotients by subtractive subsemimodules, so the sweep ranges over
//!   those.
//! - `Normally`: debug `K` plus uniqueness certificates: any two liftings
//!   `h, h'` of the same map admit kernel maps `h1, h2` with
//!   `h + h1 = h' + h2`.
//! - `E`: the hom functor carries the short exact sequence
//!   `0 -> L -> M -> M/L -> 0` to a short exact sequence of commutative
//!   monoids, for every subtractive `L`; evaluated literally on the hom
//!   monoids. Reports for this flavor also run the `Normally` decision and
//!   record whether the two verdicts agree, which they must.
//!
//! Global verdicts are only ever *bounded*: relative to an explicit finite
//! universe of targets, plus (over a finite scalar semiring) a
//! retract-of-free search up to a stated rank.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use serde::Serialize;

use crate::budget::Budget;
use crate::builtin::free_module;
use crate::category::retract_check;
use crate::error::Result;
use crate::hom::enumerate_hom;
use crate::morphism::{classify_normality, LinearMap};
use crate::semimodule::{FiniteSemimodule, ScalarDomain};
use crate::subquot::{
    enumerate_congruences, enumerate_subsemimodules, quotient_by_congruence,
    quotient_by_subsemimodule, Subsemimodule,
};
use crate::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Plain,
    K,
    E,
    Normally,
}

impl Flavor {
    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "plain" => Some(Flavor::Plain),
            "k" => Some(Flavor::K),
            "e" => Some(Flavor::E),
            "normally" => Some(Flavor::Normally),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Flavor::Plain => "plain",
            Flavor::K => "k",
            Flavor::E => "e",
            Flavor::Normally => "normally",
        }
    }
}

/// The epimorphism a failure happened under: a congruence quotient (plain
/// flavor) or a quotient by a subtractive subsemimodule (the rest).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum QuotientWitness {
    Congruence { class_of: Vec<usize> },
    Subset { elems: Vec<Elem> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ProjectivityFailure {
    /// A map into the quotient with no lifting through the projection.
    NoLift {
        quotient: QuotientWitness,
        g: Vec<Elem>,
    },
    /// Two liftings of the same map with no kernel certificates.
    NoCertificate {
        quotient: QuotientWitness,
        g: Vec<Elem>,
        lift_a: Vec<Elem>,
        lift_b: Vec<Elem>,
    },
    /// Hom-functor route: the induced map between hom monoids misses a map.
    InducedNotSurjective {
        quotient: QuotientWitness,
        unreached: Vec<Elem>,
    },
    /// Hom-functor route: the induced map between hom monoids is not
    /// k-normal.
    InducedNotKNormal {
        quotient: QuotientWitness,
        pair_a: Vec<Elem>,
        pair_b: Vec<Elem>,
    },
    /// Hom-functor route: image of the induced inclusion differs from the
    /// kernel of the induced projection.
    InducedImageKernelMismatch {
        quotient: QuotientWitness,
        witness: Vec<Elem>,
    },
}

/// One successful lifting, kept as a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftCertificate {
    pub quotient: QuotientWitness,
    pub g: Vec<Elem>,
    pub lift: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectivityReport {
    pub subject: String,
    pub target: String,
    pub flavor: Flavor,
    pub verdict: bool,
    pub quotients_checked: usize,
    pub maps_checked: usize,
    pub failure: Option<ProjectivityFailure>,
    /// Lex-least lift per `(quotient, map)` pair, on success.
    pub certificates: Vec<LiftCertificate>,
    /// For flavor `E`: whether the independently computed `Normally`
    /// verdict agrees.
    pub cross_check_agrees: Option<bool>,
}

struct Sweep {
    quotients_checked: usize,
    maps_checked: usize,
    failure: Option<ProjectivityFailure>,
    certificates: Vec<LiftCertificate>,
}

impl Sweep {
    fn new() -> Self {
        Sweep {
            quotients_checked: 0,
            maps_checked: 0,
            failure: None,
            certificates: Vec::new(),
        }
    }
}

/// The subtractive subsemimodules of `m`, i.e. the kernels of its normal
/// epimorphisms.
pub fn subtractive_subsemimodules(
    m: &Arc<FiniteSemimodule>,
    budget: &Budget,
) -> Result<Vec<Subsemimodule>> {
    Ok(enumerate_subsemimodules(m, budget)?
        .into_iter()
        .filter(|s| s.is_subtractive())
        .collect())
}

/// Sweeps one projection: records a lift certificate for every map of
/// `hom_pq`, or the least unliftable map.
fn sweep_lifts(
    p: &Arc<FiniteSemimodule>,
    projection: &LinearMap,
    witness: &QuotientWitness,
    want_certificates: bool,
    budget: &Budget,
    sweep: &mut Sweep,
) -> Result<bool> {
    let homs_pm = enumerate_hom(p, projection.dom(), budget)?;
    let homs_pq = enumerate_hom(p, projection.cod(), budget)?;
    // Composite -> least lift, filled in hom order so the first hit is the
    // lexicographically least.
    let mut liftable: alloc::collections::BTreeMap<Vec<Elem>, Vec<Elem>> =
        alloc::collections::BTreeMap::new();
    for h in homs_pm.maps() {
        let composed: Vec<Elem> = h.iter().map(|&v| projection.apply(v)).collect();
        liftable.entry(composed).or_insert_with(|| h.clone());
    }
    sweep.quotients_checked += 1;
    for g in homs_pq.maps() {
        sweep.maps_checked += 1;
        match liftable.get(g) {
            Some(lift) => {
                if want_certificates {
                    sweep.certificates.push(LiftCertificate {
                        quotient: witness.clone(),
                        g: g.clone(),
                        lift: lift.clone(),
                    });
                }
            }
            None => {
                sweep.failure = Some(ProjectivityFailure::NoLift {
                    quotient: witness.clone(),
                    g: g.clone(),
                });
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn run_plain(p: &Arc<FiniteSemimodule>, m: &Arc<FiniteSemimodule>, budget: &Budget) -> Result<Sweep> {
    let mut sweep = Sweep::new();
    for rho in enumerate_congruences(m, budget)? {
        let q = quotient_by_congruence(m, &rho);
        let witness = QuotientWitness::Congruence {
            class_of: rho.class_of().to_vec(),
        };
        if !sweep_lifts(p, &q.projection, &witness, true, budget, &mut sweep)? {
            break;
        }
    }
    Ok(sweep)
}

fn run_k(p: &Arc<FiniteSemimodule>, m: &Arc<FiniteSemimodule>, budget: &Budget) -> Result<Sweep> {
    let mut sweep = Sweep::new();
    for sub in subtractive_subsemimodules(m, budget)? {
        let q = quotient_by_subsemimodule(m, &sub);
        let witness = QuotientWitness::Subset {
            elems: sub.elems().to_vec(),
        };
        if !sweep_lifts(p, &q.projection, &witness, true, budget, &mut sweep)? {
            break;
        }
    }
    Ok(sweep)
}

fn run_normally(
    p: &Arc<FiniteSemimodule>,
    m: &Arc<FiniteSemimodule>,
    budget: &Budget,
) -> Result<Sweep> {
    let mut sweep = Sweep::new();
    'subs: for sub in subtractive_subsemimodules(m, budget)? {
        let q = quotient_by_subsemimodule(m, &sub);
        let witness = QuotientWitness::Subset {
            elems: sub.elems().to_vec(),
        };
        let homs_pm = enumerate_hom(p, m, budget)?;
        let homs_pq = enumerate_hom(p, &q.module, budget)?;
        sweep.quotients_checked += 1;
        // Group liftings by their composite with the projection.
        let mut lifts_of: alloc::collections::BTreeMap<Vec<Elem>, Vec<usize>> =
            alloc::collections::BTreeMap::new();
        for (i, h) in homs_pm.maps().iter().enumerate() {
            let composed: Vec<Elem> = h.iter().map(|&v| q.projection.apply(v)).collect();
            lifts_of.entry(composed).or_default().push(i);
        }
        let zero_composite = alloc::vec![0; p.size()];
        let kernel_maps: Vec<usize> = lifts_of
            .get(&zero_composite)
            .cloned()
            .unwrap_or_default();
        for g in homs_pq.maps() {
            sweep.maps_checked += 1;
            let lifts = match lifts_of.get(g) {
                Some(l) => l,
                None => {
                    sweep.failure = Some(ProjectivityFailure::NoLift {
                        quotient: witness.clone(),
                        g: g.clone(),
                    });
                    break 'subs;
                }
            };
            sweep.certificates.push(LiftCertificate {
                quotient: witness.clone(),
                g: g.clone(),
                lift: homs_pm.maps()[lifts[0]].clone(),
            });
            for (ai, &a) in lifts.iter().enumerate() {
                for &b in &lifts[ai..] {
                    let certified = kernel_maps.iter().any(|&k1| {
                        let left = homs_pm.add_index(a, k1);
                        kernel_maps
                            .iter()
                            .any(|&k2| left == homs_pm.add_index(b, k2))
                    });
                    if !certified {
                        sweep.failure = Some(ProjectivityFailure::NoCertificate {
                            quotient: witness.clone(),
                            g: g.clone(),
                            lift_a: homs_pm.maps()[a].clone(),
                            lift_b: homs_pm.maps()[b].clone(),
                        });
                        break 'subs;
                    }
                }
            }
        }
    }
    Ok(sweep)
}

fn run_e(p: &Arc<FiniteSemimodule>, m: &Arc<FiniteSemimodule>, budget: &Budget) -> Result<Sweep> {
    let mut sweep = Sweep::new();
    'subs: for sub in subtractive_subsemimodules(m, budget)? {
        let q = quotient_by_subsemimodule(m, &sub);
        let witness = QuotientWitness::Subset {
            elems: sub.elems().to_vec(),
        };
        let (l_mod, incl) = sub.to_module();
        let homs_pl = enumerate_hom(p, &l_mod, budget)?;
        let homs_pm = enumerate_hom(p, m, budget)?;
        let homs_pq = enumerate_hom(p, &q.module, budget)?;
        sweep.quotients_checked += 1;
        sweep.maps_checked += homs_pq.len();

        // Index maps of the two induced arrows on the hom monoids.
        let inc_map: Vec<Elem> = homs_pl
            .maps()
            .iter()
            .map(|h| {
                let composed: Vec<Elem> = h.iter().map(|&v| incl.apply(v)).collect();
                homs_pm.index_of(&composed).expect("inclusion composite")
            })
            .collect();
        let proj_map: Vec<Elem> = homs_pm
            .maps()
            .iter()
            .map(|h| {
                let composed: Vec<Elem> = h.iter().map(|&v| q.projection.apply(v)).collect();
                homs_pq.index_of(&composed).expect("projection composite")
            })
            .collect();

        // Image of the induced inclusion must be the kernel of the induced
        // projection; the induced inclusion is injective since incl is.
        let mut in_image = alloc::vec![false; homs_pm.len()];
        for &i in &inc_map {
            in_image[i] = true;
        }
        if let Some(i) = (0..homs_pm.len()).find(|&i| in_image[i] != (proj_map[i] == 0)) {
            sweep.failure = Some(ProjectivityFailure::InducedImageKernelMismatch {
                quotient: witness,
                witness: homs_pm.maps()[i].clone(),
            });
            break 'subs;
        }

        // Surjectivity of the induced projection.
        let mut reached = alloc::vec![false; homs_pq.len()];
        for &i in &proj_map {
            reached[i] = true;
        }
        if let Some(gi) = (0..homs_pq.len()).find(|&i| !reached[i]) {
            sweep.failure = Some(ProjectivityFailure::InducedNotSurjective {
                quotient: witness,
                unreached: homs_pq.maps()[gi].clone(),
            });
            break 'subs;
        }

        // k-normality of the induced projection, on the hom monoid.
        let pm_monoid = homs_pm.monoid();
        let pq_monoid = homs_pq.monoid();
        let induced = LinearMap::unchecked(&pm_monoid, &pq_monoid, proj_map);
        let normality = classify_normality(&induced);
        if let Some((a, b)) = normality.k_witness {
            sweep.failure = Some(ProjectivityFailure::InducedNotKNormal {
                quotient: witness,
                pair_a: homs_pm.maps()[a].clone(),
                pair_b: homs_pm.maps()[b].clone(),
            });
            break 'subs;
        }
    }
    Ok(sweep)
}

/// Decides relative projectivity of `p` with respect to `m` in the given
/// flavor.
pub fn relative_projectivity(
    p: &Arc<FiniteSemimodule>,
    m: &Arc<FiniteSemimodule>,
    flavor: Flavor,
    budget: &Budget,
) -> Result<ProjectivityReport> {
    if !p.same_scalars(m) {
        return Err(crate::error::AlgebraError::ScalarMismatch(
            p.scalars().describe(),
            m.scalars().describe(),
        ));
    }
    let sweep = match flavor {
        Flavor::Plain => run_plain(p, m, budget)?,
        Flavor::K => run_k(p, m, budget)?,
        Flavor::Normally => run_normally(p, m, budget)?,
        Flavor::E => run_e(p, m, budget)?,
    };
    let cross_check_agrees = if flavor == Flavor::E {
        let normally = run_normally(p, m, budget)?;
        Some(normally.failure.is_none() == sweep.failure.is_none())
    } else {
        None
    };
    let verdict = sweep.failure.is_none();
    Ok(ProjectivityReport {
        subject: String::from(p.name()),
        target: String::from(m.name()),
        flavor,
        verdict,
        quotients_checked: sweep.quotients_checked,
        maps_checked: sweep.maps_checked,
        failure: sweep.failure,
        certificates: if verdict { sweep.certificates } else { Vec::new() },
        cross_check_agrees,
    })
}

/// Outcome of the retract-of-free search in a bounded global verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RetractOfFree {
    /// Naturals mode: free modules are infinite, search disabled.
    SkippedNaturals,
    Found { rank: u32 },
    NotFoundUpTo { rank: u32 },
}

/// A bounded global projectivity verdict: never "projective" outright,
/// always relative to the swept universe and the free-rank bound.
#[derive(Clone, Debug, Serialize)]
pub struct GlobalProjectivityReport {
    pub subject: String,
    pub flavor: Flavor,
    pub retract_of_free: RetractOfFree,
    pub per_target: Vec<ProjectivityReport>,
    pub all_targets_pass: bool,
}

pub fn bounded_global_projectivity(
    p: &Arc<FiniteSemimodule>,
    universe: &[Arc<FiniteSemimodule>],
    n_max: u32,
    flavor: Flavor,
    budget: &Budget,
) -> Result<GlobalProjectivityReport> {
    let retract_of_free = match p.scalars() {
        ScalarDomain::Naturals => RetractOfFree::SkippedNaturals,
        ScalarDomain::Semiring(s) => {
            let mut found = None;
            for rank in 1..=n_max {
                let free = free_module(s, rank);
                if retract_check(p, &free, budget)?.is_some() {
                    found = Some(rank);
                    break;
                }
            }
            match found {
                Some(rank) => RetractOfFree::Found { rank },
                None => RetractOfFree::NotFoundUpTo { rank: n_max },
            }
        }
    };
    let mut per_target = Vec::new();
    for m in universe {
        per_target.push(relative_projectivity(p, m, flavor, budget)?);
    }
    let all_targets_pass = per_target.iter().all(|r| r.verdict);
    Ok(GlobalProjectivityReport {
        subject: String::from(p.name()),
        flavor,
        retract_of_free,
        per_target,
        all_targets_pass,
    })
}
