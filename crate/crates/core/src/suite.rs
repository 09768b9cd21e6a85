//! The randomized property suite. Each family draws its instances from
//! seeds derived from `(seed, family, index)`, runs them in parallel and
//! collects results in index order, so reports do not depend on the thread
//! count.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::category::FiniteCategory;
use crate::constructions::arrow_category;
use crate::corr::{route_coherence, triangle_from_corr, triangle_from_profunctor, Correspondence};
use crate::error::Result;
use crate::fib::menus::{all_menus, cocartesian_menus, left_final_menu, right_initial_menu};
use crate::fib::{
    is_cartesian_fibration, is_cocartesian_fibration, is_conduche, is_left_final, is_right_initial,
    quillen_b_pi0_square,
};
use crate::functor::Functor;
use crate::gen::Gen;
use crate::homology::{check_final_closure, colimit_oracle, homology, is_final, FinalityMode};
use crate::search::FunctorSearch;
use crate::transport::{
    cart_replacement, cocart_replacement, enumerate_set_functors, lfib_replacement,
    lfib_universal_property, pushforward_adjunction, pushforward_exponentiable, unstraighten,
};

/// A failing instance, reproducible from `seed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: usize,
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub instances: usize,
    /// Instances whose hypotheses held, so that the property was exercised.
    pub tested: usize,
    pub failures: Vec<Failure>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub size: usize,
    pub families: Vec<FamilyReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyReport::passed)
    }
}

/// A well-mixed seed for instance `i` of a family.
pub fn instance_seed(seed: u64, family: &str, i: usize) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in family.bytes().chain((i as u64).to_le_bytes()) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
        h ^= h >> 29;
    }
    h
}

enum Outcome {
    Skipped,
    Passed,
    Failed(String),
}

fn run_family(
    family: &str,
    seed: u64,
    count: usize,
    case: impl Fn(&mut Gen) -> Result<Outcome> + Sync,
) -> FamilyReport {
    let outcomes: Vec<(u64, Outcome)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let s = instance_seed(seed, family, i);
            let outcome =
                case(&mut Gen::new(s)).unwrap_or_else(|e| Outcome::Failed(format!("error: {e}")));
            (s, outcome)
        })
        .collect();
    let mut report = FamilyReport {
        family: family.into(),
        instances: count,
        tested: 0,
        failures: Vec::new(),
    };
    for (i, (s, o)) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Skipped => {}
            Outcome::Passed => report.tested += 1,
            Outcome::Failed(detail) => {
                report.tested += 1;
                report.failures.push(Failure {
                    instance: i,
                    seed: s,
                    detail,
                });
            }
        }
    }
    report
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Passed
    } else {
        Outcome::Failed(detail())
    }
}

fn shape(f: &Functor) -> String {
    format!(
        "functor from {} objects/{} morphisms to {} objects/{} morphisms",
        f.source().num_objects(),
        f.source().num_morphisms(),
        f.target().num_objects(),
        f.target().num_morphisms()
    )
}

/// Six conversion round trips on random profunctors between categories with
/// at most four objects and ten morphisms; odd instances start from a
/// random functor to `[1]` instead.
pub fn equivalence_triangle(seed: u64, count: usize) -> FamilyReport {
    run_family("equivalence-triangle", seed, count, |g| {
        let report = if g.coin() {
            let p = g.bounded_profunctor(4, 10);
            triangle_from_profunctor(&p)?
        } else {
            let pi = g.over_interval(1, 12);
            triangle_from_corr(&Correspondence::from_projection(pi)?)?
        };
        Ok(verdict(report.all_hold(), || {
            let bad: Vec<&str> = report
                .round_trips
                .iter()
                .filter(|r| !r.holds)
                .map(|r| r.route.as_str())
                .collect();
            format!("round trips failed: {}", bad.join(", "))
        }))
    })
}

/// Correspondence glue, coend and bifibration routes on random composable
/// pairs.
pub fn composition_routes(seed: u64, count: usize) -> FamilyReport {
    run_family("composition-routes", seed, count, |g| {
        let a = Arc::new(g.category(3, 8));
        let b = Arc::new(g.category(3, 8));
        let c = Arc::new(g.category(3, 8));
        let p = g.profunctor(&a, &b);
        let q = g.profunctor(&b, &c);
        let r = route_coherence(&p, &q)?;
        Ok(verdict(r.holds(), || {
            format!("corr route {}, bifib route {}", r.corr_route, r.bifib_route)
        }))
    })
}

/// Every equivalence menu on random functors over `[1]` and `[2]` with at
/// most `max_morphisms` morphisms, including the certified finality menus.
pub fn classifier_menus(
    seed: u64,
    count: usize,
    max_morphisms: usize,
    certify_dim: usize,
) -> FamilyReport {
    run_family("classifier-menus", seed, count, |g| {
        let n = 1 + g.index(2);
        let pi = g.over_interval(n, max_morphisms);
        let mut menus = all_menus(&pi)?;
        menus.extend(cocartesian_menus(&pi));
        menus.push(left_final_menu(&pi, FinalityMode::Certified(certify_dim))?);
        menus.push(right_initial_menu(
            &pi,
            FinalityMode::Certified(certify_dim),
        )?);
        let bad: Vec<String> = menus
            .iter()
            .filter(|m| !m.agrees())
            .map(|m| format!("{m:?}"))
            .collect();
        Ok(verdict(bad.is_empty(), || {
            format!("{}: {}", shape(&pi), bad.join("; "))
        }))
    })
}

fn random_over_small_base(g: &mut Gen) -> Result<Functor> {
    if g.coin() {
        let n = 1 + g.index(2);
        return Ok(g.over_interval(n, 12));
    }
    let e = Arc::new(g.category(4, 10));
    loop {
        let k = Arc::new(g.category(3, 8));
        if let Some(f) = g.functor(&e, &k)? {
            return Ok(f);
        }
    }
}

/// The coCartesian and Cartesian replacements are (co)Cartesian, and the
/// left fibration replacement has its universal property against every
/// discrete opfibration with fibers of size at most two.
pub fn replacements(seed: u64, count: usize) -> FamilyReport {
    run_family("replacements", seed, count, |g| {
        let pi = random_over_small_base(g)?;
        let cocart = cocart_replacement(&pi)?;
        if !is_cocartesian_fibration(&cocart.projection).holds {
            return Ok(Outcome::Failed(format!(
                "{}: coCartesian replacement is not coCartesian",
                shape(&pi)
            )));
        }
        let cart = cart_replacement(&pi)?;
        if !is_cartesian_fibration(&cart.projection).holds {
            return Ok(Outcome::Failed(format!(
                "{}: Cartesian replacement is not Cartesian",
                shape(&pi)
            )));
        }
        let r = lfib_replacement(&pi);
        for (i, f) in enumerate_set_functors(pi.target(), 2)?.iter().enumerate() {
            let z = unstraighten(f).projection;
            let check = lfib_universal_property(&pi, &r, &z)?;
            if !check.bijective {
                return Ok(Outcome::Failed(format!(
                    "{}: universal property fails against diagram {i}: {check:?}",
                    shape(&pi)
                )));
            }
        }
        Ok(Outcome::Passed)
    })
}

/// `Fun_{/K}(J, π_∗Z) ≅ Fun_{/E}(J ×_K E, Z)` for random exponentiable `π`
/// over `[2]`, small `ζ: Z → E`, and every `J → [2]` with `J` in the small
/// corpus.
pub fn pushforward(seed: u64, count: usize) -> FamilyReport {
    let base = Arc::new(catalog::interval(2));
    let probes: Vec<Functor> = catalog::small_corpus()
        .into_iter()
        .flat_map(|(_, j)| {
            FunctorSearch::new(&Arc::new(j), &base)
                .collect()
                .expect("few functors into [2]")
        })
        .collect();
    run_family("pushforward", seed, count, |g| {
        let pi = loop {
            let pi = g.over_interval(2, 10);
            if pi.source().num_objects() <= 4 && is_conduche(&pi).holds {
                break pi;
            }
        };
        let e = pi.source().clone();
        let zeta = match g.index(3) {
            0 => Functor::identity(e.clone()),
            1 => arrow_category(&e).ev_t,
            _ => {
                let z = Arc::new(g.category(3, 6));
                match g.functor(&z, &e)? {
                    Some(f) => f,
                    None => Functor::identity(e.clone()),
                }
            }
        };
        let push = pushforward_exponentiable(&pi, &zeta)?;
        for (i, p) in probes.iter().enumerate() {
            let check = pushforward_adjunction(&push, &pi, &zeta, p)?;
            if !check.bijective {
                return Ok(Outcome::Failed(format!(
                    "{}: adjunction fails at probe {i}: {check:?}",
                    shape(&pi)
                )));
            }
        }
        Ok(Outcome::Passed)
    })
}

/// The categories on at most three objects used for exhaustive finality
/// checks.
pub fn finality_corpus() -> Vec<(String, Arc<FiniteCategory>)> {
    catalog::small_corpus()
        .into_iter()
        .map(|(n, c)| (n, Arc::new(c)))
        .collect()
}

/// Per pair of corpus categories `(C, D)`: every functor `C → D` is final in
/// the `π0` sense exactly when it preserves every set-valued colimit with
/// values of size at most two.
pub fn finality_exactness(max_size: usize) -> Result<FamilyReport> {
    let corpus = finality_corpus();
    let diagrams: Vec<_> = corpus
        .iter()
        .map(|(_, d)| enumerate_set_functors(d, max_size))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..corpus.len())
        .flat_map(|c| (0..corpus.len()).map(move |d| (c, d)))
        .collect();
    let results: Vec<Result<(usize, Vec<String>)>> = pairs
        .par_iter()
        .map(|&(ci, di)| {
            let (cn, c) = &corpus[ci];
            let (dn, d) = &corpus[di];
            let mut bad = Vec::new();
            let functors = FunctorSearch::new(c, d).collect()?;
            for f in &functors {
                let comma = is_final(f, FinalityMode::Pi0Exact)?.verdict;
                let oracle = colimit_oracle(f, &diagrams[di]);
                if comma != oracle.preserves_all() {
                    bad.push(format!(
                        "{cn} -> {dn}, objects {:?} morphisms {:?}: comma check {comma}, colimit oracle {:?}",
                        f.object_map(),
                        f.morphism_map(),
                        oracle.counterexample
                    ));
                }
            }
            Ok((functors.len(), bad))
        })
        .collect();
    let mut report = FamilyReport {
        family: "finality-exactness".into(),
        instances: 0,
        tested: 0,
        failures: Vec::new(),
    };
    for (k, r) in results.into_iter().enumerate() {
        let (n, bad) = r?;
        report.instances += n;
        report.tested += n;
        report
            .failures
            .extend(bad.into_iter().map(|detail| Failure {
                instance: k,
                seed: 0,
                detail,
            }));
    }
    Ok(report)
}

/// Closure laws of final and initial functors, each on `count` instances.
pub fn finality_laws(seed: u64, count: usize) -> Result<Vec<FamilyReport>> {
    let laws = check_final_closure(seed, count)?;
    Ok(laws
        .into_iter()
        .map(|l| FamilyReport {
            family: format!("finality-law: {}", l.law),
            instances: l.instances,
            tested: l.tested,
            failures: l
                .violations
                .into_iter()
                .map(|detail| Failure {
                    instance: 0,
                    seed,
                    detail,
                })
                .collect(),
        })
        .collect())
}

/// `π0` of a strict pullback along a left-final, right-initial leg is the
/// pullback of `π0` sets.
pub fn quillen_b(seed: u64, count: usize, certify_dim: Option<usize>) -> FamilyReport {
    run_family("quillen-b-pi0", seed, count, |g| {
        let mut leg = None;
        for _ in 0..100 {
            let p = random_over_small_base(g)?;
            if is_left_final(&p, certify_dim)?.holds && is_right_initial(&p, certify_dim)?.holds {
                leg = Some(p);
                break;
            }
        }
        let Some(p) = leg else {
            return Ok(Outcome::Skipped);
        };
        let y2 = Arc::new(g.category(3, 8));
        let Some(h) = g.functor(&y2, p.target())? else {
            return Ok(Outcome::Skipped);
        };
        let sq = quillen_b_pi0_square(&p, &h, certify_dim)?;
        Ok(verdict(sq.holds(), || format!("{}: {sq:?}", shape(&p))))
    })
}

/// Homology is invariant under renumbering objects and morphisms.
pub fn homology_relabeling(seed: u64, count: usize) -> FamilyReport {
    run_family("homology-relabeling", seed, count, |g| {
        let c = g.category(4, 10);
        let shuffled = g.shuffled(&c);
        let (a, b) = (homology(&c, 3)?, homology(&shuffled, 3)?);
        Ok(verdict(a.groups == b.groups, || {
            format!("{:?} vs {:?}", a.groups, b.groups)
        }))
    })
}

/// Every family at `size` instances each.
pub fn run_suite(seed: u64, size: usize) -> Result<SuiteReport> {
    let mut families = vec![
        equivalence_triangle(seed, size),
        composition_routes(seed, size),
        classifier_menus(seed, size, 12, 2),
        replacements(seed, size),
        pushforward(seed, size),
        finality_exactness(2)?,
    ];
    families.extend(finality_laws(seed, size)?);
    families.push(quillen_b(seed, size, Some(2)));
    families.push(homology_relabeling(seed, size));
    Ok(SuiteReport {
        seed,
        size,
        families,
    })
}
