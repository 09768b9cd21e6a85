//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use fibcat_core::catalog;
use fibcat_core::category::FiniteCategory;
use fibcat_core::constructions::{arrow_category, full_subcategory_arc};
use fibcat_core::corr::{
    coend, hom_profunctor, triangle_from_profunctor, Profunctor, ProfunctorIso,
};
use fibcat_core::error::Result;
use fibcat_core::fib::{is_cocartesian_fibration, is_exponentiable, is_left_final, Witness};
use fibcat_core::functor::Functor;
use fibcat_core::gen::Gen;
use fibcat_core::homology::homology;
use fibcat_core::search::FunctorSearch;
use fibcat_core::suite::{self, FamilyReport};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

/// Passes when no family fails and each exercised at least `min_tested`
/// instances whose hypotheses held.
fn families(reports: &[FamilyReport], min_tested: usize) -> Outcome {
    let pass = reports.iter().all(|r| r.passed() && r.tested >= min_tested);
    let mut parts: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{}: {}/{} tested, {} failures",
                r.family,
                r.tested,
                r.instances,
                r.failures.len()
            )
        })
        .collect();
    for r in reports {
        for f in r.failures.iter().take(3) {
            parts.push(format!(
                "[{} #{} seed {}] {}",
                r.family, f.instance, f.seed, f.detail
            ));
        }
    }
    Outcome {
        pass,
        detail: parts.join("; "),
    }
}

fn c1_equivalence_triangle() -> Result<Outcome> {
    let results: Vec<(usize, bool)> = (0..200u64)
        .map(|i| {
            let p = Gen::new(SEED + i).bounded_profunctor(4, 10);
            assert!(p.source().num_objects() <= 4 && p.source().num_morphisms() <= 10);
            assert!(p.target().num_objects() <= 4 && p.target().num_morphisms() <= 10);
            triangle_from_profunctor(&p).map(|r| (r.round_trips.len(), r.all_hold()))
        })
        .collect::<Result<_>>()?;
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.1 || r.0 != 6)
        .map(|(i, _)| i)
        .collect();
    let trips: usize = results.iter().map(|r| r.0).sum();
    Ok(Outcome {
        pass: failed.is_empty(),
        detail: format!("200 profunctors, {trips} round trips, failing instances {failed:?}"),
    })
}

fn c2_composition_routes() -> Result<Outcome> {
    Ok(families(&[suite::composition_routes(SEED, 100)], 100))
}

fn convex_inclusion(n: usize, i: usize, j: usize) -> Functor {
    let big = Arc::new(catalog::interval(n));
    full_subcategory_arc(&big, &(i..=j).collect::<Vec<_>>()).inclusion
}

fn c3_named_examples() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;

    let two = Arc::new(catalog::interval(2));
    let ends = full_subcategory_arc(&two, &[0, 2]).inclusion;
    let v = is_exponentiable(&ends);
    let empty_witness = matches!(v.witness, Some(Witness::Factorization { objects: 0, .. }));
    pass &= !v.holds && empty_witness;
    notes.push(format!(
        "{{0<2}} in [2] rejected with empty factorization: {}",
        !v.holds && empty_witness
    ));

    let one = Arc::new(catalog::interval(1));
    let mut to_one = 0;
    let mut bad = 0;
    for (_, c) in catalog::small_corpus() {
        for f in FunctorSearch::new(&Arc::new(c), &one).collect()? {
            to_one += 1;
            bad += usize::from(!is_exponentiable(&f).holds);
        }
    }
    let mut g = Gen::new(SEED);
    for _ in 0..200 {
        to_one += 1;
        bad += usize::from(!is_exponentiable(&g.over_interval(1, 16)).holds);
    }
    pass &= bad == 0;
    notes.push(format!("functors to [1]: {to_one} checked, {bad} rejected"));

    let mut convex = 0;
    let mut bad = 0;
    for n in 0..=5 {
        for i in 0..=n {
            for j in i..=n {
                convex += 1;
                bad += usize::from(!is_exponentiable(&convex_inclusion(n, i, j)).holds);
            }
        }
    }
    pass &= bad == 0;
    notes.push(format!(
        "convex inclusions into [n], n <= 5: {convex} checked, {bad} rejected"
    ));

    let groupoids: Vec<FiniteCategory> = vec![
        catalog::walking_iso(),
        catalog::cyclic_group(2),
        catalog::cyclic_group(3),
        catalog::discrete(&["a", "b"]),
        fibcat_core::constructions::coproduct(&[&catalog::walking_iso(), &catalog::terminal()]),
    ];
    let mut into_groupoids = 0;
    let mut bad = 0;
    for k in groupoids {
        assert!(k.is_groupoid());
        let k = Arc::new(k);
        for (_, c) in catalog::small_corpus() {
            for f in FunctorSearch::new(&Arc::new(c), &k).collect()? {
                into_groupoids += 1;
                bad += usize::from(!is_exponentiable(&f).holds);
            }
        }
    }
    pass &= bad == 0;
    notes.push(format!(
        "functors to groupoids: {into_groupoids} checked, {bad} rejected"
    ));

    let mut ar_ok = true;
    for n in 0..=3 {
        let base = Arc::new(catalog::interval(n));
        let ev_t = arrow_category(&base).ev_t;
        ar_ok &= is_cocartesian_fibration(&ev_t).holds
            && is_left_final(&ev_t, None)?.holds
            && is_left_final(&ev_t, Some(2))?.holds;
    }
    pass &= ar_ok;
    notes.push(format!(
        "ev_t on Ar([n]) coCartesian and left final for n <= 3: {ar_ok}"
    ));
    Ok(Outcome {
        pass,
        detail: notes.join("; "),
    })
}

/// The composition map `P ⊗ Q → Hom`, `[x ⊗ y] ↦ y ∘ x`, read through
/// element names (which are morphism ids of `Ret`).
fn composition_iso(
    p: &Profunctor,
    q: &Profunctor,
    hom: &Profunctor,
    ret: &FiniteCategory,
) -> Result<Option<ProfunctorIso>> {
    let c = coend(p, q)?;
    let composite = &c.profunctor;
    if composite.source() != hom.source() || composite.target() != hom.target() {
        return Ok(None);
    }
    let components = (0..composite.cells().len())
        .map(|cell| {
            let (a, z) = (
                cell / composite.target().num_objects(),
                cell % composite.target().num_objects(),
            );
            c.reps[cell]
                .iter()
                .map(|&(b, x, y)| {
                    let f = ret
                        .morphism_index(&p.elements(a, b)[x])
                        .expect("element names a morphism");
                    let g = ret
                        .morphism_index(&q.elements(b, z)[y])
                        .expect("element names a morphism");
                    let gf = ret.morphism_id(ret.compose(g, f));
                    hom.elements(a, z)
                        .iter()
                        .position(|e| e == gf)
                        .unwrap_or(usize::MAX)
                })
                .collect()
        })
        .collect();
    let iso = ProfunctorIso { components };
    Ok(iso.verify(composite, hom).then_some(iso))
}

fn c4_idem_ret() -> Result<Outcome> {
    let ret = Arc::new(catalog::ret());
    let idem = Arc::new(catalog::idem());
    let iota = Functor::from_ids(
        idem.clone(),
        ret.clone(),
        &[("y", "y")],
        &[("id_y", "id_y"), ("e", "e")],
    )?;
    let hom = hom_profunctor(&ret);
    let id_ret = Functor::identity(ret.clone());
    let p = hom.restrict(&iota, &id_ret);
    let q = hom.restrict(&id_ret, &iota);
    let over_idem = composition_iso(&p, &q, &hom_profunctor(&idem), &ret)?.is_some();
    let over_ret = composition_iso(&q, &p, &hom, &ret)?.is_some();
    Ok(Outcome {
        pass: over_idem && over_ret,
        detail: format!("P (x) Q = Hom_Idem: {over_idem}; Q (x) P = Hom_Ret: {over_ret}"),
    })
}

fn c5_menus() -> Result<Outcome> {
    Ok(families(&[suite::classifier_menus(SEED, 300, 12, 2)], 300))
}

fn c6_replacements() -> Result<Outcome> {
    Ok(families(&[suite::replacements(SEED, 100)], 100))
}

fn c7_pushforward() -> Result<Outcome> {
    Ok(families(&[suite::pushforward(SEED, 50)], 50))
}

fn c8_finality_exactness() -> Result<Outcome> {
    Ok(families(&[suite::finality_exactness(2)?], 1))
}

fn c9_finality_laws() -> Result<Outcome> {
    Ok(families(&suite::finality_laws(SEED, 100)?, 100))
}

fn c10_homology() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    let agree = |c: &FiniteCategory| -> Result<bool> {
        let ours = homology(c, 3)?;
        let theirs = common::homology(c, 3);
        Ok(ours.groups.iter().zip(&theirs).all(|(g, (rank, torsion))| {
            g.rank == *rank && g.torsion.iter().map(|&t| t as i128).collect::<Vec<_>>() == *torsion
        }))
    };
    for n in 0..=4 {
        let c = catalog::interval(n);
        let ok = homology(&c, 3)?.reduced_trivial() && agree(&c)?;
        pass &= ok;
        notes.push(format!("[{n}] acyclic: {ok}"));
    }
    let iso = catalog::walking_iso();
    let ok = homology(&iso, 3)?.reduced_trivial() && agree(&iso)?;
    pass &= ok;
    notes.push(format!("walking iso acyclic: {ok}"));
    let z2 = catalog::cyclic_group(2);
    let h = homology(&z2, 3)?;
    let expected = [(1usize, vec![]), (0, vec![2u64]), (0, vec![]), (0, vec![2])];
    let ok = h
        .groups
        .iter()
        .map(|g| (g.rank, g.torsion.clone()))
        .eq(expected.iter().cloned())
        && agree(&z2)?;
    pass &= ok;
    notes.push(format!(
        "Z/2: H0 = Z, H1 = Z/2, H2 = 0, H3 = Z/2, matching the boundary oracle: {ok}"
    ));
    Ok(Outcome {
        pass,
        detail: notes.join("; "),
    })
}

fn c11_quillen() -> Result<Outcome> {
    let r = suite::quillen_b(SEED, 50, Some(2));
    let mut o = families(std::slice::from_ref(&r), 50);
    if r.tested != 50 {
        o.pass = false;
        o.detail
            .push_str("; fewer than 50 squares with a qualifying right leg");
    }
    Ok(o)
}

fn c12_determinism() -> Result<Outcome> {
    let run = |threads: usize| -> Result<String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        let report = pool.install(|| suite::run_suite(SEED, 6))?;
        Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
    };
    let (one, four) = (run(1)?, run(4)?);
    Ok(Outcome {
        pass: one == four,
        detail: format!(
            "suite report with 1 and 4 threads: {} and {} bytes, identical: {}",
            one.len(),
            four.len(),
            one == four
        ),
    })
}

type Criterion = (&'static str, Duration, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "equivalence triangle",
            Duration::from_secs(60),
            c1_equivalence_triangle,
        ),
        (
            "composition route coherence",
            Duration::from_secs(120),
            c2_composition_routes,
        ),
        (
            "named examples and counterexamples",
            Duration::from_secs(120),
            c3_named_examples,
        ),
        ("Idem/Ret bimodules", Duration::from_secs(60), c4_idem_ret),
        ("classifier menus", Duration::from_secs(600), c5_menus),
        (
            "replacement universal properties",
            Duration::from_secs(120),
            c6_replacements,
        ),
        (
            "pushforward adjunction",
            Duration::from_secs(180),
            c7_pushforward,
        ),
        (
            "finality exactness",
            Duration::from_secs(120),
            c8_finality_exactness,
        ),
        (
            "finality calculus laws",
            Duration::from_secs(600),
            c9_finality_laws,
        ),
        ("homology engine", Duration::from_secs(60), c10_homology),
        ("Quillen B at pi0", Duration::from_secs(60), c11_quillen),
        (
            "determinism across thread counts",
            Duration::from_secs(600),
            c12_determinism,
        ),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|f| f == &n.to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!("error: {e}"),
        });
        let took = start.elapsed();
        let in_time = took <= *budget;
        let pass = outcome.pass && in_time;
        failed += usize::from(!pass);
        println!(
            "criterion {n:>2} {}: {name} ({:.1}s of {}s): {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs(),
            outcome.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
