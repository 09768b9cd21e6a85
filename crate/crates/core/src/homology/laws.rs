//! Brute-force colimit oracle for finality, and randomized checks of the
//! closure laws of final and initial functors.

use std::sync::Arc;

use serde::Serialize;

use super::finality::{is_final, is_initial, pi0, FinalityMode};
use crate::category::FiniteCategory;
use crate::constructions::{base_change, product, product_functor};
use crate::error::Result;
use crate::fib::is_cocartesian_fibration;
use crate::functor::Functor;
use crate::gen::Gen;
use crate::transport::{cocart_replacement, SetValuedFunctor};

/// `colim G = ⊔ G(x) / (i ~ G(m) i)`.
#[derive(Debug, Clone)]
pub struct SetColimit {
    offset: Vec<usize>,
    pub class: Vec<usize>,
    pub count: usize,
}

impl SetColimit {
    pub fn class_of(&self, x: usize, i: usize) -> usize {
        self.class[self.offset[x] + i]
    }
}

pub fn set_colimit(g: &SetValuedFunctor) -> SetColimit {
    let k = g.base();
    let mut offset = Vec::with_capacity(k.num_objects());
    let mut total = 0;
    for x in 0..k.num_objects() {
        offset.push(total);
        total += g.size(x);
    }
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(total);
    for m in k.non_identity_morphisms() {
        let (x, y) = (k.src(m), k.tgt(m));
        for i in 0..g.size(x) {
            uf.union(offset[x] + i, offset[y] + g.apply(m, i));
        }
    }
    let classes = super::finality::relabel_classes(&uf.into_labeling());
    SetColimit {
        offset,
        class: classes.labels,
        count: classes.count,
    }
}

/// Whether `colim (G ∘ F) → colim G` is a bijection.
pub fn preserves_colimit(f: &Functor, g: &SetValuedFunctor) -> bool {
    let over_d = set_colimit(g);
    let over_c = set_colimit(&g.restrict(f));
    let c = f.source();
    let mut image = vec![usize::MAX; over_c.count];
    let mut hit = vec![false; over_d.count];
    for x in 0..c.num_objects() {
        for i in 0..g.size(f.ob(x)) {
            let (from, to) = (over_c.class_of(x, i), over_d.class_of(f.ob(x), i));
            if image[from] == usize::MAX {
                image[from] = to;
                if std::mem::replace(&mut hit[to], true) {
                    return false;
                }
            } else if image[from] != to {
                unreachable!("the comparison map is well defined");
            }
        }
    }
    hit.iter().all(|&h| h)
}

/// Outcome of testing `F` against a family of set-valued diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimitOracle {
    pub diagrams: usize,
    /// Index of the first diagram whose colimit is not preserved.
    pub counterexample: Option<usize>,
}

impl ColimitOracle {
    pub fn preserves_all(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn colimit_oracle(f: &Functor, diagrams: &[SetValuedFunctor]) -> ColimitOracle {
    ColimitOracle {
        diagrams: diagrams.len(),
        counterexample: diagrams.iter().position(|g| !preserves_colimit(f, g)),
    }
}

/// One family of randomized law checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub instances: usize,
    /// Instances in which the hypothesis held, so the conclusion was tested.
    pub tested: usize,
    pub violations: Vec<String>,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Final,
    Initial,
}

fn check(f: &Functor, side: Side) -> Result<bool> {
    Ok(match side {
        Side::Final => is_final(f, FinalityMode::Pi0Exact)?.verdict,
        Side::Initial => is_initial(f, FinalityMode::Pi0Exact)?.verdict,
    })
}

const TRIES: usize = 200;

fn small_category(g: &mut Gen) -> Arc<FiniteCategory> {
    Arc::new(g.category(3, 8))
}

/// A random functor out of `source` that passes the check, if one turns up.
fn sample_from(g: &mut Gen, source: &Arc<FiniteCategory>, side: Side) -> Result<Option<Functor>> {
    for _ in 0..TRIES {
        let target = small_category(g);
        if let Some(f) = g.functor(source, &target)? {
            if check(&f, side)? {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

fn sample(g: &mut Gen, side: Side) -> Result<Option<Functor>> {
    let source = small_category(g);
    sample_from(g, &source, side)
}

fn describe(fs: &[(&str, &Functor)]) -> String {
    fs.iter()
        .map(|(name, f)| {
            format!(
                "{name}: {} objects/{} morphisms -> {} objects, objects {:?}, morphisms {:?}",
                f.source().num_objects(),
                f.source().num_morphisms(),
                f.target().num_objects(),
                f.object_map(),
                f.morphism_map()
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Draws beyond `count` allowed for instances whose hypotheses fail.
const MAX_DRAWS_PER_INSTANCE: usize = 20;

/// Runs `case` on fresh generators until `count` instances satisfy the
/// hypotheses. `case` returns `None` when they do not hold, otherwise the
/// violation, if any.
fn run_law(
    law: &str,
    seed: u64,
    salt: u64,
    count: usize,
    mut case: impl FnMut(&mut Gen, usize) -> Result<Option<Option<String>>>,
) -> Result<LawReport> {
    let mut report = LawReport {
        law: law.into(),
        instances: 0,
        tested: 0,
        violations: Vec::new(),
    };
    while report.tested < count && report.instances < count * MAX_DRAWS_PER_INSTANCE {
        let i = report.instances;
        report.instances += 1;
        let mut g = Gen::new(seed ^ (i as u64).wrapping_mul(salt));
        if let Some(outcome) = case(&mut g, report.tested)? {
            report.tested += 1;
            report.violations.extend(outcome);
        }
    }
    Ok(report)
}

fn violation(ok: bool, detail: impl FnOnce() -> String) -> Option<Option<String>> {
    Some((!ok).then(detail))
}

/// `f`, `g` of a kind ⟹ `g ∘ f` of that kind.
fn composition_law(seed: u64, count: usize, side: Side) -> Result<LawReport> {
    run_law("", seed, 0x9e37_79b9_7f4a_7c15, count, |g, _| {
        let Some(f) = sample(g, side)? else {
            return Ok(None);
        };
        let Some(h) = sample_from(g, f.target(), side)? else {
            return Ok(None);
        };
        let ok = check(&f.then(&h), side)?;
        Ok(violation(ok, || describe(&[("f", &f), ("g", &h)])))
    })
}

/// `f` and `g ∘ f` of a kind ⟹ `g` of that kind.
fn cancellation_law(seed: u64, count: usize, side: Side) -> Result<LawReport> {
    run_law("", seed, 0xbf58_476d_1ce4_e5b9, count, |g, _| {
        let Some(f) = sample(g, side)? else {
            return Ok(None);
        };
        let mut found = None;
        for _ in 0..TRIES {
            let target = small_category(g);
            if let Some(h) = g.functor(f.target(), &target)? {
                if check(&f.then(&h), side)? {
                    found = Some(h);
                    break;
                }
            }
        }
        let Some(h) = found else { return Ok(None) };
        let ok = check(&h, side)?;
        Ok(violation(ok, || describe(&[("f", &f), ("g", &h)])))
    })
}

/// `f`, `g` final ⟹ `f × g` final.
fn product_law(seed: u64, count: usize) -> Result<LawReport> {
    let law = "product of final functors is final";
    run_law(law, seed, 0x94d0_49bb_1331_11eb, count, |g, _| {
        let (Some(f), Some(h)) = (sample(g, Side::Final)?, sample(g, Side::Final)?) else {
            return Ok(None);
        };
        let (s, t) = (
            product(f.source(), h.source()),
            product(f.target(), h.target()),
        );
        let ok = check(&product_functor(&f, &h, &s, &t), Side::Final)?;
        Ok(violation(ok, || describe(&[("f", &f), ("g", &h)])))
    })
}

/// `C × [1] → C` is final and initial, also at the certified level.
fn localization_law(seed: u64, count: usize, certify_dim: usize) -> Result<LawReport> {
    let one = Arc::new(crate::catalog::interval(1));
    let law = "C x [1] -> C is final and initial";
    run_law(law, seed, 0xd6e8_feb8_6659_fd93, count, |g, _| {
        let c = Arc::new(g.category(4, 10));
        let pr = product(&c, &one).left;
        let mode = FinalityMode::Certified(certify_dim);
        let ok = is_final(&pr, mode)?.verdict && is_initial(&pr, mode)?.verdict;
        Ok(violation(ok, || describe(&[("projection", &pr)])))
    })
}

/// A random coCartesian fibration: a product projection, or the coCartesian
/// replacement of a random functor.
fn cocartesian(g: &mut Gen) -> Result<Functor> {
    use rand::Rng;
    let base = small_category(g);
    if g.rng().gen_bool(0.5) {
        let fiber = small_category(g);
        return Ok(product(&fiber, &base).right);
    }
    let source = small_category(g);
    let f = loop {
        if let Some(f) = g.functor(&source, &base)? {
            break f;
        }
    };
    let r = cocart_replacement(&f)?;
    Ok(r.projection)
}

/// `f: J → K` final and `p: E → K` coCartesian ⟹ `J ×_K E → E` final.
fn pullback_law(seed: u64, count: usize) -> Result<LawReport> {
    let law = "final functors pull back along coCartesian fibrations";
    run_law(law, seed, 0xff51_afd7_ed55_8ccd, count, |g, _| {
        let p = cocartesian(g)?;
        if p.source().num_objects() > 12 || !is_cocartesian_fibration(&p).holds {
            return Ok(None);
        }
        let mut found = None;
        for _ in 0..TRIES {
            let j = small_category(g);
            if let Some(f) = g.functor(&j, p.target())? {
                if check(&f, Side::Final)? {
                    found = Some(f);
                    break;
                }
            }
        }
        let Some(f) = found else { return Ok(None) };
        let bar = base_change(&p, &f).left;
        let ok = check(&bar, Side::Final)?;
        Ok(violation(ok, || describe(&[("p", &p), ("f", &f)])))
    })
}

/// Final and initial functors are bijective on `π0`.
fn pi0_law(seed: u64, count: usize) -> Result<LawReport> {
    let law = "final and initial functors are bijective on components";
    run_law(law, seed, 0x2545_f491_4f6c_dd1d, count, |g, tested| {
        let side = if tested % 2 == 0 {
            Side::Final
        } else {
            Side::Initial
        };
        let Some(f) = sample(g, side)? else {
            return Ok(None);
        };
        let (pc, pd) = (pi0(f.source()), pi0(f.target()));
        let mut image = vec![usize::MAX; pc.count];
        let mut hit = vec![false; pd.count];
        let mut ok = true;
        for o in 0..f.source().num_objects() {
            let (a, b) = (pc.labels[o], pd.labels[f.ob(o)]);
            if image[a] == usize::MAX {
                image[a] = b;
                ok &= !std::mem::replace(&mut hit[b], true);
            }
        }
        ok &= hit.iter().all(|&h| h);
        Ok(violation(ok, || describe(&[("f", &f)])))
    })
}

/// Every closure law on `count` random instances each.
pub fn check_final_closure(seed: u64, count: usize) -> Result<Vec<LawReport>> {
    let named = |mut r: LawReport, name: &str| {
        r.law = name.into();
        r
    };
    Ok(vec![
        named(
            composition_law(seed, count, Side::Final)?,
            "final functors compose",
        ),
        named(
            composition_law(seed ^ 1, count, Side::Initial)?,
            "initial functors compose",
        ),
        named(
            cancellation_law(seed, count, Side::Final)?,
            "f and gf final imply g final",
        ),
        named(
            cancellation_law(seed ^ 1, count, Side::Initial)?,
            "f and gf initial imply g initial",
        ),
        product_law(seed, count)?,
        localization_law(seed, count, 2)?,
        pullback_law(seed, count)?,
        pi0_law(seed, count)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::transport::enumerate_set_functors;

    #[test]
    fn endpoint_of_an_interval_preserves_colimits() {
        let two = Arc::new(catalog::interval(2));
        let pt = Arc::new(catalog::terminal());
        let diagrams = enumerate_set_functors(&two, 2).unwrap();
        assert!(
            colimit_oracle(&Functor::point(pt.clone(), two.clone(), 2), &diagrams).preserves_all()
        );
        assert!(!colimit_oracle(&Functor::point(pt, two, 0), &diagrams).preserves_all());
    }

    #[test]
    fn colimit_of_the_terminal_diagram_counts_components() {
        let c = Arc::new(crate::constructions::coproduct(&[
            &catalog::interval(1),
            &catalog::walking_iso(),
        ]));
        assert_eq!(set_colimit(&SetValuedFunctor::terminal(c)).count, 2);
    }
}
