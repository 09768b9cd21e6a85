//! Exhaustive functor enumeration, isomorphism search, and categories of
//! sections, all behind a candidate cap.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use crate::category::FiniteCategory;
use crate::error::{CatError, Result};
use crate::functor::Functor;

/// Default cap on the number of candidate assignments explored by one search.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_ENUMERATION_CAP`].
pub const ENUMERATION_CAP_ENV: &str = "FIBCAT_ENUM_CAP";

pub fn enumeration_cap() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(ENUMERATION_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_ENUMERATION_CAP)
    })
}

type MorphismFilter<'a> = Box<dyn Fn(usize, usize) -> bool + 'a>;

/// Backtracking enumeration of functors `source → target` subject to
/// per-object candidate lists and a per-morphism filter.
pub struct FunctorSearch<'a> {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    object_candidates: Vec<Vec<usize>>,
    morphism_filter: Option<MorphismFilter<'a>>,
    injective: bool,
    cap: u64,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(source: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>) -> Self {
        let all: Vec<usize> = (0..target.num_objects()).collect();
        FunctorSearch {
            object_candidates: vec![all; source.num_objects()],
            source: source.clone(),
            target: target.clone(),
            morphism_filter: None,
            injective: false,
            cap: enumeration_cap(),
        }
    }

    /// Restricts the images of object `o`.
    pub fn objects(mut self, f: impl Fn(usize, usize) -> bool) -> Self {
        for (o, cands) in self.object_candidates.iter_mut().enumerate() {
            cands.retain(|&t| f(o, t));
        }
        self
    }

    /// Restricts the image of each morphism.
    pub fn morphisms(mut self, f: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.morphism_filter = Some(Box::new(f));
        self
    }

    /// Only injective-on-objects-and-morphisms functors.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    pub fn cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    fn allowed(&self, m: usize, t: usize) -> bool {
        self.morphism_filter.as_ref().is_none_or(|f| f(m, t))
    }

    /// Visits every functor; the visitor may stop early.
    pub fn for_each(
        &self,
        mut visit: impl FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    ) -> Result<()> {
        let s = &*self.source;
        let t = &*self.target;
        let mut budget = self.cap;
        let mut triples: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); s.num_morphisms()];
        for (g, f, c) in s.table() {
            triples[g].push((g, f, c));
            if f != g {
                triples[f].push((g, f, c));
            }
            if c != g && c != f {
                triples[c].push((g, f, c));
            }
        }
        let order: Vec<usize> = s.non_identity_morphisms().collect();
        let mut obj = vec![usize::MAX; s.num_objects()];
        let mut mor = vec![usize::MAX; s.num_morphisms()];
        let mut used_obj = vec![false; t.num_objects()];
        let mut used_mor = vec![false; t.num_morphisms()];
        let _ = self.objects_rec(
            0,
            &mut obj,
            &mut used_obj,
            &mut budget,
            &mut |obj: &[usize], budget: &mut u64| {
                for o in 0..s.num_objects() {
                    let i = s.identity(o);
                    mor[i] = t.identity(obj[o]);
                }
                if self.injective {
                    used_mor.iter_mut().for_each(|u| *u = false);
                    for o in 0..s.num_objects() {
                        used_mor[mor[s.identity(o)]] = true;
                    }
                }
                // identities must pass the filter too
                if (0..s.num_objects()).any(|o| !self.allowed(s.identity(o), mor[s.identity(o)])) {
                    return Ok(ControlFlow::Continue(()));
                }
                self.morphisms_rec(
                    0,
                    &order,
                    &triples,
                    obj,
                    &mut mor,
                    &mut used_mor,
                    budget,
                    &mut visit,
                )
            },
        )?;
        Ok(())
    }

    #[allow(clippy::type_complexity)]
    fn objects_rec(
        &self,
        i: usize,
        obj: &mut Vec<usize>,
        used: &mut Vec<bool>,
        budget: &mut u64,
        done: &mut dyn FnMut(&[usize], &mut u64) -> Result<ControlFlow<()>>,
    ) -> Result<ControlFlow<()>> {
        let s = &*self.source;
        let t = &*self.target;
        if i == s.num_objects() {
            return done(obj, budget);
        }
        for &cand in &self.object_candidates[i] {
            if self.injective && used[cand] {
                continue;
            }
            if *budget == 0 {
                return Err(CatError::EnumerationCap { cap: self.cap });
            }
            *budget -= 1;
            obj[i] = cand;
            // every morphism between assigned objects needs some image
            let feasible = (0..=i).all(|j| {
                let fwd = s
                    .hom(i, j)
                    .iter()
                    .all(|&m| t.hom(cand, obj[j]).iter().any(|&n| self.allowed(m, n)));
                let bwd = s
                    .hom(j, i)
                    .iter()
                    .all(|&m| t.hom(obj[j], cand).iter().any(|&n| self.allowed(m, n)));
                fwd && bwd
            });
            if !feasible {
                continue;
            }
            used[cand] = true;
            let r = self.objects_rec(i + 1, obj, used, budget, done)?;
            used[cand] = false;
            if r.is_break() {
                return Ok(r);
            }
        }
        obj[i] = usize::MAX;
        Ok(ControlFlow::Continue(()))
    }

    #[allow(clippy::too_many_arguments)]
    fn morphisms_rec(
        &self,
        k: usize,
        order: &[usize],
        triples: &[Vec<(usize, usize, usize)>],
        obj: &[usize],
        mor: &mut Vec<usize>,
        used: &mut Vec<bool>,
        budget: &mut u64,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let s = &*self.source;
        let t = &*self.target;
        if k == order.len() {
            return Ok(visit(obj, mor));
        }
        let m = order[k];
        let cands = t.hom(obj[s.src(m)], obj[s.tgt(m)]);
        for &cand in cands {
            if !self.allowed(m, cand) || (self.injective && used[cand]) {
                continue;
            }
            if *budget == 0 {
                return Err(CatError::EnumerationCap { cap: self.cap });
            }
            *budget -= 1;
            mor[m] = cand;
            let ok = triples[m].iter().all(|&(g, f, c)| {
                let (mg, mf, mc) = (mor[g], mor[f], mor[c]);
                mg == usize::MAX || mf == usize::MAX || mc == usize::MAX || t.compose(mg, mf) == mc
            });
            if ok {
                used[cand] = true;
                let r = self.morphisms_rec(k + 1, order, triples, obj, mor, used, budget, visit)?;
                used[cand] = false;
                if r.is_break() {
                    mor[m] = usize::MAX;
                    return Ok(r);
                }
            }
        }
        mor[m] = usize::MAX;
        Ok(ControlFlow::Continue(()))
    }

    pub fn collect(&self) -> Result<Vec<Functor>> {
        let mut out = Vec::new();
        self.for_each(|o, m| {
            out.push(Functor::new_unchecked(
                self.source.clone(),
                self.target.clone(),
                o.to_vec(),
                m.to_vec(),
            ));
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    pub fn first(&self) -> Result<Option<Functor>> {
        let mut out = None;
        self.for_each(|o, m| {
            out = Some(Functor::new_unchecked(
                self.source.clone(),
                self.target.clone(),
                o.to_vec(),
                m.to_vec(),
            ));
            ControlFlow::Break(())
        })?;
        Ok(out)
    }

    pub fn count(&self) -> Result<usize> {
        let mut n = 0;
        self.for_each(|_, _| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }
}

fn signature(c: &FiniteCategory, o: usize) -> (usize, Vec<usize>, Vec<usize>) {
    let mut outs: Vec<usize> = (0..c.num_objects()).map(|b| c.hom(o, b).len()).collect();
    let mut ins: Vec<usize> = (0..c.num_objects()).map(|a| c.hom(a, o).len()).collect();
    outs.sort_unstable();
    ins.sort_unstable();
    (c.hom(o, o).len(), outs, ins)
}

/// Some isomorphism `c → d`, if one exists.
pub fn find_isomorphism(c: &FiniteCategory, d: &FiniteCategory) -> Result<Option<Functor>> {
    let (c, d) = (Arc::new(c.clone()), Arc::new(d.clone()));
    find_isomorphism_with(&c, &d, |_, _| true, |_, _| true)
}

/// Some isomorphism `c → d` whose object and morphism assignments pass the
/// given filters.
pub fn find_isomorphism_with(
    c: &Arc<FiniteCategory>,
    d: &Arc<FiniteCategory>,
    objects: impl Fn(usize, usize) -> bool,
    morphisms: impl Fn(usize, usize) -> bool,
) -> Result<Option<Functor>> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return Ok(None);
    }
    let sc: Vec<_> = (0..c.num_objects()).map(|o| signature(c, o)).collect();
    let sd: Vec<_> = (0..d.num_objects()).map(|o| signature(d, o)).collect();
    FunctorSearch::new(c, d)
        .objects(|o, t| sc[o] == sd[t] && objects(o, t))
        .morphisms(move |m, n| {
            c.hom(c.src(m), c.tgt(m)).len() == d.hom(d.src(n), d.tgt(n)).len() && morphisms(m, n)
        })
        .injective()
        .first()
}

/// Some isomorphism `E → E'` commuting on the nose with functors to a common
/// base.
pub fn find_isomorphism_over(p: &Functor, q: &Functor) -> Result<Option<Functor>> {
    assert!(**p.target() == **q.target());
    find_isomorphism_with(
        p.source(),
        q.source(),
        |o, t| p.ob(o) == q.ob(t),
        |m, n| p.mor(m) == q.mor(n),
    )
}

/// The category `Fun_{/K}(J, E)` of functors `J → E` over `K` and natural
/// transformations whose components lie over identities.
#[derive(Debug, Clone)]
pub struct SectionCategory {
    pub category: Arc<FiniteCategory>,
    /// Object `i` of `category` is `sections[i]`.
    pub sections: Vec<Functor>,
    /// Components of each morphism, indexed by objects of `J`.
    pub components: Vec<Vec<usize>>,
}

impl SectionCategory {
    pub fn index_of(&self, f: &Functor) -> Option<usize> {
        self.sections
            .iter()
            .position(|s| s.object_map() == f.object_map() && s.morphism_map() == f.morphism_map())
    }
}

/// All functors `J → E` commuting with `p: J → K` and `pi: E → K`.
pub fn sections_over(p: &Functor, pi: &Functor) -> Result<Vec<Functor>> {
    assert!(
        **p.target() == **pi.target(),
        "sections over different bases"
    );
    FunctorSearch::new(p.source(), pi.source())
        .objects(|o, t| pi.ob(t) == p.ob(o))
        .morphisms(|m, n| pi.mor(n) == p.mor(m))
        .collect()
}

pub fn section_category(p: &Functor, pi: &Functor) -> Result<SectionCategory> {
    let sections = sections_over(p, pi)?;
    section_category_from(p, pi, sections)
}

pub(crate) fn section_category_from(
    p: &Functor,
    pi: &Functor,
    sections: Vec<Functor>,
) -> Result<SectionCategory> {
    let j = p.source();
    let e = pi.source();
    let k = pi.target();
    let cap = enumeration_cap();
    let mut budget = cap;
    let mut mors: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    let nj = j.num_objects();
    for (a, fa) in sections.iter().enumerate() {
        for (b, fb) in sections.iter().enumerate() {
            // components eta_x: fa(x) -> fb(x) over id_{p x}
            let cands: Vec<Vec<usize>> = (0..nj)
                .map(|x| {
                    e.hom(fa.ob(x), fb.ob(x))
                        .iter()
                        .copied()
                        .filter(|&m| pi.mor(m) == k.identity(p.ob(x)))
                        .collect()
                })
                .collect();
            let mut eta = vec![usize::MAX; nj];
            let mut found = Vec::new();
            natural_rec(
                0,
                j,
                e,
                fa,
                fb,
                &cands,
                &mut eta,
                &mut found,
                &mut budget,
                cap,
            )?;
            for comps in found {
                index.insert((a, b, comps.clone()), mors.len());
                mors.push((a, b, comps));
            }
        }
    }
    let objects: Vec<String> = (0..sections.len()).map(|i| format!("sec{i}")).collect();
    let mut counter: HashMap<(usize, usize), usize> = HashMap::new();
    let morphisms = mors
        .iter()
        .map(|(a, b, _)| {
            let n = counter.entry((*a, *b)).or_insert(0);
            *n += 1;
            (format!("sec{a}=>sec{b}#{}", *n - 1), *a, *b)
        })
        .collect();
    let identities = sections
        .iter()
        .enumerate()
        .map(|(a, s)| {
            let comps: Vec<usize> = (0..nj).map(|x| e.identity(s.ob(x))).collect();
            index[&(a, a, comps)]
        })
        .collect();
    let cat = FiniteCategory::from_fn(objects, morphisms, identities, |g, f| {
        let (a, _, cf) = &mors[f];
        let (_, c, cg) = &mors[g];
        let comps: Vec<usize> = (0..nj).map(|x| e.compose(cg[x], cf[x])).collect();
        index[&(*a, *c, comps)]
    });
    Ok(SectionCategory {
        category: Arc::new(cat),
        sections,
        components: mors.into_iter().map(|m| m.2).collect(),
    })
}

#[allow(clippy::too_many_arguments)]
fn natural_rec(
    x: usize,
    j: &FiniteCategory,
    e: &FiniteCategory,
    fa: &Functor,
    fb: &Functor,
    cands: &[Vec<usize>],
    eta: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
    budget: &mut u64,
    cap: u64,
) -> Result<()> {
    if x == j.num_objects() {
        found.push(eta.clone());
        return Ok(());
    }
    for &c in &cands[x] {
        if *budget == 0 {
            return Err(CatError::EnumerationCap { cap });
        }
        *budget -= 1;
        eta[x] = c;
        // naturality on every morphism between assigned objects
        let ok = (0..=x).all(|y| {
            let check = |phi: usize| {
                let (s, t) = (j.src(phi), j.tgt(phi));
                e.compose(fb.mor(phi), eta[s]) == e.compose(eta[t], fa.mor(phi))
            };
            j.hom(x, y).iter().all(|&phi| check(phi)) && j.hom(y, x).iter().all(|&phi| check(phi))
        });
        if ok {
            natural_rec(x + 1, j, e, fa, fb, cands, eta, found, budget, cap)?;
        }
    }
    eta[x] = usize::MAX;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn arc(c: FiniteCategory) -> Arc<FiniteCategory> {
        Arc::new(c)
    }

    #[test]
    fn functors_between_intervals_are_monotone_maps() {
        // monotone maps [1] -> [2]: 6
        let n = FunctorSearch::new(&arc(catalog::interval(1)), &arc(catalog::interval(2)))
            .count()
            .unwrap();
        assert_eq!(n, 6);
        // endofunctors of Z/2: 2 (trivial and identity)
        let z = arc(catalog::cyclic_group(2));
        assert_eq!(FunctorSearch::new(&z, &z).count().unwrap(), 2);
        // functors Idem -> Ret: object to x gives id only; to y: e -> id_y or e
        let n = FunctorSearch::new(&arc(catalog::idem()), &arc(catalog::ret()))
            .count()
            .unwrap();
        assert_eq!(n, 3);
    }

    #[test]
    fn every_enumerated_functor_is_valid() {
        let s = arc(catalog::ret());
        let t = arc(catalog::ret());
        for f in FunctorSearch::new(&s, &t).collect().unwrap() {
            assert!(f.violations().is_empty());
        }
    }

    #[test]
    fn isomorphism_search() {
        let i = catalog::interval(2);
        let op = crate::constructions::opposite(&i);
        assert!(find_isomorphism(&i, &op).unwrap().is_some());
        assert!(
            find_isomorphism(&catalog::parallel_pair(), &catalog::interval(1))
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn cap_is_enforced() {
        let s = arc(catalog::discrete(&["a", "b", "c"]));
        let t = arc(catalog::discrete(&["a", "b", "c"]));
        let r = FunctorSearch::new(&s, &t).cap(5).count();
        assert!(matches!(r, Err(CatError::EnumerationCap { cap: 5 })));
    }

    #[test]
    fn sections_of_identity_are_a_point() {
        let k = arc(catalog::interval(2));
        let id = Functor::identity(k);
        let sc = section_category(&id, &id).unwrap();
        assert_eq!(sc.category.num_objects(), 1);
        assert_eq!(sc.category.num_morphisms(), 1);
    }
}
