use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use super::{Verdict, Witness};
use crate::category::FiniteCategory;
use crate::constructions::{arrow_category, full_subcategory_arc, pullback};
use crate::error::{CatError, Result};
use crate::functor::Functor;
use crate::homology::homology;

/// The category of factorizations of `lift: e0 → e2` through `(a, b)`:
/// objects `(e1, f1, g1)` with `f1` over `a`, `g1` over `b` and
/// `g1 ∘ f1 = lift`; morphisms are `h: e1 → e1'` over the identity with
/// `h ∘ f1 = f1'` and `g1' ∘ h = g1`.
#[derive(Debug, Clone)]
pub struct FactorizationCategory {
    pub category: Arc<FiniteCategory>,
    /// `(f1, g1)` per object.
    pub factorizations: Vec<(usize, usize)>,
    /// Underlying morphism of the source per morphism.
    pub morphisms: Vec<usize>,
}

struct Raw {
    objs: Vec<(usize, usize)>,
    mors: Vec<(usize, usize, usize)>,
}

fn raw_factorizations(pi: &Functor, a: usize, b: usize, lift: usize) -> Raw {
    let e = pi.source();
    let kc = pi.target();
    let (e0, e2) = (e.src(lift), e.tgt(lift));
    let mut objs = Vec::new();
    for &f1 in e.out_of(e0) {
        if pi.mor(f1) != a {
            continue;
        }
        for &g1 in e.hom(e.tgt(f1), e2) {
            if pi.mor(g1) == b && e.compose(g1, f1) == lift {
                objs.push((f1, g1));
            }
        }
    }
    let idy = kc.identity(kc.tgt(a));
    let mut mors = Vec::new();
    for (i, &(f1, g1)) in objs.iter().enumerate() {
        for (j, &(f2, g2)) in objs.iter().enumerate() {
            for &h in e.hom(e.tgt(f1), e.tgt(f2)) {
                if pi.mor(h) == idy && e.compose(h, f1) == f2 && e.compose(g2, h) == g1 {
                    mors.push((i, j, h));
                }
            }
        }
    }
    Raw { objs, mors }
}

fn components(raw: &Raw) -> usize {
    let mut uf = UnionFind::<usize>::new(raw.objs.len());
    for &(i, j, _) in &raw.mors {
        uf.union(i, j);
    }
    let mut labels = uf.into_labeling();
    labels.sort_unstable();
    labels.dedup();
    labels.len()
}

/// Builds the factorization category of `lift` through the composable pair
/// `(a, b)` of the base.
pub fn factorization_category(
    pi: &Functor,
    a: usize,
    b: usize,
    lift: usize,
) -> Result<FactorizationCategory> {
    let e = pi.source();
    let kc = pi.target();
    if kc.tgt(a) != kc.src(b) {
        return Err(CatError::Precondition(format!(
            "`{}` and `{}` are not composable",
            kc.morphism_id(a),
            kc.morphism_id(b)
        )));
    }
    if pi.mor(lift) != kc.compose(b, a) {
        return Err(CatError::Precondition(format!(
            "`{}` does not lie over the composite",
            e.morphism_id(lift)
        )));
    }
    let raw = raw_factorizations(pi, a, b, lift);
    let index: HashMap<(usize, usize, usize), usize> =
        raw.mors.iter().enumerate().map(|(n, &m)| (m, n)).collect();
    let objects = raw
        .objs
        .iter()
        .map(|&(f, g)| format!("({},{})", e.morphism_id(f), e.morphism_id(g)))
        .collect();
    let morphisms = raw
        .mors
        .iter()
        .map(|&(i, j, h)| (format!("{}:{}->{}", e.morphism_id(h), i, j), i, j))
        .collect();
    let identities = raw
        .objs
        .iter()
        .enumerate()
        .map(|(i, &(f, _))| index[&(i, i, e.identity(e.tgt(f)))])
        .collect();
    let cat = FiniteCategory::from_fn(objects, morphisms, identities, |p, q| {
        let (i, _, h0) = raw.mors[q];
        let (_, k, h1) = raw.mors[p];
        index[&(i, k, e.compose(h1, h0))]
    });
    Ok(FactorizationCategory {
        category: Arc::new(cat),
        factorizations: raw.objs,
        morphisms: raw.mors.iter().map(|m| m.2).collect(),
    })
}

/// Every composable pair of non-identities `(a, b)` of the base together
/// with every lift of `b ∘ a`. Pairs containing an identity always have
/// contractible factorization categories (an initial or final object).
fn problems(pi: &Functor) -> Vec<(usize, usize, usize)> {
    let e = pi.source();
    let kc = pi.target();
    let mut out = Vec::new();
    for a in kc.non_identity_morphisms() {
        for &b in kc.out_of(kc.tgt(a)) {
            if kc.is_identity(b) {
                continue;
            }
            let ba = kc.compose(b, a);
            for u in 0..e.num_morphisms() {
                if pi.mor(u) == ba {
                    out.push((a, b, u));
                }
            }
        }
    }
    out
}

/// Strict Conduché condition: every factorization category, built from
/// strict fibers, is nonempty and connected. Not invariant under
/// equivalence when the base has non-identity isomorphisms; see
/// [`is_exponentiable`].
pub fn is_conduche(pi: &Functor) -> Verdict {
    is_conduche_certified(pi, None).expect("uncertified check cannot fail")
}

/// As [`is_conduche`], additionally demanding trivial reduced homology of
/// each factorization category up to `certify_dim` when given.
pub fn is_conduche_certified(pi: &Functor, certify_dim: Option<usize>) -> Result<Verdict> {
    let probs = problems(pi);
    let results: Vec<Option<Witness>> = probs
        .par_iter()
        .map(|&(a, b, u)| check_one(pi, a, b, u, certify_dim))
        .collect::<Result<_>>()?;
    Ok(match results.into_iter().flatten().next() {
        None => Verdict::yes(),
        Some(w) => Verdict::no(w),
    })
}

/// `E ×_K Iso(K) → K`, `(e, φ: π e ≅ y) ↦ y`: an isofibration equivalent to
/// `π` over `K`. `None` when every isomorphism of `K` is an identity, in
/// which case it would be isomorphic to `π`.
pub fn iso_replacement(pi: &Functor) -> Option<Functor> {
    let k = pi.target();
    let isos: Vec<usize> = (0..k.num_morphisms()).filter(|&m| k.is_iso(m)).collect();
    if isos.iter().all(|&m| k.is_identity(m)) {
        return None;
    }
    let ar = arrow_category(k);
    let sub = full_subcategory_arc(&ar.category, &isos);
    let pb = pullback(pi, &sub.inclusion.then(&ar.ev_s));
    Some(pb.right.then(&sub.inclusion).then(&ar.ev_t))
}

/// Exponentiability up to equivalence: the strict Conduché condition on
/// [`iso_replacement`] when the base has non-identity isomorphisms, and on
/// `π` itself otherwise.
pub fn is_exponentiable(pi: &Functor) -> Verdict {
    is_exponentiable_certified(pi, None).expect("uncertified check cannot fail")
}

pub fn is_exponentiable_certified(pi: &Functor, certify_dim: Option<usize>) -> Result<Verdict> {
    match iso_replacement(pi) {
        Some(r) => is_conduche_certified(&r, certify_dim),
        None => is_conduche_certified(pi, certify_dim),
    }
}

fn check_one(
    pi: &Functor,
    a: usize,
    b: usize,
    u: usize,
    certify_dim: Option<usize>,
) -> Result<Option<Witness>> {
    let raw = raw_factorizations(pi, a, b, u);
    let comps = components(&raw);
    let witness = |homology_trivial| Witness::Factorization {
        first: pi.target().morphism_id(a).to_string(),
        second: pi.target().morphism_id(b).to_string(),
        lift: pi.source().morphism_id(u).to_string(),
        objects: raw.objs.len(),
        components: comps,
        homology_trivial,
    };
    if comps != 1 {
        return Ok(Some(witness(None)));
    }
    if let Some(d) = certify_dim {
        let fc = factorization_category(pi, a, b, u)?;
        if !homology(&fc.category, d)?.reduced_trivial() {
            return Ok(Some(witness(Some(false))));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::constructions::full_subcategory_arc;

    #[test]
    fn outer_edge_has_an_empty_factorization() {
        let two = Arc::new(catalog::interval(2));
        let outer = full_subcategory_arc(&two, &[0, 2]).inclusion;
        let v = is_exponentiable(&outer);
        assert!(!v.holds);
        match v.witness.unwrap() {
            Witness::Factorization {
                first,
                second,
                objects,
                ..
            } => {
                assert_eq!(
                    (first.as_str(), second.as_str(), objects),
                    ("0->1", "1->2", 0)
                );
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn inner_intervals_are_exponentiable() {
        let four = Arc::new(catalog::interval(4));
        let sub = full_subcategory_arc(&four, &[1, 2, 3]).inclusion;
        assert!(is_exponentiable_certified(&sub, Some(2)).unwrap().holds);
    }

    #[test]
    fn factorization_category_rejects_bad_input() {
        let two = Arc::new(catalog::interval(2));
        let id = Functor::identity(two.clone());
        let a = two.morphism_index("0->1").unwrap();
        let b = two.morphism_index("1->2").unwrap();
        assert!(factorization_category(&id, b, a, a).is_err());
        let fc = factorization_category(&id, a, b, two.morphism_index("0->2").unwrap()).unwrap();
        assert_eq!(fc.category.num_objects(), 1);
    }

    #[test]
    fn groupoid_base_is_exponentiable_only_up_to_equivalence() {
        let one = Arc::new(catalog::interval(1));
        let z3 = Arc::new(catalog::cyclic_group(3));
        let g = (0..3).find(|&m| !z3.is_identity(m)).unwrap();
        let f = Functor::new(one, z3, vec![0, 0], vec![z3_id(), g, z3_id()]).unwrap();
        assert!(!is_conduche(&f).holds);
        assert!(is_exponentiable_certified(&f, Some(2)).unwrap().holds);
    }

    fn z3_id() -> usize {
        let z3 = catalog::cyclic_group(3);
        (0..3).find(|&m| z3.is_identity(m)).unwrap()
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(48))]
        #[test]
        fn strict_implies_invariant(seed in 0u64..1_000_000) {
            let mut g = crate::gen::Gen::new(seed);
            let s = Arc::new(g.category(3, 6));
            let t = Arc::new(g.category(3, 6));
            if let Some(f) = g.functor(&s, &t).unwrap() {
                if is_conduche(&f).holds {
                    proptest::prop_assert!(is_exponentiable(&f).holds);
                }
            }
        }
    }
}
