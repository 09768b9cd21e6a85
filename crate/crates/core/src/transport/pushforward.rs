use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::category::FiniteCategory;
use crate::constructions::{base_change, fiber, pullback, Pullback, Subcategory};
use crate::error::{CatError, Result};
use crate::fib::{arrow_functor, is_conduche};
use crate::functor::Functor;
use crate::search::sections_over;

// interval(1) lists id_0, 0->1, id_1
const ID0: usize = 0;
const CROSS: usize = 1;
const ID1: usize = 2;

/// `π_∗ Z → K` for exponentiable `π: E → K` and `ζ: Z → E`.
#[derive(Debug, Clone)]
pub struct Pushforward {
    pub projection: Functor,
    /// `(x, s)` per object: `s` lists the `Z`-morphism of each morphism of
    /// the fiber `E_x`, in fiber order.
    pub objects: Vec<(usize, Vec<usize>)>,
    /// `(k, u)` per morphism: `u` lists the `Z`-morphism of each morphism of
    /// the base change of `π` along `k: [1] → K`.
    pub morphisms: Vec<(usize, Vec<usize>)>,
    cylinders: Vec<Pullback>,
}

impl Pushforward {
    /// The `Z`-morphism that the morphism `(k, u)` assigns to `m: e → e'`
    /// of `E` over `k`.
    pub fn component(&self, morphism: usize, m: usize) -> usize {
        let (k, ref u) = self.morphisms[morphism];
        u[self.cylinders[k]
            .morphism(m, CROSS)
            .expect("morphism over k")]
    }
}

fn restrict_end(cyl: &Pullback, fib: &Subcategory, u: &[usize], end: usize) -> Vec<usize> {
    (0..fib.category.num_morphisms())
        .map(|p| {
            u[cyl
                .morphism(fib.inclusion.mor(p), end)
                .expect("fiber morphism in the cylinder")]
        })
        .collect()
}

/// Objects over `x` are sections of `ζ` over `E_x`; morphisms over `k` are
/// sections over the base change along `k`. Composites glue along the
/// middle fiber through any factorization, which is well defined because
/// every factorization category is nonempty and connected.
pub fn pushforward_exponentiable(pi: &Functor, zeta: &Functor) -> Result<Pushforward> {
    if **zeta.target() != **pi.source() {
        return Err(CatError::Precondition(
            "ζ does not land in the source of π".into(),
        ));
    }
    if let Some(w) = is_conduche(pi).witness {
        return Err(CatError::refused("exponentiable (strict Conduché)", w));
    }
    let (e, k, z) = (pi.source(), pi.target(), zeta.source());
    let fibers: Vec<Subcategory> = (0..k.num_objects()).map(|x| fiber(pi, x)).collect();
    let cylinders: Vec<Pullback> = (0..k.num_morphisms())
        .map(|m| base_change(pi, &arrow_functor(k, m)))
        .collect();
    let mut objects = Vec::new();
    let mut object_index = HashMap::new();
    for (x, fib) in fibers.iter().enumerate() {
        for s in sections_over(&fib.inclusion, zeta)? {
            object_index.insert((x, s.morphism_map().to_vec()), objects.len());
            objects.push((x, s.morphism_map().to_vec()));
        }
    }
    let mut morphisms = Vec::new();
    let mut ends = Vec::new();
    let mut morphism_index = HashMap::new();
    for (m, cyl) in cylinders.iter().enumerate() {
        let leg = cyl.left.clone();
        for u in sections_over(&leg, zeta)? {
            let u = u.morphism_map().to_vec();
            let s = object_index[&(k.src(m), restrict_end(cyl, &fibers[k.src(m)], &u, ID0))];
            let t = object_index[&(k.tgt(m), restrict_end(cyl, &fibers[k.tgt(m)], &u, ID1))];
            morphism_index.insert((m, u.clone()), morphisms.len());
            morphisms.push((m, u));
            ends.push((s, t));
        }
    }
    let identities = objects
        .iter()
        .map(|(x, s)| {
            let (fib, cyl) = (&fibers[*x], &cylinders[k.identity(*x)]);
            let pos: HashMap<usize, usize> = (0..fib.category.num_morphisms())
                .map(|p| (fib.inclusion.mor(p), p))
                .collect();
            let u: Vec<usize> = (0..cyl.category.num_morphisms())
                .map(|q| s[pos[&cyl.left.mor(q)]])
                .collect();
            morphism_index
                .get(&(k.identity(*x), u))
                .copied()
                .ok_or_else(|| CatError::Internal("identity section missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    // composites, keyed by (second, first)
    let mut composite = HashMap::new();
    for (f, &(_, mid)) in ends.iter().enumerate() {
        for (g, &(src, _)) in ends.iter().enumerate() {
            if src != mid {
                continue;
            }
            let (kf, ref u) = morphisms[f];
            let (kg, ref v) = morphisms[g];
            let kgf = k.compose(kg, kf);
            let (cf, cg, cgf) = (&cylinders[kf], &cylinders[kg], &cylinders[kgf]);
            let w = (0..cgf.category.num_morphisms())
                .map(|q| {
                    let m = cgf.left.mor(q);
                    match cgf.right.mor(q) {
                        ID0 => Ok(u[cf.morphism(m, ID0).expect("source fiber")]),
                        ID1 => Ok(v[cg.morphism(m, ID1).expect("target fiber")]),
                        _ => {
                            let (m1, m2) = factor(e, pi, m, kf, kg).ok_or_else(|| {
                                CatError::Internal(format!(
                                    "`{}` has no factorization",
                                    e.morphism_id(m)
                                ))
                            })?;
                            let a = u[cf.morphism(m1, CROSS).expect("over the first")];
                            let b = v[cg.morphism(m2, CROSS).expect("over the second")];
                            Ok(z.compose(b, a))
                        }
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let gf = morphism_index
                .get(&(kgf, w))
                .copied()
                .ok_or_else(|| CatError::Internal("glued section is not a functor".into()))?;
            composite.insert((g, f), gf);
        }
    }
    let object_ids: Vec<String> = {
        let mut seen = vec![0usize; k.num_objects()];
        objects
            .iter()
            .map(|(x, _)| {
                seen[*x] += 1;
                format!("{}#{}", k.object_id(*x), seen[*x] - 1)
            })
            .collect()
    };
    let mut seen = vec![0usize; k.num_morphisms()];
    let morphism_ids: Vec<(String, usize, usize)> = morphisms
        .iter()
        .zip(&ends)
        .map(|((m, _), &(s, t))| {
            seen[*m] += 1;
            (format!("{}#{}", k.morphism_id(*m), seen[*m] - 1), s, t)
        })
        .collect();
    let cat = Arc::new(FiniteCategory::from_fn(
        object_ids,
        morphism_ids,
        identities,
        |g, f| composite[&(g, f)],
    ));
    let projection = Functor::new_unchecked(
        cat,
        k.clone(),
        objects.iter().map(|o| o.0).collect(),
        morphisms.iter().map(|m| m.0).collect(),
    );
    Ok(Pushforward {
        projection,
        objects,
        morphisms,
        cylinders,
    })
}

/// The least-index factorization `m = m2 ∘ m1` with `m1` over `k1` and `m2`
/// over `k2`.
fn factor(
    e: &FiniteCategory,
    pi: &Functor,
    m: usize,
    k1: usize,
    k2: usize,
) -> Option<(usize, usize)> {
    e.out_of(e.src(m))
        .iter()
        .filter(|&&m1| pi.mor(m1) == k1)
        .find_map(|&m1| {
            e.hom(e.tgt(m1), e.tgt(m))
                .iter()
                .find(|&&m2| pi.mor(m2) == k2 && e.compose(m2, m1) == m)
                .map(|&m2| (m1, m2))
        })
}

/// Both sides of `Fun_{/K}(J, π_∗Z) ≅ Fun_{/E}(J ×_K E, Z)` for one `p: J → K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionCheck {
    pub into_pushforward: usize,
    pub from_pullback: usize,
    pub bijective: bool,
}

/// Sends `F: J → π_∗Z` to `(j, e) ↦ s_{F j}(e)`, `(α, m) ↦ F(α)(m)`, and
/// checks this is a bijection onto the sections of `ζ` over `J ×_K E`.
pub fn pushforward_adjunction(
    push: &Pushforward,
    pi: &Functor,
    zeta: &Functor,
    p: &Functor,
) -> Result<AdjunctionCheck> {
    let into = sections_over(p, &push.projection)?;
    let pb = pullback(p, pi);
    let from = sections_over(&pb.right, zeta)?;
    let z = zeta.source();
    let key = |f: &Functor| (f.object_map().to_vec(), f.morphism_map().to_vec());
    let targets: BTreeSet<_> = from.iter().map(key).collect();
    let mut images = BTreeSet::new();
    let mut all_valid = true;
    for f in &into {
        let mors: Vec<usize> = (0..pb.category.num_morphisms())
            .map(|q| push.component(f.mor(pb.left.mor(q)), pb.right.mor(q)))
            .collect();
        let obs = (0..pb.category.num_objects())
            .map(|o| z.src(mors[pb.category.identity(o)]))
            .collect();
        let g = Functor::new_unchecked(pb.category.clone(), z.clone(), obs, mors);
        all_valid &=
            g.violations().is_empty() && g.then(zeta).morphism_map() == pb.right.morphism_map();
        images.insert(key(&g));
    }
    let bijective = all_valid && images.len() == into.len() && images == targets;
    Ok(AdjunctionCheck {
        into_pushforward: into.len(),
        from_pullback: from.len(),
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::constructions::{arrow_category, product};
    use crate::search::{find_isomorphism, find_isomorphism_over, section_category};

    #[test]
    fn along_the_identity_nothing_changes() {
        let k = Arc::new(catalog::ret());
        let ar = arrow_category(&k);
        let id = Functor::identity(k.clone());
        let push = pushforward_exponentiable(&id, &ar.ev_t).unwrap();
        assert!(push.projection.source().is_valid());
        assert!(find_isomorphism_over(&push.projection, &ar.ev_t)
            .unwrap()
            .is_some());
    }

    #[test]
    fn over_a_point_gives_global_sections() {
        let e = Arc::new(catalog::interval(1));
        let pt = Arc::new(catalog::terminal());
        let pi = Functor::to_point(e.clone(), pt.clone());
        let ar = arrow_category(&e);
        let push = pushforward_exponentiable(&pi, &ar.ev_s).unwrap();
        let sc = section_category(&Functor::identity(e.clone()), &ar.ev_s).unwrap();
        assert!(find_isomorphism(push.projection.source(), &sc.category)
            .unwrap()
            .is_some());
        let check = pushforward_adjunction(&push, &pi, &ar.ev_s, &Functor::identity(pt)).unwrap();
        assert!(
            check.bijective && check.into_pushforward == sc.sections.len(),
            "{check:?}"
        );
    }

    #[test]
    fn adjunction_over_the_interval() {
        let c = Arc::new(catalog::walking_iso());
        let one = Arc::new(catalog::interval(1));
        let p = product(&c, &one);
        let ar = arrow_category(&p.category);
        let push = pushforward_exponentiable(&p.right, &ar.ev_t).unwrap();
        assert!(push.projection.source().is_valid());
        for x in 0..2 {
            let at = Functor::point(Arc::new(catalog::terminal()), one.clone(), x);
            assert!(
                pushforward_adjunction(&push, &p.right, &ar.ev_t, &at)
                    .unwrap()
                    .bijective
            );
        }
        let id = Functor::identity(one);
        assert!(
            pushforward_adjunction(&push, &p.right, &ar.ev_t, &id)
                .unwrap()
                .bijective
        );
    }

    #[test]
    fn non_exponentiable_is_refused() {
        let two = Arc::new(catalog::interval(2));
        let ends = crate::constructions::full_subcategory_arc(&two, &[0, 2]).inclusion;
        let id = Functor::identity(ends.source().clone());
        assert!(matches!(
            pushforward_exponentiable(&ends, &id),
            Err(CatError::Refused { .. })
        ));
    }
}
