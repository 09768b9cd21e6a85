use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::functors::{CatValuedFunctor, SetValuedFunctor};
use crate::category::FiniteCategory;
use crate::constructions::fiber;
use crate::error::{CatError, Result};
use crate::fib::{
    cocartesian_flags, is_cocartesian_fibration, is_cocartesian_morphism, is_discrete_opfibration,
};
use crate::functor::Functor;

/// Names `name` plainly when it is unique across all groups, else as
/// `name@group`.
fn qualified<'a>(groups: impl Iterator<Item = (&'a str, &'a [String])> + Clone) -> Vec<String> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for (_, names) in groups.clone() {
        for n in names {
            *count.entry(n).or_default() += 1;
        }
    }
    groups
        .flat_map(|(g, names)| names.iter().map(move |n| (g, n)))
        .map(|(g, n)| {
            if count[n.as_str()] == 1 {
                n.clone()
            } else {
                format!("{n}@{g}")
            }
        })
        .collect()
}

/// The category of elements of a set-valued functor over its base.
#[derive(Debug, Clone)]
pub struct ElementsCategory {
    pub projection: Functor,
    /// `(x, i)` per object: element `i` of `F(x)`.
    pub objects: Vec<(usize, usize)>,
    /// `(k, i)` per morphism: `k` applied to element `i` of `F(src k)`.
    pub morphisms: Vec<(usize, usize)>,
    pub(crate) object_offset: Vec<usize>,
    pub(crate) morphism_offset: Vec<usize>,
}

impl ElementsCategory {
    pub fn object(&self, x: usize, i: usize) -> usize {
        self.object_offset[x] + i
    }

    pub fn morphism(&self, k: usize, i: usize) -> usize {
        self.morphism_offset[k] + i
    }
}

/// Objects `(x, a ∈ F x)`, one morphism `(x, a) → (y, F(k) a)` per `k`.
pub fn unstraighten(f: &SetValuedFunctor) -> ElementsCategory {
    let k = f.base();
    let mut objects = Vec::new();
    let mut object_offset = Vec::new();
    for x in 0..k.num_objects() {
        object_offset.push(objects.len());
        objects.extend((0..f.size(x)).map(|i| (x, i)));
    }
    let mut morphisms = Vec::new();
    let mut morphism_offset = Vec::new();
    for m in 0..k.num_morphisms() {
        morphism_offset.push(morphisms.len());
        morphisms.extend((0..f.size(k.src(m))).map(|i| (m, i)));
    }
    let ids = qualified((0..k.num_objects()).map(|x| (k.object_id(x), f.value(x))));
    let mors = morphisms
        .iter()
        .map(|&(m, i)| {
            let (x, y) = (k.src(m), k.tgt(m));
            let (s, t) = (object_offset[x] + i, object_offset[y] + f.apply(m, i));
            (format!("{}:{}", k.morphism_id(m), ids[s]), s, t)
        })
        .collect();
    let identities = (0..objects.len()).map(|o| {
        let (x, i) = objects[o];
        morphism_offset[k.identity(x)] + i
    });
    let cat = Arc::new(FiniteCategory::from_fn(
        ids,
        mors,
        identities.collect(),
        |g, h| {
            let (m, i) = morphisms[h];
            let (n, _) = morphisms[g];
            morphism_offset[k.compose(n, m)] + i
        },
    ));
    let projection = Functor::new_unchecked(
        cat,
        k.clone(),
        objects.iter().map(|p| p.0).collect(),
        morphisms.iter().map(|p| p.0).collect(),
    );
    ElementsCategory {
        projection,
        objects,
        morphisms,
        object_offset,
        morphism_offset,
    }
}

/// Fibers as value sets, transport by the unique lifts. Requires a strict
/// discrete opfibration.
pub fn straighten_discrete_opfib(pi: &Functor) -> Result<SetValuedFunctor> {
    let v = is_discrete_opfibration(pi);
    if let Some(w) = v.witness {
        return Err(CatError::refused("a discrete opfibration", w));
    }
    let (e, k) = (pi.source(), pi.target());
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k.num_objects()];
    let mut pos = vec![0; e.num_objects()];
    for o in 0..e.num_objects() {
        pos[o] = members[pi.ob(o)].len();
        members[pi.ob(o)].push(o);
    }
    let values = members
        .iter()
        .map(|os| os.iter().map(|&o| e.object_id(o).to_string()).collect())
        .collect();
    Ok(SetValuedFunctor::from_fn(k.clone(), values, |m, i| {
        let o = members[k.src(m)][i];
        let lift = e
            .out_of(o)
            .iter()
            .find(|&&f| pi.mor(f) == m)
            .expect("discrete opfibration has every lift");
        pos[e.tgt(*lift)]
    }))
}

/// The Grothendieck construction of a strict `K → Cat`.
#[derive(Debug, Clone)]
pub struct GrothendieckConstruction {
    pub projection: Functor,
    /// `(x, e)` per object.
    pub objects: Vec<(usize, usize)>,
    /// `(f, e, φ)` per morphism: `φ: F(f) e → e'` in `F(tgt f)`.
    pub morphisms: Vec<(usize, usize, usize)>,
    object_offset: Vec<usize>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl GrothendieckConstruction {
    pub fn object(&self, x: usize, e: usize) -> usize {
        self.object_offset[x] + e
    }

    pub fn morphism(&self, f: usize, e: usize, phi: usize) -> Option<usize> {
        self.index.get(&(f, e, phi)).copied()
    }
}

/// Objects `Σ_x Ob F(x)`; morphisms `(f, φ: F(f) e → e')`. For each `(f, e)`
/// the morphism with `φ` an identity is listed first, so it is the least
/// coCartesian lift and the induced cleavage is split.
pub fn unstraighten_cat(f: &CatValuedFunctor) -> GrothendieckConstruction {
    let k = &f.base;
    let mut objects = Vec::new();
    let mut object_offset = Vec::new();
    for x in 0..k.num_objects() {
        object_offset.push(objects.len());
        objects.extend((0..f.categories[x].num_objects()).map(|e| (x, e)));
    }
    let mut morphisms = Vec::new();
    for m in 0..k.num_morphisms() {
        let (x, y) = (k.src(m), k.tgt(m));
        let (cy, fm) = (&f.categories[y], &f.functors[m]);
        for e in 0..f.categories[x].num_objects() {
            let a = fm.ob(e);
            let id = cy.identity(a);
            morphisms.push((m, e, id));
            morphisms.extend(
                cy.out_of(a)
                    .iter()
                    .filter(|&&p| p != id)
                    .map(|&p| (m, e, p)),
            );
        }
    }
    let index: HashMap<(usize, usize, usize), usize> =
        morphisms.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let object_names: Vec<Vec<String>> =
        f.categories.iter().map(|c| c.objects().to_vec()).collect();
    let ids = qualified((0..k.num_objects()).map(|x| (k.object_id(x), object_names[x].as_slice())));
    let mors = morphisms
        .iter()
        .map(|&(m, e, p)| {
            let (x, y) = (k.src(m), k.tgt(m));
            let cy = &f.categories[y];
            let (s, t) = (object_offset[x] + e, object_offset[y] + cy.tgt(p));
            (
                format!("({},{},{})", k.morphism_id(m), ids[s], cy.morphism_id(p)),
                s,
                t,
            )
        })
        .collect();
    let identities = objects
        .iter()
        .map(|&(x, e)| index[&(k.identity(x), e, f.categories[x].identity(e))])
        .collect();
    let cat = Arc::new(FiniteCategory::from_fn(ids, mors, identities, |g, h| {
        // (n, e', ψ) ∘ (m, e, φ) = (n m, e, ψ ∘ F(n) φ)
        let (m, e, p) = morphisms[h];
        let (n, _, q) = morphisms[g];
        let z = &f.categories[k.tgt(n)];
        index[&(k.compose(n, m), e, z.compose(q, f.functors[n].mor(p)))]
    }));
    let projection = Functor::new_unchecked(
        cat,
        k.clone(),
        objects.iter().map(|p| p.0).collect(),
        morphisms.iter().map(|p| p.0).collect(),
    );
    GrothendieckConstruction {
        projection,
        objects,
        morphisms,
        object_offset,
        index,
    }
}

/// The chosen coCartesian lift of `base_morphism` out of `object`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChosenLift {
    pub object: usize,
    pub base_morphism: usize,
    pub lift: usize,
}

/// For `e`, `f` and `g`: the unique fiber isomorphism `φ` with
/// `φ ∘ χ(g f, e) = χ(g, f_! e) ∘ χ(f, e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub object: usize,
    pub first: usize,
    pub second: usize,
    pub iso: usize,
}

/// A cleavage of a coCartesian fibration: identities over identities, else
/// the least-index coCartesian lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CleavageReport {
    pub lifts: Vec<ChosenLift>,
    pub comparisons: Vec<Comparison>,
    pub split: bool,
    #[serde(skip)]
    chosen: HashMap<(usize, usize), usize>,
    #[serde(skip)]
    compared: HashMap<(usize, usize, usize), usize>,
}

impl CleavageReport {
    pub fn chosen(&self, e: usize, k: usize) -> usize {
        self.chosen[&(e, k)]
    }

    pub fn comparison(&self, e: usize, f: usize, g: usize) -> usize {
        self.compared[&(e, f, g)]
    }

    /// Transport of a fiber morphism `φ: a → b` over `x` along `k: x → y`:
    /// the unique `t` over `id_y` with `t ∘ χ(k, a) = χ(k, b) ∘ φ`.
    pub fn transport(&self, pi: &Functor, k: usize, phi: usize) -> Result<usize> {
        let e = pi.source();
        let (a, b) = (e.src(phi), e.tgt(phi));
        let (ca, cb) = (self.chosen(a, k), self.chosen(b, k));
        filler(
            pi,
            ca,
            e.compose(cb, phi),
            pi.target().identity(pi.target().tgt(k)),
        )
    }

    /// Every chosen lift is coCartesian, every comparison is an invertible
    /// filler over an identity, and the comparisons satisfy the cocycle
    /// identity `h_!(c(f, g; e)) ∘ c(g f, h; e) = c(g, h; f_! e) ∘ c(f, h g; e)`.
    pub fn verify(&self, pi: &Functor) -> Result<bool> {
        let (e, k) = (pi.source(), pi.target());
        if !self
            .lifts
            .iter()
            .all(|l| is_cocartesian_morphism(pi, l.lift).holds)
        {
            return Ok(false);
        }
        for c in &self.comparisons {
            let a = self.chosen(c.object, c.first);
            let b = self.chosen(e.tgt(a), c.second);
            let gf = self.chosen(c.object, k.compose(c.second, c.first));
            let ok = e.is_iso(c.iso)
                && k.is_identity(pi.mor(c.iso))
                && e.compose(c.iso, gf) == e.compose(b, a);
            if !ok {
                return Ok(false);
            }
        }
        for o in 0..e.num_objects() {
            for &f in k.out_of(pi.ob(o)) {
                let fo = e.tgt(self.chosen(o, f));
                for &g in k.out_of(k.tgt(f)) {
                    let gf = k.compose(g, f);
                    for &h in k.out_of(k.tgt(g)) {
                        let hg = k.compose(h, g);
                        let lhs = e.compose(
                            self.transport(pi, h, self.comparison(o, f, g))?,
                            self.comparison(o, gf, h),
                        );
                        let rhs = e.compose(self.comparison(fo, g, h), self.comparison(o, f, hg));
                        if lhs != rhs {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// The unique `t` over `over` with `t ∘ chi = target`, given `chi`
/// coCartesian.
fn filler(pi: &Functor, chi: usize, target: usize, over: usize) -> Result<usize> {
    let e = pi.source();
    let found: Vec<usize> = e
        .hom(e.tgt(chi), e.tgt(target))
        .iter()
        .copied()
        .filter(|&t| pi.mor(t) == over && e.compose(t, chi) == target)
        .collect();
    match found[..] {
        [t] => Ok(t),
        _ => Err(CatError::Internal(format!(
            "{} fillers for `{}` through `{}`",
            found.len(),
            e.morphism_id(target),
            e.morphism_id(chi)
        ))),
    }
}

/// A coCartesian fibration's straightening: the cleavage always, and the
/// strict functor `K → Cat` of fibers when the cleavage is split.
#[derive(Debug, Clone)]
pub struct Straightening {
    pub cleavage: CleavageReport,
    pub split: Option<CatValuedFunctor>,
}

pub fn straighten_cocart(pi: &Functor) -> Result<Straightening> {
    let v = is_cocartesian_fibration(pi);
    if let Some(w) = v.witness {
        return Err(CatError::refused("a coCartesian fibration", w));
    }
    let (e, k) = (pi.source(), pi.target());
    let flags = cocartesian_flags(pi);
    let mut lifts = Vec::new();
    let mut chosen = HashMap::new();
    for o in 0..e.num_objects() {
        for &m in k.out_of(pi.ob(o)) {
            let lift = if k.is_identity(m) {
                e.identity(o)
            } else {
                *e.out_of(o)
                    .iter()
                    .find(|&&f| pi.mor(f) == m && flags[f])
                    .expect("coCartesian fibration")
            };
            chosen.insert((o, m), lift);
            lifts.push(ChosenLift {
                object: o,
                base_morphism: m,
                lift,
            });
        }
    }
    let mut comparisons = Vec::new();
    let mut compared = HashMap::new();
    for o in 0..e.num_objects() {
        for &f in k.out_of(pi.ob(o)) {
            let a = chosen[&(o, f)];
            for &g in k.out_of(k.tgt(f)) {
                let b = chosen[&(e.tgt(a), g)];
                let gf = k.compose(g, f);
                let iso = filler(pi, chosen[&(o, gf)], e.compose(b, a), k.identity(k.tgt(g)))?;
                compared.insert((o, f, g), iso);
                comparisons.push(Comparison {
                    object: o,
                    first: f,
                    second: g,
                    iso,
                });
            }
        }
    }
    let split = comparisons.iter().all(|c| e.is_identity(c.iso));
    let cleavage = CleavageReport {
        lifts,
        comparisons,
        split,
        chosen,
        compared,
    };
    let split = if split {
        Some(split_functor(pi, &cleavage)?)
    } else {
        None
    };
    Ok(Straightening { cleavage, split })
}

fn split_functor(pi: &Functor, cleavage: &CleavageReport) -> Result<CatValuedFunctor> {
    let (e, k) = (pi.source(), pi.target());
    let fibers: Vec<_> = (0..k.num_objects()).map(|x| fiber(pi, x)).collect();
    let inverse: Vec<(HashMap<usize, usize>, HashMap<usize, usize>)> = fibers
        .iter()
        .map(|f| {
            let i = &f.inclusion;
            (
                (0..f.category.num_objects())
                    .map(|o| (i.ob(o), o))
                    .collect(),
                (0..f.category.num_morphisms())
                    .map(|m| (i.mor(m), m))
                    .collect(),
            )
        })
        .collect();
    let mut functors = Vec::new();
    for m in 0..k.num_morphisms() {
        let (x, y) = (k.src(m), k.tgt(m));
        let (src, tgt) = (&fibers[x], &fibers[y]);
        let objects = (0..src.category.num_objects())
            .map(|o| inverse[y].0[&e.tgt(cleavage.chosen(src.inclusion.ob(o), m))])
            .collect();
        let morphisms = (0..src.category.num_morphisms())
            .map(|p| Ok(inverse[y].1[&cleavage.transport(pi, m, src.inclusion.mor(p))?]))
            .collect::<Result<_>>()?;
        functors.push(Functor::new_unchecked(
            src.category.clone(),
            tgt.category.clone(),
            objects,
            morphisms,
        ));
    }
    let categories = fibers.iter().map(|f| f.category.clone()).collect();
    CatValuedFunctor::new(k.clone(), categories, functors)
        .map_err(|err| CatError::Internal(format!("split cleavage is not strict: {err}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::constructions::{arrow_category, product};
    use crate::fib::{is_cocartesian_fibration, is_discrete_opfibration};
    use crate::search::find_isomorphism_over;
    use crate::transport::functors::find_natural_iso;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn elements_of_a_two_point_map() {
        let one = Arc::new(catalog::interval(1));
        let f = SetValuedFunctor::new(
            one,
            vec![names(&["a"]), names(&["b", "c"])],
            vec![vec![0], vec![0], vec![0, 1]],
        )
        .unwrap();
        let el = unstraighten(&f);
        let total = el.projection.source();
        assert!(total.is_valid());
        assert_eq!(total.num_objects(), 3);
        assert_eq!(total.non_identity_morphisms().count(), 1);
        let cross = total.non_identity_morphisms().next().unwrap();
        assert_eq!(
            (
                total.object_id(total.src(cross)),
                total.object_id(total.tgt(cross))
            ),
            ("a", "b")
        );
        assert!(is_discrete_opfibration(&el.projection).holds);
        let back = straighten_discrete_opfib(&el.projection).unwrap();
        assert!(find_natural_iso(&f, &back).is_some());
    }

    #[test]
    fn straightening_refuses_non_discrete() {
        let c = Arc::new(catalog::interval(1));
        let ar = arrow_category(&c);
        assert!(matches!(
            straighten_discrete_opfib(&ar.ev_t),
            Err(CatError::Refused { .. })
        ));
    }

    #[test]
    fn constant_unstraightens_to_product() {
        let k = Arc::new(catalog::ret());
        let c = Arc::new(catalog::parallel_pair());
        let g = unstraighten_cat(&CatValuedFunctor::constant(k.clone(), c.clone()));
        assert!(g.projection.source().is_valid());
        let p = product(&c, &k);
        assert!(find_isomorphism_over(&g.projection, &p.right)
            .unwrap()
            .is_some());
    }

    #[test]
    fn split_round_trip_recovers_the_functor() {
        let k = Arc::new(catalog::ret());
        let c = Arc::new(catalog::walking_iso());
        let f = CatValuedFunctor::constant(k.clone(), c.clone());
        let g = unstraighten_cat(&f);
        assert!(is_cocartesian_fibration(&g.projection).holds);
        let st = straighten_cocart(&g.projection).unwrap();
        assert!(st.cleavage.split);
        assert!(st.cleavage.verify(&g.projection).unwrap());
        let back = st.split.unwrap();
        assert!(strictly_recovers(&f, &g, &back));
    }

    /// Compares a recovered functor with the original through the canonical
    /// identification of fibers of the Grothendieck construction.
    fn strictly_recovers(
        f: &CatValuedFunctor,
        g: &GrothendieckConstruction,
        back: &CatValuedFunctor,
    ) -> bool {
        let k = &f.base;
        let fibers: Vec<_> = (0..k.num_objects())
            .map(|x| fiber(&g.projection, x))
            .collect();
        // position of (id_x, src φ, φ) in the recovered fiber, per x and φ
        let mor_pos = |x: usize, p: usize| {
            let m = g
                .morphism(k.identity(x), f.categories[x].src(p), p)
                .unwrap();
            fibers[x]
                .inclusion
                .morphism_map()
                .iter()
                .position(|&q| q == m)
                .unwrap()
        };
        (0..k.num_objects()).all(|x| {
            let c = &f.categories[x];
            let b = &back.categories[x];
            b.num_objects() == c.num_objects()
                && (0..c.num_objects()).all(|e| fibers[x].inclusion.ob(e) == g.object(x, e))
                && (0..c.num_morphisms()).all(|p| {
                    let q = mor_pos(x, p);
                    b.src(q) == c.src(p) && b.tgt(q) == c.tgt(p)
                })
                && c.table()
                    .iter()
                    .all(|&(u, v, w)| b.compose(mor_pos(x, u), mor_pos(x, v)) == mor_pos(x, w))
        }) && (0..k.num_morphisms()).all(|m| {
            let (x, y) = (k.src(m), k.tgt(m));
            let c = &f.categories[x];
            (0..c.num_objects()).all(|e| back.functors[m].ob(e) == f.functors[m].ob(e))
                && (0..c.num_morphisms()).all(|p| {
                    back.functors[m].mor(mor_pos(x, p)) == mor_pos(y, f.functors[m].mor(p))
                })
        })
    }

    #[test]
    fn arrow_target_cleavage_is_verified() {
        let c = Arc::new(catalog::ret());
        let ar = arrow_category(&c);
        let st = straighten_cocart(&ar.ev_t).unwrap();
        assert!(st.cleavage.verify(&ar.ev_t).unwrap());
        assert_eq!(st.split.is_some(), st.cleavage.split);
    }
}
