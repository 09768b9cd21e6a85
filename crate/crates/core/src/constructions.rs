//! Standard constructions on finite categories.
//!
//! Every construction returns freshly generated ids that are deterministic
//! functions of the input ids and their order.

use std::collections::HashMap;
use std::sync::Arc;

use crate::catalog;
use crate::category::FiniteCategory;
use crate::error::{CatError, Result};
use crate::functor::Functor;

/// The opposite category. Ids are unchanged, so `opposite(opposite(c)) == c`.
pub fn opposite(c: &FiniteCategory) -> FiniteCategory {
    let morphisms = c
        .morphisms()
        .iter()
        .map(|m| (m.id.clone(), m.tgt, m.src))
        .collect();
    FiniteCategory::from_fn(
        c.objects().to_vec(),
        morphisms,
        c.identities().to_vec(),
        |g, f| c.compose(f, g),
    )
}

/// A subcategory together with its inclusion.
#[derive(Debug, Clone)]
pub struct Subcategory {
    pub category: Arc<FiniteCategory>,
    pub inclusion: Functor,
}

/// The subcategory on the given objects and morphisms (both in the order of
/// `c`). The morphism set must contain the identities of the chosen objects
/// and be closed under composition; ids are kept.
pub fn subcategory(c: &Arc<FiniteCategory>, objects: &[usize], morphisms: &[usize]) -> Subcategory {
    let mut objects = objects.to_vec();
    objects.sort_unstable();
    objects.dedup();
    let mut morphisms = morphisms.to_vec();
    morphisms.sort_unstable();
    morphisms.dedup();
    let opos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mpos: HashMap<usize, usize> = morphisms.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mors = morphisms
        .iter()
        .map(|&m| {
            (
                c.morphism_id(m).to_string(),
                opos[&c.src(m)],
                opos[&c.tgt(m)],
            )
        })
        .collect();
    let ids = objects.iter().map(|&o| mpos[&c.identity(o)]).collect();
    let cat = FiniteCategory::from_fn(
        objects
            .iter()
            .map(|&o| c.object_id(o).to_string())
            .collect(),
        mors,
        ids,
        |g, f| {
            let gf = c.compose(morphisms[g], morphisms[f]);
            *mpos
                .get(&gf)
                .expect("subcategory is not closed under composition")
        },
    );
    let cat = Arc::new(cat);
    let inclusion = Functor::new_unchecked(cat.clone(), c.clone(), objects, morphisms);
    Subcategory {
        category: cat,
        inclusion,
    }
}

/// The full subcategory on the given objects.
pub fn full_subcategory(c: &FiniteCategory, objects: &[usize]) -> Subcategory {
    let c = Arc::new(c.clone());
    full_subcategory_arc(&c, objects)
}

pub fn full_subcategory_arc(c: &Arc<FiniteCategory>, objects: &[usize]) -> Subcategory {
    let mut keep = vec![false; c.num_objects()];
    for &o in objects {
        keep[o] = true;
    }
    let morphisms: Vec<usize> = (0..c.num_morphisms())
        .filter(|&m| keep[c.src(m)] && keep[c.tgt(m)])
        .collect();
    subcategory(c, objects, &morphisms)
}

/// The fiber of `pi` over object `x`: objects over `x` and morphisms over
/// `id_x`, with the ids of the total category.
pub fn fiber(pi: &Functor, x: usize) -> Subcategory {
    let e = pi.source();
    let k = pi.target();
    let objects: Vec<usize> = (0..e.num_objects()).filter(|&o| pi.ob(o) == x).collect();
    let idx = k.identity(x);
    let morphisms: Vec<usize> = (0..e.num_morphisms())
        .filter(|&m| pi.mor(m) == idx)
        .collect();
    subcategory(e, &objects, &morphisms)
}

/// The preimage of a subcategory of the base: objects over `objects`,
/// morphisms over `morphisms`.
pub fn restrict_over(pi: &Functor, objects: &[usize], morphisms: &[usize]) -> Subcategory {
    let e = pi.source();
    let ko: std::collections::HashSet<usize> = objects.iter().copied().collect();
    let km: std::collections::HashSet<usize> = morphisms.iter().copied().collect();
    let objs: Vec<usize> = (0..e.num_objects())
        .filter(|&o| ko.contains(&pi.ob(o)))
        .collect();
    let mors: Vec<usize> = (0..e.num_morphisms())
        .filter(|&m| km.contains(&pi.mor(m)))
        .collect();
    subcategory(e, &objs, &mors)
}

/// Binary product with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub category: Arc<FiniteCategory>,
    pub left: Functor,
    pub right: Functor,
    right_objects: usize,
    right_morphisms: usize,
}

impl Product {
    pub fn object(&self, a: usize, b: usize) -> usize {
        a * self.right_objects + b
    }

    pub fn morphism(&self, f: usize, g: usize) -> usize {
        f * self.right_morphisms + g
    }
}

pub fn product(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>) -> Product {
    let (no, nm) = (d.num_objects(), d.num_morphisms());
    let objects = (0..c.num_objects() * no)
        .map(|i| format!("({},{})", c.object_id(i / no), d.object_id(i % no)))
        .collect();
    let morphisms = (0..c.num_morphisms() * nm)
        .map(|i| {
            let (f, g) = (i / nm, i % nm);
            (
                format!("({},{})", c.morphism_id(f), d.morphism_id(g)),
                c.src(f) * no + d.src(g),
                c.tgt(f) * no + d.tgt(g),
            )
        })
        .collect();
    let identities = (0..c.num_objects() * no)
        .map(|i| c.identity(i / no) * nm + d.identity(i % no))
        .collect();
    let cat = Arc::new(FiniteCategory::from_fn(
        objects,
        morphisms,
        identities,
        |g, f| c.compose(g / nm, f / nm) * nm + d.compose(g % nm, f % nm),
    ));
    let left = Functor::new_unchecked(
        cat.clone(),
        c.clone(),
        (0..cat.num_objects()).map(|i| i / no).collect(),
        (0..cat.num_morphisms()).map(|i| i / nm).collect(),
    );
    let right = Functor::new_unchecked(
        cat.clone(),
        d.clone(),
        (0..cat.num_objects()).map(|i| i % no).collect(),
        (0..cat.num_morphisms()).map(|i| i % nm).collect(),
    );
    Product {
        category: cat,
        left,
        right,
        right_objects: no,
        right_morphisms: nm,
    }
}

/// The product of two functors, `F × G: A × B → C × D`.
pub fn product_functor(f: &Functor, g: &Functor, source: &Product, target: &Product) -> Functor {
    let s = &source.category;
    let objects = (0..s.num_objects())
        .map(|o| target.object(f.ob(source.left.ob(o)), g.ob(source.right.ob(o))))
        .collect();
    let morphisms = (0..s.num_morphisms())
        .map(|m| target.morphism(f.mor(source.left.mor(m)), g.mor(source.right.mor(m))))
        .collect();
    Functor::new_unchecked(s.clone(), target.category.clone(), objects, morphisms)
}

/// The functor into a product induced by two functors out of a common source.
pub fn pairing(f: &Functor, g: &Functor, target: &Product) -> Functor {
    let s = f.source();
    let objects = (0..s.num_objects())
        .map(|o| target.object(f.ob(o), g.ob(o)))
        .collect();
    let morphisms = (0..s.num_morphisms())
        .map(|m| target.morphism(f.mor(m), g.mor(m)))
        .collect();
    Functor::new_unchecked(s.clone(), target.category.clone(), objects, morphisms)
}

/// Disjoint union of categories; ids are prefixed with `<k>:`.
pub fn coproduct(parts: &[&FiniteCategory]) -> FiniteCategory {
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut identities = Vec::new();
    let mut obj_off = Vec::new();
    let mut mor_off = Vec::new();
    for (k, c) in parts.iter().enumerate() {
        let (oo, mo) = (objects.len(), morphisms.len());
        obj_off.push(oo);
        mor_off.push(mo);
        objects.extend(c.objects().iter().map(|o| format!("{k}:{o}")));
        morphisms.extend(
            c.morphisms()
                .iter()
                .map(|m| (format!("{k}:{}", m.id), m.src + oo, m.tgt + oo)),
        );
        identities.extend(c.identities().iter().map(|&i| i + mo));
    }
    let owner: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(k, c)| std::iter::repeat_n(k, c.num_morphisms()))
        .collect();
    FiniteCategory::from_fn(objects, morphisms, identities, |g, f| {
        let k = owner[f];
        parts[k].compose(g - mor_off[k], f - mor_off[k]) + mor_off[k]
    })
}

/// Strict fiber product `A ×_C B` with its projections.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub category: Arc<FiniteCategory>,
    pub left: Functor,
    pub right: Functor,
    object_index: HashMap<(usize, usize), usize>,
    morphism_index: HashMap<(usize, usize), usize>,
}

impl Pullback {
    pub fn object(&self, a: usize, b: usize) -> Option<usize> {
        self.object_index.get(&(a, b)).copied()
    }

    pub fn morphism(&self, f: usize, g: usize) -> Option<usize> {
        self.morphism_index.get(&(f, g)).copied()
    }
}

pub fn pullback(f: &Functor, g: &Functor) -> Pullback {
    assert!(
        **f.target() == **g.target(),
        "pullback of functors with different targets"
    );
    let (a, b) = (f.source(), g.source());
    let mut objs = Vec::new();
    let mut object_index = HashMap::new();
    for x in 0..a.num_objects() {
        for y in 0..b.num_objects() {
            if f.ob(x) == g.ob(y) {
                object_index.insert((x, y), objs.len());
                objs.push((x, y));
            }
        }
    }
    let mut mors = Vec::new();
    let mut morphism_index = HashMap::new();
    for p in 0..a.num_morphisms() {
        for q in 0..b.num_morphisms() {
            if f.mor(p) == g.mor(q) {
                morphism_index.insert((p, q), mors.len());
                mors.push((p, q));
            }
        }
    }
    let objects = objs
        .iter()
        .map(|&(x, y)| format!("({},{})", a.object_id(x), b.object_id(y)))
        .collect();
    let morphisms = mors
        .iter()
        .map(|&(p, q)| {
            (
                format!("({},{})", a.morphism_id(p), b.morphism_id(q)),
                object_index[&(a.src(p), b.src(q))],
                object_index[&(a.tgt(p), b.tgt(q))],
            )
        })
        .collect();
    let identities = objs
        .iter()
        .map(|&(x, y)| morphism_index[&(a.identity(x), b.identity(y))])
        .collect();
    let cat = Arc::new(FiniteCategory::from_fn(
        objects,
        morphisms,
        identities,
        |u, v| {
            let (p1, q1) = mors[u];
            let (p0, q0) = mors[v];
            morphism_index[&(a.compose(p1, p0), b.compose(q1, q0))]
        },
    ));
    let left = Functor::new_unchecked(
        cat.clone(),
        a.clone(),
        objs.iter().map(|p| p.0).collect(),
        mors.iter().map(|p| p.0).collect(),
    );
    let right = Functor::new_unchecked(
        cat.clone(),
        b.clone(),
        objs.iter().map(|p| p.1).collect(),
        mors.iter().map(|p| p.1).collect(),
    );
    Pullback {
        category: cat,
        left,
        right,
        object_index,
        morphism_index,
    }
}

/// Base change of `pi: E → K` along `j: J → K`; the result's `left` leg is
/// the projection to `E`, `right` the projection to `J`.
pub fn base_change(pi: &Functor, j: &Functor) -> Pullback {
    pullback(pi, j)
}

/// The comma category `F ↓ G` for `F: A → C`, `G: B → C`: objects
/// `(a, b, u: F a → G b)`, morphisms `(α, β)` with `Gβ ∘ u = u' ∘ Fα`.
#[derive(Debug, Clone)]
pub struct Comma {
    pub category: Arc<FiniteCategory>,
    pub left: Functor,
    pub right: Functor,
    /// `(a, b, u)` per object.
    pub objects: Vec<(usize, usize, usize)>,
}

pub fn comma(f: &Functor, g: &Functor) -> Comma {
    let (a, b, c) = (f.source(), g.source(), f.target());
    assert!(
        **c == **g.target(),
        "comma of functors with different targets"
    );
    let mut objs = Vec::new();
    let mut by_ab: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for x in 0..a.num_objects() {
        for y in 0..b.num_objects() {
            for &u in c.hom(f.ob(x), g.ob(y)) {
                by_ab.entry((x, y)).or_default().push(objs.len());
                objs.push((x, y, u));
            }
        }
    }
    let obj_index: HashMap<(usize, usize, usize), usize> =
        objs.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    // morphisms: (source object, alpha, beta) -> target object is determined by
    // u' ∘ Fα = Gβ ∘ u, but several u' may qualify, so keep all of them.
    let mut mors: Vec<(usize, usize, usize, usize)> = Vec::new(); // (src, tgt, alpha, beta)
    let mut mor_index = HashMap::new();
    for (si, &(x, y, u)) in objs.iter().enumerate() {
        for &al in a.out_of(x) {
            for &be in b.out_of(y) {
                let lhs = c.compose(g.mor(be), u);
                let (x2, y2) = (a.tgt(al), b.tgt(be));
                if let Some(targets) = by_ab.get(&(x2, y2)) {
                    for &ti in targets {
                        let u2 = objs[ti].2;
                        if c.compose(u2, f.mor(al)) == lhs {
                            mor_index.insert((si, ti, al, be), mors.len());
                            mors.push((si, ti, al, be));
                        }
                    }
                }
            }
        }
    }
    let obj_name = |i: usize| {
        let (x, y, u) = objs[i];
        format!(
            "({},{},{})",
            a.object_id(x),
            b.object_id(y),
            c.morphism_id(u)
        )
    };
    let objects: Vec<String> = (0..objs.len()).map(obj_name).collect();
    let morphisms = mors
        .iter()
        .map(|&(s, t, al, be)| {
            (
                format!(
                    "{}=>{}:({},{})",
                    objects[s],
                    objects[t],
                    a.morphism_id(al),
                    b.morphism_id(be)
                ),
                s,
                t,
            )
        })
        .collect();
    let identities = objs
        .iter()
        .enumerate()
        .map(|(i, &(x, y, _))| mor_index[&(i, i, a.identity(x), b.identity(y))])
        .collect();
    let cat = Arc::new(FiniteCategory::from_fn(
        objects.clone(),
        morphisms,
        identities,
        |p, q| {
            let (s, _, al0, be0) = mors[q];
            let (_, t, al1, be1) = mors[p];
            mor_index[&(s, t, a.compose(al1, al0), b.compose(be1, be0))]
        },
    ));
    let left = Functor::new_unchecked(
        cat.clone(),
        a.clone(),
        objs.iter().map(|o| o.0).collect(),
        mors.iter().map(|m| m.2).collect(),
    );
    let right = Functor::new_unchecked(
        cat.clone(),
        b.clone(),
        objs.iter().map(|o| o.1).collect(),
        mors.iter().map(|m| m.3).collect(),
    );
    let _ = obj_index;
    Comma {
        category: cat,
        left,
        right,
        objects: objs,
    }
}

fn point_at(c: &Arc<FiniteCategory>, x: usize) -> Result<Functor> {
    if x >= c.num_objects() {
        return Err(CatError::UnknownObject(format!("#{x}")));
    }
    Ok(Functor::point(Arc::new(catalog::terminal()), c.clone(), x))
}

/// `C_{/x}`: objects are morphisms into `x`; `left` forgets to `C`.
pub fn slice(c: &Arc<FiniteCategory>, x: usize) -> Result<Comma> {
    Ok(comma(&Functor::identity(c.clone()), &point_at(c, x)?))
}

/// `C^{x/}`: objects are morphisms out of `x`; `right` forgets to `C`.
pub fn coslice(c: &Arc<FiniteCategory>, x: usize) -> Result<Comma> {
    Ok(comma(&point_at(c, x)?, &Functor::identity(c.clone())))
}

/// `d ↓ F`: objects `(c, u: d → F c)`; `right` forgets to the source of `F`.
pub fn under(f: &Functor, d: usize) -> Comma {
    comma(&point_at(f.target(), d).expect("object of the target"), f)
}

/// `F ↓ d`: objects `(c, u: F c → d)`; `left` forgets to the source of `F`.
pub fn over(f: &Functor, d: usize) -> Comma {
    comma(f, &point_at(f.target(), d).expect("object of the target"))
}

/// The arrow category with its evaluation functors.
#[derive(Debug, Clone)]
pub struct ArrowCategory {
    pub category: Arc<FiniteCategory>,
    pub ev_s: Functor,
    pub ev_t: Functor,
    /// `(f, g, a, b)` per morphism: a square from `f` to `g`.
    pub squares: Vec<(usize, usize, usize, usize)>,
}

pub fn arrow_category(c: &Arc<FiniteCategory>) -> ArrowCategory {
    let mut squares = Vec::new();
    let mut index = HashMap::new();
    for f in 0..c.num_morphisms() {
        for &a in c.out_of(c.src(f)) {
            for &b in c.out_of(c.tgt(f)) {
                let bf = c.compose(b, f);
                for &g in c.hom(c.tgt(a), c.tgt(b)) {
                    if c.compose(g, a) == bf {
                        index.insert((f, g, a, b), squares.len());
                        squares.push((f, g, a, b));
                    }
                }
            }
        }
    }
    let objects: Vec<String> = c.morphisms().iter().map(|m| m.id.clone()).collect();
    let morphisms = squares
        .iter()
        .map(|&(f, g, a, b)| {
            (
                format!(
                    "[{}=>{}]({},{})",
                    objects[f],
                    objects[g],
                    c.morphism_id(a),
                    c.morphism_id(b)
                ),
                f,
                g,
            )
        })
        .collect();
    let identities = (0..c.num_morphisms())
        .map(|f| index[&(f, f, c.identity(c.src(f)), c.identity(c.tgt(f)))])
        .collect();
    let cat = Arc::new(FiniteCategory::from_fn(
        objects,
        morphisms,
        identities,
        |p, q| {
            let (f, _, a0, b0) = squares[q];
            let (_, h, a1, b1) = squares[p];
            index[&(f, h, c.compose(a1, a0), c.compose(b1, b0))]
        },
    ));
    let ev_s = Functor::new_unchecked(
        cat.clone(),
        c.clone(),
        (0..c.num_morphisms()).map(|f| c.src(f)).collect(),
        squares.iter().map(|s| s.2).collect(),
    );
    let ev_t = Functor::new_unchecked(
        cat.clone(),
        c.clone(),
        (0..c.num_morphisms()).map(|f| c.tgt(f)).collect(),
        squares.iter().map(|s| s.3).collect(),
    );
    ArrowCategory {
        category: cat,
        ev_s,
        ev_t,
        squares,
    }
}

/// The twisted arrow category: a morphism `f → g` is a pair `(a, b)` with
/// `g = b ∘ f ∘ a`. The projection lands in `C^op × C`.
#[derive(Debug, Clone)]
pub struct TwistedArrows {
    pub category: Arc<FiniteCategory>,
    pub projection: Functor,
    pub base: Product,
}

pub fn twisted_arrows(c: &Arc<FiniteCategory>) -> TwistedArrows {
    let mut mors = Vec::new();
    let mut index = HashMap::new();
    for f in 0..c.num_morphisms() {
        for &a in c.incoming(c.src(f)) {
            let fa = c.compose(f, a);
            for &b in c.out_of(c.tgt(f)) {
                let g = c.compose(b, fa);
                index.insert((f, g, a, b), mors.len());
                mors.push((f, g, a, b));
            }
        }
    }
    let objects: Vec<String> = c.morphisms().iter().map(|m| m.id.clone()).collect();
    let morphisms = mors
        .iter()
        .map(|&(f, g, a, b)| {
            (
                format!(
                    "[{}=>{}]({},{})",
                    objects[f],
                    objects[g],
                    c.morphism_id(a),
                    c.morphism_id(b)
                ),
                f,
                g,
            )
        })
        .collect();
    let identities = (0..c.num_morphisms())
        .map(|f| index[&(f, f, c.identity(c.src(f)), c.identity(c.tgt(f)))])
        .collect();
    let cat = Arc::new(FiniteCategory::from_fn(
        objects,
        morphisms,
        identities,
        |p, q| {
            let (f, _, a0, b0) = mors[q];
            let (_, h, a1, b1) = mors[p];
            index[&(f, h, c.compose(a0, a1), c.compose(b1, b0))]
        },
    ));
    let op = Arc::new(opposite(c));
    let base = product(&op, c);
    let projection = Functor::new_unchecked(
        cat.clone(),
        base.category.clone(),
        (0..c.num_morphisms())
            .map(|f| base.object(c.src(f), c.tgt(f)))
            .collect(),
        mors.iter()
            .map(|&(_, _, a, b)| base.morphism(a, b))
            .collect(),
    );
    TwistedArrows {
        category: cat,
        projection,
        base,
    }
}

/// Renames ids; returns the renamed category and the identity-on-structure
/// isomorphism from `c` to it.
pub fn relabel(
    c: &Arc<FiniteCategory>,
    object: impl Fn(&str) -> String,
    morphism: impl Fn(&str) -> String,
) -> (Arc<FiniteCategory>, Functor) {
    let objects = c.objects().iter().map(|o| object(o)).collect();
    let morphisms = c
        .morphisms()
        .iter()
        .map(|m| (morphism(&m.id), m.src, m.tgt))
        .collect();
    let renamed = Arc::new(FiniteCategory::from_fn(
        objects,
        morphisms,
        c.identities().to_vec(),
        |g, f| c.compose(g, f),
    ));
    let iso = Functor::new_unchecked(
        c.clone(),
        renamed.clone(),
        (0..c.num_objects()).collect(),
        (0..c.num_morphisms()).collect(),
    );
    (renamed, iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{interval, terminal};

    fn arc(c: FiniteCategory) -> Arc<FiniteCategory> {
        Arc::new(c)
    }

    #[test]
    fn opposite_is_an_involution() {
        let c = catalog::ret();
        assert_eq!(opposite(&opposite(&c)), c);
        assert!(opposite(&c).is_valid());
    }

    #[test]
    fn product_of_one_cells_is_the_square() {
        let i = arc(interval(1));
        let p = product(&i, &i);
        assert_eq!(p.category.num_objects(), 4);
        assert_eq!(p.category.num_morphisms(), 9);
        assert!(p.category.is_valid());
    }

    #[test]
    fn identity_pullback_is_the_diagonal() {
        let c = arc(catalog::ret());
        let id = Functor::identity(c.clone());
        let pb = pullback(&id, &id);
        assert_eq!(pb.category.num_objects(), c.num_objects());
        assert_eq!(pb.category.num_morphisms(), c.num_morphisms());
        assert!(pb.category.is_valid());
    }

    #[test]
    fn fiber_of_target_evaluation_over_one() {
        let i = arc(interval(1));
        let ar = arrow_category(&i);
        let one = Functor::point(arc(terminal()), i.clone(), 1);
        let pb = pullback(&ar.ev_t, &one);
        assert_eq!(pb.category.num_objects(), 2);
        assert_eq!(pb.category.non_identity_morphisms().count(), 1);
    }

    #[test]
    fn middle_base_change_of_outer_edge_is_empty() {
        let two = arc(interval(2));
        let outer = arc(catalog::chain(&[0, 2]));
        let incl = Functor::from_ids(
            outer,
            two.clone(),
            &[("0", "0"), ("2", "2")],
            &[("id_0", "id_0"), ("id_2", "id_2"), ("0->2", "0->2")],
        )
        .unwrap();
        let mid = Functor::point(arc(terminal()), two, 1);
        let pb = pullback(&incl, &mid);
        assert_eq!(pb.category.num_objects(), 0);
    }

    #[test]
    fn slices_and_cosclices_of_intervals() {
        let two = arc(interval(2));
        let s = slice(&two, 2).unwrap();
        assert_eq!(s.category.num_objects(), 3);
        assert_eq!(s.category.num_morphisms(), 6);
        let cs = coslice(&two, 1).unwrap();
        assert_eq!(cs.category.num_objects(), 2);
        assert_eq!(cs.category.num_morphisms(), 3);
        assert!(s.category.is_valid() && cs.category.is_valid());
    }

    #[test]
    fn comma_specialises_to_coslice() {
        let one = arc(interval(1));
        let pt = Functor::point(arc(terminal()), one.clone(), 1);
        let c = comma(&pt, &Functor::identity(one));
        assert_eq!(c.category.num_objects(), 1);
    }

    #[test]
    fn arrow_category_of_one_cell() {
        let ar = arrow_category(&arc(interval(1)));
        assert_eq!(ar.category.num_objects(), 3);
        assert_eq!(ar.category.non_identity_morphisms().count(), 3);
        assert!(ar.category.is_valid());
        assert!(ar.ev_s.violations().is_empty() && ar.ev_t.violations().is_empty());
        let pt = arrow_category(&arc(terminal()));
        assert_eq!(
            (pt.category.num_objects(), pt.category.num_morphisms()),
            (1, 1)
        );
    }

    #[test]
    fn twisted_arrows_of_one_cell() {
        let one = arc(interval(1));
        let tw = twisted_arrows(&one);
        assert_eq!(tw.category.num_objects(), 3);
        let non_id: Vec<(String, String)> = tw
            .category
            .non_identity_morphisms()
            .map(|m| {
                let c = &tw.category;
                (
                    c.object_id(c.src(m)).to_string(),
                    c.object_id(c.tgt(m)).to_string(),
                )
            })
            .collect();
        assert_eq!(non_id.len(), 2);
        assert!(non_id.contains(&("id_0".into(), "0->1".into())));
        assert!(non_id.contains(&("id_1".into(), "0->1".into())));
        assert!(tw.category.is_valid());
        assert!(tw.projection.violations().is_empty());
    }

    #[test]
    fn opposite_of_slice_is_coslice_of_opposite() {
        let c = arc(catalog::ret());
        for x in 0..c.num_objects() {
            let s = slice(&c, x).unwrap();
            let op = arc(opposite(&c));
            let cs = coslice(&op, x).unwrap();
            let lhs = opposite(&s.category);
            assert!(crate::search::find_isomorphism(&lhs, &cs.category)
                .unwrap()
                .is_some());
        }
    }
}
