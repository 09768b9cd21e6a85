use std::collections::HashMap;
use std::sync::Arc;

use super::correspondence::{collage, Correspondence};
use super::profunctor::Profunctor;
use crate::catalog;
use crate::category::FiniteCategory;
use crate::constructions::{product, Product};
use crate::error::{CatError, Result};
use crate::functor::Functor;
use crate::search::section_category;

/// A functor `X → A × B` with unique lifts of `B`-direction morphisms from a
/// fixed source, unique lifts of `A`-direction morphisms into a fixed target,
/// and morphisms over `(α, β)` exactly where the two transports agree.
#[derive(Debug, Clone)]
pub struct TwoSidedDiscreteFibration {
    pub total: Arc<FiniteCategory>,
    pub base: Product,
    pub projection: Functor,
}

impl TwoSidedDiscreteFibration {
    pub fn new(base: Product, projection: Functor) -> Result<Self> {
        let x = TwoSidedDiscreteFibration {
            total: projection.source().clone(),
            base,
            projection,
        };
        let bad = x.violations();
        if bad.is_empty() {
            Ok(x)
        } else {
            Err(CatError::NotTwoSidedDiscrete(bad.join("; ")))
        }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        self.base.left.target()
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        self.base.right.target()
    }

    /// The `(a, b)` of an object.
    pub fn over(&self, o: usize) -> (usize, usize) {
        let p = self.projection.ob(o);
        (self.base.left.ob(p), self.base.right.ob(p))
    }

    fn lifts(&self, o: usize, base_morphism: usize, outgoing: bool) -> Vec<usize> {
        let e = &self.total;
        let ms = if outgoing { e.out_of(o) } else { e.incoming(o) };
        ms.iter()
            .copied()
            .filter(|&m| self.projection.mor(m) == base_morphism)
            .collect()
    }

    /// Target of the unique lift of `(id_a, β)` out of `o`.
    pub fn push(&self, beta: usize, o: usize) -> usize {
        let (a, _) = self.over(o);
        let m = self.lifts(o, self.base.morphism(self.source().identity(a), beta), true)[0];
        self.total.tgt(m)
    }

    /// Source of the unique lift of `(α, id_b)` into `o`.
    pub fn pull(&self, alpha: usize, o: usize) -> usize {
        let (_, b) = self.over(o);
        let m = self.lifts(
            o,
            self.base.morphism(alpha, self.target().identity(b)),
            false,
        )[0];
        self.total.src(m)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let bad = self.projection.violations();
        if !bad.is_empty() {
            out.push(format!("projection is not a functor: {}", bad.join(", ")));
            return out;
        }
        if *self.projection.target() != self.base.category {
            out.push("projection does not land in the base product".into());
            return out;
        }
        let (sa, sb, x) = (self.source(), self.target(), &self.total);
        for o in 0..x.num_objects() {
            let (a, b) = self.over(o);
            for &be in sb.out_of(b) {
                let n = self
                    .lifts(o, self.base.morphism(sa.identity(a), be), true)
                    .len();
                if n != 1 {
                    out.push(format!(
                        "`{}` has {n} lifts of `{}` from it",
                        x.object_id(o),
                        sb.morphism_id(be)
                    ));
                }
            }
            for &al in sa.incoming(a) {
                let n = self
                    .lifts(o, self.base.morphism(al, sb.identity(b)), false)
                    .len();
                if n != 1 {
                    out.push(format!(
                        "`{}` has {n} lifts of `{}` into it",
                        x.object_id(o),
                        sa.morphism_id(al)
                    ));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        // a morphism over (α, β) from o to o' exists, uniquely, iff β·o = o'·α
        for o in 0..x.num_objects() {
            let (a, b) = self.over(o);
            for o2 in 0..x.num_objects() {
                let (a2, b2) = self.over(o2);
                for &al in sa.hom(a, a2) {
                    for &be in sb.hom(b, b2) {
                        let bm = self.base.morphism(al, be);
                        let n = x
                            .hom(o, o2)
                            .iter()
                            .filter(|&&m| self.projection.mor(m) == bm)
                            .count();
                        let expected = usize::from(self.push(be, o) == self.pull(al, o2));
                        if n != expected {
                            out.push(format!(
                                "{n} morphisms `{}` → `{}` over ({}, {}), expected {expected}",
                                x.object_id(o),
                                x.object_id(o2),
                                sa.morphism_id(al),
                                sb.morphism_id(be)
                            ));
                        }
                    }
                }
            }
        }
        out
    }
}

/// The category of elements of `P` over `A × B`: objects `(a, b, x)`, and a
/// morphism `(α, β): x → y` whenever `β · x = y · α`.
pub fn profunctor_to_bifib(p: &Profunctor) -> TwoSidedDiscreteFibration {
    let (sa, sb) = (p.source().clone(), p.target().clone());
    let base = product(&sa, &sb);
    let nb = sb.num_objects();
    let mut objs = Vec::new();
    let mut first = Vec::with_capacity(p.cells().len());
    for (c, cell) in p.cells().iter().enumerate() {
        first.push(objs.len());
        objs.extend((0..cell.len()).map(|i| (c / nb, c % nb, i)));
    }
    let oid = |o: usize| {
        let (a, b, i) = objs[o];
        format!(
            "{}@({},{})",
            p.elements(a, b)[i],
            sa.object_id(a),
            sb.object_id(b)
        )
    };
    let mut mors = Vec::new();
    let mut index = HashMap::new();
    for (o, &(a, b, i)) in objs.iter().enumerate() {
        for &al in sa.out_of(a) {
            for &be in sb.out_of(b) {
                let (a2, b2) = (sa.tgt(al), sb.tgt(be));
                let pushed = p.act_right(be, a, i);
                for j in 0..p.size(a2, b2) {
                    if p.act_left(al, b2, j) == pushed {
                        let o2 = first[p.cell(a2, b2)] + j;
                        index.insert((o, o2, al, be), mors.len());
                        mors.push((o, o2, al, be));
                    }
                }
            }
        }
    }
    let objects: Vec<String> = (0..objs.len()).map(oid).collect();
    let morphisms = mors
        .iter()
        .map(|&(o, o2, al, be)| {
            (
                format!(
                    "{}=>{}:({},{})",
                    objects[o],
                    objects[o2],
                    sa.morphism_id(al),
                    sb.morphism_id(be)
                ),
                o,
                o2,
            )
        })
        .collect();
    let identities = objs
        .iter()
        .enumerate()
        .map(|(o, &(a, b, _))| index[&(o, o, sa.identity(a), sb.identity(b))])
        .collect();
    let total = Arc::new(FiniteCategory::from_fn(
        objects,
        morphisms,
        identities,
        |g, f| {
            let (o, _, al0, be0) = mors[f];
            let (_, o2, al1, be1) = mors[g];
            index[&(o, o2, sa.compose(al1, al0), sb.compose(be1, be0))]
        },
    ));
    let projection = Functor::new_unchecked(
        total,
        base.category.clone(),
        objs.iter().map(|&(a, b, _)| base.object(a, b)).collect(),
        mors.iter()
            .map(|&(_, _, al, be)| base.morphism(al, be))
            .collect(),
    );
    TwoSidedDiscreteFibration {
        total: projection.source().clone(),
        base,
        projection,
    }
}

/// Fibers over `(a, b)` as element sets, with the transport actions. The
/// discreteness conditions are checked first.
pub fn bifib_to_profunctor(x: &TwoSidedDiscreteFibration) -> Result<Profunctor> {
    let bad = x.violations();
    if !bad.is_empty() {
        return Err(CatError::NotTwoSidedDiscrete(bad.join("; ")));
    }
    let (sa, sb) = (x.source().clone(), x.target().clone());
    let nb = sb.num_objects();
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); sa.num_objects() * nb];
    let mut pos = vec![0usize; x.total.num_objects()];
    for o in 0..x.total.num_objects() {
        let (a, b) = x.over(o);
        pos[o] = cells[a * nb + b].len();
        cells[a * nb + b].push(o);
    }
    let elements = cells
        .iter()
        .map(|c| {
            c.iter()
                .map(|&o| x.total.object_id(o).to_string())
                .collect()
        })
        .collect();
    Ok(Profunctor::from_fn(
        sa.clone(),
        sb.clone(),
        elements,
        |al, b, i| pos[x.pull(al, cells[sa.tgt(al) * nb + b][i])],
        |be, a, i| pos[x.push(be, cells[a * nb + sb.src(be)][i])],
    ))
}

/// Sections of `E → [1]` over `[1]`: cross morphisms and commuting squares,
/// projected to the fibers.
pub fn corr_to_bifib(c: &Correspondence) -> Result<TwoSidedDiscreteFibration> {
    let one = Arc::new(catalog::interval(1));
    let sc = section_category(&Functor::identity(one), &c.projection)?;
    let inverse = |f: &Functor| {
        let objs: HashMap<usize, usize> = (0..f.source().num_objects())
            .map(|o| (f.ob(o), o))
            .collect();
        let mors: HashMap<usize, usize> = (0..f.source().num_morphisms())
            .map(|m| (f.mor(m), m))
            .collect();
        (objs, mors)
    };
    let (so, sm) = inverse(&c.source_inclusion);
    let (to, tm) = inverse(&c.target_inclusion);
    let base = product(c.source(), c.target());
    let cat = sc.category.clone();
    let projection = Functor::new_unchecked(
        cat.clone(),
        base.category.clone(),
        sc.sections
            .iter()
            .map(|s| base.object(so[&s.ob(0)], to[&s.ob(1)]))
            .collect(),
        (0..cat.num_morphisms())
            .map(|m| base.morphism(sm[&sc.components[m][0]], tm[&sc.components[m][1]]))
            .collect(),
    );
    TwoSidedDiscreteFibration::new(base, projection)
}

/// The collage of the profunctor of fibers.
pub fn bifib_to_corr(x: &TwoSidedDiscreteFibration) -> Result<Correspondence> {
    Ok(collage(&bifib_to_profunctor(x)?))
}
