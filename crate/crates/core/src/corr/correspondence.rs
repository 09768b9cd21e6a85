use std::collections::HashMap;
use std::sync::Arc;

use super::profunctor::Profunctor;
use crate::catalog;
use crate::category::FiniteCategory;
use crate::constructions::{opposite, product, pullback};
use crate::error::{CatError, Result};
use crate::fib::menus::left_final_menu;
use crate::functor::Functor;
use crate::homology::{is_final, FinalityMode, FinalityVerdict};
use crate::search::find_isomorphism_with;

/// A category over the 1-cell with its two fibers named by inclusions that
/// must be isomorphisms onto the strict fibers.
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub total: Arc<FiniteCategory>,
    pub projection: Functor,
    pub source_inclusion: Functor,
    pub target_inclusion: Functor,
}

impl Correspondence {
    pub fn new(
        projection: Functor,
        source_inclusion: Functor,
        target_inclusion: Functor,
    ) -> Result<Self> {
        let c = Correspondence {
            total: projection.source().clone(),
            projection,
            source_inclusion,
            target_inclusion,
        };
        let bad = c.violations();
        if bad.is_empty() {
            Ok(c)
        } else {
            Err(CatError::InvalidCorrespondence(bad.join("; ")))
        }
    }

    /// Reads the fibers off `projection`, keeping the ids of the total.
    pub fn from_projection(projection: Functor) -> Result<Self> {
        let s = crate::constructions::fiber(&projection, 0);
        let t = crate::constructions::fiber(&projection, 1);
        Correspondence::new(projection, s.inclusion, t.inclusion)
    }

    /// `C × [1] → [1]`.
    pub fn identity(c: &Arc<FiniteCategory>) -> Self {
        let one = Arc::new(catalog::interval(1));
        let pr = product(c, &one);
        let incl = |end: usize| {
            Functor::new_unchecked(
                c.clone(),
                pr.category.clone(),
                (0..c.num_objects()).map(|o| pr.object(o, end)).collect(),
                (0..c.num_morphisms())
                    .map(|m| pr.morphism(m, one.identity(end)))
                    .collect(),
            )
        };
        Correspondence {
            total: pr.category.clone(),
            projection: pr.right.clone(),
            source_inclusion: incl(0),
            target_inclusion: incl(1),
        }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        self.source_inclusion.source()
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        self.target_inclusion.source()
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if **self.projection.target() != catalog::interval(1) {
            out.push("projection does not land in the 1-cell".into());
            return out;
        }
        for (name, f) in [
            ("projection", &self.projection),
            ("source", &self.source_inclusion),
            ("target", &self.target_inclusion),
        ] {
            let bad = f.violations();
            if !bad.is_empty() {
                out.push(format!("{name} functor is invalid: {}", bad.join(", ")));
            }
        }
        if !out.is_empty() {
            return out;
        }
        if *self.source_inclusion.target() != self.total
            || *self.target_inclusion.target() != self.total
        {
            out.push("fiber inclusions do not land in the total category".into());
            return out;
        }
        let one = self.projection.target();
        for (end, name, f) in [
            (0, "source", &self.source_inclusion),
            (1, "target", &self.target_inclusion),
        ] {
            let objs = (0..self.total.num_objects())
                .filter(|&o| self.projection.ob(o) == end)
                .count();
            let idm = one.identity(end);
            let mors = (0..self.total.num_morphisms())
                .filter(|&m| self.projection.mor(m) == idm)
                .count();
            let lands = (0..f.source().num_objects()).all(|o| self.projection.ob(f.ob(o)) == end);
            if !lands
                || !f.is_injective_on_objects()
                || !f.is_injective_on_morphisms()
                || f.source().num_objects() != objs
                || f.source().num_morphisms() != mors
            {
                out.push(format!(
                    "{name} inclusion is not an isomorphism onto the fiber over {end}"
                ));
            }
        }
        out
    }

    /// `E^op → [1]^op ≅ [1]`: source and target swap and become opposites.
    pub fn opposite(&self) -> Correspondence {
        let one = Arc::new(catalog::interval(1));
        let total = Arc::new(opposite(&self.total));
        // [1]^op ≅ [1] swaps the ends; the morphism order is id_0, 0->1, id_1
        let projection = Functor::new_unchecked(
            total.clone(),
            one,
            (0..total.num_objects())
                .map(|o| 1 - self.projection.ob(o))
                .collect(),
            (0..total.num_morphisms())
                .map(|m| 2 - self.projection.mor(m))
                .collect(),
        );
        let flip = |f: &Functor| {
            let f = f.opposite();
            Functor::new_unchecked(
                f.source().clone(),
                total.clone(),
                f.object_map().to_vec(),
                f.morphism_map().to_vec(),
            )
        };
        Correspondence {
            total: total.clone(),
            projection,
            source_inclusion: flip(&self.target_inclusion),
            target_inclusion: flip(&self.source_inclusion),
        }
    }
}

/// Ids for the elements of a profunctor used as morphisms of a larger
/// category: `prefix` plus the element name, qualified by the cell when the
/// name occurs in several cells.
pub(crate) fn element_ids(p: &Profunctor, prefix: &str) -> Vec<String> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for cell in p.cells() {
        for n in cell {
            *count.entry(n).or_default() += 1;
        }
    }
    let (sa, sb) = (p.source(), p.target());
    let nb = sb.num_objects();
    let mut out = Vec::new();
    for (c, cell) in p.cells().iter().enumerate() {
        for n in cell {
            if count[n.as_str()] == 1 {
                out.push(format!("{prefix}{n}"));
            } else {
                out.push(format!(
                    "{prefix}{n}@({},{})",
                    sa.object_id(c / nb),
                    sb.object_id(c % nb)
                ));
            }
        }
    }
    out
}

/// The collage: `A ⊔ B` with `Hom(a, b) = P(a, b)` and nothing from `B` to
/// `A`. Ids are prefixed `0:`, `1:` and `01:`.
pub fn collage(p: &Profunctor) -> Correspondence {
    let (a, b) = (p.source().clone(), p.target().clone());
    let (na, nb, ma, mb) = (
        a.num_objects(),
        b.num_objects(),
        a.num_morphisms(),
        b.num_morphisms(),
    );
    let mut offset = Vec::with_capacity(na * nb);
    let mut cross = Vec::new();
    for x in 0..na {
        for y in 0..nb {
            offset.push(ma + mb + cross.len());
            cross.extend((0..p.size(x, y)).map(|i| (x, y, i)));
        }
    }
    let ids = element_ids(p, "01:");
    let objects = a
        .objects()
        .iter()
        .map(|o| format!("0:{o}"))
        .chain(b.objects().iter().map(|o| format!("1:{o}")))
        .collect();
    let mut morphisms: Vec<(String, usize, usize)> = Vec::new();
    morphisms.extend(
        a.morphisms()
            .iter()
            .map(|m| (format!("0:{}", m.id), m.src, m.tgt)),
    );
    morphisms.extend(
        b.morphisms()
            .iter()
            .map(|m| (format!("1:{}", m.id), na + m.src, na + m.tgt)),
    );
    morphisms.extend(
        cross
            .iter()
            .zip(ids)
            .map(|(&(x, y, _), id)| (id, x, na + y)),
    );
    let identities = (0..na)
        .map(|o| a.identity(o))
        .chain((0..nb).map(|o| ma + b.identity(o)))
        .collect();
    let total = Arc::new(FiniteCategory::from_fn(
        objects,
        morphisms,
        identities,
        |g, f| {
            if f < ma {
                if g < ma {
                    a.compose(g, f)
                } else {
                    let (_, y, i) = cross[g - ma - mb];
                    offset[p.cell(a.src(f), y)] + p.act_left(f, y, i)
                }
            } else if f < ma + mb {
                if g < ma + mb {
                    ma + b.compose(g - ma, f - ma)
                } else {
                    unreachable!("no morphisms out of the target fiber into the cross part")
                }
            } else {
                let (x, _, i) = cross[f - ma - mb];
                offset[p.cell(x, b.tgt(g - ma))] + p.act_right(g - ma, x, i)
            }
        },
    ));
    let one = Arc::new(catalog::interval(1));
    let projection = Functor::new_unchecked(
        total.clone(),
        one,
        (0..na + nb).map(|o| usize::from(o >= na)).collect(),
        (0..total.num_morphisms())
            .map(|m| {
                if m < ma {
                    0
                } else if m < ma + mb {
                    2
                } else {
                    1
                }
            })
            .collect(),
    );
    let source_inclusion = Functor::new_unchecked(
        a.clone(),
        total.clone(),
        (0..na).collect(),
        (0..ma).collect(),
    );
    let target_inclusion = Functor::new_unchecked(
        b.clone(),
        total.clone(),
        (na..na + nb).collect(),
        (ma..ma + mb).collect(),
    );
    Correspondence {
        total,
        projection,
        source_inclusion,
        target_inclusion,
    }
}

/// `P(a, b) = Hom_E(a, b)` with actions by composition in `E`.
pub fn corr_to_profunctor(c: &Correspondence) -> Profunctor {
    let e = &c.total;
    let (is, it) = (&c.source_inclusion, &c.target_inclusion);
    let (a, b) = (c.source().clone(), c.target().clone());
    let nb = b.num_objects();
    let mut pos = vec![0usize; e.num_morphisms()];
    let mut elements = Vec::with_capacity(a.num_objects() * nb);
    for x in 0..a.num_objects() {
        for y in 0..nb {
            let hom = e.hom(is.ob(x), it.ob(y));
            for (i, &m) in hom.iter().enumerate() {
                pos[m] = i;
            }
            elements.push(hom.iter().map(|&m| e.morphism_id(m).to_string()).collect());
        }
    }
    let elem = |x: usize, y: usize, i: usize| e.hom(is.ob(x), it.ob(y))[i];
    Profunctor::from_fn(
        a.clone(),
        b.clone(),
        elements,
        |al, y, i| pos[e.compose(elem(a.tgt(al), y, i), is.mor(al))],
        |be, x, i| pos[e.compose(it.mor(be), elem(x, b.src(be), i))],
    )
}

/// An isomorphism of total categories over `[1]` that commutes with both
/// fiber inclusions, if one exists.
pub fn find_corr_isomorphism(c: &Correspondence, d: &Correspondence) -> Result<Option<Functor>> {
    if **c.source() != **d.source() || **c.target() != **d.target() {
        return Ok(None);
    }
    let mut obj = vec![usize::MAX; c.total.num_objects()];
    let mut mor = vec![usize::MAX; c.total.num_morphisms()];
    for (ci, di) in [
        (&c.source_inclusion, &d.source_inclusion),
        (&c.target_inclusion, &d.target_inclusion),
    ] {
        for o in 0..ci.source().num_objects() {
            obj[ci.ob(o)] = di.ob(o);
        }
        for m in 0..ci.source().num_morphisms() {
            mor[ci.mor(m)] = di.mor(m);
        }
    }
    find_isomorphism_with(
        &c.total,
        &d.total,
        |o, t| obj[o] == t,
        |m, n| (mor[m] == usize::MAX || mor[m] == n) && c.projection.mor(m) == d.projection.mor(n),
    )
}

/// The fiber product of totals over `[1]`; fibers are products.
pub fn product_corr(c: &Correspondence, d: &Correspondence) -> Correspondence {
    let pb = pullback(&c.projection, &d.projection);
    let incl = |ci: &Functor, di: &Functor| {
        let pr = product(ci.source(), di.source());
        let s = &pr.category;
        Functor::new_unchecked(
            s.clone(),
            pb.category.clone(),
            (0..s.num_objects())
                .map(|o| {
                    pb.object(ci.ob(pr.left.ob(o)), di.ob(pr.right.ob(o)))
                        .expect("both over the same end")
                })
                .collect(),
            (0..s.num_morphisms())
                .map(|m| {
                    pb.morphism(ci.mor(pr.left.mor(m)), di.mor(pr.right.mor(m)))
                        .expect("both over the same identity")
                })
                .collect(),
        )
    };
    Correspondence {
        total: pb.category.clone(),
        projection: pb.left.then(&c.projection),
        source_inclusion: incl(&c.source_inclusion, &d.source_inclusion),
        target_inclusion: incl(&c.target_inclusion, &d.target_inclusion),
    }
}

/// Whether the target fiber includes finally into the total category. The
/// three equivalent characterizations are recomputed and must agree.
pub fn is_left_final_corr(c: &Correspondence, mode: FinalityMode) -> Result<FinalityVerdict> {
    let v = is_final(&c.target_inclusion, mode)?;
    let menu = left_final_menu(&c.projection, mode)?;
    if !menu.agrees() || menu.conditions[0].1 != v.verdict {
        return Err(CatError::Internal(format!(
            "left finality characterizations disagree: {menu:?}"
        )));
    }
    Ok(v)
}

/// Whether the source fiber includes initially into the total category.
pub fn is_right_initial_corr(c: &Correspondence, mode: FinalityMode) -> Result<FinalityVerdict> {
    is_left_final_corr(&c.opposite(), mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::arrow_category;
    use crate::corr::profunctor::{hom_profunctor, ProfunctorIso};
    use crate::search::{find_isomorphism, section_category};

    #[test]
    fn collage_round_trip_is_index_preserving() {
        let c = Arc::new(catalog::ret());
        let p = hom_profunctor(&c);
        let col = collage(&p);
        assert!(col.total.is_valid(), "{}", col.total.validate());
        assert!(col.violations().is_empty());
        let back = corr_to_profunctor(&col);
        assert!(ProfunctorIso::identity_like(&p, &back).is_some());
    }

    #[test]
    fn identity_correspondence_reads_as_hom() {
        let c = Arc::new(catalog::walking_iso());
        let id = Correspondence::identity(&c);
        assert!(id.violations().is_empty());
        let p = corr_to_profunctor(&id);
        assert!(crate::corr::find_profunctor_iso(&p, &hom_profunctor(&c)).is_some());
    }

    #[test]
    fn sections_of_the_hom_collage_are_arrows() {
        let c = Arc::new(catalog::interval(2));
        let col = collage(&hom_profunctor(&c));
        let one = Arc::new(catalog::interval(1));
        let sc = section_category(&Functor::identity(one), &col.projection).unwrap();
        let ar = arrow_category(&c);
        assert!(find_isomorphism(&sc.category, &ar.category)
            .unwrap()
            .is_some());
    }

    #[test]
    fn two_element_collage_over_points() {
        let pt = Arc::new(catalog::terminal());
        let p = Profunctor::from_fn(
            pt.clone(),
            pt,
            vec![vec!["u".into(), "v".into()]],
            |_, _, x| x,
            |_, _, x| x,
        );
        let col = collage(&p);
        assert_eq!(col.total.non_identity_morphisms().count(), 2);
        assert!(col.total.is_valid());
    }

    #[test]
    fn corr_isomorphism_respects_fibers() {
        let c = Arc::new(catalog::ret());
        let id = Correspondence::identity(&c);
        let col = collage(&hom_profunctor(&c));
        assert!(find_corr_isomorphism(&id, &col).unwrap().is_some());
        assert!(find_corr_isomorphism(&id, &id.opposite().opposite())
            .unwrap()
            .is_some());
    }

    #[test]
    fn opposite_reads_as_transpose() {
        let c = Arc::new(catalog::ret());
        let col = collage(&hom_profunctor(&c));
        let lhs = corr_to_profunctor(&col.opposite());
        let rhs = corr_to_profunctor(&col).transpose();
        assert!(ProfunctorIso::identity_like(&lhs, &rhs).is_some());
    }

    #[test]
    fn product_of_identities_is_identity_of_product() {
        let c = Arc::new(catalog::interval(1));
        let d = Arc::new(catalog::cyclic_group(2));
        let p = product_corr(&Correspondence::identity(&c), &Correspondence::identity(&d));
        assert!(p.violations().is_empty());
        let cd = product(&c, &d).category;
        let q = Correspondence::identity(&cd);
        assert!(find_corr_isomorphism(&p, &q).unwrap().is_some());
    }

    #[test]
    fn identity_correspondence_is_left_final_and_right_initial() {
        let c = Arc::new(catalog::ret());
        let id = Correspondence::identity(&c);
        assert!(
            is_left_final_corr(&id, FinalityMode::Certified(2))
                .unwrap()
                .verdict
        );
        assert!(
            is_right_initial_corr(&id, FinalityMode::Certified(2))
                .unwrap()
                .verdict
        );
        let pt = Arc::new(catalog::terminal());
        let empty = Profunctor::from_fn(pt.clone(), pt, vec![vec![]], |_, _, x| x, |_, _, x| x);
        assert!(
            !is_left_final_corr(&collage(&empty), FinalityMode::Pi0Exact)
                .unwrap()
                .verdict
        );
    }
}
