use std::sync::Arc;

use serde::Serialize;

use super::bifib::{
    bifib_to_corr, bifib_to_profunctor, corr_to_bifib, profunctor_to_bifib,
    TwoSidedDiscreteFibration,
};
use super::correspondence::{collage, corr_to_profunctor, Correspondence};
use super::profunctor::{Profunctor, ProfunctorIso};
use crate::catalog;
use crate::error::Result;
use crate::functor::Functor;
use crate::search::section_category;

/// One conversion round trip and whether its canonical comparison is an
/// isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub route: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub round_trips: Vec<RoundTrip>,
}

impl TriangleReport {
    pub fn all_hold(&self) -> bool {
        self.round_trips.iter().all(|r| r.holds)
    }
}

/// All six round trips between profunctors, correspondences and two-sided
/// discrete fibrations, starting from `p` and its collage and category of
/// elements.
pub fn triangle_from_profunctor(p: &Profunctor) -> Result<TriangleReport> {
    equivalence_triangle(p, &collage(p), &profunctor_to_bifib(p))
}

/// As [`triangle_from_profunctor`], starting from a correspondence.
pub fn triangle_from_corr(c: &Correspondence) -> Result<TriangleReport> {
    equivalence_triangle(&corr_to_profunctor(c), c, &corr_to_bifib(c)?)
}

/// Each comparison map is written down from the construction, not searched
/// for, and then checked to be an isomorphism compatible with all the
/// structure.
pub fn equivalence_triangle(
    p: &Profunctor,
    c: &Correspondence,
    x: &TwoSidedDiscreteFibration,
) -> Result<TriangleReport> {
    let mut round_trips = Vec::new();
    let mut record = |route: &str, holds: bool| {
        round_trips.push(RoundTrip {
            route: route.into(),
            holds,
        })
    };

    let q = corr_to_profunctor(&collage(p));
    record(
        "prof->corr->prof",
        ProfunctorIso::identity_like(p, &q).is_some(),
    );
    let q = bifib_to_profunctor(&profunctor_to_bifib(p))?;
    record(
        "prof->bifib->prof",
        ProfunctorIso::identity_like(p, &q).is_some(),
    );

    let d = collage(&corr_to_profunctor(c));
    let cross: Vec<usize> = cross_elements(&corr_to_profunctor(c))
        .into_iter()
        .map(|(a, b, i)| {
            c.total
                .hom(c.source_inclusion.ob(a), c.target_inclusion.ob(b))[i]
        })
        .collect();
    record("corr->prof->corr", corr_comparison(&d, c, &cross));

    let y = corr_to_bifib(c)?;
    let d = bifib_to_corr(&y)?;
    let one = Arc::new(catalog::interval(1));
    let sc = section_category(&Functor::identity(one), &c.projection)?;
    // elements of the fiber profunctor of y are objects of y, which are sections
    let cross: Vec<usize> = cross_elements(&bifib_to_profunctor(&y)?)
        .into_iter()
        .map(|(a, b, i)| sc.sections[objects_over(&y, a, b)[i]].mor(1))
        .collect();
    record("corr->bifib->corr", corr_comparison(&d, c, &cross));

    let px = bifib_to_profunctor(x)?;
    let y = profunctor_to_bifib(&px);
    let obj: Vec<usize> = cross_elements(&px)
        .into_iter()
        .map(|(a, b, i)| objects_over(x, a, b)[i])
        .collect();
    record("bifib->prof->bifib", bifib_comparison(&y, x, &obj));

    let dc = bifib_to_corr(x)?;
    let y = corr_to_bifib(&dc)?;
    let (ma, mb) = (x.source().num_morphisms(), x.target().num_morphisms());
    let elems = cross_elements(&px);
    let sc = section_category(
        &Functor::identity(Arc::new(catalog::interval(1))),
        &dc.projection,
    )?;
    let obj: Vec<usize> = sc
        .sections
        .iter()
        .map(|s| {
            let (a, b, i) = elems[s.mor(1) - ma - mb];
            objects_over(x, a, b)[i]
        })
        .collect();
    record("bifib->corr->bifib", bifib_comparison(&y, x, &obj));

    Ok(TriangleReport { round_trips })
}

/// `(a, b, i)` for every element, in collage order.
fn cross_elements(p: &Profunctor) -> Vec<(usize, usize, usize)> {
    let nb = p.target().num_objects();
    (0..p.cells().len())
        .flat_map(|c| (0..p.cells()[c].len()).map(move |i| (c / nb, c % nb, i)))
        .collect()
}

fn objects_over(x: &TwoSidedDiscreteFibration, a: usize, b: usize) -> Vec<usize> {
    (0..x.total.num_objects())
        .filter(|&o| x.over(o) == (a, b))
        .collect()
}

/// The functor from the collage `d` to `c` that is the fiber inclusions on
/// `A ⊔ B` and sends the `k`-th cross morphism to `cross[k]`; holds if it is
/// an isomorphism over `[1]` under both fibers.
fn corr_comparison(d: &Correspondence, c: &Correspondence, cross: &[usize]) -> bool {
    let (na, ma) = (d.source().num_objects(), d.source().num_morphisms());
    let mb = d.target().num_morphisms();
    if **d.source() != **c.source() || **d.target() != **c.target() {
        return false;
    }
    if d.total.num_morphisms() != ma + mb + cross.len() {
        return false;
    }
    let objects = (0..d.total.num_objects())
        .map(|o| {
            if o < na {
                c.source_inclusion.ob(o)
            } else {
                c.target_inclusion.ob(o - na)
            }
        })
        .collect();
    let morphisms = (0..d.total.num_morphisms())
        .map(|m| {
            if m < ma {
                c.source_inclusion.mor(m)
            } else if m < ma + mb {
                c.target_inclusion.mor(m - ma)
            } else {
                cross[m - ma - mb]
            }
        })
        .collect();
    let Ok(phi) = Functor::new(d.total.clone(), c.total.clone(), objects, morphisms) else {
        return false;
    };
    phi.is_isomorphism()
        && phi.then(&c.projection).morphism_map() == d.projection.morphism_map()
        && d.source_inclusion.then(&phi).morphism_map() == c.source_inclusion.morphism_map()
        && d.target_inclusion.then(&phi).morphism_map() == c.target_inclusion.morphism_map()
}

/// The functor `y → x` with the given object map, sending each morphism to
/// the unique morphism of `x` over the same base morphism; holds if it exists
/// and is an isomorphism over `A × B`.
fn bifib_comparison(
    y: &TwoSidedDiscreteFibration,
    x: &TwoSidedDiscreteFibration,
    obj: &[usize],
) -> bool {
    if *y.base.category != *x.base.category || obj.len() != y.total.num_objects() {
        return false;
    }
    let (yt, xt) = (&y.total, &x.total);
    let mut morphisms = Vec::with_capacity(yt.num_morphisms());
    for m in 0..yt.num_morphisms() {
        let over = y.projection.mor(m);
        let lifts: Vec<usize> = xt
            .hom(obj[yt.src(m)], obj[yt.tgt(m)])
            .iter()
            .copied()
            .filter(|&n| x.projection.mor(n) == over)
            .collect();
        match lifts[..] {
            [n] => morphisms.push(n),
            _ => return false,
        }
    }
    let Ok(psi) = Functor::new(yt.clone(), xt.clone(), obj.to_vec(), morphisms) else {
        return false;
    };
    psi.is_isomorphism() && psi.then(&x.projection).morphism_map() == y.projection.morphism_map()
}
