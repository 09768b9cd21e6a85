//! Lists of conditions that should all agree, each computed independently.
//!
//! Every function returns one [`Menu`] per instance of the statement (for
//! example one per morphism of the base); a menu *agrees* when all of its
//! conditions have the same truth value.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::adjoint::{is_left_adjoint, is_right_adjoint};
use super::exponentiable::is_conduche;
use super::lifting::*;
use super::{arrow_functor, cocartesian_flags};
use crate::catalog;
use crate::category::FiniteCategory;
use crate::constructions::{base_change, coslice, fiber, pullback, slice, Subcategory};
use crate::error::Result;
use crate::functor::Functor;
use crate::homology::{is_final, FinalityMode};
use crate::search::{section_category, FunctorSearch, SectionCategory};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Menu {
    pub statement: String,
    pub conditions: Vec<(String, bool)>,
}

impl Menu {
    fn new(statement: impl Into<String>, conditions: Vec<(&str, bool)>) -> Self {
        Menu {
            statement: statement.into(),
            conditions: conditions
                .into_iter()
                .map(|(n, b)| (n.to_string(), b))
                .collect(),
        }
    }

    pub fn agrees(&self) -> bool {
        self.conditions.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

/// Maps an object/morphism of the ambient category back into a subcategory.
fn inverse_of(sub: &Subcategory) -> (HashMap<usize, usize>, HashMap<usize, usize>) {
    let i = &sub.inclusion;
    let objs = (0..sub.category.num_objects())
        .map(|o| (i.ob(o), o))
        .collect();
    let mors = (0..sub.category.num_morphisms())
        .map(|m| (i.mor(m), m))
        .collect();
    (objs, mors)
}

/// Evaluation `Fun_{/K}(J, E) → E_{|p(x)}` at the object `x` of `J`.
fn evaluation(sc: &SectionCategory, fib: &Subcategory, x: usize) -> Functor {
    let (objs, mors) = inverse_of(fib);
    let c = &sc.category;
    let objects = sc.sections.iter().map(|s| objs[&s.ob(x)]).collect();
    let morphisms = (0..c.num_morphisms())
        .map(|m| mors[&sc.components[m][x]])
        .collect();
    Functor::new_unchecked(c.clone(), fib.category.clone(), objects, morphisms)
}

/// The inclusion `E_{|y} → E ×_K K_{/y}`, `e ↦ (e, id_y)`, together with the
/// projection of the pullback to `K_{/y}`'s forgetful leg.
fn fiber_into_slice(pi: &Functor, y: usize, upper: bool) -> Result<Functor> {
    let k = pi.target();
    let sl = if upper { coslice(k, y)? } else { slice(k, y)? };
    let forget = if upper {
        sl.right.clone()
    } else {
        sl.left.clone()
    };
    let pb = pullback(pi, &forget);
    let idy = k.identity(y);
    let at = sl
        .objects
        .iter()
        .position(|&(_, _, u)| u == idy)
        .expect("identity object");
    let fib = fiber(pi, y);
    let objects = (0..fib.category.num_objects())
        .map(|o| {
            pb.object(fib.inclusion.ob(o), at)
                .expect("fiber object lies over y")
        })
        .collect();
    let id_at = sl.category.identity(at);
    let morphisms = (0..fib.category.num_morphisms())
        .map(|m| {
            pb.morphism(fib.inclusion.mor(m), id_at)
                .expect("fiber morphism lies over id")
        })
        .collect();
    Ok(Functor::new_unchecked(
        fib.category.clone(),
        pb.category.clone(),
        objects,
        morphisms,
    ))
}

/// Over `[1]`: coCartesian iff the fiber over the target includes as a right
/// adjoint, and dually. Applied to the base change along every morphism.
pub fn fiber_adjoint_menus(pi: &Functor) -> Vec<Menu> {
    let kc = pi.target();
    let mut out = Vec::new();
    for k in 0..kc.num_morphisms() {
        let bc = base_change(pi, &arrow_functor(kc, k));
        let over = &bc.right;
        let t = fiber(over, 1);
        let s = fiber(over, 0);
        out.push(Menu::new(
            format!("coCartesian over {}", kc.morphism_id(k)),
            vec![
                ("coCartesian", is_cocartesian_fibration(over).holds),
                (
                    "target fiber is a right adjoint",
                    is_right_adjoint(&t.inclusion).0.holds,
                ),
            ],
        ));
        out.push(Menu::new(
            format!("Cartesian over {}", kc.morphism_id(k)),
            vec![
                ("Cartesian", is_cartesian_fibration(over).holds),
                (
                    "source fiber is a left adjoint",
                    is_left_adjoint(&s.inclusion).0.holds,
                ),
            ],
        ));
    }
    out
}

/// Locally coCartesian iff each `E_{|y} → E_{/y}` is a right adjoint iff each
/// `ev_s` on sections over a morphism is a right adjoint; and dually.
pub fn local_menus(pi: &Functor) -> Result<Vec<Menu>> {
    let kc = pi.target();
    let one = Arc::new(catalog::interval(1));
    let mut slices_l = true;
    let mut slices_r = true;
    for y in 0..kc.num_objects() {
        slices_l &= is_right_adjoint(&fiber_into_slice(pi, y, false)?).0.holds;
        slices_r &= is_left_adjoint(&fiber_into_slice(pi, y, true)?).0.holds;
    }
    let mut evs_l = true;
    let mut evs_r = true;
    for k in 0..kc.num_morphisms() {
        let bc = base_change(pi, &arrow_functor(kc, k));
        let sc = section_category(&Functor::identity(one.clone()), &bc.right)?;
        evs_l &= is_right_adjoint(&evaluation(&sc, &fiber(&bc.right, 0), 0))
            .0
            .holds;
        evs_r &= is_left_adjoint(&evaluation(&sc, &fiber(&bc.right, 1), 1))
            .0
            .holds;
    }
    Ok(vec![
        Menu::new(
            "locally coCartesian",
            vec![
                ("locally coCartesian", is_locally_cocartesian(pi).holds),
                ("fiber into overcategory is a right adjoint", slices_l),
                ("source evaluation is a right adjoint", evs_l),
            ],
        ),
        Menu::new(
            "locally Cartesian",
            vec![
                ("locally Cartesian", is_locally_cartesian(pi).holds),
                ("fiber into undercategory is a left adjoint", slices_r),
                ("target evaluation is a left adjoint", evs_r),
            ],
        ),
    ])
}

/// Every functor from `shape` to `K`.
fn shapes_over(shape: &FiniteCategory, k: &Arc<FiniteCategory>) -> Result<Vec<Functor>> {
    FunctorSearch::new(&Arc::new(shape.clone()), k).collect()
}

/// The six characterizations of left fibrations.
pub fn left_fibration_menu(pi: &Functor) -> Result<Menu> {
    let kc = pi.target();
    let conservative = is_conservative(pi).holds;
    // (a) restriction to the cone point along J^◁ → K for J = ∗ and J = ∗ ⊔ ∗
    let mut cone = true;
    for shape in [catalog::interval(1), catalog::span()] {
        for p in shapes_over(&shape, kc)? {
            let sc = section_category(&p, pi)?;
            let fib = fiber(pi, p.ob(0));
            cone &= evaluation(&sc, &fib, 0).is_equivalence();
        }
    }
    // (d) ev_s on sections over each morphism is an equivalence
    let mut ev_equiv = true;
    // (e) lifts exist and each is coCartesian for the base change over [1]
    let mut local_lifts = true;
    for k in 0..kc.num_morphisms() {
        let ak = arrow_functor(kc, k);
        let sc = section_category(&ak, pi)?;
        ev_equiv &= evaluation(&sc, &fiber(pi, kc.src(k)), 0).is_equivalence();
        let bc = base_change(pi, &ak);
        let over = &bc.right;
        let arrow = 1; // 0->1 in [1]
        let flags = cocartesian_flags(over);
        let e = &bc.category;
        for o in (0..e.num_objects()).filter(|&o| over.ob(o) == 0) {
            let lifts: Vec<usize> = e
                .out_of(o)
                .iter()
                .copied()
                .filter(|&f| over.mor(f) == arrow)
                .collect();
            local_lifts &= !lifts.is_empty() && lifts.iter().all(|&f| flags[f]);
        }
    }
    // (f) lifts exist and every morphism is coCartesian
    let every = is_left_fibration(pi).holds;
    Ok(Menu::new(
        "left fibration",
        vec![
            ("restriction to the cone point is an equivalence", cone),
            (
                "conservative coCartesian",
                conservative && is_cocartesian_fibration(pi).holds,
            ),
            (
                "conservative locally coCartesian",
                conservative && is_locally_cocartesian(pi).holds,
            ),
            ("source evaluation is an equivalence", ev_equiv),
            ("lifts exist and are locally coCartesian", local_lifts),
            ("lifts exist and every morphism is coCartesian", every),
        ],
    ))
}

/// The three characterizations of left final functors, without the
/// exponentiability requirement.
pub fn left_final_menu(pi: &Functor, mode: FinalityMode) -> Result<Menu> {
    let kc = pi.target();
    let mut cylinder = true;
    let mut sections = true;
    for k in 0..kc.num_morphisms() {
        let ak = arrow_functor(kc, k);
        let bc = base_change(pi, &ak);
        cylinder &= is_final(&fiber(&bc.right, 1).inclusion, mode)?.verdict;
        let sc = section_category(&ak, pi)?;
        sections &= is_final(&evaluation(&sc, &fiber(pi, kc.src(k)), 0), mode)?.verdict;
    }
    let mut slices = true;
    for y in 0..kc.num_objects() {
        slices &= is_final(&fiber_into_slice(pi, y, false)?, mode)?.verdict;
    }
    Ok(Menu::new(
        "left final",
        vec![
            ("target fiber is final in each cylinder", cylinder),
            ("source evaluation on sections is final", sections),
            ("fiber is final in the overcategory", slices),
        ],
    ))
}

/// The right initial counterpart, computed on the opposite functor.
pub fn right_initial_menu(pi: &Functor, mode: FinalityMode) -> Result<Menu> {
    let mut m = left_final_menu(&pi.opposite(), mode)?;
    m.statement = "right initial".into();
    Ok(m)
}

/// coCartesian iff locally coCartesian and exponentiable; and dually.
pub fn cocartesian_menus(pi: &Functor) -> Vec<Menu> {
    let exp = is_conduche(pi).holds;
    vec![
        Menu::new(
            "coCartesian",
            vec![
                ("coCartesian", is_cocartesian_fibration(pi).holds),
                (
                    "locally coCartesian and Conduché",
                    is_locally_cocartesian(pi).holds && exp,
                ),
            ],
        ),
        Menu::new(
            "Cartesian",
            vec![
                ("Cartesian", is_cartesian_fibration(pi).holds),
                (
                    "locally Cartesian and Conduché",
                    is_locally_cartesian(pi).holds && exp,
                ),
            ],
        ),
    ]
}

/// All menus that must agree on every functor.
pub fn all_menus(pi: &Functor) -> Result<Vec<Menu>> {
    let mut out = fiber_adjoint_menus(pi);
    out.extend(local_menus(pi)?);
    out.push(left_fibration_menu(pi)?);
    out.push(left_fibration_menu(&pi.opposite()).map(|mut m| {
        m.statement = "right fibration".into();
        m
    })?);
    out.push(left_final_menu(pi, FinalityMode::Pi0Exact)?);
    out.push(right_initial_menu(pi, FinalityMode::Pi0Exact)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{arrow_category, full_subcategory_arc, product};

    fn check(pi: &Functor) {
        for m in all_menus(pi).unwrap() {
            assert!(m.agrees(), "{m:?}");
        }
        for m in cocartesian_menus(pi) {
            assert!(m.agrees(), "{m:?}");
        }
    }

    #[test]
    fn menus_agree_on_named_functors() {
        let two = Arc::new(catalog::interval(2));
        check(&arrow_category(&two).ev_t);
        check(&arrow_category(&two).ev_s);
        check(&full_subcategory_arc(&two, &[0, 2]).inclusion);
        check(&product(&Arc::new(catalog::ret()), &two).right);
        check(&Functor::to_point(
            Arc::new(catalog::walking_iso()),
            Arc::new(catalog::terminal()),
        ));
        let pt = Arc::new(catalog::terminal());
        check(&Functor::point(pt, Arc::new(catalog::interval(1)), 0));
    }
}
