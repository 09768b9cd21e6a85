use rayon::prelude::*;

use super::{arrow_functor, Verdict, Witness};
use crate::constructions::base_change;
use crate::functor::Functor;

/// First failure of the coCartesian condition for `f`, as
/// `(test morphism g, base factor k, number of fillers)`.
///
/// `f: e → e'` is coCartesian when for every `g: e → e''` and every
/// `k: π e' → π e''` with `k ∘ π f = π g` there is exactly one
/// `h: e' → e''` over `k` with `h ∘ f = g`.
fn cocartesian_failure(pi: &Functor, f: usize) -> Option<(usize, usize, usize)> {
    let e = pi.source();
    let kc = pi.target();
    let (src, tgt) = (e.src(f), e.tgt(f));
    let pf = pi.mor(f);
    for &g in e.out_of(src) {
        let e2 = e.tgt(g);
        let pg = pi.mor(g);
        for &k in kc.hom(pi.ob(tgt), pi.ob(e2)) {
            if kc.compose(k, pf) != pg {
                continue;
            }
            let fillers = e
                .hom(tgt, e2)
                .iter()
                .filter(|&&h| pi.mor(h) == k && e.compose(h, f) == g)
                .count();
            if fillers != 1 {
                return Some((g, k, fillers));
            }
        }
    }
    None
}

pub fn is_cocartesian_morphism(pi: &Functor, f: usize) -> Verdict {
    match cocartesian_failure(pi, f) {
        None => Verdict::yes(),
        Some((g, k, lifts)) => Verdict::no(Witness::NotCocartesian {
            morphism: pi.source().morphism_id(f).to_string(),
            test: pi.source().morphism_id(g).to_string(),
            factor: pi.target().morphism_id(k).to_string(),
            lifts,
        }),
    }
}

pub fn is_cartesian_morphism(pi: &Functor, f: usize) -> Verdict {
    is_cocartesian_morphism(&pi.opposite(), f)
}

/// Whether each morphism of the source is coCartesian.
pub fn cocartesian_flags(pi: &Functor) -> Vec<bool> {
    (0..pi.source().num_morphisms())
        .into_par_iter()
        .map(|f| cocartesian_failure(pi, f).is_none())
        .collect()
}

/// The coCartesian lifts of `k` starting at `e`, in index order.
pub fn cocartesian_lifts(pi: &Functor, e: usize, k: usize) -> Vec<usize> {
    pi.source()
        .out_of(e)
        .iter()
        .copied()
        .filter(|&f| pi.mor(f) == k && cocartesian_failure(pi, f).is_none())
        .collect()
}

fn lifts_of(pi: &Functor, e: usize, k: usize) -> Vec<usize> {
    pi.source()
        .out_of(e)
        .iter()
        .copied()
        .filter(|&f| pi.mor(f) == k)
        .collect()
}

fn ids(pi: &Functor, ms: &[usize]) -> Vec<String> {
    ms.iter()
        .map(|&m| pi.source().morphism_id(m).to_string())
        .collect()
}

pub fn is_cocartesian_fibration(pi: &Functor) -> Verdict {
    let flags = cocartesian_flags(pi);
    fibration_with(pi, &flags)
}

fn fibration_with(pi: &Functor, flags: &[bool]) -> Verdict {
    let e = pi.source();
    let kc = pi.target();
    for o in 0..e.num_objects() {
        for &k in kc.out_of(pi.ob(o)) {
            let lifts = lifts_of(pi, o, k);
            if lifts.is_empty() {
                return Verdict::no(Witness::MissingLift {
                    object: e.object_id(o).to_string(),
                    base_morphism: kc.morphism_id(k).to_string(),
                });
            }
            if !lifts.iter().any(|&f| flags[f]) {
                return Verdict::no(Witness::NoCocartesianLift {
                    object: e.object_id(o).to_string(),
                    base_morphism: kc.morphism_id(k).to_string(),
                    lifts: ids(pi, &lifts),
                });
            }
        }
    }
    Verdict::yes()
}

pub fn is_cartesian_fibration(pi: &Functor) -> Verdict {
    is_cocartesian_fibration(&pi.opposite())
}

/// Every base change along a morphism `[1] → K` is a coCartesian fibration.
pub fn is_locally_cocartesian(pi: &Functor) -> Verdict {
    let kc = pi.target();
    let results: Vec<Verdict> = (0..kc.num_morphisms())
        .into_par_iter()
        .map(|k| {
            let bc = base_change(pi, &arrow_functor(kc, k));
            is_cocartesian_fibration(&bc.right)
        })
        .collect();
    match results.into_iter().enumerate().find(|(_, v)| !v.holds) {
        None => Verdict::yes(),
        Some((k, v)) => Verdict::no(Witness::OverMorphism {
            base_morphism: kc.morphism_id(k).to_string(),
            inner: Box::new(v.witness.expect("negative verdict carries a witness")),
        }),
    }
}

pub fn is_locally_cartesian(pi: &Functor) -> Verdict {
    is_locally_cocartesian(&pi.opposite())
}

/// Every morphism lying over an isomorphism is an isomorphism.
pub fn is_conservative(pi: &Functor) -> Verdict {
    let e = pi.source();
    let kc = pi.target();
    match (0..e.num_morphisms()).find(|&m| kc.is_iso(pi.mor(m)) && !e.is_iso(m)) {
        None => Verdict::yes(),
        Some(m) => Verdict::no(Witness::NotInvertible {
            morphism: e.morphism_id(m).to_string(),
        }),
    }
}

/// Strict discrete opfibration: each base morphism out of `π e` has exactly
/// one lift out of `e`.
pub fn is_discrete_opfibration(pi: &Functor) -> Verdict {
    let e = pi.source();
    let kc = pi.target();
    for o in 0..e.num_objects() {
        for &k in kc.out_of(pi.ob(o)) {
            let lifts = lifts_of(pi, o, k);
            let (object, base_morphism) =
                (e.object_id(o).to_string(), kc.morphism_id(k).to_string());
            match lifts.len() {
                1 => {}
                0 => {
                    return Verdict::no(Witness::MissingLift {
                        object,
                        base_morphism,
                    })
                }
                _ => {
                    return Verdict::no(Witness::NonUniqueLift {
                        object,
                        base_morphism,
                        lifts: ids(pi, &lifts),
                    })
                }
            }
        }
    }
    Verdict::yes()
}

pub fn is_discrete_fibration(pi: &Functor) -> Verdict {
    is_discrete_opfibration(&pi.opposite())
}

/// Left fibration in the equivalence-invariant sense: every base morphism
/// lifts, and every morphism of the source is coCartesian.
pub fn is_left_fibration(pi: &Functor) -> Verdict {
    let e = pi.source();
    let kc = pi.target();
    let flags = cocartesian_flags(pi);
    for o in 0..e.num_objects() {
        for &k in kc.out_of(pi.ob(o)) {
            if lifts_of(pi, o, k).is_empty() {
                return Verdict::no(Witness::MissingLift {
                    object: e.object_id(o).to_string(),
                    base_morphism: kc.morphism_id(k).to_string(),
                });
            }
        }
    }
    match flags.iter().position(|ok| !ok) {
        None => Verdict::yes(),
        Some(f) => is_cocartesian_morphism(pi, f),
    }
}

pub fn is_right_fibration(pi: &Functor) -> Verdict {
    is_left_fibration(&pi.opposite())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::constructions::{arrow_category, full_subcategory_arc, product};

    #[test]
    fn product_projection_lifts_identity_components() {
        let c = Arc::new(catalog::ret());
        let one = Arc::new(catalog::interval(1));
        let p = product(&c, &one);
        let arrow = one.morphism_index("0->1").unwrap();
        for m in 0..c.num_morphisms() {
            let f = p.morphism(m, arrow);
            assert_eq!(is_cocartesian_morphism(&p.right, f).holds, c.is_iso(m));
        }
        assert!(is_cocartesian_fibration(&p.right).holds);
        assert!(!is_left_fibration(&p.right).holds);
    }

    #[test]
    fn target_evaluation_is_cocartesian() {
        for n in 1..=3 {
            let k = Arc::new(catalog::interval(n));
            let ar = arrow_category(&k);
            assert!(is_cocartesian_fibration(&ar.ev_t).holds);
            assert!(!is_discrete_opfibration(&ar.ev_t).holds);
        }
    }

    #[test]
    fn outer_edge_misses_the_middle_lift() {
        let two = Arc::new(catalog::interval(2));
        let outer = full_subcategory_arc(&two, &[0, 2]).inclusion;
        let v = is_locally_cocartesian(&outer);
        assert!(!v.holds);
        match v.witness.unwrap() {
            Witness::OverMorphism { base_morphism, .. } => assert_eq!(base_morphism, "0->1"),
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(!is_cocartesian_fibration(&outer).holds);
    }

    #[test]
    fn walking_iso_over_a_point_is_left_not_discrete() {
        let c = Arc::new(catalog::walking_iso());
        let pt = Functor::to_point(c, Arc::new(catalog::terminal()));
        assert!(is_left_fibration(&pt).holds);
        assert!(is_conservative(&pt).holds);
        assert!(!is_discrete_opfibration(&pt).holds);
    }

    #[test]
    fn source_evaluation_is_not_conservative() {
        let one = Arc::new(catalog::interval(1));
        let ar = arrow_category(&one);
        assert!(!is_conservative(&ar.ev_s).holds);
        assert!(is_discrete_opfibration(&Functor::identity(one)).holds);
    }
}
