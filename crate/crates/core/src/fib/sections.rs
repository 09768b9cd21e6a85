use serde::Serialize;

use super::profile::{is_left_final, is_right_initial};
use crate::error::{CatError, Result};
use crate::functor::Functor;
use crate::homology::{pi0_square, Pi0Square};
use crate::search::section_category;

/// How restriction `Fun_{/K}(J, E) → Fun_{/K}(J0, E)` behaves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionRestriction {
    pub sections: usize,
    pub restricted_sections: usize,
    pub injective_on_sections: bool,
    pub surjective_on_sections: bool,
    /// Bijective on sections and on natural transformations.
    pub isomorphism: bool,
}

/// Restriction of sections of `pi: E → K` along `sigma: J0 → J`, where `J`
/// lies over `K` via `p`.
pub fn check_section_restriction(
    pi: &Functor,
    sigma: &Functor,
    p: &Functor,
) -> Result<SectionRestriction> {
    let big = section_category(p, pi)?;
    let small = section_category(&sigma.then(p), pi)?;
    let mut hit = vec![0usize; small.sections.len()];
    let obj_map: Vec<usize> = big
        .sections
        .iter()
        .map(|s| {
            let r = sigma.then(s);
            let i = small
                .index_of(&r)
                .ok_or_else(|| CatError::Internal("restricted section not found".into()))?;
            hit[i] += 1;
            Ok(i)
        })
        .collect::<Result<_>>()?;
    let injective_on_sections = hit.iter().all(|&h| h <= 1);
    let surjective_on_sections = hit.iter().all(|&h| h >= 1);
    let mut isomorphism = injective_on_sections && surjective_on_sections;
    if isomorphism {
        let bc = &big.category;
        let sc = &small.category;
        let mut seen = vec![false; sc.num_morphisms()];
        for m in 0..bc.num_morphisms() {
            let comps: Vec<usize> = (0..sigma.source().num_objects())
                .map(|x| big.components[m][sigma.ob(x)])
                .collect();
            let (a, b) = (obj_map[bc.src(m)], obj_map[bc.tgt(m)]);
            let n = *sc
                .hom(a, b)
                .iter()
                .find(|&&n| small.components[n] == comps)
                .ok_or_else(|| CatError::Internal("restricted transformation not found".into()))?;
            if std::mem::replace(&mut seen[n], true) {
                isomorphism = false;
            }
        }
        isomorphism &= seen.iter().all(|&s| s);
    }
    Ok(SectionRestriction {
        sections: big.sections.len(),
        restricted_sections: small.sections.len(),
        injective_on_sections,
        surjective_on_sections,
        isomorphism,
    })
}

/// `π0` of the strict pullback of `p: X → Y` along `g: Y' → Y` compared with
/// the pullback of `π0` sets. Refuses unless `p` is left final and right
/// initial.
pub fn quillen_b_pi0_square(
    p: &Functor,
    g: &Functor,
    certify_dim: Option<usize>,
) -> Result<Pi0Square> {
    for (name, v) in [
        ("left final", is_left_final(p, certify_dim)?),
        ("right initial", is_right_initial(p, certify_dim)?),
    ] {
        if let Some(w) = v.witness {
            return Err(CatError::refused(name, w));
        }
    }
    Ok(pi0_square(p, g))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::constructions::product;

    #[test]
    fn identity_restriction_is_an_isomorphism() {
        let k = Arc::new(catalog::interval(1));
        let c = Arc::new(catalog::walking_iso());
        let pr = product(&c, &k);
        let id = Functor::identity(k.clone());
        let r = check_section_restriction(&pr.right, &id, &id).unwrap();
        assert!(r.isomorphism);
        assert_eq!(r.sections, 4);
    }

    #[test]
    fn restriction_to_source_of_a_discrete_opfibration() {
        // the Grothendieck construction of 0 ↦ {a, b}, 1 ↦ {c}
        let k = Arc::new(catalog::interval(1));
        let e = Arc::new(catalog::poset(
            &["a".into(), "b".into(), "c".into()],
            |i, j| i == j || j == 2,
        ));
        let pi = Functor::from_ids(
            e,
            k.clone(),
            &[("a", "0"), ("b", "0"), ("c", "1")],
            &[
                ("id_a", "id_0"),
                ("id_b", "id_0"),
                ("id_c", "id_1"),
                ("a->c", "0->1"),
                ("b->c", "0->1"),
            ],
        )
        .unwrap();
        let pt = Arc::new(catalog::terminal());
        let id = Functor::identity(k.clone());
        let at_s =
            check_section_restriction(&pi, &Functor::point(pt.clone(), k.clone(), 0), &id).unwrap();
        assert!(at_s.isomorphism);
        let at_t = check_section_restriction(&pi, &Functor::point(pt, k, 1), &id).unwrap();
        assert!(!at_t.injective_on_sections);
    }

    #[test]
    fn quillen_square_refuses_non_final_legs() {
        let two = Arc::new(catalog::interval(2));
        let outer = crate::constructions::full_subcategory_arc(&two, &[0, 2]).inclusion;
        let id = Functor::identity(two);
        assert!(matches!(
            quillen_b_pi0_square(&outer, &id, None),
            Err(CatError::Refused { .. })
        ));
    }
}
