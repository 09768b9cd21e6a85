use super::{Verdict, Witness};
use crate::category::FiniteCategory;
use crate::constructions::under;
use crate::functor::Functor;

pub fn initial_objects(c: &FiniteCategory) -> Vec<usize> {
    (0..c.num_objects())
        .filter(|&o| (0..c.num_objects()).all(|x| c.hom(o, x).len() == 1))
        .collect()
}

pub fn final_objects(c: &FiniteCategory) -> Vec<usize> {
    (0..c.num_objects())
        .filter(|&o| (0..c.num_objects()).all(|x| c.hom(x, o).len() == 1))
        .collect()
}

pub fn has_initial_object(c: &FiniteCategory) -> Option<usize> {
    initial_objects(c).first().copied()
}

pub fn has_final_object(c: &FiniteCategory) -> Option<usize> {
    final_objects(c).first().copied()
}

/// An adjunction `L ⊣ R` with `L: D → C`, `R: C → D`, unit components
/// `η_d: d → R L d` in `D` and counit components `ε_c: L R c → c` in `C`.
#[derive(Debug, Clone)]
pub struct Adjunction {
    pub left: Functor,
    pub right: Functor,
    pub unit: Vec<usize>,
    pub counit: Vec<usize>,
}

impl Adjunction {
    /// Both triangle identities and naturality of unit and counit.
    pub fn verify(&self) -> bool {
        let (l, r) = (&self.left, &self.right);
        let (c, d) = (l.target(), l.source());
        let tri_l = (0..d.num_objects())
            .all(|x| c.compose(self.counit[l.ob(x)], l.mor(self.unit[x])) == c.identity(l.ob(x)));
        let tri_r = (0..c.num_objects())
            .all(|y| d.compose(r.mor(self.counit[y]), self.unit[r.ob(y)]) == d.identity(r.ob(y)));
        let nat_unit = (0..d.num_morphisms()).all(|g| {
            d.compose(self.unit[d.tgt(g)], g) == d.compose(r.mor(l.mor(g)), self.unit[d.src(g)])
        });
        let nat_counit = (0..c.num_morphisms()).all(|m| {
            c.compose(m, self.counit[c.src(m)]) == c.compose(self.counit[c.tgt(m)], l.mor(r.mor(m)))
        });
        tri_l && tri_r && nat_unit && nat_counit
    }
}

/// `F: C → D` is a right adjoint iff every `d ↓ F` has an initial object.
/// The left adjoint is assembled from the least-index initial objects.
pub fn is_right_adjoint(f: &Functor) -> (Verdict, Option<Adjunction>) {
    let (c, d) = (f.source(), f.target());
    let mut lo = Vec::with_capacity(d.num_objects());
    let mut unit = Vec::with_capacity(d.num_objects());
    for x in 0..d.num_objects() {
        let comma = under(f, x);
        match has_initial_object(&comma.category) {
            Some(i) => {
                let (_, o, u) = comma.objects[i];
                lo.push(o);
                unit.push(u);
            }
            None => {
                return (
                    Verdict::no(Witness::NoUniversalArrow {
                        object: d.object_id(x).to_string(),
                    }),
                    None,
                );
            }
        }
    }
    // L g is the unique m with F m ∘ η_x = η_y ∘ g
    let lm = (0..d.num_morphisms())
        .map(|g| {
            let (x, y) = (d.src(g), d.tgt(g));
            let want = d.compose(unit[y], g);
            *c.hom(lo[x], lo[y])
                .iter()
                .find(|&&m| d.compose(f.mor(m), unit[x]) == want)
                .expect("initiality")
        })
        .collect();
    let left = Functor::new_unchecked(d.clone(), c.clone(), lo.clone(), lm);
    // ε_c is the unique m: L F c → c with F m ∘ η_{F c} = id
    let counit = (0..c.num_objects())
        .map(|o| {
            let fo = f.ob(o);
            *c.hom(lo[fo], o)
                .iter()
                .find(|&&m| d.compose(f.mor(m), unit[fo]) == d.identity(fo))
                .expect("initiality")
        })
        .collect();
    (
        Verdict::yes(),
        Some(Adjunction {
            left,
            right: f.clone(),
            unit,
            counit,
        }),
    )
}

/// `F: C → D` is a left adjoint iff every `F ↓ d` has a final object.
pub fn is_left_adjoint(f: &Functor) -> (Verdict, Option<Adjunction>) {
    let (v, adj) = is_right_adjoint(&f.opposite());
    let adj = adj.map(|a| {
        let (c, d) = (f.source(), f.target());
        let right = Functor::new_unchecked(
            d.clone(),
            c.clone(),
            a.left.object_map().to_vec(),
            a.left.morphism_map().to_vec(),
        );
        Adjunction {
            left: f.clone(),
            right,
            unit: a.counit,
            counit: a.unit,
        }
    });
    (v, adj)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::constructions::full_subcategory_arc;

    #[test]
    fn intervals_have_ends() {
        let c = catalog::interval(3);
        assert_eq!(has_initial_object(&c), Some(0));
        assert_eq!(has_final_object(&c), Some(3));
        assert_eq!(has_initial_object(&catalog::parallel_pair()), None);
    }

    #[test]
    fn upper_inclusion_is_right_not_left_adjoint() {
        let two = Arc::new(catalog::interval(2));
        let incl = full_subcategory_arc(&two, &[1, 2]).inclusion;
        let (v, adj) = is_right_adjoint(&incl);
        assert!(v.holds);
        let adj = adj.unwrap();
        assert!(adj.verify());
        assert_eq!(adj.left.ob(0), 0);
        assert!(!is_left_adjoint(&incl).0.holds);
    }

    #[test]
    fn idem_into_ret_has_no_adjoints() {
        // Hom(x, y) = {s} cannot match the two endomorphisms of y in Idem
        let ret = Arc::new(catalog::ret());
        let idem = Arc::new(catalog::idem());
        let f =
            Functor::from_ids(idem, ret, &[("y", "y")], &[("id_y", "id_y"), ("e", "e")]).unwrap();
        assert!(!is_left_adjoint(&f).0.holds);
        assert!(!is_right_adjoint(&f).0.holds);
        let walking = Arc::new(catalog::walking_iso());
        let pt = Functor::to_point(walking, Arc::new(catalog::terminal()));
        let (v, adj) = is_left_adjoint(&pt);
        assert!(v.holds && adj.unwrap().verify());
    }
}
