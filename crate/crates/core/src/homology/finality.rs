use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use super::chain::homology;
use crate::category::FiniteCategory;
use crate::constructions::{over, pullback, under};
use crate::error::Result;
use crate::functor::Functor;

/// Connected components of a category: `labels[o]` numbers components in
/// order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    pub count: usize,
    pub labels: Vec<usize>,
}

pub fn pi0(c: &FiniteCategory) -> Components {
    let mut uf = UnionFind::<usize>::new(c.num_objects());
    for m in c.morphisms() {
        uf.union(m.src, m.tgt);
    }
    relabel_classes(&uf.into_labeling())
}

/// Renumbers arbitrary class representatives densely in order of first use.
pub fn relabel_classes(raw: &[usize]) -> Components {
    let mut map = std::collections::HashMap::new();
    let labels = raw
        .iter()
        .map(|r| {
            let n = map.len();
            *map.entry(*r).or_insert(n)
        })
        .collect();
    Components {
        count: map.len(),
        labels,
    }
}

pub fn is_connected(c: &FiniteCategory) -> bool {
    pi0(c).count == 1
}

/// How strictly a comma category must be contractible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", content = "degree", rename_all = "snake_case")]
pub enum FinalityMode {
    /// Nonempty and connected.
    Pi0Exact,
    /// Additionally, trivial reduced homology up to the given degree.
    Certified(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommaCheck {
    pub object: String,
    pub nonempty: bool,
    pub connected: bool,
    /// `None` in `Pi0Exact` mode or when connectivity already failed.
    pub homology_trivial: Option<bool>,
}

impl CommaCheck {
    pub fn passes(&self) -> bool {
        self.nonempty && self.connected && self.homology_trivial != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinalityVerdict {
    pub mode: FinalityMode,
    pub per_object: Vec<CommaCheck>,
    pub verdict: bool,
}

impl FinalityVerdict {
    /// The first object whose comma category fails.
    pub fn witness(&self) -> Option<&CommaCheck> {
        self.per_object.iter().find(|c| !c.passes())
    }
}

fn check_comma(cat: &FiniteCategory, object: String, mode: FinalityMode) -> Result<CommaCheck> {
    let nonempty = cat.num_objects() > 0;
    let connected = nonempty && is_connected(cat);
    let homology_trivial = match mode {
        FinalityMode::Certified(d) if connected => Some(homology(cat, d)?.reduced_trivial()),
        _ => None,
    };
    Ok(CommaCheck {
        object,
        nonempty,
        connected,
        homology_trivial,
    })
}

fn verdict(
    f: &Functor,
    mode: FinalityMode,
    build: impl Fn(usize) -> FiniteCategory + Sync,
) -> Result<FinalityVerdict> {
    let d = f.target();
    let per_object = (0..d.num_objects())
        .into_par_iter()
        .map(|x| check_comma(&build(x), d.object_id(x).to_string(), mode))
        .collect::<Result<Vec<_>>>()?;
    let verdict = per_object.iter().all(CommaCheck::passes);
    Ok(FinalityVerdict {
        mode,
        per_object,
        verdict,
    })
}

/// `F` is final iff every `d ↓ F` is contractible (here: per `mode`).
pub fn is_final(f: &Functor, mode: FinalityMode) -> Result<FinalityVerdict> {
    verdict(f, mode, |x| (*under(f, x).category).clone())
}

/// `F` is initial iff every `F ↓ d` is contractible.
pub fn is_initial(f: &Functor, mode: FinalityMode) -> Result<FinalityVerdict> {
    verdict(f, mode, |x| (*over(f, x).category).clone())
}

/// Result of comparing `π0` of a strict pullback with the pullback of `π0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pi0Square {
    /// `|π0(X')|`.
    pub components: usize,
    /// `|π0(Y') ×_{π0 Y} π0(X)|`.
    pub expected: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl Pi0Square {
    pub fn holds(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Forms `X' = X ×_Y Y'` for `p: X → Y` and `g: Y' → Y` and compares
/// `π0(X')` with `π0(Y') ×_{π0(Y)} π0(X)`. No hypothesis on `p` is checked
/// here; see [`crate::fib::quillen_b_pi0_square`].
pub fn pi0_square(p: &Functor, g: &Functor) -> Pi0Square {
    let pb = pullback(p, g);
    let px = pi0(p.source());
    let py = pi0(p.target());
    let pyp = pi0(g.source());
    let pxp = pi0(&pb.category);
    let mut expected = Vec::new();
    for cx in 0..px.count {
        for cyp in 0..pyp.count {
            // both classes must land in the same component of Y
            let ycx = (0..p.source().num_objects())
                .find(|&o| px.labels[o] == cx)
                .map(|o| py.labels[p.ob(o)]);
            let ycy = (0..g.source().num_objects())
                .find(|&o| pyp.labels[o] == cyp)
                .map(|o| py.labels[g.ob(o)]);
            if ycx == ycy {
                expected.push((cx, cyp));
            }
        }
    }
    let mut hit = vec![None; expected.len()];
    let mut injective = true;
    for o in 0..pb.category.num_objects() {
        let key = (px.labels[pb.left.ob(o)], pyp.labels[pb.right.ob(o)]);
        let slot = expected
            .iter()
            .position(|&e| e == key)
            .expect("component lands in the fiber product");
        match hit[slot] {
            None => hit[slot] = Some(pxp.labels[o]),
            Some(c) if c != pxp.labels[o] => injective = false,
            _ => {}
        }
    }
    let surjective = hit.iter().all(Option::is_some);
    Pi0Square {
        components: pxp.count,
        expected: expected.len(),
        injective,
        surjective,
    }
}

/// Outcome of checking the hypothesis of Quillen's Theorem B up to a degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremBHypothesis {
    pub degree: usize,
    /// First morphism `y → y'` of the target whose transition functor
    /// `F↓y → F↓y'` is not a homology isomorphism.
    pub witness: Option<String>,
    pub holds: bool,
}

/// The functor `F↓y → F↓y'` given by postcomposition with `g: y → y'`.
pub fn slice_transition(f: &Functor, g: usize) -> Functor {
    let d = f.target();
    let a = over(f, d.src(g));
    let b = over(f, d.tgt(g));
    let lookup: std::collections::HashMap<(usize, usize), usize> = b
        .objects
        .iter()
        .enumerate()
        .map(|(i, &(c, _, u))| ((c, u), i))
        .collect();
    let objects: Vec<usize> = a
        .objects
        .iter()
        .map(|&(c, _, u)| lookup[&(c, d.compose(g, u))])
        .collect();
    let morphisms = (0..a.category.num_morphisms())
        .map(|m| {
            let (s, t) = (objects[a.category.src(m)], objects[a.category.tgt(m)]);
            let al = a.left.mor(m);
            *b.category
                .hom(s, t)
                .iter()
                .find(|&&n| b.left.mor(n) == al)
                .expect("postcomposed morphism exists")
        })
        .collect();
    Functor::new_unchecked(a.category.clone(), b.category.clone(), objects, morphisms)
}

/// Checks that every transition `F↓y → F↓y'` induces isomorphisms on
/// integral homology in degrees `<= degree`.
pub fn theorem_b_hypothesis(f: &Functor, degree: usize) -> Result<TheoremBHypothesis> {
    let d = f.target();
    let results = (0..d.num_morphisms())
        .into_par_iter()
        .map(|g| super::chain::induces_homology_iso(&slice_transition(f, g), degree))
        .collect::<Result<Vec<bool>>>()?;
    let witness = results
        .iter()
        .position(|ok| !ok)
        .map(|g| d.morphism_id(g).to_string());
    Ok(TheoremBHypothesis {
        degree,
        holds: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::constructions::product;

    #[test]
    fn components_of_a_coproduct() {
        let c = crate::constructions::coproduct(&[
            &catalog::interval(2),
            &catalog::discrete(&["a", "b"]),
        ]);
        assert_eq!(pi0(&c).count, 3);
        assert_eq!(pi0(&catalog::interval(4)).count, 1);
    }

    #[test]
    fn final_object_inclusion_is_final() {
        let t = Arc::new(catalog::terminal());
        let n = Arc::new(catalog::interval(3));
        let top = Functor::point(t.clone(), n.clone(), 3);
        assert!(is_final(&top, FinalityMode::Certified(2)).unwrap().verdict);
        assert!(!is_initial(&top, FinalityMode::Pi0Exact).unwrap().verdict);
        let bottom = Functor::point(t, n, 0);
        assert!(is_initial(&bottom, FinalityMode::Pi0Exact).unwrap().verdict);
    }

    #[test]
    fn upper_inclusion_into_two_is_final() {
        let two = Arc::new(catalog::interval(2));
        let sub = crate::constructions::full_subcategory_arc(&two, &[1, 2]);
        assert!(
            is_final(&sub.inclusion, FinalityMode::Certified(2))
                .unwrap()
                .verdict
        );
        assert!(
            !is_initial(&sub.inclusion, FinalityMode::Pi0Exact)
                .unwrap()
                .verdict
        );
    }

    #[test]
    fn projection_off_the_one_cell_is_final_and_initial() {
        let c = Arc::new(catalog::ret());
        let p = product(&c, &Arc::new(catalog::interval(1)));
        assert!(
            is_final(&p.left, FinalityMode::Certified(2))
                .unwrap()
                .verdict
        );
        assert!(
            is_initial(&p.left, FinalityMode::Certified(2))
                .unwrap()
                .verdict
        );
    }

    #[test]
    fn theorem_b_hypothesis_on_a_cartesian_projection() {
        let c = Arc::new(catalog::walking_iso());
        let k = Arc::new(catalog::interval(2));
        let p = product(&c, &k);
        assert!(theorem_b_hypothesis(&p.right, 2).unwrap().holds);
        let incl = crate::constructions::full_subcategory_arc(&k, &[0, 2]).inclusion;
        let tb = theorem_b_hypothesis(&incl, 1).unwrap();
        assert!(tb.holds);
        let disc = Arc::new(catalog::discrete(&["0", "1"]));
        let ends = Functor::from_ids(
            disc,
            Arc::new(catalog::interval(1)),
            &[("0", "0"), ("1", "1")],
            &[("id_0", "id_0"), ("id_1", "id_1")],
        )
        .unwrap();
        assert!(!theorem_b_hypothesis(&ends, 1).unwrap().holds);
    }

    #[test]
    fn empty_pullback_square_holds() {
        let e = Arc::new(catalog::empty());
        let y = Arc::new(catalog::interval(1));
        let p = Functor::new_unchecked(e, y.clone(), vec![], vec![]);
        let g = Functor::identity(y);
        assert!(pi0_square(&p, &g).holds());
    }
}
