use std::sync::Arc;

use crate::category::FiniteCategory;
use crate::error::{CatError, Result};

/// A functor between finite categories, stored as object and morphism maps
/// by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl Functor {
    /// Builds the functor and checks every functor law exhaustively.
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Self> {
        let f = Functor {
            source,
            target,
            objects,
            morphisms,
        };
        let problems = f.violations();
        if problems.is_empty() {
            Ok(f)
        } else {
            Err(CatError::InvalidFunctor(problems.join("; ")))
        }
    }

    /// Builds the functor without checking. Callers guarantee the laws.
    pub fn new_unchecked(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(objects.len(), source.num_objects());
        debug_assert_eq!(morphisms.len(), source.num_morphisms());
        Functor {
            source,
            target,
            objects,
            morphisms,
        }
    }

    /// Builds a functor from maps keyed by ids.
    pub fn from_ids(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: &[(&str, &str)],
        morphisms: &[(&str, &str)],
    ) -> Result<Self> {
        let mut om = vec![usize::MAX; source.num_objects()];
        for (a, b) in objects {
            om[source.object_index(a)?] = target.object_index(b)?;
        }
        let mut mm = vec![usize::MAX; source.num_morphisms()];
        for (a, b) in morphisms {
            mm[source.morphism_index(a)?] = target.morphism_index(b)?;
        }
        if let Some(o) = om.iter().position(|&x| x == usize::MAX) {
            return Err(CatError::InvalidFunctor(format!(
                "object `{}` is not mapped",
                source.object_id(o)
            )));
        }
        if let Some(m) = mm.iter().position(|&x| x == usize::MAX) {
            return Err(CatError::InvalidFunctor(format!(
                "morphism `{}` is not mapped",
                source.morphism_id(m)
            )));
        }
        Functor::new(source, target, om, mm)
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        let objects = (0..c.num_objects()).collect();
        let morphisms = (0..c.num_morphisms()).collect();
        Functor {
            source: c.clone(),
            target: c,
            objects,
            morphisms,
        }
    }

    /// The functor `∗ → C` selecting object `o`. The terminal category is
    /// supplied so callers can share it.
    pub fn point(point: Arc<FiniteCategory>, c: Arc<FiniteCategory>, o: usize) -> Self {
        assert_eq!(point.num_objects(), 1);
        let id = c.identity(o);
        Functor {
            source: point,
            target: c,
            objects: vec![o],
            morphisms: vec![id],
        }
    }

    /// The functor to the terminal category.
    pub fn to_point(c: Arc<FiniteCategory>, point: Arc<FiniteCategory>) -> Self {
        assert_eq!(point.num_objects(), 1);
        let objects = vec![0; c.num_objects()];
        let morphisms = vec![point.identity(0); c.num_morphisms()];
        Functor {
            source: c,
            target: point,
            objects,
            morphisms,
        }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn ob(&self, o: usize) -> usize {
        self.objects[o]
    }

    pub fn mor(&self, m: usize) -> usize {
        self.morphisms[m]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphisms
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        assert!(
            Arc::ptr_eq(&self.target, &other.source) || self.target == other.source,
            "functors are not composable"
        );
        Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&o| other.objects[o]).collect(),
            morphisms: self.morphisms.iter().map(|&m| other.morphisms[m]).collect(),
        }
    }

    /// The same functor between opposite categories.
    pub fn opposite(&self) -> Functor {
        Functor {
            source: Arc::new(crate::constructions::opposite(&self.source)),
            target: Arc::new(crate::constructions::opposite(&self.target)),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }

    /// Re-targets the functor at an equal category (e.g. a fresh copy).
    pub fn with_target(&self, target: Arc<FiniteCategory>) -> Functor {
        assert!(*target == *self.target);
        Functor {
            target,
            ..self.clone()
        }
    }

    pub fn with_source(&self, source: Arc<FiniteCategory>) -> Functor {
        assert!(*source == *self.source);
        Functor {
            source,
            ..self.clone()
        }
    }

    /// Every functor-law violation, described with ids.
    pub fn violations(&self) -> Vec<String> {
        let (s, t) = (&*self.source, &*self.target);
        let mut out = Vec::new();
        if self.objects.len() != s.num_objects() || self.morphisms.len() != s.num_morphisms() {
            out.push("map sizes do not match the source".to_string());
            return out;
        }
        if self.objects.iter().any(|&o| o >= t.num_objects())
            || self.morphisms.iter().any(|&m| m >= t.num_morphisms())
        {
            out.push("map leaves the target".to_string());
            return out;
        }
        for m in 0..s.num_morphisms() {
            let fm = self.morphisms[m];
            if t.src(fm) != self.objects[s.src(m)] || t.tgt(fm) != self.objects[s.tgt(m)] {
                out.push(format!(
                    "morphism `{}` is sent to `{}` with wrong endpoints",
                    s.morphism_id(m),
                    t.morphism_id(fm)
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in 0..s.num_objects() {
            if self.morphisms[s.identity(o)] != t.identity(self.objects[o]) {
                out.push(format!("identity of `{}` is not preserved", s.object_id(o)));
            }
        }
        for (g, f, gf) in s.table() {
            if t.try_compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                out.push(format!(
                    "composite ({}, {}) is not preserved",
                    s.morphism_id(g),
                    s.morphism_id(f)
                ));
            }
        }
        out
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.num_objects()];
        self.objects
            .iter()
            .all(|&o| !std::mem::replace(&mut seen[o], true))
    }

    pub fn is_injective_on_morphisms(&self) -> bool {
        let mut seen = vec![false; self.target.num_morphisms()];
        self.morphisms
            .iter()
            .all(|&m| !std::mem::replace(&mut seen[m], true))
    }

    /// Bijective on objects and on morphisms.
    pub fn is_isomorphism(&self) -> bool {
        self.objects.len() == self.target.num_objects()
            && self.morphisms.len() == self.target.num_morphisms()
            && self.is_injective_on_objects()
            && self.is_injective_on_morphisms()
    }

    pub fn is_fully_faithful(&self) -> bool {
        let s = &*self.source;
        for a in 0..s.num_objects() {
            for b in 0..s.num_objects() {
                let hom = s.hom(a, b);
                let image = self.target.hom(self.objects[a], self.objects[b]);
                if hom.len() != image.len() {
                    return false;
                }
                let mut imgs: Vec<usize> = hom.iter().map(|&m| self.morphisms[m]).collect();
                imgs.sort_unstable();
                imgs.dedup();
                if imgs.len() != hom.len() {
                    return false;
                }
            }
        }
        true
    }

    /// Essentially surjective: every target object is isomorphic to an image.
    pub fn is_essentially_surjective(&self) -> bool {
        let t = &*self.target;
        (0..t.num_objects()).all(|d| {
            self.objects
                .iter()
                .any(|&o| t.hom(o, d).iter().any(|&m| t.is_iso(m)))
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identity_is_valid() {
        let c = Arc::new(catalog::ret());
        assert!(Functor::identity(c).violations().is_empty());
    }

    #[test]
    fn bad_functor_rejected() {
        let i1 = Arc::new(catalog::interval(1));
        // swap the two objects: 0->1 cannot be sent anywhere consistent
        let id0 = i1.morphism_index("id_0").unwrap();
        let id1 = i1.morphism_index("id_1").unwrap();
        let arrow = i1.morphism_index("0->1").unwrap();
        let mut mm = vec![0; 3];
        mm[id0] = id1;
        mm[id1] = id0;
        mm[arrow] = arrow;
        let r = Functor::new(i1.clone(), i1, vec![1, 0], mm);
        assert!(matches!(r, Err(CatError::InvalidFunctor(_))));
    }

    #[test]
    fn inclusion_of_idem_into_ret_is_fully_faithful_not_equivalence() {
        let ret = Arc::new(catalog::ret());
        let idem = Arc::new(catalog::idem());
        let f =
            Functor::from_ids(idem, ret, &[("y", "y")], &[("id_y", "id_y"), ("e", "e")]).unwrap();
        assert!(f.is_fully_faithful());
        assert!(!f.is_essentially_surjective());
    }
}
