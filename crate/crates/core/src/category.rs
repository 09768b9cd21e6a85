//! Finite categories given by explicit composition tables.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{CatError, Result};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category: ordered objects, ordered morphisms, a chosen identity
/// per object, and a composition table.
///
/// The table is stored per composable pair, so `compose(g, f)` is only ever
/// looked up when `tgt(f) == src(g)`. A category built from an external
/// document may violate the axioms; [`FiniteCategory::validate`] reports
/// every violation. All constructions in this crate assume valid inputs.
#[derive(Clone)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    // post[f][out_pos[g]] = g ∘ f for g out of tgt(f)
    post: Vec<Vec<u32>>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    homs: HashMap<(usize, usize), Vec<usize>>,
    obj_index: HashMap<String, usize>,
    mor_index: HashMap<String, usize>,
    // table entries supplied for pairs that are not composable, or supplied twice
    spurious: Vec<(usize, usize, usize)>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.post == other.post
            && self.spurious == other.spurious
    }
}

impl Eq for FiniteCategory {}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCategory")
            .field("objects", &self.objects)
            .field(
                "morphisms",
                &self
                    .morphisms
                    .iter()
                    .map(|m| {
                        format!(
                            "{}: {} -> {}",
                            m.id, self.objects[m.src], self.objects[m.tgt]
                        )
                    })
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A single failed axiom, named by ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    IdentityNotEndomorphism {
        object: String,
        morphism: String,
    },
    MissingComposite {
        g: String,
        f: String,
    },
    SpuriousComposite {
        g: String,
        f: String,
        composite: String,
    },
    WrongEndpoints {
        g: String,
        f: String,
        composite: String,
    },
    LeftUnit {
        morphism: String,
    },
    RightUnit {
        morphism: String,
    },
    Associativity {
        g: String,
        f: String,
        h: String,
    },
}

/// Outcome of [`FiniteCategory::validate`]; empty iff every axiom holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v:?}")?;
        }
        Ok(())
    }
}

/// String-keyed builder used for documents and hand-written tables.
#[derive(Debug, Default, Clone)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    obj_index: HashMap<String, usize>,
    morphisms: Vec<Morphism>,
    mor_index: HashMap<String, usize>,
    identities: Vec<Option<usize>>,
    table: Vec<(usize, usize, usize)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if self.obj_index.contains_key(&id) {
            return Err(CatError::DuplicateId(id));
        }
        let i = self.objects.len();
        self.obj_index.insert(id.clone(), i);
        self.objects.push(id);
        self.identities.push(None);
        Ok(i)
    }

    pub fn morphism(&mut self, id: impl Into<String>, src: &str, tgt: &str) -> Result<usize> {
        let id = id.into();
        if self.mor_index.contains_key(&id) {
            return Err(CatError::DuplicateId(id));
        }
        let src = self.obj(src)?;
        let tgt = self.obj(tgt)?;
        let i = self.morphisms.len();
        self.mor_index.insert(id.clone(), i);
        self.morphisms.push(Morphism { id, src, tgt });
        Ok(i)
    }

    pub fn identity(&mut self, object: &str, morphism: &str) -> Result<()> {
        let o = self.obj(object)?;
        let m = self.mor(morphism)?;
        if self.identities[o].is_some() {
            return Err(CatError::Malformed(format!(
                "object `{object}` has two identities"
            )));
        }
        self.identities[o] = Some(m);
        Ok(())
    }

    /// Adds the object together with an identity morphism `id_<object>`.
    pub fn object_with_identity(&mut self, id: &str) -> Result<usize> {
        let o = self.object(id)?;
        let name = format!("id_{id}");
        self.morphism(name.clone(), id, id)?;
        self.identity(id, &name)?;
        Ok(o)
    }

    /// Records `g ∘ f = composite`.
    pub fn compose(&mut self, g: &str, f: &str, composite: &str) -> Result<()> {
        let (g, f, c) = (self.mor(g)?, self.mor(f)?, self.mor(composite)?);
        self.table.push((g, f, c));
        Ok(())
    }

    /// Fills every composable pair involving an identity with the unit law,
    /// unless the pair already has an entry.
    pub fn fill_units(&mut self) {
        let ids: Vec<Option<usize>> = self.identities.clone();
        let mut have: std::collections::HashSet<(usize, usize)> =
            self.table.iter().map(|&(g, f, _)| (g, f)).collect();
        for m in 0..self.morphisms.len() {
            let Morphism { src, tgt, .. } = self.morphisms[m];
            if let Some(i) = ids[tgt] {
                if have.insert((i, m)) {
                    self.table.push((i, m, m));
                }
            }
            if let Some(i) = ids[src] {
                if have.insert((m, i)) {
                    self.table.push((m, i, m));
                }
            }
        }
    }

    pub fn build(self) -> Result<FiniteCategory> {
        let identities = self
            .identities
            .iter()
            .enumerate()
            .map(|(o, i)| {
                i.ok_or_else(|| {
                    CatError::Malformed(format!("object `{}` has no identity", self.objects[o]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteCategory::assemble(
            self.objects,
            self.morphisms,
            identities,
            self.table,
        ))
    }

    fn obj(&self, id: &str) -> Result<usize> {
        self.obj_index
            .get(id)
            .copied()
            .ok_or_else(|| CatError::UnknownObject(id.to_string()))
    }

    fn mor(&self, id: &str) -> Result<usize> {
        self.mor_index
            .get(id)
            .copied()
            .ok_or_else(|| CatError::UnknownMorphism(id.to_string()))
    }
}

impl FiniteCategory {
    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: Vec<(usize, usize, usize)>,
    ) -> Self {
        let n = objects.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut out_pos = vec![0; morphisms.len()];
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            out_pos[i] = out[m.src].len();
            out[m.src].push(i);
            inc[m.tgt].push(i);
            homs.entry((m.src, m.tgt)).or_default().push(i);
        }
        let mut post: Vec<Vec<u32>> = morphisms
            .iter()
            .map(|m| vec![NONE; out[m.tgt].len()])
            .collect();
        let mut spurious = Vec::new();
        for (g, f, c) in table {
            if morphisms[f].tgt != morphisms[g].src {
                spurious.push((g, f, c));
                continue;
            }
            let slot = &mut post[f][out_pos[g]];
            if *slot == NONE {
                *slot = c as u32;
            } else if *slot != c as u32 {
                spurious.push((g, f, c));
            }
        }
        let obj_index = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), i))
            .collect();
        let mor_index = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.clone(), i))
            .collect();
        FiniteCategory {
            objects,
            morphisms,
            identities,
            post,
            out,
            inc,
            out_pos,
            homs,
            obj_index,
            mor_index,
            spurious,
        }
    }

    /// Builds a category from indexed data, filling the table from `comp`,
    /// which is called once per composable pair `(g, f)`.
    ///
    /// Panics on duplicate ids; generated ids are expected to be unique.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identities: Vec<usize>,
        mut comp: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let morphisms: Vec<Morphism> = morphisms
            .into_iter()
            .map(|(id, src, tgt)| Morphism { id, src, tgt })
            .collect();
        let mut cat = Self::assemble(objects, morphisms, identities, Vec::new());
        assert_eq!(
            cat.obj_index.len(),
            cat.objects.len(),
            "duplicate object id"
        );
        assert_eq!(
            cat.mor_index.len(),
            cat.morphisms.len(),
            "duplicate morphism id"
        );
        for f in 0..cat.morphisms.len() {
            let t = cat.morphisms[f].tgt;
            for (k, &g) in cat.out[t].iter().enumerate() {
                cat.post[f][k] = comp(g, f) as u32;
            }
        }
        cat
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_id(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphism_id(&self, m: usize) -> &str {
        &self.morphisms[m].id
    }

    pub fn object_index(&self, id: &str) -> Result<usize> {
        self.obj_index
            .get(id)
            .copied()
            .ok_or_else(|| CatError::UnknownObject(id.to_string()))
    }

    pub fn morphism_index(&self, id: &str) -> Result<usize> {
        self.mor_index
            .get(id)
            .copied()
            .ok_or_else(|| CatError::UnknownMorphism(id.to_string()))
    }

    pub fn src(&self, m: usize) -> usize {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.morphisms[m].tgt
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].src] == m
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Morphisms with source `a`, in index order.
    pub fn out_of(&self, a: usize) -> &[usize] {
        &self.out[a]
    }

    /// Morphisms with target `b`, in index order.
    pub fn incoming(&self, b: usize) -> &[usize] {
        &self.inc[b]
    }

    /// `g ∘ f`, if the pair is composable and the table has an entry.
    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        if self.morphisms[f].tgt != self.morphisms[g].src {
            return None;
        }
        match self.post[f][self.out_pos[g]] {
            NONE => None,
            c => Some(c as usize),
        }
    }

    /// `g ∘ f`. Panics if the pair is not composable or the table is incomplete.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "no composite for ({}, {}) in a table assumed complete",
                self.morphisms[g].id, self.morphisms[f].id
            )
        })
    }

    /// The inverse of `m`, if `m` is an isomorphism.
    pub fn inverse(&self, m: usize) -> Option<usize> {
        let Morphism { src, tgt, .. } = self.morphisms[m];
        self.hom(tgt, src).iter().copied().find(|&n| {
            self.compose(n, m) == self.identities[src] && self.compose(m, n) == self.identities[tgt]
        })
    }

    pub fn is_iso(&self, m: usize) -> bool {
        self.inverse(m).is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.num_morphisms()).all(|m| self.is_iso(m))
    }

    pub fn non_identity_morphisms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_morphisms()).filter(move |&m| !self.is_identity(m))
    }

    /// Every `(g, f, composite)` entry of the table, for composable pairs in
    /// the order (f, g).
    pub fn table(&self) -> Vec<(usize, usize, usize)> {
        let mut rows = Vec::new();
        for f in 0..self.morphisms.len() {
            for (k, &g) in self.out[self.morphisms[f].tgt].iter().enumerate() {
                if self.post[f][k] != NONE {
                    rows.push((g, f, self.post[f][k] as usize));
                }
            }
        }
        rows
    }

    /// Checks the category axioms exhaustively and names every violation.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let id = |m: usize| self.morphisms[m].id.clone();
        for (o, &i) in self.identities.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.src != o || m.tgt != o {
                violations.push(Violation::IdentityNotEndomorphism {
                    object: self.objects[o].clone(),
                    morphism: id(i),
                });
            }
        }
        for &(g, f, c) in &self.spurious {
            violations.push(Violation::SpuriousComposite {
                g: id(g),
                f: id(f),
                composite: id(c),
            });
        }
        let mut complete = true;
        for f in 0..self.morphisms.len() {
            for &g in &self.out[self.morphisms[f].tgt] {
                match self.try_compose(g, f) {
                    None => {
                        complete = false;
                        violations.push(Violation::MissingComposite { g: id(g), f: id(f) });
                    }
                    Some(c) => {
                        if self.morphisms[c].src != self.morphisms[f].src
                            || self.morphisms[c].tgt != self.morphisms[g].tgt
                        {
                            complete = false;
                            violations.push(Violation::WrongEndpoints {
                                g: id(g),
                                f: id(f),
                                composite: id(c),
                            });
                        }
                    }
                }
            }
        }
        let ids_ok = violations
            .iter()
            .all(|v| !matches!(v, Violation::IdentityNotEndomorphism { .. }));
        if ids_ok {
            for f in 0..self.morphisms.len() {
                let Morphism { src, tgt, .. } = self.morphisms[f];
                if self.try_compose(self.identities[tgt], f) != Some(f) {
                    violations.push(Violation::LeftUnit { morphism: id(f) });
                }
                if self.try_compose(f, self.identities[src]) != Some(f) {
                    violations.push(Violation::RightUnit { morphism: id(f) });
                }
            }
        }
        if complete {
            // g ∘ (f ∘ h) == (g ∘ f) ∘ h
            for h in 0..self.morphisms.len() {
                for &f in &self.out[self.morphisms[h].tgt] {
                    let fh = self.compose(f, h);
                    for &g in &self.out[self.morphisms[f].tgt] {
                        let gf = self.compose(g, f);
                        if self.compose(g, fh) != self.compose(gf, h) {
                            violations.push(Violation::Associativity {
                                g: id(g),
                                f: id(f),
                                h: id(h),
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn one_cell_validates() {
        assert!(catalog::interval(1).validate().is_ok());
    }

    #[test]
    fn ret_validates() {
        let ret = catalog::ret();
        assert_eq!(ret.num_morphisms(), 5);
        assert!(ret.validate().is_ok(), "{}", ret.validate());
    }

    #[test]
    fn planted_associativity_defect_is_named() {
        // one object, morphisms 1, a, b with a planted non-associative table
        let mut b = CategoryBuilder::new();
        b.object_with_identity("*").unwrap();
        b.morphism("a", "*", "*").unwrap();
        b.morphism("b", "*", "*").unwrap();
        b.fill_units();
        // a∘a = b, a∘b = a, b∘a = b, b∘b = b
        b.compose("a", "a", "b").unwrap();
        b.compose("a", "b", "a").unwrap();
        b.compose("b", "a", "b").unwrap();
        b.compose("b", "b", "b").unwrap();
        let c = b.build().unwrap();
        let report = c.validate();
        // a∘(a∘b) = a∘a = b but (a∘a)∘b = b∘b = b; a∘(b∘a) = a∘b = a but (a∘b)∘a = a∘a = b
        assert!(report.violations.contains(&Violation::Associativity {
            g: "a".into(),
            f: "b".into(),
            h: "a".into()
        }));
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut b = CategoryBuilder::new();
        b.object_with_identity("0").unwrap();
        b.object_with_identity("1").unwrap();
        b.object_with_identity("2").unwrap();
        b.morphism("f", "0", "1").unwrap();
        b.morphism("g", "1", "2").unwrap();
        b.morphism("gf", "0", "2").unwrap();
        b.fill_units();
        let c = b.build().unwrap();
        assert_eq!(
            c.validate().violations,
            vec![Violation::MissingComposite {
                g: "g".into(),
                f: "f".into()
            }]
        );
    }

    #[test]
    fn spurious_entries_are_reported() {
        let mut b = CategoryBuilder::new();
        b.object_with_identity("0").unwrap();
        b.object_with_identity("1").unwrap();
        b.morphism("f", "0", "1").unwrap();
        b.fill_units();
        b.compose("f", "f", "f").unwrap();
        let c = b.build().unwrap();
        assert!(matches!(
            c.validate().violations[0],
            Violation::SpuriousComposite { .. }
        ));
    }

    #[test]
    fn inverse_in_walking_isomorphism() {
        let c = catalog::walking_iso();
        assert!(c.is_groupoid());
        let i = c.morphism_index("i").unwrap();
        assert_eq!(c.inverse(i), Some(c.morphism_index("j").unwrap()));
    }
}
