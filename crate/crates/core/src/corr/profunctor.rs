use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::catalog;
use crate::category::FiniteCategory;
use crate::constructions::opposite;
use crate::error::{CatError, Result};
use crate::functor::Functor;

/// A finite-set-valued bimodule `A^op × B → Set`.
///
/// Elements of the cell `(a, b)` are indexed `0..n` and carry names unique
/// within the cell. The left action of `α: a' → a` sends `P(a, b)` to
/// `P(a', b)`; the right action of `β: b → b'` sends `P(a, b)` to `P(a, b')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profunctor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    elements: Vec<Vec<String>>,
    // left[α][b][i]: i ∈ P(tgt α, b) ↦ P(src α, b)
    left: Vec<Vec<Vec<usize>>>,
    // right[β][a][i]: i ∈ P(a, src β) ↦ P(a, tgt β)
    right: Vec<Vec<Vec<usize>>>,
}

impl Profunctor {
    /// Builds and validates.
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        elements: Vec<Vec<String>>,
        left: Vec<Vec<Vec<usize>>>,
        right: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let p = Profunctor {
            source,
            target,
            elements,
            left,
            right,
        };
        let bad = p.violations();
        if bad.is_empty() {
            Ok(p)
        } else {
            Err(CatError::InvalidProfunctor(bad.join("; ")))
        }
    }

    /// Builds from action functions `(α, b, i) ↦ j` and `(β, a, i) ↦ j`
    /// without validation.
    pub fn from_fn(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        elements: Vec<Vec<String>>,
        left: impl Fn(usize, usize, usize) -> usize,
        right: impl Fn(usize, usize, usize) -> usize,
    ) -> Self {
        let nb = target.num_objects();
        let left = (0..source.num_morphisms())
            .map(|al| {
                let a = source.tgt(al);
                (0..nb)
                    .map(|b| {
                        (0..elements[a * nb + b].len())
                            .map(|i| left(al, b, i))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let right = (0..target.num_morphisms())
            .map(|be| {
                let b = target.src(be);
                (0..source.num_objects())
                    .map(|a| {
                        (0..elements[a * nb + b].len())
                            .map(|i| right(be, a, i))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Profunctor {
            source,
            target,
            elements,
            left,
            right,
        }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn cell(&self, a: usize, b: usize) -> usize {
        a * self.target.num_objects() + b
    }

    pub fn elements(&self, a: usize, b: usize) -> &[String] {
        &self.elements[self.cell(a, b)]
    }

    pub fn cells(&self) -> &[Vec<String>] {
        &self.elements
    }

    pub fn size(&self, a: usize, b: usize) -> usize {
        self.elements(a, b).len()
    }

    pub fn total_size(&self) -> usize {
        self.elements.iter().map(Vec::len).sum()
    }

    /// `x · α` for `x ∈ P(tgt α, b)`.
    pub fn act_left(&self, alpha: usize, b: usize, x: usize) -> usize {
        self.left[alpha][b][x]
    }

    /// `β · x` for `x ∈ P(a, src β)`.
    pub fn act_right(&self, beta: usize, a: usize, x: usize) -> usize {
        self.right[beta][a][x]
    }

    /// Every violated profunctor law, described with ids.
    pub fn violations(&self) -> Vec<String> {
        let (sa, sb) = (&*self.source, &*self.target);
        let (na, nb) = (sa.num_objects(), sb.num_objects());
        let mut out = Vec::new();
        if self.elements.len() != na * nb
            || self.left.len() != sa.num_morphisms()
            || self.right.len() != sb.num_morphisms()
        {
            out.push("data does not match the shape of the categories".to_string());
            return out;
        }
        for a in 0..na {
            for b in 0..nb {
                let names = self.elements(a, b);
                let distinct: HashSet<&String> = names.iter().collect();
                if distinct.len() != names.len() {
                    out.push(format!(
                        "duplicate element names in cell ({}, {})",
                        sa.object_id(a),
                        sb.object_id(b)
                    ));
                }
            }
        }
        for al in 0..sa.num_morphisms() {
            let (s, t) = (sa.src(al), sa.tgt(al));
            if self.left[al].len() != nb {
                out.push(format!(
                    "left action of `{}` has the wrong shape",
                    sa.morphism_id(al)
                ));
                return out;
            }
            for b in 0..nb {
                let row = &self.left[al][b];
                if row.len() != self.size(t, b) || row.iter().any(|&j| j >= self.size(s, b)) {
                    out.push(format!(
                        "left action of `{}` at `{}` has the wrong shape",
                        sa.morphism_id(al),
                        sb.object_id(b)
                    ));
                    return out;
                }
            }
        }
        for be in 0..sb.num_morphisms() {
            let (s, t) = (sb.src(be), sb.tgt(be));
            if self.right[be].len() != na {
                out.push(format!(
                    "right action of `{}` has the wrong shape",
                    sb.morphism_id(be)
                ));
                return out;
            }
            for a in 0..na {
                let row = &self.right[be][a];
                if row.len() != self.size(a, s) || row.iter().any(|&j| j >= self.size(a, t)) {
                    out.push(format!(
                        "right action of `{}` at `{}` has the wrong shape",
                        sb.morphism_id(be),
                        sa.object_id(a)
                    ));
                    return out;
                }
            }
        }
        for a in 0..na {
            for b in 0..nb {
                let n = self.size(a, b);
                if (0..n).any(|x| self.act_left(sa.identity(a), b, x) != x) {
                    out.push(format!(
                        "identity of `{}` acts non-trivially",
                        sa.object_id(a)
                    ));
                }
                if (0..n).any(|x| self.act_right(sb.identity(b), a, x) != x) {
                    out.push(format!(
                        "identity of `{}` acts non-trivially",
                        sb.object_id(b)
                    ));
                }
            }
        }
        // (x · α) · α' = x · (α ∘ α')
        for (g, f, gf) in sa.table() {
            for b in 0..nb {
                for x in 0..self.size(sa.tgt(g), b) {
                    if self.act_left(f, b, self.act_left(g, b, x)) != self.act_left(gf, b, x) {
                        out.push(format!(
                            "left action is not functorial on ({}, {})",
                            sa.morphism_id(g),
                            sa.morphism_id(f)
                        ));
                        break;
                    }
                }
            }
        }
        for (g, f, gf) in sb.table() {
            for a in 0..na {
                for x in 0..self.size(a, sb.src(f)) {
                    if self.act_right(g, a, self.act_right(f, a, x)) != self.act_right(gf, a, x) {
                        out.push(format!(
                            "right action is not functorial on ({}, {})",
                            sb.morphism_id(g),
                            sb.morphism_id(f)
                        ));
                        break;
                    }
                }
            }
        }
        for al in 0..sa.num_morphisms() {
            for be in 0..sb.num_morphisms() {
                let (a, b) = (sa.tgt(al), sb.src(be));
                for x in 0..self.size(a, b) {
                    let one = self.act_right(be, sa.src(al), self.act_left(al, b, x));
                    let two = self.act_left(al, sb.tgt(be), self.act_right(be, a, x));
                    if one != two {
                        out.push(format!(
                            "actions of `{}` and `{}` do not commute",
                            sa.morphism_id(al),
                            sb.morphism_id(be)
                        ));
                        break;
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// `P(F −, G −)` for `F: A' → A`, `G: B' → B`.
    pub fn restrict(&self, f: &Functor, g: &Functor) -> Profunctor {
        assert!(**f.target() == *self.source && **g.target() == *self.target);
        let (a2, b2) = (f.source().clone(), g.source().clone());
        let nb2 = b2.num_objects();
        let elements = (0..a2.num_objects() * nb2)
            .map(|c| self.elements(f.ob(c / nb2), g.ob(c % nb2)).to_vec())
            .collect();
        Profunctor::from_fn(
            a2,
            b2,
            elements,
            |al, b, x| self.act_left(f.mor(al), g.ob(b), x),
            |be, a, x| self.act_right(g.mor(be), f.ob(a), x),
        )
    }

    /// The profunctor `B^op × A → Set` on opposites with the same cells.
    pub fn transpose(&self) -> Profunctor {
        let src = Arc::new(opposite(&self.target));
        let tgt = Arc::new(opposite(&self.source));
        let na = self.source.num_objects();
        let elements = (0..self.target.num_objects() * na)
            .map(|c| self.elements(c % na, c / na).to_vec())
            .collect();
        Profunctor::from_fn(
            src,
            tgt,
            elements,
            |be, a, x| self.act_right(be, a, x),
            |al, b, x| self.act_left(al, b, x),
        )
    }
}

/// `P = Ret(ι-, -)` and `Q = Ret(-, ι-)` for the inclusion `ι: Idem → Ret`;
/// both composites are identity bimodules although `Idem` and `Ret` are not
/// equivalent.
pub fn idem_ret_bimodules() -> (Profunctor, Profunctor) {
    let ret = Arc::new(catalog::ret());
    let idem = Arc::new(catalog::idem());
    let iota = Functor::from_ids(
        idem,
        ret.clone(),
        &[("y", "y")],
        &[("id_y", "id_y"), ("e", "e")],
    )
    .expect("Idem includes into Ret");
    let hom = hom_profunctor(&ret);
    let id = Functor::identity(ret);
    (hom.restrict(&iota, &id), hom.restrict(&id, &iota))
}

/// `Hom_C` as a profunctor `(C, C)`; elements are morphism ids.
pub fn hom_profunctor(c: &Arc<FiniteCategory>) -> Profunctor {
    let n = c.num_objects();
    let pos: HashMap<usize, usize> = (0..n)
        .flat_map(|a| {
            (0..n).flat_map(move |b| c.hom(a, b).iter().enumerate().map(|(i, &m)| (m, i)))
        })
        .collect();
    let elements = (0..n * n)
        .map(|k| {
            c.hom(k / n, k % n)
                .iter()
                .map(|&m| c.morphism_id(m).to_string())
                .collect()
        })
        .collect();
    Profunctor::from_fn(
        c.clone(),
        c.clone(),
        elements,
        |al, b, x| pos[&c.compose(c.hom(c.tgt(al), b)[x], al)],
        |be, a, x| pos[&c.compose(be, c.hom(a, c.src(be))[x])],
    )
}

/// A natural isomorphism between profunctors with the same source and
/// target: one bijection per cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfunctorIso {
    pub components: Vec<Vec<usize>>,
}

impl ProfunctorIso {
    /// Checks bijectivity and naturality in both variables.
    pub fn verify(&self, p: &Profunctor, q: &Profunctor) -> bool {
        if p.source != q.source || p.target != q.target || self.components.len() != p.elements.len()
        {
            return false;
        }
        for (c, comp) in self.components.iter().enumerate() {
            let n = q.elements[c].len();
            if comp.len() != p.elements[c].len() || comp.len() != n {
                return false;
            }
            let mut seen = vec![false; n];
            if comp
                .iter()
                .any(|&j| j >= n || std::mem::replace(&mut seen[j], true))
            {
                return false;
            }
        }
        let (sa, sb) = (&*p.source, &*p.target);
        let (na, nb) = (sa.num_objects(), sb.num_objects());
        for al in 0..sa.num_morphisms() {
            for b in 0..nb {
                let (from, to) = (p.cell(sa.tgt(al), b), p.cell(sa.src(al), b));
                for x in 0..p.elements[from].len() {
                    if self.components[to][p.act_left(al, b, x)]
                        != q.act_left(al, b, self.components[from][x])
                    {
                        return false;
                    }
                }
            }
        }
        for be in 0..sb.num_morphisms() {
            for a in 0..na {
                let (from, to) = (p.cell(a, sb.src(be)), p.cell(a, sb.tgt(be)));
                for x in 0..p.elements[from].len() {
                    if self.components[to][p.act_right(be, a, x)]
                        != q.act_right(be, a, self.components[from][x])
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The index-preserving map, when it is an isomorphism.
    pub fn identity_like(p: &Profunctor, q: &Profunctor) -> Option<ProfunctorIso> {
        let iso = ProfunctorIso {
            components: p.elements.iter().map(|c| (0..c.len()).collect()).collect(),
        };
        iso.verify(p, q).then_some(iso)
    }

    /// The map matching element names, when it is an isomorphism.
    pub fn by_names(p: &Profunctor, q: &Profunctor) -> Option<ProfunctorIso> {
        if p.elements.len() != q.elements.len() {
            return None;
        }
        let components = p
            .elements
            .iter()
            .zip(&q.elements)
            .map(|(pc, qc)| {
                pc.iter()
                    .map(|n| qc.iter().position(|m| m == n))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        let iso = ProfunctorIso { components };
        iso.verify(p, q).then_some(iso)
    }

    pub fn inverse(&self) -> ProfunctorIso {
        let components = self
            .components
            .iter()
            .map(|c| {
                let mut inv = vec![0; c.len()];
                for (i, &j) in c.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            })
            .collect();
        ProfunctorIso { components }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ProfunctorIso) -> ProfunctorIso {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| f.iter().map(|&j| g[j]).collect())
            .collect();
        ProfunctorIso { components }
    }
}

/// Some isomorphism `p ≅ q`, found by propagating forced assignments through
/// both actions and backtracking on the remaining choices.
pub fn find_profunctor_iso(p: &Profunctor, q: &Profunctor) -> Option<ProfunctorIso> {
    if p.source != q.source || p.target != q.target {
        return None;
    }
    if p.elements
        .iter()
        .zip(&q.elements)
        .any(|(x, y)| x.len() != y.len())
    {
        return None;
    }
    let mut state = IsoSearch {
        p,
        q,
        map: p
            .elements
            .iter()
            .map(|c| vec![usize::MAX; c.len()])
            .collect(),
        used: q.elements.iter().map(|c| vec![false; c.len()]).collect(),
    };
    if state.solve() {
        let iso = ProfunctorIso {
            components: state.map,
        };
        debug_assert!(iso.verify(p, q));
        Some(iso)
    } else {
        None
    }
}

struct IsoSearch<'a> {
    p: &'a Profunctor,
    q: &'a Profunctor,
    map: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
}

impl IsoSearch<'_> {
    fn next_free(&self) -> Option<(usize, usize)> {
        self.map
            .iter()
            .enumerate()
            .find_map(|(c, m)| m.iter().position(|&j| j == usize::MAX).map(|i| (c, i)))
    }

    fn solve(&mut self) -> bool {
        let Some((c, i)) = self.next_free() else {
            return true;
        };
        for j in 0..self.q.elements[c].len() {
            if self.used[c][j] {
                continue;
            }
            let mut trail = Vec::new();
            if self.assign(c, i, j, &mut trail) && self.solve() {
                return true;
            }
            for (c2, i2) in trail {
                let j2 = std::mem::replace(&mut self.map[c2][i2], usize::MAX);
                self.used[c2][j2] = false;
            }
        }
        false
    }

    /// Assigns `i ↦ j` in cell `c` and everything it forces; records every
    /// assignment in `trail` so the caller can undo it.
    fn assign(&mut self, c: usize, i: usize, j: usize, trail: &mut Vec<(usize, usize)>) -> bool {
        let (p, q) = (self.p, self.q);
        let (sa, sb) = (&*p.source, &*p.target);
        let nb = sb.num_objects();
        let mut queue = vec![(c, i, j)];
        while let Some((c, i, j)) = queue.pop() {
            match self.map[c][i] {
                x if x == j => continue,
                usize::MAX => {}
                _ => return false,
            }
            if self.used[c][j] {
                return false;
            }
            self.map[c][i] = j;
            self.used[c][j] = true;
            trail.push((c, i));
            let (a, b) = (c / nb, c % nb);
            for &al in sa.incoming(a) {
                queue.push((
                    p.cell(sa.src(al), b),
                    p.act_left(al, b, i),
                    q.act_left(al, b, j),
                ));
            }
            for &be in sb.out_of(b) {
                queue.push((
                    p.cell(a, sb.tgt(be)),
                    p.act_right(be, a, i),
                    q.act_right(be, a, j),
                ));
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn hom_profunctors_are_valid() {
        for (name, c) in catalog::small_corpus() {
            let p = hom_profunctor(&Arc::new(c));
            assert!(p.is_valid(), "{name}: {:?}", p.violations());
        }
    }

    #[test]
    fn broken_action_is_reported() {
        let one = Arc::new(catalog::interval(1));
        let pt = Arc::new(catalog::terminal());
        // P(∗, 0) = {u, v}, P(∗, 1) = {w}; the identity on 0 swaps u and v
        let elements = vec![vec!["u".into(), "v".into()], vec!["w".into()]];
        let id0 = one.identity(0);
        let p = Profunctor::from_fn(
            pt,
            one,
            elements,
            |_, _, x| x,
            |be, _, x| if be == id0 { 1 - x } else { 0 },
        );
        assert!(!p.violations().is_empty());
    }

    #[test]
    fn transpose_is_an_involution_up_to_names() {
        let c = Arc::new(catalog::ret());
        let p = hom_profunctor(&c);
        let tt = p.transpose().transpose();
        assert_eq!(tt, p);
        assert!(p.transpose().is_valid());
    }

    #[test]
    fn iso_search_finds_a_relabelling() {
        let ret = Arc::new(catalog::ret());
        let p = hom_profunctor(&ret);
        // swap the two elements of the (y, y) cell
        let yy = p.cell(1, 1);
        let sw = |c: usize, x: usize| if c == yy { 1 - x } else { x };
        let mut elements = p.cells().to_vec();
        elements[yy].reverse();
        let q = Profunctor::from_fn(
            ret.clone(),
            ret.clone(),
            elements,
            |al, b, x| {
                sw(
                    p.cell(ret.src(al), b),
                    p.act_left(al, b, sw(p.cell(ret.tgt(al), b), x)),
                )
            },
            |be, a, x| {
                sw(
                    p.cell(a, ret.tgt(be)),
                    p.act_right(be, a, sw(p.cell(a, ret.src(be)), x)),
                )
            },
        );
        assert!(q.is_valid());
        assert!(ProfunctorIso::identity_like(&p, &q).is_none());
        let iso = find_profunctor_iso(&p, &q).unwrap();
        assert!(iso.verify(&p, &q));
        assert_eq!(ProfunctorIso::by_names(&p, &q), Some(iso));
    }
}
