use std::collections::HashSet;
use std::sync::Arc;

use crate::category::FiniteCategory;
use crate::error::{CatError, Result};
use crate::functor::Functor;

/// A functor `K → FinSet`: named value sets and transport maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetValuedFunctor {
    base: Arc<FiniteCategory>,
    values: Vec<Vec<String>>,
    /// `maps[k][i]` is the image of element `i` of `values[src k]`.
    maps: Vec<Vec<usize>>,
}

impl SetValuedFunctor {
    pub fn new(
        base: Arc<FiniteCategory>,
        values: Vec<Vec<String>>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let f = SetValuedFunctor { base, values, maps };
        let bad = f.violations();
        if bad.is_empty() {
            Ok(f)
        } else {
            Err(CatError::InvalidFunctor(bad.join("; ")))
        }
    }

    /// Builds the maps from `map(k, i)`; unchecked.
    pub fn from_fn(
        base: Arc<FiniteCategory>,
        values: Vec<Vec<String>>,
        map: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let maps = (0..base.num_morphisms())
            .map(|k| (0..values[base.src(k)].len()).map(|i| map(k, i)).collect())
            .collect();
        SetValuedFunctor { base, values, maps }
    }

    /// The functor with the same one-element value everywhere.
    pub fn terminal(base: Arc<FiniteCategory>) -> Self {
        let values = vec![vec!["*".to_string()]; base.num_objects()];
        SetValuedFunctor::from_fn(base, values, |_, _| 0)
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    pub fn value(&self, x: usize) -> &[String] {
        &self.values[x]
    }

    pub fn values(&self) -> &[Vec<String>] {
        &self.values
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn size(&self, x: usize) -> usize {
        self.values[x].len()
    }

    pub fn apply(&self, k: usize, i: usize) -> usize {
        self.maps[k][i]
    }

    /// `F ∘ g` for `g: J → K`.
    pub fn restrict(&self, g: &Functor) -> SetValuedFunctor {
        assert!(
            **g.target() == *self.base,
            "restriction along a functor into another base"
        );
        let values = (0..g.source().num_objects())
            .map(|j| self.values[g.ob(j)].clone())
            .collect();
        SetValuedFunctor::from_fn(g.source().clone(), values, |m, i| self.maps[g.mor(m)][i])
    }

    pub fn violations(&self) -> Vec<String> {
        let k = &self.base;
        let mut out = Vec::new();
        if self.values.len() != k.num_objects() || self.maps.len() != k.num_morphisms() {
            out.push("value or map count does not match the base".into());
            return out;
        }
        for (x, vals) in self.values.iter().enumerate() {
            let mut seen = HashSet::new();
            for v in vals {
                if !seen.insert(v) {
                    out.push(format!("element `{v}` repeats at `{}`", k.object_id(x)));
                }
            }
        }
        for m in 0..k.num_morphisms() {
            let (x, y) = (k.src(m), k.tgt(m));
            if self.maps[m].len() != self.values[x].len()
                || self.maps[m].iter().any(|&j| j >= self.values[y].len())
            {
                out.push(format!("map of `{}` has the wrong shape", k.morphism_id(m)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in 0..k.num_objects() {
            let id = k.identity(x);
            if self.maps[id].iter().enumerate().any(|(i, &j)| i != j) {
                out.push(format!("`{}` does not act trivially", k.morphism_id(id)));
            }
        }
        for (g, f, gf) in k.table() {
            if (0..self.values[k.src(f)].len())
                .any(|i| self.maps[g][self.maps[f][i]] != self.maps[gf][i])
            {
                out.push(format!(
                    "`{}` after `{}` differs from `{}`",
                    k.morphism_id(g),
                    k.morphism_id(f),
                    k.morphism_id(gf)
                ));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Every functor `K → FinSet` whose values are `{0, …, n_x - 1}` with
/// `n_x ≤ max_size`, in a fixed order. Elements are named by index.
pub fn enumerate_set_functors(
    base: &Arc<FiniteCategory>,
    max_size: usize,
) -> Result<Vec<SetValuedFunctor>> {
    let k = base;
    let n = k.num_objects();
    let free: Vec<usize> = k.non_identity_morphisms().collect();
    let table = k.table();
    let cap = crate::search::enumeration_cap();
    let mut out = Vec::new();
    let mut sizes = vec![0usize; n];
    loop {
        let mut maps: Vec<Option<Vec<usize>>> = vec![None; k.num_morphisms()];
        for x in 0..n {
            maps[k.identity(x)] = Some((0..sizes[x]).collect());
        }
        extend_maps(k, &sizes, &free, &table, 0, &mut maps, &mut out, cap)?;
        let Some(x) = (0..n).find(|&x| sizes[x] < max_size) else {
            break;
        };
        sizes[x] += 1;
        for s in sizes.iter_mut().take(x) {
            *s = 0;
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend_maps(
    k: &Arc<FiniteCategory>,
    sizes: &[usize],
    free: &[usize],
    table: &[(usize, usize, usize)],
    depth: usize,
    maps: &mut Vec<Option<Vec<usize>>>,
    out: &mut Vec<SetValuedFunctor>,
    cap: u64,
) -> Result<()> {
    if depth == free.len() {
        if out.len() as u64 >= cap {
            return Err(CatError::EnumerationCap { cap });
        }
        let values = sizes
            .iter()
            .map(|&s| (0..s).map(|i| i.to_string()).collect())
            .collect();
        let maps = maps.iter().map(|m| m.clone().expect("assigned")).collect();
        out.push(SetValuedFunctor {
            base: k.clone(),
            values,
            maps,
        });
        return Ok(());
    }
    let m = free[depth];
    let (sx, sy) = (sizes[k.src(m)], sizes[k.tgt(m)]);
    if sx > 0 && sy == 0 {
        return Ok(());
    }
    let count = sy.pow(sx as u32);
    for code in 0..count {
        let map: Vec<usize> = (0..sx).map(|i| code / sy.pow(i as u32) % sy).collect();
        maps[m] = Some(map);
        let consistent = table
            .iter()
            .all(|&(g, f, gf)| match (&maps[g], &maps[f], &maps[gf]) {
                (Some(mg), Some(mf), Some(mgf)) => mf.iter().zip(mgf).all(|(&j, &r)| mg[j] == r),
                _ => true,
            });
        if consistent {
            extend_maps(k, sizes, free, table, depth + 1, maps, out, cap)?;
        }
    }
    maps[m] = None;
    Ok(())
}

/// Componentwise bijections `F(x) → G(x)` commuting with transport.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalIso {
    pub components: Vec<Vec<usize>>,
}

impl NaturalIso {
    pub fn verify(&self, f: &SetValuedFunctor, g: &SetValuedFunctor) -> bool {
        let k = f.base();
        if **k != **g.base() || self.components.len() != k.num_objects() {
            return false;
        }
        let bijective = (0..k.num_objects()).all(|x| {
            let c = &self.components[x];
            let mut hit = vec![false; g.size(x)];
            c.len() == f.size(x)
                && c.len() == g.size(x)
                && c.iter()
                    .all(|&j| j < hit.len() && !std::mem::replace(&mut hit[j], true))
        });
        bijective
            && (0..k.num_morphisms()).all(|m| {
                let (x, y) = (k.src(m), k.tgt(m));
                (0..f.size(x))
                    .all(|i| self.components[y][f.apply(m, i)] == g.apply(m, self.components[x][i]))
            })
    }
}

/// A natural isomorphism `F ≅ G`, if any, by backtracking over element
/// images with forward propagation along every transport map.
pub fn find_natural_iso(f: &SetValuedFunctor, g: &SetValuedFunctor) -> Option<NaturalIso> {
    let k = f.base();
    if **k != **g.base() || (0..k.num_objects()).any(|x| f.size(x) != g.size(x)) {
        return None;
    }
    let mut search = IsoSearch {
        f,
        g,
        comp: (0..k.num_objects())
            .map(|x| vec![usize::MAX; f.size(x)])
            .collect(),
        used: (0..k.num_objects())
            .map(|x| vec![false; g.size(x)])
            .collect(),
    };
    let order: Vec<(usize, usize)> = (0..k.num_objects())
        .flat_map(|x| (0..f.size(x)).map(move |i| (x, i)))
        .collect();
    if search.run(&order, 0) {
        let iso = NaturalIso {
            components: search.comp,
        };
        debug_assert!(iso.verify(f, g));
        Some(iso)
    } else {
        None
    }
}

struct IsoSearch<'a> {
    f: &'a SetValuedFunctor,
    g: &'a SetValuedFunctor,
    comp: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
}

impl IsoSearch<'_> {
    fn run(&mut self, order: &[(usize, usize)], at: usize) -> bool {
        let Some(&(x, i)) = order[at..]
            .iter()
            .find(|&&(x, i)| self.comp[x][i] == usize::MAX)
        else {
            return true;
        };
        for j in 0..self.g.size(x) {
            if self.used[x][j] {
                continue;
            }
            let mut trail = Vec::new();
            if self.assign(x, i, j, &mut trail) && self.run(order, at + 1) {
                return true;
            }
            for (y, a) in trail {
                let b = std::mem::replace(&mut self.comp[y][a], usize::MAX);
                self.used[y][b] = false;
            }
        }
        false
    }

    /// Sets `comp[x][i] = j` and everything it forces; false on conflict.
    fn assign(&mut self, x: usize, i: usize, j: usize, trail: &mut Vec<(usize, usize)>) -> bool {
        let k = self.f.base().clone();
        let mut stack = vec![(x, i, j)];
        while let Some((x, i, j)) = stack.pop() {
            match self.comp[x][i] {
                usize::MAX if !self.used[x][j] => {
                    self.comp[x][i] = j;
                    self.used[x][j] = true;
                    trail.push((x, i));
                }
                current if current == j => continue,
                _ => return false,
            }
            for &m in k.out_of(x) {
                stack.push((k.tgt(m), self.f.apply(m, i), self.g.apply(m, j)));
            }
        }
        true
    }
}

/// A strict functor `K → Cat`: a category per object and a functor per
/// morphism, with identities and composites preserved on the nose.
#[derive(Debug, Clone)]
pub struct CatValuedFunctor {
    pub base: Arc<FiniteCategory>,
    pub categories: Vec<Arc<FiniteCategory>>,
    pub functors: Vec<Functor>,
}

impl CatValuedFunctor {
    pub fn new(
        base: Arc<FiniteCategory>,
        categories: Vec<Arc<FiniteCategory>>,
        functors: Vec<Functor>,
    ) -> Result<Self> {
        let f = CatValuedFunctor {
            base,
            categories,
            functors,
        };
        let bad = f.violations();
        if bad.is_empty() {
            Ok(f)
        } else {
            Err(CatError::InvalidFunctor(bad.join("; ")))
        }
    }

    /// The constant functor at `c`.
    pub fn constant(base: Arc<FiniteCategory>, c: Arc<FiniteCategory>) -> Self {
        let categories = vec![c.clone(); base.num_objects()];
        let functors = (0..base.num_morphisms())
            .map(|_| Functor::identity(c.clone()))
            .collect();
        CatValuedFunctor {
            base,
            categories,
            functors,
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let k = &self.base;
        let mut out = Vec::new();
        if self.categories.len() != k.num_objects() || self.functors.len() != k.num_morphisms() {
            out.push("category or functor count does not match the base".into());
            return out;
        }
        for (m, f) in self.functors.iter().enumerate() {
            if **f.source() != *self.categories[k.src(m)]
                || **f.target() != *self.categories[k.tgt(m)]
            {
                out.push(format!(
                    "functor of `{}` has the wrong endpoints",
                    k.morphism_id(m)
                ));
            } else if !f.violations().is_empty() {
                out.push(format!("value at `{}` is not a functor", k.morphism_id(m)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in 0..k.num_objects() {
            let f = &self.functors[k.identity(x)];
            let n = self.categories[x].num_morphisms();
            if (0..n).any(|m| f.mor(m) != m) {
                out.push(format!(
                    "`{}` is not sent to an identity functor",
                    k.morphism_id(k.identity(x))
                ));
            }
        }
        for (g, f, gf) in k.table() {
            let (fg, ff, fgf) = (&self.functors[g], &self.functors[f], &self.functors[gf]);
            if (0..ff.source().num_morphisms()).any(|m| fg.mor(ff.mor(m)) != fgf.mor(m)) {
                out.push(format!(
                    "`{}` after `{}` is not strictly `{}`",
                    k.morphism_id(g),
                    k.morphism_id(f),
                    k.morphism_id(gf)
                ));
            }
        }
        out
    }
}
