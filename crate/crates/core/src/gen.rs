//! Seeded random generators for categories, profunctors and functors.
//!
//! Every generator draws from a [`ChaCha8Rng`], so a seed fixes the whole
//! stream on every platform.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::category::FiniteCategory;
use crate::constructions::{coproduct, product};
use crate::corr::{collage, glue_over_triangle, Profunctor};
use crate::error::Result;
use crate::functor::Functor;
use crate::search::FunctorSearch;
use crate::transport::SetValuedFunctor;

/// Deterministic source of random instances.
#[derive(Debug, Clone)]
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// Uniform in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// An isomorphic copy of `c` with objects and morphisms renumbered at
    /// random; ids are kept.
    pub fn shuffled(&mut self, c: &FiniteCategory) -> FiniteCategory {
        let mut po: Vec<usize> = (0..c.num_objects()).collect();
        let mut pm: Vec<usize> = (0..c.num_morphisms()).collect();
        po.shuffle(&mut self.rng);
        pm.shuffle(&mut self.rng);
        // new index of old object o is po[o]
        let mut old_o = vec![0; po.len()];
        for (o, &n) in po.iter().enumerate() {
            old_o[n] = o;
        }
        let mut old_m = vec![0; pm.len()];
        for (m, &n) in pm.iter().enumerate() {
            old_m[n] = m;
        }
        let objects = old_o.iter().map(|&o| c.object_id(o).to_string()).collect();
        let morphisms = old_m
            .iter()
            .map(|&m| (c.morphism_id(m).to_string(), po[c.src(m)], po[c.tgt(m)]))
            .collect();
        let identities = old_o.iter().map(|&o| pm[c.identity(o)]).collect();
        FiniteCategory::from_fn(objects, morphisms, identities, |g, f| {
            pm[c.compose(old_m[g], old_m[f])]
        })
    }

    /// A random poset on `n` points: random edges `i → j` for `i < j`,
    /// closed under transitivity.
    pub fn poset(&mut self, n: usize) -> FiniteCategory {
        let p = self.rng.gen_range(0.2..0.7);
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
            for cell in row.iter_mut().skip(i + 1) {
                *cell = self.rng.gen_bool(p);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        catalog::poset(&names, |i, j| leq[i][j])
    }

    fn named(&mut self) -> FiniteCategory {
        let pool: [fn() -> FiniteCategory; 10] = [
            catalog::terminal,
            || catalog::interval(1),
            || catalog::interval(2),
            catalog::walking_iso,
            catalog::parallel_pair,
            catalog::span,
            catalog::cospan,
            catalog::idem,
            catalog::ret,
            || catalog::cyclic_group(2),
        ];
        pool.choose(&mut self.rng).expect("nonempty pool")()
    }

    /// A random category with at most `max_objects` objects and
    /// `max_morphisms` morphisms, drawn from posets, named categories,
    /// coproducts, products with `[1]` and collages.
    pub fn category(&mut self, max_objects: usize, max_morphisms: usize) -> FiniteCategory {
        loop {
            let c = match self.rng.gen_range(0..10) {
                0..=3 => {
                    let n = self.rng.gen_range(1..=max_objects.max(1));
                    self.poset(n)
                }
                4..=5 => self.named(),
                6 => {
                    let (a, b) = (self.small(), self.small());
                    coproduct(&[&a, &b])
                }
                7 => {
                    let a = Arc::new(self.small());
                    product(&a, &Arc::new(catalog::interval(1)))
                        .category
                        .as_ref()
                        .clone()
                }
                _ => {
                    let (a, b) = (Arc::new(self.small()), Arc::new(self.small()));
                    let p = self.profunctor(&a, &b);
                    collage(&p).total.as_ref().clone()
                }
            };
            if c.num_objects() <= max_objects && c.num_morphisms() <= max_morphisms {
                return c;
            }
        }
    }

    fn small(&mut self) -> FiniteCategory {
        if self.rng.gen_bool(0.5) {
            let n = self.rng.gen_range(1..=2);
            self.poset(n)
        } else {
            self.named()
        }
    }

    /// A random profunctor `A^op × B → Set`: a sum of (usually one to three)
    /// representables `Hom(-, a₀) × Hom(b₀, -)`, quotiented by the
    /// congruence generated by a few random identifications.
    pub fn profunctor(&mut self, a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> Profunctor {
        let generators: Vec<(usize, usize)> = if a.num_objects() == 0 || b.num_objects() == 0 {
            Vec::new()
        } else {
            let k = if self.rng.gen_bool(0.1) {
                0
            } else {
                self.rng.gen_range(1..=3)
            };
            (0..k)
                .map(|_| {
                    (
                        self.rng.gen_range(0..a.num_objects()),
                        self.rng.gen_range(0..b.num_objects()),
                    )
                })
                .collect()
        };
        let free = free_profunctor(a, b, &generators);
        let merges = self.rng.gen_range(0..=2);
        let mut pairs = Vec::new();
        for _ in 0..merges {
            let cells: Vec<usize> = (0..free.cells().len())
                .filter(|&c| free.cells()[c].len() >= 2)
                .collect();
            if let Some(&c) = cells.choose(&mut self.rng) {
                let n = free.cells()[c].len();
                pairs.push((c, self.rng.gen_range(0..n), self.rng.gen_range(0..n)));
            }
        }
        quotient(&free, &pairs)
    }

    /// A random profunctor between random categories within the bounds.
    pub fn bounded_profunctor(&mut self, max_objects: usize, max_morphisms: usize) -> Profunctor {
        let a = Arc::new(self.category(max_objects, max_morphisms));
        let b = Arc::new(self.category(max_objects, max_morphisms));
        self.profunctor(&a, &b)
    }

    /// A random functor `E → [n]` with at most `max_morphisms` morphisms in
    /// `E`: either a random category with a monotone level map, or (for
    /// `n ≤ 2`) a collage or a glued triangle of random profunctors.
    pub fn over_interval(&mut self, n: usize, max_morphisms: usize) -> Functor {
        loop {
            let f = if n <= 2 && self.rng.gen_bool(0.4) {
                let a = Arc::new(self.small());
                let b = Arc::new(self.small());
                let p = self.profunctor(&a, &b);
                if n == 1 {
                    collage(&p).projection
                } else if n == 2 {
                    let c = Arc::new(self.small());
                    let q = self.profunctor(&b, &c);
                    match glue_over_triangle(&collage(&p), &collage(&q)) {
                        Ok(t) => t.projection,
                        Err(_) => continue,
                    }
                } else {
                    Functor::to_point(a, Arc::new(catalog::interval(0)))
                }
            } else {
                let e = Arc::new(self.category(4, max_morphisms));
                self.level_map(e, n)
            };
            if f.source().num_morphisms() <= max_morphisms {
                return f;
            }
        }
    }

    /// A random monotone level map `E → [n]`.
    pub fn level_map(&mut self, e: Arc<FiniteCategory>, n: usize) -> Functor {
        let mut level: Vec<usize> = (0..e.num_objects())
            .map(|_| self.rng.gen_range(0..=n))
            .collect();
        loop {
            let mut changed = false;
            for m in 0..e.num_morphisms() {
                let (s, t) = (e.src(m), e.tgt(m));
                if level[s] > level[t] {
                    level[t] = level[s];
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let base = Arc::new(catalog::interval(n));
        let morphisms = (0..e.num_morphisms())
            .map(|m| base.hom(level[e.src(m)], level[e.tgt(m)])[0])
            .collect();
        Functor::new_unchecked(e, base, level, morphisms)
    }

    /// A uniformly chosen functor `source → target`, if any exists.
    pub fn functor(
        &mut self,
        source: &Arc<FiniteCategory>,
        target: &Arc<FiniteCategory>,
    ) -> Result<Option<Functor>> {
        let all = FunctorSearch::new(source, target).collect()?;
        Ok(all.choose(&mut self.rng).cloned())
    }

    /// A random set-valued functor on `base` with values of size at most
    /// `max_size`, if one is found among the enumerated candidates.
    pub fn set_functor(
        &mut self,
        base: &Arc<FiniteCategory>,
        max_size: usize,
    ) -> Result<Option<SetValuedFunctor>> {
        let all = crate::transport::enumerate_set_functors(base, max_size)?;
        Ok(all.choose(&mut self.rng).cloned())
    }
}

/// `⊔_g Hom(-, a_g) × Hom(b_g, -)`; the element `(u, v)` of generator `g`
/// is named `g<k>[u,v]`.
pub fn free_profunctor(
    a: &Arc<FiniteCategory>,
    b: &Arc<FiniteCategory>,
    generators: &[(usize, usize)],
) -> Profunctor {
    let nb = b.num_objects();
    // per cell: (generator, u, v)
    let mut cells: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); a.num_objects() * nb];
    for (g, &(a0, b0)) in generators.iter().enumerate() {
        for x in 0..a.num_objects() {
            for y in 0..nb {
                for &u in a.hom(x, a0) {
                    for &v in b.hom(b0, y) {
                        cells[x * nb + y].push((g, u, v));
                    }
                }
            }
        }
    }
    let elements = cells
        .iter()
        .map(|c| {
            c.iter()
                .map(|&(g, u, v)| format!("g{g}[{},{}]", a.morphism_id(u), b.morphism_id(v)))
                .collect()
        })
        .collect();
    let find = |cell: usize, key: (usize, usize, usize)| {
        cells[cell].iter().position(|&k| k == key).expect("closed")
    };
    Profunctor::from_fn(
        a.clone(),
        b.clone(),
        elements,
        |al, y, i| {
            let (g, u, v) = cells[a.tgt(al) * nb + y][i];
            find(a.src(al) * nb + y, (g, a.compose(u, al), v))
        },
        |be, x, i| {
            let (g, u, v) = cells[x * nb + b.src(be)][i];
            find(x * nb + b.tgt(be), (g, u, b.compose(be, v)))
        },
    )
}

/// The quotient of `p` by the least congruence identifying each
/// `(cell, i, j)` pair. Classes keep the name of their least member.
pub fn quotient(p: &Profunctor, pairs: &[(usize, usize, usize)]) -> Profunctor {
    let (sa, sb) = (p.source().clone(), p.target().clone());
    let nb = sb.num_objects();
    let cells = p.cells();
    let offset: Vec<usize> = cells
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.len();
            Some(o)
        })
        .collect();
    let total = p.total_size();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut work: Vec<(usize, usize, usize)> = pairs.to_vec();
    while let Some((c, i, j)) = work.pop() {
        let (ri, rj) = (
            find(&mut parent, offset[c] + i),
            find(&mut parent, offset[c] + j),
        );
        if ri == rj {
            continue;
        }
        parent[ri.max(rj)] = ri.min(rj);
        let (x, y) = (c / nb, c % nb);
        for &al in sa.incoming(x) {
            let to = sa.src(al) * nb + y;
            work.push((to, p.act_left(al, y, i), p.act_left(al, y, j)));
        }
        for &be in sb.out_of(y) {
            let to = x * nb + sb.tgt(be);
            work.push((to, p.act_right(be, x, i), p.act_right(be, x, j)));
        }
    }
    // class index within each cell, in order of least members
    let mut class = vec![usize::MAX; total];
    let mut elements = Vec::with_capacity(cells.len());
    for (c, names) in cells.iter().enumerate() {
        let mut kept = Vec::new();
        for i in 0..names.len() {
            let r = find(&mut parent, offset[c] + i);
            if r == offset[c] + i {
                class[r] = kept.len();
                kept.push(names[i].clone());
            }
        }
        elements.push(kept);
    }
    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    for (c, names) in cells.iter().enumerate() {
        for i in 0..names.len() {
            if find(&mut parent, offset[c] + i) == offset[c] + i {
                reps[c].push(i);
            }
        }
    }
    let cls = |c: usize, i: usize, parent: &mut Vec<usize>| class[find(parent, offset[c] + i)];
    let mut parent_l = parent.clone();
    let mut parent_r = parent;
    let left: Vec<Vec<Vec<usize>>> = (0..sa.num_morphisms())
        .map(|al| {
            (0..nb)
                .map(|y| {
                    let from = sa.tgt(al) * nb + y;
                    let to = sa.src(al) * nb + y;
                    reps[from]
                        .iter()
                        .map(|&i| cls(to, p.act_left(al, y, i), &mut parent_l))
                        .collect()
                })
                .collect()
        })
        .collect();
    let right: Vec<Vec<Vec<usize>>> = (0..sb.num_morphisms())
        .map(|be| {
            (0..sa.num_objects())
                .map(|x| {
                    let from = x * nb + sb.src(be);
                    let to = x * nb + sb.tgt(be);
                    reps[from]
                        .iter()
                        .map(|&i| cls(to, p.act_right(be, x, i), &mut parent_r))
                        .collect()
                })
                .collect()
        })
        .collect();
    Profunctor::from_fn(
        sa,
        sb,
        elements,
        |al, y, i| left[al][y][i],
        |be, x, i| right[be][x][i],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_structures_are_valid() {
        let mut g = Gen::new(7);
        for _ in 0..60 {
            let c = g.category(4, 10);
            assert!(c.is_valid(), "{}", c.validate());
            assert!(c.num_objects() <= 4 && c.num_morphisms() <= 10);
            let p = g.bounded_profunctor(4, 10);
            assert!(p.is_valid(), "{:?}", p.violations());
            for n in 1..=2 {
                let f = g.over_interval(n, 12);
                assert!(f.violations().is_empty(), "{:?}", f.violations());
                assert!(f.source().num_morphisms() <= 12);
            }
        }
    }

    #[test]
    fn shuffling_keeps_a_valid_isomorphic_copy() {
        let mut g = Gen::new(11);
        let c = catalog::ret();
        let s = g.shuffled(&c);
        assert!(s.is_valid());
        assert!(crate::search::find_isomorphism(&c, &s).unwrap().is_some());
    }

    #[test]
    fn same_seed_same_stream() {
        let (mut a, mut b) = (Gen::new(3), Gen::new(3));
        for _ in 0..10 {
            assert_eq!(a.category(4, 10), b.category(4, 10));
        }
    }

    #[test]
    fn quotient_identifies_images() {
        let one = Arc::new(catalog::interval(1));
        // Hom(-, 1) × Hom(0, -) over [1]×[1]
        let free = free_profunctor(&one, &one, &[(1, 0)]);
        assert_eq!(free.total_size(), 4);
        // identify nothing else: cell (0, 1) has one element
        let q = quotient(&free, &[]);
        assert_eq!(q, free);
        let both = free_profunctor(&one, &one, &[(1, 0), (1, 0)]);
        let c = both.cell(1, 0);
        let q = quotient(&both, &[(c, 0, 1)]);
        assert!(q.is_valid());
        assert_eq!(q.total_size(), 4);
    }
}
