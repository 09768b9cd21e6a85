use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::functors::{NaturalIso, SetValuedFunctor};
use crate::constructions::{fiber, over, under, Comma};
use crate::error::{CatError, Result};
use crate::fib::{
    is_cartesian_fibration, is_cocartesian_fibration, is_left_final, is_right_initial,
};
use crate::functor::Functor;
use crate::homology::relabel_classes;
use crate::search::enumeration_cap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KanDirection {
    Left,
    Right,
}

/// A diagram `nodes → FinSet` given by the `E`-object of each node and the
/// `E`-morphism of each edge, evaluated through `F`.
struct Diagram<'a> {
    f: &'a SetValuedFunctor,
    nodes: Vec<usize>,
    edges: Vec<(usize, usize, usize)>,
}

/// Colimit as classes of `(node, element)` pairs.
struct Colimit {
    offset: Vec<usize>,
    labels: Vec<usize>,
    count: usize,
}

impl Colimit {
    fn class(&self, node: usize, a: usize) -> usize {
        self.labels[self.offset[node] + a]
    }

    /// The least `(node, element)` of each class.
    fn reps(&self) -> Vec<(usize, usize)> {
        let mut reps = vec![None; self.count];
        for node in 0..self.offset.len() - 1 {
            for a in 0..self.offset[node + 1] - self.offset[node] {
                reps[self.class(node, a)].get_or_insert((node, a));
            }
        }
        reps.into_iter()
            .map(|r| r.expect("nonempty class"))
            .collect()
    }
}

impl Diagram<'_> {
    fn colimit(&self) -> Colimit {
        let mut offset = vec![0];
        for &e in &self.nodes {
            offset.push(offset.last().unwrap() + self.f.size(e));
        }
        let mut uf = UnionFind::<usize>::new(*offset.last().unwrap());
        for &(s, t, m) in &self.edges {
            for a in 0..self.f.size(self.nodes[s]) {
                uf.union(offset[s] + a, offset[t] + self.f.apply(m, a));
            }
        }
        let c = relabel_classes(&uf.into_labeling());
        Colimit {
            offset,
            labels: c.labels,
            count: c.count,
        }
    }

    /// Compatible families, in lexicographic order of their entries.
    fn limit(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.nodes.len();
        let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &(s, t, _)) in self.edges.iter().enumerate() {
            touching[s.max(t)].push(i);
        }
        let cap = enumeration_cap();
        let mut budget = cap;
        let mut out = Vec::new();
        let mut family = vec![usize::MAX; n];
        self.extend(0, &touching, &mut family, &mut out, &mut budget, cap)?;
        Ok(out)
    }

    fn extend(
        &self,
        node: usize,
        touching: &[Vec<usize>],
        family: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: &mut u64,
        cap: u64,
    ) -> Result<()> {
        if node == family.len() {
            out.push(family.clone());
            return Ok(());
        }
        for a in 0..self.f.size(self.nodes[node]) {
            *budget = budget
                .checked_sub(1)
                .ok_or(CatError::EnumerationCap { cap })?;
            family[node] = a;
            let ok = touching[node].iter().all(|&i| {
                let (s, t, m) = self.edges[i];
                self.f.apply(m, family[s]) == family[t]
            });
            if ok {
                self.extend(node + 1, touching, family, out, budget, cap)?;
            }
        }
        family[node] = usize::MAX;
        Ok(())
    }
}

fn fiber_diagram<'a>(pi: &Functor, f: &'a SetValuedFunctor, x: usize) -> (Diagram<'a>, Vec<usize>) {
    let fib = fiber(pi, x);
    let nodes: Vec<usize> = fib.inclusion.object_map().to_vec();
    let c = &fib.category;
    let edges = (0..c.num_morphisms())
        .map(|m| (c.src(m), c.tgt(m), fib.inclusion.mor(m)))
        .collect();
    (
        Diagram {
            f,
            nodes: nodes.clone(),
            edges,
        },
        nodes,
    )
}

fn comma_diagram<'a>(f: &'a SetValuedFunctor, comma: &Comma, e_leg: &Functor) -> Diagram<'a> {
    let c = &comma.category;
    let nodes = (0..c.num_objects()).map(|o| e_leg.ob(o)).collect();
    let edges = (0..c.num_morphisms())
        .map(|m| (c.src(m), c.tgt(m), e_leg.mor(m)))
        .collect();
    Diagram { f, nodes, edges }
}

fn element_name(pi: &Functor, f: &SetValuedFunctor, e: usize, a: usize) -> String {
    format!("{}:{}", pi.source().object_id(e), f.value(e)[a])
}

fn family_name(f: &SetValuedFunctor, nodes: &[usize], family: &[usize]) -> String {
    let parts: Vec<&str> = nodes
        .iter()
        .zip(family)
        .map(|(&e, &a)| f.value(e)[a].as_str())
        .collect();
    format!("({})", parts.join(","))
}

fn check_pre(pi: &Functor, dir: KanDirection, certify_dim: Option<usize>) -> Result<()> {
    let (final_like, fibration, name) = match dir {
        KanDirection::Left => (
            is_left_final(pi, certify_dim)?,
            is_cocartesian_fibration(pi),
            "left final or coCartesian",
        ),
        KanDirection::Right => (
            is_right_initial(pi, certify_dim)?,
            is_cartesian_fibration(pi),
            "right initial or Cartesian",
        ),
    };
    match final_like.witness {
        Some(w) if !fibration.holds => Err(CatError::refused(name, w)),
        _ => Ok(()),
    }
}

/// Kan extension along `π: E → K`, computed fiberwise: colimits (left) or
/// limits (right) of `F` over each fiber `E_x`, with the transport induced
/// by morphisms of `E` over each base morphism. Every result is compared
/// against the comma-category formula through an explicit natural
/// isomorphism.
pub fn kan_extend_along_fibration(
    pi: &Functor,
    f: &SetValuedFunctor,
    dir: KanDirection,
    certify_dim: Option<usize>,
) -> Result<SetValuedFunctor> {
    if **f.base() != **pi.source() {
        return Err(CatError::Precondition(
            "the functor is not defined on the source of π".into(),
        ));
    }
    check_pre(pi, dir, certify_dim)?;
    let (fiberwise, oracle, cmp) = match dir {
        KanDirection::Left => left_both(pi, f)?,
        KanDirection::Right => right_both(pi, f)?,
    };
    if !fiberwise.is_valid() {
        return Err(CatError::Internal(format!(
            "fiberwise extension is not functorial: {:?}",
            fiberwise.violations()
        )));
    }
    if !cmp.verify(&fiberwise, &oracle) {
        return Err(CatError::Internal(
            "fiberwise and comma-category Kan extensions disagree".into(),
        ));
    }
    Ok(fiberwise)
}

/// The pointwise Kan extension by the comma-category formula: colimits over
/// `π ↓ x` (left) or limits over `x ↓ π` (right).
pub fn kan_extension_by_commas(
    pi: &Functor,
    f: &SetValuedFunctor,
    dir: KanDirection,
) -> Result<SetValuedFunctor> {
    Ok(match dir {
        KanDirection::Left => left_oracle(pi, f).0,
        KanDirection::Right => right_oracle(pi, f)?.0,
    })
}

type Both = (SetValuedFunctor, SetValuedFunctor, NaturalIso);

fn left_oracle(pi: &Functor, f: &SetValuedFunctor) -> (SetValuedFunctor, Vec<Comma>, Vec<Colimit>) {
    let k = pi.target();
    let commas: Vec<Comma> = (0..k.num_objects()).map(|x| over(pi, x)).collect();
    let colims: Vec<Colimit> = commas
        .iter()
        .map(|c| comma_diagram(f, c, &c.left).colimit())
        .collect();
    let values = commas
        .iter()
        .zip(&colims)
        .map(|(c, col)| {
            col.reps()
                .iter()
                .map(|&(node, a)| {
                    let (e, _, u) = c.objects[node];
                    format!("{}/{}", element_name(pi, f, e, a), k.morphism_id(u))
                })
                .collect()
        })
        .collect();
    let oracle = SetValuedFunctor::from_fn(k.clone(), values, |m, i| {
        let (x, y) = (k.src(m), k.tgt(m));
        let (node, a) = colims[x].reps()[i];
        let (e, _, u) = commas[x].objects[node];
        let ku = k.compose(m, u);
        let target = commas[y]
            .objects
            .iter()
            .position(|&(e2, _, u2)| e2 == e && u2 == ku)
            .expect("comma object");
        colims[y].class(target, a)
    });
    (oracle, commas, colims)
}

fn left_both(pi: &Functor, f: &SetValuedFunctor) -> Result<Both> {
    let (e_cat, k) = (pi.source(), pi.target());
    let mut values = Vec::new();
    let mut fibers = Vec::new();
    for x in 0..k.num_objects() {
        let (d, nodes) = fiber_diagram(pi, f, x);
        let col = d.colimit();
        values.push(
            col.reps()
                .iter()
                .map(|&(n, a)| element_name(pi, f, nodes[n], a))
                .collect::<Vec<_>>(),
        );
        fibers.push((col, nodes));
    }
    let position = |x: usize, e: usize| {
        fibers[x]
            .1
            .iter()
            .position(|&o| o == e)
            .expect("object in its fiber")
    };
    // transport: every lift of every member must land in one class
    let mut maps = Vec::new();
    for m in 0..k.num_morphisms() {
        let (x, y) = (k.src(m), k.tgt(m));
        let (col, nodes) = &fibers[x];
        let mut map = vec![usize::MAX; col.count];
        for (n, &e) in nodes.iter().enumerate() {
            for a in 0..f.size(e) {
                let i = col.class(n, a);
                for &l in e_cat.out_of(e).iter().filter(|&&l| pi.mor(l) == m) {
                    let j = fibers[y].0.class(position(y, e_cat.tgt(l)), f.apply(l, a));
                    if map[i] != usize::MAX && map[i] != j {
                        return Err(CatError::Internal(format!(
                            "transport along `{}` is not well defined",
                            k.morphism_id(m)
                        )));
                    }
                    map[i] = j;
                }
            }
        }
        if map.contains(&usize::MAX) {
            return Err(CatError::Internal(format!(
                "an element has no transport along `{}`",
                k.morphism_id(m)
            )));
        }
        maps.push(map);
    }
    let fiberwise = SetValuedFunctor::from_fn(k.clone(), values, |m, i| maps[m][i]);
    let (oracle, commas, colims) = left_oracle(pi, f);
    // (e, a) ↦ ((e, id_x), a)
    let components = (0..k.num_objects())
        .map(|x| {
            let (col, nodes) = &fibers[x];
            col.reps()
                .iter()
                .map(|&(n, a)| {
                    let e = nodes[n];
                    let c = commas[x]
                        .objects
                        .iter()
                        .position(|&(o, _, u)| o == e && u == k.identity(x))
                        .expect("identity");
                    colims[x].class(c, a)
                })
                .collect()
        })
        .collect();
    Ok((fiberwise, oracle, NaturalIso { components }))
}

fn right_oracle(
    pi: &Functor,
    f: &SetValuedFunctor,
) -> Result<(SetValuedFunctor, Vec<Comma>, Vec<Vec<Vec<usize>>>)> {
    let k = pi.target();
    let commas: Vec<Comma> = (0..k.num_objects()).map(|x| under(pi, x)).collect();
    let families: Vec<Vec<Vec<usize>>> = commas
        .iter()
        .map(|c| comma_diagram(f, c, &c.right).limit())
        .collect::<Result<_>>()?;
    let values = commas
        .iter()
        .zip(&families)
        .map(|(c, fams)| {
            let nodes: Vec<usize> = c.objects.iter().map(|o| o.1).collect();
            fams.iter().map(|fam| family_name(f, &nodes, fam)).collect()
        })
        .collect();
    // b_{(e, u')} = a_{(e, u' ∘ k)}
    let oracle = SetValuedFunctor::from_fn(k.clone(), values, |m, i| {
        let (x, y) = (k.src(m), k.tgt(m));
        let a = &families[x][i];
        let b: Vec<usize> = commas[y]
            .objects
            .iter()
            .map(|&(_, e, u)| {
                let uk = k.compose(u, m);
                a[commas[x]
                    .objects
                    .iter()
                    .position(|&(_, e2, u2)| e2 == e && u2 == uk)
                    .expect("comma object")]
            })
            .collect();
        families[y]
            .iter()
            .position(|fam| *fam == b)
            .expect("transported family is compatible")
    });
    Ok((oracle, commas, families))
}

fn right_both(pi: &Functor, f: &SetValuedFunctor) -> Result<Both> {
    let (e_cat, k) = (pi.source(), pi.target());
    let mut fibers = Vec::new();
    let mut values = Vec::new();
    for x in 0..k.num_objects() {
        let (d, nodes) = fiber_diagram(pi, f, x);
        let fams = d.limit()?;
        values.push(
            fams.iter()
                .map(|fam| family_name(f, &nodes, fam))
                .collect::<Vec<_>>(),
        );
        fibers.push((fams, nodes));
    }
    let mut maps = Vec::new();
    for m in 0..k.num_morphisms() {
        let (x, y) = (k.src(m), k.tgt(m));
        let (fams, nodes) = &fibers[x];
        let (tfams, tnodes) = &fibers[y];
        let mut map = Vec::new();
        for a in fams {
            let mut b = Vec::with_capacity(tnodes.len());
            for &e2 in tnodes {
                let mut val = None;
                for (n, &e) in nodes.iter().enumerate() {
                    for &l in e_cat.hom(e, e2).iter().filter(|&&l| pi.mor(l) == m) {
                        let v = f.apply(l, a[n]);
                        if val.is_some_and(|w| w != v) {
                            return Err(CatError::Internal(format!(
                                "transport along `{}` is not well defined",
                                k.morphism_id(m)
                            )));
                        }
                        val = Some(v);
                    }
                }
                b.push(val.ok_or_else(|| {
                    CatError::Internal(format!(
                        "`{}` has no lift along `{}`",
                        e_cat.object_id(e2),
                        k.morphism_id(m)
                    ))
                })?);
            }
            map.push(tfams.iter().position(|fam| *fam == b).ok_or_else(|| {
                CatError::Internal(format!(
                    "transport along `{}` breaks compatibility",
                    k.morphism_id(m)
                ))
            })?);
        }
        maps.push(map);
    }
    let fiberwise = SetValuedFunctor::from_fn(k.clone(), values, |m, i| maps[m][i]);
    let (oracle, commas, families) = right_oracle(pi, f)?;
    // a comma family restricts to its entries at (e, id_x); components go
    // the other way, fiber family ↦ the unique comma family restricting to it
    let mut components = Vec::new();
    for x in 0..k.num_objects() {
        let (fams, nodes) = &fibers[x];
        let at: Vec<usize> = nodes
            .iter()
            .map(|&e| {
                commas[x]
                    .objects
                    .iter()
                    .position(|&(_, o, u)| o == e && u == k.identity(x))
                    .expect("identity")
            })
            .collect();
        let mut comp = vec![usize::MAX; fams.len()];
        for (j, big) in families[x].iter().enumerate() {
            let small: Vec<usize> = at.iter().map(|&c| big[c]).collect();
            let i = fams
                .iter()
                .position(|fam| *fam == small)
                .expect("restriction is compatible");
            if comp[i] != usize::MAX {
                return Err(CatError::Internal(
                    "two comma families restrict to one fiber family".into(),
                ));
            }
            comp[i] = j;
        }
        if comp.contains(&usize::MAX) {
            return Err(CatError::Internal(
                "a fiber family does not extend over the comma category".into(),
            ));
        }
        components.push(comp);
    }
    Ok((fiberwise, oracle, NaturalIso { components }))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::constructions::{coproduct, product};
    use crate::transport::functors::find_natural_iso;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn along_the_identity() {
        let k = Arc::new(catalog::interval(1));
        let f = SetValuedFunctor::new(
            k.clone(),
            vec![names(&["a", "b"]), names(&["c"])],
            vec![vec![0, 1], vec![0, 0], vec![0]],
        )
        .unwrap();
        let id = Functor::identity(k);
        for dir in [KanDirection::Left, KanDirection::Right] {
            let g = kan_extend_along_fibration(&id, &f, dir, None).unwrap();
            assert!(find_natural_iso(&f, &g).is_some());
        }
    }

    #[test]
    fn constant_over_connected_fibers() {
        let c = Arc::new(catalog::ret());
        let k = Arc::new(catalog::interval(1));
        let p = product(&c, &k);
        let one = SetValuedFunctor::terminal(p.category.clone());
        let g = kan_extend_along_fibration(&p.right, &one, KanDirection::Left, None).unwrap();
        assert_eq!((g.size(0), g.size(1)), (1, 1));
    }

    #[test]
    fn two_component_fiber_gives_two_elements() {
        // E = [1] ⊔ [1] over [1]
        let one = Arc::new(catalog::interval(1));
        let two = Arc::new(coproduct(&[&one, &one]));
        let pi = Functor::new_unchecked(
            two.clone(),
            one.clone(),
            vec![0, 1, 0, 1],
            vec![0, 1, 2, 0, 1, 2],
        );
        let f = SetValuedFunctor::terminal(two);
        let g = kan_extend_along_fibration(&pi, &f, KanDirection::Left, None).unwrap();
        let oracle = kan_extension_by_commas(&pi, &f, KanDirection::Left).unwrap();
        assert_eq!((g.size(0), g.size(1)), (2, 2));
        assert!(find_natural_iso(&g, &oracle).is_some());
        let r = kan_extend_along_fibration(&pi, &f, KanDirection::Right, None).unwrap();
        assert_eq!((r.size(0), r.size(1)), (1, 1));
    }

    #[test]
    fn limits_over_a_retract_fiber() {
        // C × [1] → [1] with C = Ret and F = Hom(x, -) pulled back
        let c = Arc::new(catalog::ret());
        let k = Arc::new(catalog::interval(1));
        let p = product(&c, &k);
        let f = SetValuedFunctor::from_fn(
            p.category.clone(),
            (0..p.category.num_objects())
                .map(|_| names(&["u", "v"]))
                .collect(),
            |_, i| i,
        );
        assert!(f.is_valid());
        let r = kan_extend_along_fibration(&p.right, &f, KanDirection::Right, None).unwrap();
        assert_eq!((r.size(0), r.size(1)), (2, 2));
    }

    #[test]
    fn refused_without_hypotheses() {
        let two = Arc::new(catalog::interval(2));
        let ends = crate::constructions::full_subcategory_arc(&two, &[0, 2]).inclusion;
        let f = SetValuedFunctor::terminal(ends.source().clone());
        assert!(matches!(
            kan_extend_along_fibration(&ends, &f, KanDirection::Left, None),
            Err(CatError::Refused { .. })
        ));
    }
}
