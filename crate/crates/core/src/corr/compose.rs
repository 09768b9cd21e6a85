use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use super::bifib::{bifib_to_profunctor, profunctor_to_bifib, TwoSidedDiscreteFibration};
use super::correspondence::{collage, corr_to_profunctor, element_ids, Correspondence};
use super::profunctor::{hom_profunctor, Profunctor, ProfunctorIso};
use crate::catalog;
use crate::category::FiniteCategory;
use crate::constructions::{product, pullback, restrict_over};
use crate::error::{CatError, Result};
use crate::functor::Functor;
use crate::homology::relabel_classes;

/// A category over `[2]` with the inclusions of its three fibers.
#[derive(Debug, Clone)]
pub struct OverTriangle {
    pub total: Arc<FiniteCategory>,
    pub projection: Functor,
    pub fibers: [Functor; 3],
}

// morphism indices of interval(2): id_0, 0->1, 0->2, id_1, 1->2, id_2
const EDGE: [[usize; 3]; 3] = [[0, 1, 2], [usize::MAX, 3, 4], [usize::MAX, usize::MAX, 5]];

impl OverTriangle {
    /// The restriction over the edge `{i < j}` of `[2]`, as a correspondence.
    pub fn edge(&self, i: usize, j: usize) -> Correspondence {
        assert!(i < j && j <= 2);
        let sub = restrict_over(
            &self.projection,
            &[i, j],
            &[EDGE[i][i], EDGE[i][j], EDGE[j][j]],
        );
        let one = Arc::new(catalog::interval(1));
        let incl = &sub.inclusion;
        let cat = sub.category.clone();
        let projection = Functor::new_unchecked(
            cat.clone(),
            one,
            (0..cat.num_objects())
                .map(|o| usize::from(self.projection.ob(incl.ob(o)) == j))
                .collect(),
            (0..cat.num_morphisms())
                .map(|m| {
                    let k = self.projection.mor(incl.mor(m));
                    if k == EDGE[i][i] {
                        0
                    } else if k == EDGE[i][j] {
                        1
                    } else {
                        2
                    }
                })
                .collect(),
        );
        let objs: HashMap<usize, usize> = (0..cat.num_objects()).map(|o| (incl.ob(o), o)).collect();
        let mors: HashMap<usize, usize> =
            (0..cat.num_morphisms()).map(|m| (incl.mor(m), m)).collect();
        let pull = |f: &Functor| {
            Functor::new_unchecked(
                f.source().clone(),
                cat.clone(),
                f.object_map().iter().map(|o| objs[o]).collect(),
                f.morphism_map().iter().map(|m| mors[m]).collect(),
            )
        };
        Correspondence {
            total: cat.clone(),
            projection,
            source_inclusion: pull(&self.fibers[i]),
            target_inclusion: pull(&self.fibers[j]),
        }
    }
}

/// The category over `[2]` with fibers `A, B, C`, cross-homs `P01`, `P12`,
/// `P02`, and composition of cross morphisms given by
/// `mult(a, b, c, x, y) ∈ P02(a, c)`. The result is a category exactly when
/// `mult` is balanced over `B` and equivariant in `A` and `C`.
pub fn triangle_category(
    p01: &Profunctor,
    p12: &Profunctor,
    p02: &Profunctor,
    mult: impl Fn(usize, usize, usize, usize, usize) -> usize,
) -> Result<OverTriangle> {
    if p01.target() != p12.source() || p01.source() != p02.source() || p12.target() != p02.target()
    {
        return Err(CatError::FiberMismatch(
            "profunctors do not form a triangle".into(),
        ));
    }
    let (a, b, c) = (
        p01.source().clone(),
        p01.target().clone(),
        p12.target().clone(),
    );
    let (na, nb, nc) = (a.num_objects(), b.num_objects(), c.num_objects());
    let (ma, mb, mc) = (a.num_morphisms(), b.num_morphisms(), c.num_morphisms());
    let layout = |p: &Profunctor, start: usize| {
        let mut offs = Vec::new();
        let mut parts = Vec::new();
        let n2 = p.target().num_objects();
        for (cell, els) in p.cells().iter().enumerate() {
            offs.push(start + parts.len());
            parts.extend((0..els.len()).map(|i| (cell / n2, cell % n2, i)));
        }
        (offs, parts)
    };
    let base = ma + mb + mc;
    let (off01, x01) = layout(p01, base);
    let (off12, x12) = layout(p12, base + x01.len());
    let (off02, x02) = layout(p02, base + x01.len() + x12.len());
    let (s12, s02) = (base + x01.len(), base + x01.len() + x12.len());

    #[derive(Clone, Copy)]
    enum Part {
        A(usize),
        B(usize),
        C(usize),
        X01(usize, usize, usize),
        X12(usize, usize, usize),
        X02(usize, usize, usize),
    }
    let decode = |m: usize| {
        if m < ma {
            Part::A(m)
        } else if m < ma + mb {
            Part::B(m - ma)
        } else if m < base {
            Part::C(m - ma - mb)
        } else if m < s12 {
            let (x, y, i) = x01[m - base];
            Part::X01(x, y, i)
        } else if m < s02 {
            let (x, y, i) = x12[m - s12];
            Part::X12(x, y, i)
        } else {
            let (x, y, i) = x02[m - s02];
            Part::X02(x, y, i)
        }
    };
    let e01 = |x: usize, y: usize, i: usize| off01[x * nb + y] + i;
    let e12 = |x: usize, y: usize, i: usize| off12[x * nc + y] + i;
    let e02 = |x: usize, y: usize, i: usize| off02[x * nc + y] + i;

    let objects = a
        .objects()
        .iter()
        .map(|o| format!("0:{o}"))
        .chain(b.objects().iter().map(|o| format!("1:{o}")))
        .chain(c.objects().iter().map(|o| format!("2:{o}")))
        .collect();
    let mut morphisms: Vec<(String, usize, usize)> = Vec::new();
    morphisms.extend(
        a.morphisms()
            .iter()
            .map(|m| (format!("0:{}", m.id), m.src, m.tgt)),
    );
    morphisms.extend(
        b.morphisms()
            .iter()
            .map(|m| (format!("1:{}", m.id), na + m.src, na + m.tgt)),
    );
    morphisms.extend(
        c.morphisms()
            .iter()
            .map(|m| (format!("2:{}", m.id), na + nb + m.src, na + nb + m.tgt)),
    );
    morphisms.extend(
        x01.iter()
            .zip(element_ids(p01, "01:"))
            .map(|(&(x, y, _), id)| (id, x, na + y)),
    );
    morphisms.extend(
        x12.iter()
            .zip(element_ids(p12, "12:"))
            .map(|(&(x, y, _), id)| (id, na + x, na + nb + y)),
    );
    morphisms.extend(
        x02.iter()
            .zip(element_ids(p02, "02:"))
            .map(|(&(x, y, _), id)| (id, x, na + nb + y)),
    );
    let identities = (0..na)
        .map(|o| a.identity(o))
        .chain((0..nb).map(|o| ma + b.identity(o)))
        .chain((0..nc).map(|o| ma + mb + c.identity(o)))
        .collect();
    let total = Arc::new(FiniteCategory::from_fn(
        objects,
        morphisms,
        identities,
        |g, f| match (decode(f), decode(g)) {
            (Part::A(f), Part::A(g)) => a.compose(g, f),
            (Part::A(f), Part::X01(_, y, i)) => e01(a.src(f), y, p01.act_left(f, y, i)),
            (Part::A(f), Part::X02(_, y, i)) => e02(a.src(f), y, p02.act_left(f, y, i)),
            (Part::B(f), Part::B(g)) => ma + b.compose(g, f),
            (Part::B(f), Part::X12(_, y, i)) => e12(b.src(f), y, p12.act_left(f, y, i)),
            (Part::C(f), Part::C(g)) => ma + mb + c.compose(g, f),
            (Part::X01(x, _, i), Part::B(g)) => e01(x, b.tgt(g), p01.act_right(g, x, i)),
            (Part::X01(x, y, i), Part::X12(_, z, j)) => e02(x, z, mult(x, y, z, i, j)),
            (Part::X12(x, _, i), Part::C(g)) => e12(x, c.tgt(g), p12.act_right(g, x, i)),
            (Part::X02(x, _, i), Part::C(g)) => e02(x, c.tgt(g), p02.act_right(g, x, i)),
            _ => unreachable!("composable pairs in a category over [2]"),
        },
    ));
    let two = Arc::new(catalog::interval(2));
    let projection = Functor::new_unchecked(
        total.clone(),
        two,
        (0..na + nb + nc)
            .map(|o| usize::from(o >= na) + usize::from(o >= na + nb))
            .collect(),
        (0..total.num_morphisms())
            .map(|m| match decode(m) {
                Part::A(_) => EDGE[0][0],
                Part::B(_) => EDGE[1][1],
                Part::C(_) => EDGE[2][2],
                Part::X01(..) => EDGE[0][1],
                Part::X12(..) => EDGE[1][2],
                Part::X02(..) => EDGE[0][2],
            })
            .collect(),
    );
    let incl = |cat: &Arc<FiniteCategory>, oo: usize, mo: usize| {
        Functor::new_unchecked(
            cat.clone(),
            total.clone(),
            (oo..oo + cat.num_objects()).collect(),
            (mo..mo + cat.num_morphisms()).collect(),
        )
    };
    let fibers = [incl(&a, 0, 0), incl(&b, na, ma), incl(&c, na + nb, ma + mb)];
    Ok(OverTriangle {
        total,
        projection,
        fibers,
    })
}

/// `E01 ⊔_B E12` over `[2]`: homs within each piece are unchanged, and the
/// homs from `A` to `C` are the coend `E01(a, −) ⊗_B E12(−, c)`, computed here
/// from the composition tables of the two totals.
pub fn glue_over_triangle(c01: &Correspondence, c12: &Correspondence) -> Result<OverTriangle> {
    if **c01.target() != **c12.source() {
        return Err(CatError::FiberMismatch(
            "target fiber of the first correspondence differs from the source fiber of the second"
                .into(),
        ));
    }
    let (e01, e12) = (&c01.total, &c12.total);
    let (ia, ib1) = (&c01.source_inclusion, &c01.target_inclusion);
    let (ib2, ic) = (&c12.source_inclusion, &c12.target_inclusion);
    let (a, b, c) = (
        c01.source().clone(),
        c01.target().clone(),
        c12.target().clone(),
    );
    let (na, nb, nc) = (a.num_objects(), b.num_objects(), c.num_objects());
    let cells: Vec<(Vec<(usize, usize)>, Vec<usize>)> = (0..na * nc)
        .into_par_iter()
        .map(|cell| {
            let (x, z) = (cell / nc, cell % nc);
            let mut pairs = Vec::new();
            let mut index = HashMap::new();
            for y in 0..nb {
                for &p in e01.hom(ia.ob(x), ib1.ob(y)) {
                    for &q in e12.hom(ib2.ob(y), ic.ob(z)) {
                        index.insert((p, q), pairs.len());
                        pairs.push((p, q));
                    }
                }
            }
            let mut uf = UnionFind::<usize>::new(pairs.len());
            for be in 0..b.num_morphisms() {
                let (y, y2) = (b.src(be), b.tgt(be));
                for &p in e01.hom(ia.ob(x), ib1.ob(y)) {
                    for &q in e12.hom(ib2.ob(y2), ic.ob(z)) {
                        let lhs = index[&(e01.compose(ib1.mor(be), p), q)];
                        let rhs = index[&(p, e12.compose(q, ib2.mor(be)))];
                        uf.union(lhs, rhs);
                    }
                }
            }
            (pairs, relabel_classes(&uf.into_labeling()).labels)
        })
        .collect();
    let p01 = corr_to_profunctor(c01);
    let p12 = corr_to_profunctor(c12);
    let class_of = |x: usize, z: usize, p: usize, q: usize| {
        let (pairs, labels) = &cells[x * nc + z];
        labels[pairs
            .iter()
            .position(|&pq| pq == (p, q))
            .expect("pair of the coend")]
    };
    let mut elements = Vec::with_capacity(na * nc);
    let mut reps = Vec::with_capacity(na * nc);
    for (pairs, labels) in &cells {
        let n = labels.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![(0, 0); n];
        let mut seen = vec![false; n];
        for (k, &l) in labels.iter().enumerate() {
            if !std::mem::replace(&mut seen[l], true) {
                rep[l] = pairs[k];
            }
        }
        elements.push(
            rep.iter()
                .map(|&(p, q)| format!("{}|{}", e01.morphism_id(p), e12.morphism_id(q)))
                .collect(),
        );
        reps.push(rep);
    }
    let p02 = Profunctor::from_fn(
        a.clone(),
        c.clone(),
        elements,
        |al, z, i| {
            let (p, q) = reps[a.tgt(al) * nc + z][i];
            class_of(a.src(al), z, e01.compose(p, ia.mor(al)), q)
        },
        |ga, x, i| {
            let (p, q) = reps[x * nc + c.src(ga)][i];
            class_of(x, c.tgt(ga), p, e12.compose(ic.mor(ga), q))
        },
    );
    let hom01 = |x: usize, y: usize, i: usize| e01.hom(ia.ob(x), ib1.ob(y))[i];
    let hom12 = |y: usize, z: usize, j: usize| e12.hom(ib2.ob(y), ic.ob(z))[j];
    triangle_category(&p01, &p12, &p02, |x, y, z, i, j| {
        class_of(x, z, hom01(x, y, i), hom12(y, z, j))
    })
}

/// Glue, then base change along `{0 < 2} ↪ [2]`.
pub fn compose_corr(c01: &Correspondence, c12: &Correspondence) -> Result<Correspondence> {
    Ok(glue_over_triangle(c01, c12)?.edge(0, 2))
}

/// The coend `P ⊗_B Q` with its class bookkeeping. Each class is named by
/// its least representative `(b, x, y)` in enumeration order.
#[derive(Debug, Clone)]
pub struct Coend {
    pub profunctor: Profunctor,
    /// Least representative `(b, x, y)` of each class, per cell `(a, c)`.
    pub reps: Vec<Vec<(usize, usize, usize)>>,
    class: Vec<HashMap<(usize, usize, usize), usize>>,
}

impl Coend {
    /// The class of `x ⊗ y` with `x ∈ P(a, b)`, `y ∈ Q(b, c)`.
    pub fn class_of(&self, a: usize, c: usize, b: usize, x: usize, y: usize) -> usize {
        self.class[self.profunctor.cell(a, c)][&(b, x, y)]
    }
}

pub fn coend(p: &Profunctor, q: &Profunctor) -> Result<Coend> {
    if p.target() != q.source() {
        return Err(CatError::FiberMismatch("middle categories differ".into()));
    }
    let (a, b, c) = (p.source().clone(), p.target().clone(), q.target().clone());
    let (na, nb, nc) = (a.num_objects(), b.num_objects(), c.num_objects());
    let per_cell: Vec<(
        Vec<(usize, usize, usize)>,
        HashMap<(usize, usize, usize), usize>,
    )> = (0..na * nc)
        .into_par_iter()
        .map(|cell| {
            let (x0, z) = (cell / nc, cell % nc);
            let mut triples = Vec::new();
            let mut index = HashMap::new();
            for y in 0..nb {
                for i in 0..p.size(x0, y) {
                    for j in 0..q.size(y, z) {
                        index.insert((y, i, j), triples.len());
                        triples.push((y, i, j));
                    }
                }
            }
            // (β·x, y') ~ (x, y'·β) for β: b → b'
            let mut uf = UnionFind::<usize>::new(triples.len());
            for be in 0..b.num_morphisms() {
                let (y, y2) = (b.src(be), b.tgt(be));
                for i in 0..p.size(x0, y) {
                    for j in 0..q.size(y2, z) {
                        let lhs = index[&(y2, p.act_right(be, x0, i), j)];
                        let rhs = index[&(y, i, q.act_left(be, z, j))];
                        uf.union(lhs, rhs);
                    }
                }
            }
            let labels = relabel_classes(&uf.into_labeling()).labels;
            let mut reps = Vec::new();
            let mut class = HashMap::new();
            for (k, &t) in triples.iter().enumerate() {
                if labels[k] == reps.len() {
                    reps.push(t);
                }
                class.insert(t, labels[k]);
            }
            (reps, class)
        })
        .collect();
    let (reps, class): (Vec<_>, Vec<_>) = per_cell.into_iter().unzip();
    let elements = reps
        .iter()
        .enumerate()
        .map(|(cell, rs)| {
            let (x0, z) = (cell / nc, cell % nc);
            let plain: Vec<String> = rs
                .iter()
                .map(|&(y, i, j)| format!("{}|{}", p.elements(x0, y)[i], q.elements(y, z)[j]))
                .collect();
            let distinct: std::collections::HashSet<&String> = plain.iter().collect();
            if distinct.len() == plain.len() {
                plain
            } else {
                rs.iter()
                    .map(|&(y, i, j)| {
                        format!(
                            "{}|{}|{}",
                            p.elements(x0, y)[i],
                            b.object_id(y),
                            q.elements(y, z)[j]
                        )
                    })
                    .collect()
            }
        })
        .collect();
    let profunctor = Profunctor::from_fn(
        a.clone(),
        c.clone(),
        elements,
        |al, z, k| {
            let (y, i, j) = reps[a.tgt(al) * nc + z][k];
            class[a.src(al) * nc + z][&(y, p.act_left(al, y, i), j)]
        },
        |ga, x0, k| {
            let (y, i, j) = reps[x0 * nc + c.src(ga)][k];
            class[x0 * nc + c.tgt(ga)][&(y, i, q.act_right(ga, y, j))]
        },
    );
    Ok(Coend {
        profunctor,
        reps,
        class,
    })
}

/// `P ⊗_B Q`.
pub fn compose_prof(p: &Profunctor, q: &Profunctor) -> Result<Profunctor> {
    Ok(coend(p, q)?.profunctor)
}

/// `Hom_A ⊗ P ≅ P`, `[f, x] ↦ x · f`.
pub fn left_unitor(p: &Profunctor) -> Result<ProfunctorIso> {
    let co = coend(&hom_profunctor(p.source()), p)?;
    let a = p.source();
    let na = a.num_objects();
    let nb = p.target().num_objects();
    let components = (0..na * nb)
        .map(|cell| {
            co.reps[cell]
                .iter()
                .map(|&(y, f, x)| {
                    let m = a.hom(cell / nb, y)[f];
                    p.act_left(m, cell % nb, x)
                })
                .collect()
        })
        .collect();
    checked(ProfunctorIso { components }, &co.profunctor, p)
}

/// `P ⊗ Hom_B ≅ P`, `[x, g] ↦ g · x`.
pub fn right_unitor(p: &Profunctor) -> Result<ProfunctorIso> {
    let co = coend(p, &hom_profunctor(p.target()))?;
    let b = p.target();
    let nb = b.num_objects();
    let components = (0..p.source().num_objects() * nb)
        .map(|cell| {
            co.reps[cell]
                .iter()
                .map(|&(y, x, g)| {
                    let m = b.hom(y, cell % nb)[g];
                    p.act_right(m, cell / nb, x)
                })
                .collect()
        })
        .collect();
    checked(ProfunctorIso { components }, &co.profunctor, p)
}

/// `(P ⊗ Q) ⊗ R ≅ P ⊗ (Q ⊗ R)`, `[[x, y], z] ↦ [x, [y, z]]`.
pub fn associator(p: &Profunctor, q: &Profunctor, r: &Profunctor) -> Result<ProfunctorIso> {
    let pq = coend(p, q)?;
    let qr = coend(q, r)?;
    let lhs = coend(&pq.profunctor, r)?;
    let rhs = coend(p, &qr.profunctor)?;
    let nd = r.target().num_objects();
    let components = (0..p.source().num_objects() * nd)
        .map(|cell| {
            let (x0, w) = (cell / nd, cell % nd);
            lhs.reps[cell]
                .iter()
                .map(|&(c, u, z)| {
                    let (b, x, y) = pq.reps[pq.profunctor.cell(x0, c)][u];
                    let v = qr.class_of(b, w, c, y, z);
                    rhs.class_of(x0, w, b, x, v)
                })
                .collect()
        })
        .collect();
    checked(
        ProfunctorIso { components },
        &lhs.profunctor,
        &rhs.profunctor,
    )
}

fn checked(iso: ProfunctorIso, p: &Profunctor, q: &Profunctor) -> Result<ProfunctorIso> {
    if iso.verify(p, q) {
        Ok(iso)
    } else {
        Err(CatError::Internal(
            "canonical comparison map is not an isomorphism".into(),
        ))
    }
}

/// Strict pullback over `B`, then each fiber over `(a, c)` is collapsed to
/// its components under the morphisms lying over identities of `A` and `C`.
pub fn compose_bifib(
    x: &TwoSidedDiscreteFibration,
    y: &TwoSidedDiscreteFibration,
) -> Result<TwoSidedDiscreteFibration> {
    if **x.target() != **y.source() {
        return Err(CatError::FiberMismatch("middle categories differ".into()));
    }
    let (sa, sc) = (x.source().clone(), y.target().clone());
    let to_b1 = x.projection.then(&x.base.right);
    let to_b2 = y
        .projection
        .then(&y.base.left)
        .with_target(to_b1.target().clone());
    let pb = pullback(&to_b1, &to_b2);
    let e = &pb.category;
    let a_of = |m: usize| x.base.left.mor(x.projection.mor(pb.left.mor(m)));
    let c_of = |m: usize| y.base.right.mor(y.projection.mor(pb.right.mor(m)));
    let mut uf = UnionFind::<usize>::new(e.num_objects());
    for m in 0..e.num_morphisms() {
        if sa.is_identity(a_of(m)) && sc.is_identity(c_of(m)) {
            uf.union(e.src(m), e.tgt(m));
        }
    }
    let classes = relabel_classes(&uf.into_labeling());
    let mut rep = vec![usize::MAX; classes.count];
    for (o, &l) in classes.labels.iter().enumerate().rev() {
        rep[l] = o;
    }
    let a_ob = |o: usize| x.base.left.ob(x.projection.ob(pb.left.ob(o)));
    let c_ob = |o: usize| y.base.right.ob(y.projection.ob(pb.right.ob(o)));
    let mut mors: BTreeSet<(usize, usize, usize, usize)> = (0..e.num_morphisms())
        .map(|m| {
            (
                classes.labels[e.src(m)],
                classes.labels[e.tgt(m)],
                a_of(m),
                c_of(m),
            )
        })
        .collect();
    // close under composition; the result is the 1-truncated localization
    loop {
        let list: Vec<_> = mors.iter().copied().collect();
        let mut by_src: HashMap<usize, Vec<(usize, usize, usize, usize)>> = HashMap::new();
        for &t in &list {
            by_src.entry(t.0).or_default().push(t);
        }
        let mut added = false;
        for &(s, t, al, ga) in &list {
            for &(_, t2, al2, ga2) in by_src.get(&t).map(Vec::as_slice).unwrap_or(&[]) {
                added |= mors.insert((s, t2, sa.compose(al2, al), sc.compose(ga2, ga)));
            }
        }
        if !added {
            break;
        }
    }
    let list: Vec<_> = mors.into_iter().collect();
    let index: HashMap<_, usize> = list.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let objects: Vec<String> = rep.iter().map(|&o| e.object_id(o).to_string()).collect();
    let morphisms = list
        .iter()
        .map(|&(s, t, al, ga)| {
            (
                format!(
                    "{}=>{}:({},{})",
                    objects[s],
                    objects[t],
                    sa.morphism_id(al),
                    sc.morphism_id(ga)
                ),
                s,
                t,
            )
        })
        .collect();
    let identities = rep
        .iter()
        .enumerate()
        .map(|(k, &o)| index[&(k, k, sa.identity(a_ob(o)), sc.identity(c_ob(o)))])
        .collect();
    let total = Arc::new(FiniteCategory::from_fn(
        objects,
        morphisms,
        identities,
        |g, f| {
            let (s, _, al, ga) = list[f];
            let (_, t, al2, ga2) = list[g];
            index[&(s, t, sa.compose(al2, al), sc.compose(ga2, ga))]
        },
    ));
    let base = product(&sa, &sc);
    let projection = Functor::new_unchecked(
        total,
        base.category.clone(),
        rep.iter().map(|&o| base.object(a_ob(o), c_ob(o))).collect(),
        list.iter()
            .map(|&(_, _, al, ga)| base.morphism(al, ga))
            .collect(),
    );
    TwoSidedDiscreteFibration::new(base, projection)
        .map_err(|err| CatError::Internal(format!("composite is not two-sided discrete: {err}")))
}

/// The coend composite together with whether the other two routes agree
/// with it under the index-preserving identification.
#[derive(Debug, Clone)]
pub struct RouteCoherence {
    pub composite: Profunctor,
    pub corr_route: bool,
    pub bifib_route: bool,
}

impl RouteCoherence {
    pub fn holds(&self) -> bool {
        self.corr_route && self.bifib_route
    }
}

/// Composes `p` and `q` along all three routes.
pub fn route_coherence(p: &Profunctor, q: &Profunctor) -> Result<RouteCoherence> {
    let composite = compose_prof(p, q)?;
    let corr = corr_to_profunctor(&compose_corr(&collage(p), &collage(q))?);
    let bif = bifib_to_profunctor(&compose_bifib(
        &profunctor_to_bifib(p),
        &profunctor_to_bifib(q),
    )?)?;
    let corr_route = ProfunctorIso::identity_like(&composite, &corr).is_some();
    let bifib_route = ProfunctorIso::identity_like(&composite, &bif).is_some();
    Ok(RouteCoherence {
        composite,
        corr_route,
        bifib_route,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::bifib::{bifib_to_profunctor, profunctor_to_bifib};
    use crate::corr::correspondence::{collage, find_corr_isomorphism};
    use crate::corr::profunctor::find_profunctor_iso;

    fn points(names: &[&[&str]]) -> Profunctor {
        let pt = Arc::new(catalog::terminal());
        let elements = names
            .iter()
            .map(|c| c.iter().map(|s| s.to_string()).collect())
            .collect();
        Profunctor::from_fn(pt.clone(), pt, elements, |_, _, x| x, |_, _, x| x)
    }

    #[test]
    fn coend_over_a_point_is_a_product() {
        let p = points(&[&["p", "q"]]);
        let q = points(&[&["r"]]);
        let r = compose_prof(&p, &q).unwrap();
        assert_eq!(r.size(0, 0), 2);
        let col = compose_corr(&collage(&p), &collage(&q)).unwrap();
        assert_eq!(corr_to_profunctor(&col).size(0, 0), 2);
    }

    #[test]
    fn glue_of_identities_is_the_product_with_the_triangle() {
        let c = Arc::new(catalog::ret());
        let id = Correspondence::identity(&c);
        let t = glue_over_triangle(&id, &id).unwrap();
        assert!(t.total.is_valid(), "{}", t.total.validate());
        let two = Arc::new(catalog::interval(2));
        let pr = crate::constructions::product(&c, &two);
        assert!(crate::search::find_isomorphism(&t.total, &pr.category)
            .unwrap()
            .is_some());
    }

    #[test]
    fn glue_restricts_to_its_inputs() {
        let c = Arc::new(catalog::interval(2));
        let id = Correspondence::identity(&c);
        let h = collage(&hom_profunctor(&c));
        let t = glue_over_triangle(&id, &h).unwrap();
        assert!(find_corr_isomorphism(&t.edge(0, 1), &id).unwrap().is_some());
        assert!(find_corr_isomorphism(&t.edge(1, 2), &h).unwrap().is_some());
    }

    #[test]
    fn units_and_associativity() {
        let c = Arc::new(catalog::ret());
        let h = hom_profunctor(&c);
        assert!(left_unitor(&h).is_ok());
        assert!(right_unitor(&h).is_ok());
        assert!(associator(&h, &h, &h).is_ok());
    }

    #[test]
    fn three_routes_agree_on_hom() {
        let c = Arc::new(catalog::ret());
        let h = hom_profunctor(&c);
        let prof = compose_prof(&h, &h).unwrap();
        let corr = corr_to_profunctor(&compose_corr(&collage(&h), &collage(&h)).unwrap());
        let bif = bifib_to_profunctor(
            &compose_bifib(&profunctor_to_bifib(&h), &profunctor_to_bifib(&h)).unwrap(),
        )
        .unwrap();
        assert!(ProfunctorIso::identity_like(&prof, &corr).is_some());
        assert!(ProfunctorIso::identity_like(&prof, &bif).is_some());
        assert!(find_profunctor_iso(&prof, &h).is_some());
    }
}
