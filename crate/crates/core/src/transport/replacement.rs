use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::functors::SetValuedFunctor;
use super::grothendieck::{unstraighten, ElementsCategory};
use crate::category::FiniteCategory;
use crate::constructions::{arrow_category, fiber, over, pullback, subcategory, Subcategory};
use crate::error::{CatError, Result};
use crate::fib::{
    cocartesian_flags, is_cocartesian_fibration, is_conservative, is_discrete_opfibration,
    is_left_fibration, is_left_final, is_right_adjoint, is_right_fibration, is_right_initial,
    Adjunction, Verdict,
};
use crate::functor::Functor;
use crate::homology::pi0;
use crate::search::sections_over;

/// The free coCartesian fibration on `π`, with its unit.
#[derive(Debug, Clone)]
pub struct CocartReplacement {
    /// `ev_t: E ×_K Ar(K) → K`.
    pub projection: Functor,
    /// `e ↦ (e, id_{π e})`, fully faithful.
    pub unit: Functor,
    /// When `π` is already coCartesian: the unit is a right adjoint, and this
    /// is the adjunction `L ⊣ unit`.
    pub adjunction: Option<Adjunction>,
}

/// Objects `(e, u: π e → x)`, projected to `x`.
pub fn cocart_replacement(pi: &Functor) -> Result<CocartReplacement> {
    let k = pi.target();
    let ar = arrow_category(k);
    let pb = pullback(pi, &ar.ev_s);
    let squares: HashMap<_, _> = ar
        .squares
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();
    let projection = pb.right.then(&ar.ev_t);
    let e = pi.source();
    let unit = Functor::new_unchecked(
        e.clone(),
        pb.category.clone(),
        (0..e.num_objects())
            .map(|o| pb.object(o, k.identity(pi.ob(o))).expect("identity arrow"))
            .collect(),
        (0..e.num_morphisms())
            .map(|m| {
                let (a, b) = (k.identity(pi.ob(e.src(m))), k.identity(pi.ob(e.tgt(m))));
                let sq = squares[&(a, b, pi.mor(m), pi.mor(m))];
                pb.morphism(m, sq).expect("square over the identity arrows")
            })
            .collect(),
    );
    if let Some(w) = is_cocartesian_fibration(&projection).witness {
        return Err(CatError::Internal(format!(
            "replacement is not coCartesian: {w}"
        )));
    }
    if !unit.is_fully_faithful() {
        return Err(CatError::Internal(
            "replacement unit is not fully faithful".into(),
        ));
    }
    let adjunction = if is_cocartesian_fibration(pi).holds {
        match is_right_adjoint(&unit) {
            (_, Some(adj)) if adj.verify() => Some(adj),
            (v, _) => {
                return Err(CatError::Internal(format!(
                    "unit of a coCartesian fibration is not a right adjoint: {v:?}"
                )));
            }
        }
    } else {
        None
    };
    Ok(CocartReplacement {
        projection,
        unit,
        adjunction,
    })
}

/// An adjunction `L ⊣ R` between opposites, read back as `R^op ⊣ L^op`
/// with `R^op: d → c`.
fn opposite_adjunction(
    adj: Adjunction,
    c: &Arc<FiniteCategory>,
    d: &Arc<FiniteCategory>,
) -> Adjunction {
    let left = Functor::new_unchecked(
        d.clone(),
        c.clone(),
        adj.right.object_map().to_vec(),
        adj.right.morphism_map().to_vec(),
    );
    let right = Functor::new_unchecked(
        c.clone(),
        d.clone(),
        adj.left.object_map().to_vec(),
        adj.left.morphism_map().to_vec(),
    );
    Adjunction {
        left,
        right,
        unit: adj.counit,
        counit: adj.unit,
    }
}

/// The free Cartesian fibration: objects `(e, u: x → π e)`, projected to
/// `x`. The unit is a left adjoint when `π` is already Cartesian.
pub fn cart_replacement(pi: &Functor) -> Result<CocartReplacement> {
    let r = cocart_replacement(&pi.opposite())?;
    let projection = r.projection.opposite().with_target(pi.target().clone());
    let total = projection.source().clone();
    let unit = Functor::new_unchecked(
        pi.source().clone(),
        total.clone(),
        r.unit.object_map().to_vec(),
        r.unit.morphism_map().to_vec(),
    );
    let adjunction = r
        .adjunction
        .map(|a| opposite_adjunction(a, &total, pi.source()));
    Ok(CocartReplacement {
        projection,
        unit,
        adjunction,
    })
}

/// The left fibration generated by `π: J → K`, as a set-valued functor
/// with its unstraightening and the unit `J → ∫F` over `K`.
#[derive(Debug, Clone)]
pub struct FibrationReplacement {
    pub functor: SetValuedFunctor,
    pub total: ElementsCategory,
    pub unit: Functor,
}

/// `F(x) = π0(π ↓ x)`, transport by postcomposition.
pub fn lfib_replacement(pi: &Functor) -> FibrationReplacement {
    let (j, k) = (pi.source(), pi.target());
    let commas: Vec<_> = (0..k.num_objects()).map(|x| over(pi, x)).collect();
    let comps: Vec<_> = commas.iter().map(|c| pi0(&c.category)).collect();
    let position: Vec<HashMap<(usize, usize), usize>> = commas
        .iter()
        .map(|c| {
            c.objects
                .iter()
                .enumerate()
                .map(|(i, &(o, _, u))| ((o, u), i))
                .collect()
        })
        .collect();
    let values = commas
        .iter()
        .zip(&comps)
        .map(|(c, p)| {
            let mut names = vec![String::new(); p.count];
            for (i, &(o, _, u)) in c.objects.iter().enumerate().rev() {
                names[p.labels[i]] = format!("[{},{}]", j.object_id(o), k.morphism_id(u));
            }
            names
        })
        .collect();
    let functor = SetValuedFunctor::from_fn(k.clone(), values, |m, i| {
        let x = k.src(m);
        let rep = comps[x]
            .labels
            .iter()
            .position(|&l| l == i)
            .expect("nonempty class");
        let (o, _, u) = commas[x].objects[rep];
        comps[k.tgt(m)].labels[position[k.tgt(m)][&(o, k.compose(m, u))]]
    });
    debug_assert!(functor.is_valid());
    let total = unstraighten(&functor);
    let class_of = |o: usize| {
        let x = pi.ob(o);
        comps[x].labels[position[x][&(o, k.identity(x))]]
    };
    let unit = Functor::new_unchecked(
        j.clone(),
        total.projection.source().clone(),
        (0..j.num_objects())
            .map(|o| total.object(pi.ob(o), class_of(o)))
            .collect(),
        (0..j.num_morphisms())
            .map(|m| total.morphism(pi.mor(m), class_of(j.src(m))))
            .collect(),
    );
    FibrationReplacement {
        functor,
        total,
        unit,
    }
}

/// The right fibration generated by `π`. The set-valued functor lives on
/// `K^op`; `total` and `unit` are read back over `K`.
pub fn rfib_replacement(pi: &Functor) -> FibrationReplacement {
    let r = lfib_replacement(&pi.opposite());
    let projection = r
        .total
        .projection
        .opposite()
        .with_target(pi.target().clone());
    let unit = Functor::new_unchecked(
        pi.source().clone(),
        projection.source().clone(),
        r.unit.object_map().to_vec(),
        r.unit.morphism_map().to_vec(),
    );
    let total = ElementsCategory {
        projection,
        ..r.total
    };
    FibrationReplacement {
        functor: r.functor,
        total,
        unit,
    }
}

/// Restriction along the unit compared with all over-`K` functors into a
/// discrete opfibration `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalPropertyCheck {
    pub from_replacement: usize,
    pub from_source: usize,
    pub bijective: bool,
}

pub fn lfib_universal_property(
    pi: &Functor,
    r: &FibrationReplacement,
    z: &Functor,
) -> Result<UniversalPropertyCheck> {
    let ours = sections_over(&r.total.projection, z)?;
    let theirs = sections_over(pi, z)?;
    let key = |f: &Functor| (f.object_map().to_vec(), f.morphism_map().to_vec());
    let targets: BTreeSet<_> = theirs.iter().map(key).collect();
    let images: BTreeSet<_> = ours.iter().map(|s| key(&r.unit.then(s))).collect();
    let bijective = images.len() == ours.len() && images == targets;
    Ok(UniversalPropertyCheck {
        from_replacement: ours.len(),
        from_source: theirs.len(),
        bijective,
    })
}

/// The fiberwise `π0`-collapse of a left-final or right-initial functor.
#[derive(Debug, Clone)]
pub struct RelativeClassifyingSpace {
    /// Conservative, with discrete fibers `π0(E_x)`.
    pub projection: Functor,
    /// `E → B`, sending each object to its fiber component.
    pub collapse: Functor,
    pub left_fibration: Verdict,
    pub discrete_opfibration: Verdict,
}

/// Objects `(x, c ∈ π0 E_x)`; a morphism `c → c'` over `k` whenever some
/// morphism of `E` over `k` joins them, closed under composition.
pub fn relative_classifying_space(
    pi: &Functor,
    certify_dim: Option<usize>,
) -> Result<RelativeClassifyingSpace> {
    let lf = is_left_final(pi, certify_dim)?;
    if !lf.holds && !is_right_initial(pi, certify_dim)?.holds {
        return Err(CatError::refused(
            "left final or right initial",
            lf.witness.expect("negative verdict"),
        ));
    }
    let (e, k) = (pi.source(), pi.target());
    let mut class = vec![0; e.num_objects()];
    let mut names = Vec::new();
    let mut over_k = Vec::new();
    for x in 0..k.num_objects() {
        let fib = fiber(pi, x);
        let comps = pi0(&fib.category);
        let base = names.len();
        for c in 0..comps.count {
            let first = comps
                .labels
                .iter()
                .position(|&l| l == c)
                .expect("nonempty class");
            names.push(e.object_id(fib.inclusion.ob(first)).to_string());
            over_k.push(x);
        }
        for (o, &l) in comps.labels.iter().enumerate() {
            class[fib.inclusion.ob(o)] = base + l;
        }
    }
    let mut arrows: BTreeSet<(usize, usize, usize)> = (0..e.num_morphisms())
        .map(|m| (class[e.src(m)], class[e.tgt(m)], pi.mor(m)))
        .collect();
    loop {
        let extra: Vec<_> = arrows
            .iter()
            .flat_map(|&(a, b, f)| {
                arrows
                    .range((b, 0, 0)..(b + 1, 0, 0))
                    .map(move |&(_, c, g)| (a, c, k.compose(g, f)))
            })
            .filter(|t| !arrows.contains(t))
            .collect();
        if extra.is_empty() {
            break;
        }
        arrows.extend(extra);
    }
    let arrows: Vec<_> = arrows.into_iter().collect();
    let index: HashMap<_, _> = arrows.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let morphisms = arrows
        .iter()
        .map(|&(a, b, f)| {
            (
                format!("{}:{}->{}", k.morphism_id(f), names[a], names[b]),
                a,
                b,
            )
        })
        .collect();
    let identities = (0..names.len())
        .map(|a| index[&(a, a, k.identity(over_k[a]))])
        .collect();
    let cat = Arc::new(FiniteCategory::from_fn(
        names,
        morphisms,
        identities,
        |g, f| {
            let (a, _, p) = arrows[f];
            let (_, c, q) = arrows[g];
            index[&(a, c, k.compose(q, p))]
        },
    ));
    let projection = Functor::new_unchecked(
        cat.clone(),
        k.clone(),
        over_k,
        arrows.iter().map(|t| t.2).collect(),
    );
    let collapse = Functor::new_unchecked(
        e.clone(),
        cat,
        class.clone(),
        (0..e.num_morphisms())
            .map(|m| index[&(class[e.src(m)], class[e.tgt(m)], pi.mor(m))])
            .collect(),
    );
    if let Some(w) = is_conservative(&projection).witness {
        return Err(CatError::Internal(format!(
            "relative classifying space is not conservative: {w}"
        )));
    }
    if (0..k.num_objects()).any(|x| {
        fiber(&projection, x)
            .category
            .non_identity_morphisms()
            .next()
            .is_some()
    }) {
        return Err(CatError::Internal(
            "relative classifying space has a non-discrete fiber".into(),
        ));
    }
    Ok(RelativeClassifyingSpace {
        left_fibration: is_left_fibration(&projection),
        discrete_opfibration: is_discrete_opfibration(&projection),
        projection,
        collapse,
    })
}

/// A wide subcategory with the restricted projection.
#[derive(Debug, Clone)]
pub struct Subfibration {
    pub sub: Subcategory,
    pub projection: Functor,
}

fn wide_on(pi: &Functor, keep: &[bool]) -> Result<Subfibration> {
    let e = pi.source();
    let morphisms: Vec<usize> = (0..e.num_morphisms()).filter(|&m| keep[m]).collect();
    if let Some((g, f, _)) = e
        .table()
        .into_iter()
        .find(|&(g, f, gf)| keep[g] && keep[f] && !keep[gf])
    {
        return Err(CatError::Internal(format!(
            "`{}` after `{}` leaves the chosen morphisms",
            e.morphism_id(g),
            e.morphism_id(f)
        )));
    }
    let objects: Vec<usize> = (0..e.num_objects()).collect();
    let sub = subcategory(e, &objects, &morphisms);
    let projection = sub.inclusion.then(pi);
    Ok(Subfibration { sub, projection })
}

/// The wide subcategory on the coCartesian morphisms of a coCartesian
/// fibration; a left fibration.
pub fn maximal_left_subfibration(pi: &Functor) -> Result<Subfibration> {
    if let Some(w) = is_cocartesian_fibration(pi).witness {
        return Err(CatError::refused("a coCartesian fibration", w));
    }
    let s = wide_on(pi, &cocartesian_flags(pi))?;
    if let Some(w) = is_left_fibration(&s.projection).witness {
        return Err(CatError::Internal(format!(
            "maximal left subfibration is not a left fibration: {w}"
        )));
    }
    Ok(s)
}

/// The wide subcategory on the Cartesian morphisms; a right fibration.
pub fn maximal_right_subfibration(pi: &Functor) -> Result<Subfibration> {
    let op = pi.opposite();
    if let Some(w) = is_cocartesian_fibration(&op).witness {
        return Err(CatError::refused("a Cartesian fibration", w));
    }
    let s = wide_on(pi, &cocartesian_flags(&op))?;
    if let Some(w) = is_right_fibration(&s.projection).witness {
        return Err(CatError::Internal(format!(
            "maximal right subfibration is not a right fibration: {w}"
        )));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::constructions::{coproduct, product};
    use crate::search::find_isomorphism_over;
    use crate::transport::functors::find_natural_iso;
    use crate::transport::grothendieck::straighten_discrete_opfib;

    fn point_at(k: &Arc<FiniteCategory>, x: usize) -> Functor {
        Functor::point(Arc::new(catalog::terminal()), k.clone(), x)
    }

    #[test]
    fn cocart_replacement_of_points_in_the_interval() {
        let one = Arc::new(catalog::interval(1));
        let at_t = cocart_replacement(&point_at(&one, 1)).unwrap();
        assert_eq!(at_t.projection.source().num_objects(), 1);
        assert_eq!(at_t.projection.ob(0), 1);
        let at_s = cocart_replacement(&point_at(&one, 0)).unwrap();
        let total = at_s.projection.source();
        assert_eq!(total.num_objects(), 2);
        let hit: BTreeSet<usize> = (0..2).map(|o| at_s.projection.ob(o)).collect();
        assert_eq!(hit, BTreeSet::from([0, 1]));
    }

    #[test]
    fn cocartesian_input_gets_an_adjoint() {
        let c = Arc::new(catalog::ret());
        let one = Arc::new(catalog::interval(1));
        let p = product(&c, &one);
        let r = cocart_replacement(&p.right).unwrap();
        let adj = r.adjunction.expect("coCartesian input");
        assert!(adj.verify());
        // L is a functor over [1]
        let l = &adj.left;
        assert!(
            (0..l.source().num_morphisms()).all(|m| p.right.mor(l.mor(m)) == r.projection.mor(m))
        );
        let cart = cart_replacement(&p.right).unwrap();
        assert!(crate::fib::is_cartesian_fibration(&cart.projection).holds);
        assert!(cart.adjunction.unwrap().verify());
    }

    #[test]
    fn lfib_replacement_counts_components() {
        let one = Arc::new(catalog::interval(1));
        let r = lfib_replacement(&point_at(&one, 0));
        assert_eq!((r.functor.size(0), r.functor.size(1)), (1, 1));
        let two = Arc::new(coproduct(&[&one, &one]));
        let both = Functor::new_unchecked(
            two.clone(),
            one.clone(),
            vec![0, 1, 0, 1],
            vec![0, 1, 2, 0, 1, 2],
        );
        assert!(both.violations().is_empty());
        let r = lfib_replacement(&both);
        assert_eq!((r.functor.size(0), r.functor.size(1)), (2, 2));
        assert!(r.unit.violations().is_empty());
        assert!(r.unit.then(&r.total.projection).morphism_map() == both.morphism_map());
    }

    #[test]
    fn lfib_replacement_of_a_discrete_opfibration_is_its_straightening() {
        let k = Arc::new(catalog::ret());
        let f = SetValuedFunctor::terminal(k.clone());
        let el = crate::transport::grothendieck::unstraighten(&f);
        let r = lfib_replacement(&el.projection);
        let st = straighten_discrete_opfib(&el.projection).unwrap();
        assert!(find_natural_iso(&r.functor, &st).is_some());
        assert!(r.unit.is_isomorphism());
    }

    #[test]
    fn universal_property_on_ret() {
        let k = Arc::new(catalog::ret());
        let pi = point_at(&k, 0);
        let r = lfib_replacement(&pi);
        let z = crate::transport::grothendieck::unstraighten(&r.functor).projection;
        let check = lfib_universal_property(&pi, &r, &z).unwrap();
        assert!(check.bijective, "{check:?}");
    }

    #[test]
    fn rfib_replacement_is_a_right_fibration() {
        let one = Arc::new(catalog::interval(1));
        let r = rfib_replacement(&point_at(&one, 1));
        assert!(is_right_fibration(&r.total.projection).holds);
        assert_eq!((r.functor.size(0), r.functor.size(1)), (1, 1));
    }

    #[test]
    fn classifying_space_of_cocartesian_and_identity() {
        let c = Arc::new(catalog::walking_iso());
        let one = Arc::new(catalog::interval(1));
        let p = product(&c, &one);
        let b = relative_classifying_space(&p.right, None).unwrap();
        assert!(b.discrete_opfibration.holds);
        assert_eq!(b.projection.source().num_objects(), 2);
        let k = Arc::new(catalog::ret());
        let id = Functor::identity(k.clone());
        let b = relative_classifying_space(&id, None).unwrap();
        assert!(find_isomorphism_over(&b.projection, &id).unwrap().is_some());
    }

    #[test]
    fn classifying_space_refuses_without_hypotheses() {
        // {0, 2} ↪ [2] is neither left final nor right initial
        let two = Arc::new(catalog::interval(2));
        let ends = crate::constructions::full_subcategory_arc(&two, &[0, 2]).inclusion;
        assert!(matches!(
            relative_classifying_space(&ends, None),
            Err(CatError::Refused { .. })
        ));
    }

    #[test]
    fn maximal_subfibrations() {
        let c = Arc::new(catalog::interval(1));
        let k = Arc::new(catalog::ret());
        let p = product(&c, &k);
        let s = maximal_left_subfibration(&p.right).unwrap();
        // (γ, f) survives iff γ is an identity of [1]
        let kept = s.sub.category.num_morphisms();
        assert_eq!(kept, 2 * k.num_morphisms());
        let t = maximal_right_subfibration(&p.right).unwrap();
        assert_eq!(t.sub.category.num_morphisms(), kept);
        let two = Arc::new(catalog::interval(2));
        let ar = arrow_category(&two);
        let s = maximal_left_subfibration(&ar.ev_t).unwrap();
        let top = fiber(&s.projection, 2);
        assert_eq!(top.category.num_objects(), 3);
        assert_eq!(top.category.non_identity_morphisms().count(), 0);
    }
}
