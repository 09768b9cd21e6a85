//! Named small categories used throughout tests, fixtures and the CLI corpus.

use crate::category::{CategoryBuilder, FiniteCategory};
use crate::constructions::full_subcategory;

/// The poset on `names` with `i ≤ j` iff `leq(i, j)`; `leq` must be a
/// partial order (reflexive, transitive, antisymmetric).
///
/// Morphisms are named `id_<x>` and `<x>-><y>`.
pub fn poset(names: &[String], leq: impl Fn(usize, usize) -> bool) -> FiniteCategory {
    let n = names.len();
    let mut morphisms = Vec::new();
    let mut identities = vec![0; n];
    let mut index = std::collections::HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                let id = if i == j {
                    format!("id_{}", names[i])
                } else {
                    format!("{}->{}", names[i], names[j])
                };
                if i == j {
                    identities[i] = morphisms.len();
                }
                index.insert((i, j), morphisms.len());
                morphisms.push((id, i, j));
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|(_, s, t)| (*s, *t)).collect();
    FiniteCategory::from_fn(names.to_vec(), morphisms, identities, |g, f| {
        index[&(ends[f].0, ends[g].1)]
    })
}

/// The interval `[n] = {0 < 1 < ... < n}`.
pub fn interval(n: usize) -> FiniteCategory {
    let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    poset(&names, |i, j| i <= j)
}

/// The sub-poset `{i_0 < ... < i_k}` of an interval, with the interval's ids.
pub fn chain(points: &[usize]) -> FiniteCategory {
    let names: Vec<String> = points.iter().map(|i| i.to_string()).collect();
    poset(&names, |i, j| points[i] <= points[j])
}

/// One object `*`, one morphism `id_*`.
pub fn terminal() -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    b.object_with_identity("*").unwrap();
    b.fill_units();
    b.build().unwrap()
}

/// The empty category.
pub fn empty() -> FiniteCategory {
    CategoryBuilder::new().build().unwrap()
}

/// Discrete category on the given object names.
pub fn discrete(names: &[&str]) -> FiniteCategory {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    poset(&names, |i, j| i == j)
}

/// A one-object category (object `*`) from a monoid table. Element 0 is the
/// unit; `mul(g, f)` is the product `g ∘ f`.
pub fn monoid(elements: &[&str], mul: impl Fn(usize, usize) -> usize) -> FiniteCategory {
    let morphisms = elements.iter().map(|e| (e.to_string(), 0, 0)).collect();
    FiniteCategory::from_fn(vec!["*".into()], morphisms, vec![0], mul)
}

/// The cyclic group `Z/n` as a one-object category; element `k` is `g^k`.
pub fn cyclic_group(n: usize) -> FiniteCategory {
    let names: Vec<String> = (0..n)
        .map(|k| {
            if k == 0 {
                "id_*".to_string()
            } else {
                format!("g{k}")
            }
        })
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    monoid(&refs, |a, b| (a + b) % n)
}

/// The free idempotent on one object: `{id, e}` with `e ∘ e = e`.
pub fn idempotent_monoid() -> FiniteCategory {
    monoid(&["id_*", "e"], |a, b| a.max(b))
}

/// The category corepresenting a retraction: objects `x`, `y`;
/// `s: x → y`, `r: y → x` with `r ∘ s = id_x`, and the idempotent
/// `e = s ∘ r` on `y`. Five morphisms.
pub fn ret() -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    b.object_with_identity("x").unwrap();
    b.object_with_identity("y").unwrap();
    b.morphism("s", "x", "y").unwrap();
    b.morphism("r", "y", "x").unwrap();
    b.morphism("e", "y", "y").unwrap();
    b.fill_units();
    for (g, f, c) in [
        ("r", "s", "id_x"),
        ("s", "r", "e"),
        ("e", "s", "s"),
        ("r", "e", "r"),
        ("e", "e", "e"),
    ] {
        b.compose(g, f, c).unwrap();
    }
    b.build().unwrap()
}

/// The full subcategory of [`ret`] on `y`: the walking idempotent, with the
/// same ids as in `Ret` so that the inclusion is literal.
pub fn idem() -> FiniteCategory {
    let ret = ret();
    let y = ret.object_index("y").unwrap();
    full_subcategory(&ret, &[y]).category.as_ref().clone()
}

/// Two objects `a`, `b` and mutually inverse `i: a → b`, `j: b → a`.
pub fn walking_iso() -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    b.object_with_identity("a").unwrap();
    b.object_with_identity("b").unwrap();
    b.morphism("i", "a", "b").unwrap();
    b.morphism("j", "b", "a").unwrap();
    b.fill_units();
    b.compose("j", "i", "id_a").unwrap();
    b.compose("i", "j", "id_b").unwrap();
    b.build().unwrap()
}

/// Two parallel morphisms `u, v: 0 → 1`.
pub fn parallel_pair() -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    b.object_with_identity("0").unwrap();
    b.object_with_identity("1").unwrap();
    b.morphism("u", "0", "1").unwrap();
    b.morphism("v", "0", "1").unwrap();
    b.fill_units();
    b.build().unwrap()
}

/// A span `1 ← 0 → 2`.
pub fn span() -> FiniteCategory {
    let names: Vec<String> = ["0", "1", "2"].iter().map(|s| s.to_string()).collect();
    poset(&names, |i, j| i == j || i == 0)
}

/// A cospan `0 → 2 ← 1`.
pub fn cospan() -> FiniteCategory {
    let names: Vec<String> = ["0", "1", "2"].iter().map(|s| s.to_string()).collect();
    poset(&names, |i, j| i == j || j == 2)
}

/// Small categories on at most three objects used as a test corpus: every
/// poset on ≤ 3 points up to isomorphism, plus the non-posetal examples
/// above.
pub fn small_corpus() -> Vec<(String, FiniteCategory)> {
    let mut out = vec![
        ("empty".to_string(), empty()),
        ("point".to_string(), terminal()),
        ("discrete2".to_string(), discrete(&["a", "b"])),
        ("[1]".to_string(), interval(1)),
        ("discrete3".to_string(), discrete(&["a", "b", "c"])),
        ("[1]+pt".to_string(), {
            let names: Vec<String> = ["0", "1", "2"].iter().map(|s| s.to_string()).collect();
            poset(&names, |i, j| i == j || (i == 0 && j == 1))
        }),
        ("span".to_string(), span()),
        ("cospan".to_string(), cospan()),
        ("[2]".to_string(), interval(2)),
        ("Z/2".to_string(), cyclic_group(2)),
        ("Idem".to_string(), idem()),
        ("iso".to_string(), walking_iso()),
        ("parallel".to_string(), parallel_pair()),
        ("Ret".to_string(), ret()),
    ];
    out.retain(|(_, c)| c.num_objects() <= 3);
    out
}
