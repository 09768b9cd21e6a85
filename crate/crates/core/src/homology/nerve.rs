use std::collections::HashMap;

use serde::Serialize;

use crate::category::FiniteCategory;
use crate::error::{CatError, Result};

/// Normalized nerve truncated at `max_dim + 1`.
///
/// A simplex of dimension `k >= 1` is a chain `[f1, ..., fk]` of composable
/// non-identity morphisms, `f1` first. A 0-simplex is stored as `[id_x]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedNerve {
    pub max_dim: usize,
    pub simplices: Vec<Vec<Vec<usize>>>,
    /// `faces[k][s][i]` is the index of the i-th face of simplex `s` in
    /// dimension `k - 1`, or `None` when that face is degenerate. Empty for
    /// `k = 0`.
    pub faces: Vec<Vec<Vec<Option<usize>>>>,
}

/// The i-th face of a chain, without normalization. Dimension 1 faces are
/// returned as identity chains.
pub(crate) fn raw_face(c: &FiniteCategory, chain: &[usize], i: usize) -> Vec<usize> {
    let k = chain.len();
    if k == 1 {
        let f = chain[0];
        return vec![c.identity(if i == 0 { c.tgt(f) } else { c.src(f) })];
    }
    let mut out = Vec::with_capacity(k - 1);
    if i == 0 {
        out.extend_from_slice(&chain[1..]);
    } else if i == k {
        out.extend_from_slice(&chain[..k - 1]);
    } else {
        out.extend_from_slice(&chain[..i - 1]);
        out.push(c.compose(chain[i], chain[i - 1]));
        out.extend_from_slice(&chain[i + 1..]);
    }
    out
}

/// Identity-free chains of composable morphisms with `len` entries.
pub fn chains(c: &FiniteCategory, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return (0..c.num_objects()).map(|o| vec![c.identity(o)]).collect();
    }
    let mut level: Vec<Vec<usize>> = c.non_identity_morphisms().map(|m| vec![m]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for ch in &level {
            let last = *ch.last().unwrap();
            for &m in c.out_of(c.tgt(last)) {
                if !c.is_identity(m) {
                    let mut e = ch.clone();
                    e.push(m);
                    next.push(e);
                }
            }
        }
        level = next;
    }
    level
}

/// Enumerates the normalized nerve up to dimension `d + 1`. `cap` bounds the
/// number of simplices in any single dimension.
pub fn nerve_capped(c: &FiniteCategory, d: usize, cap: usize) -> Result<TruncatedNerve> {
    let mut simplices = Vec::with_capacity(d + 2);
    for k in 0..=d + 1 {
        let s = chains(c, k);
        if s.len() > cap {
            return Err(CatError::MatrixCap {
                rows: s.len(),
                cols: s.len(),
            });
        }
        simplices.push(s);
    }
    let mut faces = vec![Vec::new()];
    for k in 1..=d + 1 {
        let index: HashMap<&[usize], usize> = simplices[k - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let fk = simplices[k]
            .iter()
            .map(|s| {
                (0..=k)
                    .map(|i| {
                        let f = raw_face(c, s, i);
                        index.get(f.as_slice()).copied()
                    })
                    .collect()
            })
            .collect();
        faces.push(fk);
    }
    Ok(TruncatedNerve {
        max_dim: d,
        simplices,
        faces,
    })
}

pub fn nerve(c: &FiniteCategory, d: usize) -> Result<TruncatedNerve> {
    nerve_capped(c, d, super::smith::DEFAULT_MATRIX_CAP)
}

impl TruncatedNerve {
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every stored simplex of
    /// dimension at least 2, computed on raw chains.
    pub fn verify_faces(&self, c: &FiniteCategory) -> bool {
        for k in 2..self.simplices.len() {
            for s in &self.simplices[k] {
                for j in 1..=k {
                    for i in 0..j {
                        let lhs = raw_face(c, &raw_face(c, s, j), i);
                        let rhs = raw_face(c, &raw_face(c, s, i), j - 1);
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
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
    fn point_and_one_cell() {
        let n = nerve(&catalog::terminal(), 3).unwrap();
        assert_eq!(n.count(0), 1);
        assert!((1..=4).all(|k| n.count(k) == 0));
        let n = nerve(&catalog::interval(1), 2).unwrap();
        assert_eq!((n.count(0), n.count(1), n.count(2)), (2, 1, 0));
    }

    #[test]
    fn idempotent_monoid_chains() {
        let n = nerve(&catalog::idempotent_monoid(), 2).unwrap();
        assert_eq!((n.count(0), n.count(1), n.count(2)), (1, 1, 1));
        assert!(n.verify_faces(&catalog::idempotent_monoid()));
    }

    #[test]
    fn inner_face_of_inverse_pair_is_degenerate() {
        let c = catalog::walking_iso();
        let n = nerve(&c, 1).unwrap();
        let i = c.morphism_index("i").unwrap();
        let j = c.morphism_index("j").unwrap();
        let pos = n.simplices[2]
            .iter()
            .position(|s| s == &vec![i, j])
            .unwrap();
        assert_eq!(n.faces[2][pos][1], None);
        assert!(n.verify_faces(&c));
    }
}
