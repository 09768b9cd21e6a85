use serde::Serialize;

use super::nerve::{nerve_capped, TruncatedNerve};
use super::smith::{sparse_invariant_factors, SparseMatrix, DEFAULT_MATRIX_CAP};
use crate::category::FiniteCategory;
use crate::error::Result;
use crate::functor::Functor;

/// Integral homology in one degree: free rank plus torsion coefficients
/// (each greater than 1, in divisibility order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Homology of a category's normalized nerve in degrees `0..=max_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub max_dim: usize,
    pub simplex_counts: Vec<usize>,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyReport {
    /// Reduced homology vanishes in every computed degree (so in
    /// particular the category is nonempty and connected).
    pub fn reduced_trivial(&self) -> bool {
        self.groups.iter().all(|g| {
            if g.degree == 0 {
                g.rank == 1 && g.torsion.is_empty()
            } else {
                g.is_zero()
            }
        })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }
}

/// A finite chain complex `C_0 <- C_1 <- ...` given by boundary matrices;
/// `boundaries[k]` is `∂_k: C_k → C_{k-1}` (with `boundaries[0]` the zero map
/// to nothing).
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Homology in degrees `0..=top`; requires the complex to extend to
    /// degree `top + 1`.
    pub fn homology(&self, top: usize) -> Result<Vec<HomologyGroup>> {
        assert!(self.dims.len() >= top + 2, "complex too short");
        let factors: Vec<Vec<u64>> = (0..=top + 1)
            .map(|k| sparse_invariant_factors(&self.boundaries[k], DEFAULT_MATRIX_CAP))
            .collect::<Result<_>>()?;
        Ok((0..=top)
            .map(|k| {
                let rank = self.dims[k] - factors[k].len() - factors[k + 1].len();
                let torsion = factors[k + 1].iter().copied().filter(|&x| x > 1).collect();
                HomologyGroup {
                    degree: k,
                    rank,
                    torsion,
                }
            })
            .collect())
    }

    /// `∂∘∂ = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        (2..self.dims.len()).all(|k| self.boundaries[k - 1].product_is_zero(&self.boundaries[k]))
    }
}

/// The normalized chain complex of a truncated nerve.
pub fn chain_complex(n: &TruncatedNerve) -> Result<ChainComplex> {
    let top = n.simplices.len();
    let dims: Vec<usize> = n.simplices.iter().map(Vec::len).collect();
    let mut boundaries = vec![SparseMatrix::zeros(0, dims[0])];
    for k in 1..top {
        let mut m = SparseMatrix::zeros(dims[k - 1], dims[k]);
        for (s, faces) in n.faces[k].iter().enumerate() {
            for (i, f) in faces.iter().enumerate() {
                if let Some(r) = f {
                    m.add(*r, s, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    Ok(ChainComplex { dims, boundaries })
}

/// Integral homology of the nerve of `c` in degrees `0..=d`.
pub fn homology(c: &FiniteCategory, d: usize) -> Result<HomologyReport> {
    let n = nerve_capped(c, d, DEFAULT_MATRIX_CAP)?;
    let cx = chain_complex(&n)?;
    let groups = cx.homology(d)?;
    Ok(HomologyReport {
        max_dim: d,
        simplex_counts: cx.dims.clone(),
        groups,
    })
}

/// The chain map `N(F)_k` in degree `k` as a matrix `rows = |B_k|`,
/// `cols = |A_k|`. A chain whose image contains an identity is degenerate
/// and goes to zero.
fn chain_map_matrix(f: &Functor, a: &TruncatedNerve, b: &TruncatedNerve, k: usize) -> SparseMatrix {
    use std::collections::HashMap;
    let index: HashMap<&[usize], usize> = b.simplices[k]
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut m = SparseMatrix::zeros(b.simplices[k].len(), a.simplices[k].len());
    for (j, s) in a.simplices[k].iter().enumerate() {
        let img: Vec<usize> = s.iter().map(|&x| f.mor(x)).collect();
        if let Some(&i) = index.get(img.as_slice()) {
            m.add(i, j, 1);
        }
    }
    m
}

/// Whether `F` induces an isomorphism `H_k(C) → H_k(D)` for all `k <= d`.
///
/// Uses the mapping cone: vanishing of `H_k(cone)` for `k <= d` makes the map
/// surjective in degree `d` and bijective below; an abstract isomorphism of
/// `H_d` then upgrades the surjection to a bijection, since finitely
/// generated abelian groups are Hopfian.
pub fn induces_homology_iso(f: &Functor, d: usize) -> Result<bool> {
    let a = nerve_capped(f.source(), d, DEFAULT_MATRIX_CAP)?;
    let b = nerve_capped(f.target(), d, DEFAULT_MATRIX_CAP)?;
    let ca = chain_complex(&a)?;
    let cb = chain_complex(&b)?;
    // cone_n = A_{n-1} ⊕ B_n for n in 0..=d+1
    let adim = |n: usize| if n == 0 { 0 } else { ca.dims[n - 1] };
    let dims: Vec<usize> = (0..=d + 1).map(|n| adim(n) + cb.dims[n]).collect();
    let mut boundaries = vec![SparseMatrix::zeros(0, dims[0])];
    for n in 1..=d + 1 {
        let mut m = SparseMatrix::zeros(dims[n - 1], dims[n]);
        let (ar, ac) = (adim(n - 1), adim(n));
        // -∂^A_{n-1}: A_{n-1} → A_{n-2}
        if n >= 2 {
            let da = &ca.boundaries[n - 1];
            for r in 0..da.rows {
                for (c, v) in da.row(r) {
                    m.add(r, c, -v);
                }
            }
        }
        // f_{n-1}: A_{n-1} → B_{n-1}
        if n >= 1 && ac > 0 {
            let fm = chain_map_matrix(f, &a, &b, n - 1);
            for r in 0..fm.rows {
                for (c, v) in fm.row(r) {
                    m.add(ar + r, c, v);
                }
            }
        }
        // ∂^B_n: B_n → B_{n-1}
        let db = &cb.boundaries[n];
        for r in 0..db.rows {
            for (c, v) in db.row(r) {
                m.add(ar + r, ac + c, v);
            }
        }
        boundaries.push(m);
    }
    // homology of the cone in degrees 0..=d needs boundaries up to d+1
    let cone = ChainComplex { dims, boundaries };
    let hc = cone.homology(d)?;
    if !hc.iter().all(HomologyGroup::is_zero) {
        return Ok(false);
    }
    let ha = ca.homology(d)?;
    let hb = cb.homology(d)?;
    Ok(ha[d] == hb[d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn intervals_are_acyclic() {
        for n in 0..=3 {
            assert!(homology(&catalog::interval(n), 3)
                .unwrap()
                .reduced_trivial());
        }
    }

    #[test]
    fn cyclic_group_of_order_two() {
        let h = homology(&catalog::cyclic_group(2), 3).unwrap();
        assert_eq!(h.groups[1].torsion, vec![2]);
        assert!(h.groups[2].is_zero());
        assert_eq!(h.groups[3].torsion, vec![2]);
    }

    #[test]
    fn parallel_pair_has_a_loop() {
        let h = homology(&catalog::parallel_pair(), 2).unwrap();
        assert_eq!(h.betti(), vec![1, 1, 0]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let c = catalog::ret();
        let n = nerve_capped(&c, 3, 1000).unwrap();
        assert!(chain_complex(&n).unwrap().is_complex());
    }
}
