//! Independent oracles: straightforward re-implementations that share no
//! code with the library beyond the category table itself.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use fibcat_core::category::FiniteCategory;

/// Nondegenerate `k`-simplices: chains of `k` composable non-identity
/// morphisms, first morphism first. Dimension 0 uses objects.
pub fn simplices(c: &FiniteCategory, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return (0..c.num_objects()).map(|o| vec![o]).collect();
    }
    let non_id: Vec<usize> = (0..c.num_morphisms())
        .filter(|&m| c.identities()[c.src(m)] != m)
        .collect();
    let mut out: Vec<Vec<usize>> = non_id.iter().map(|&m| vec![m]).collect();
    for _ in 1..k {
        let mut next = Vec::new();
        for chain in &out {
            let end = c.tgt(*chain.last().unwrap());
            for &m in &non_id {
                if c.src(m) == end {
                    let mut longer = chain.clone();
                    longer.push(m);
                    next.push(longer);
                }
            }
        }
        out = next;
    }
    out
}

/// Dense boundary matrix `C_k → C_{k-1}` (rows index `C_{k-1}`).
pub fn boundary(c: &FiniteCategory, k: usize) -> Vec<Vec<i128>> {
    let lower = simplices(c, k - 1);
    let index: HashMap<Vec<usize>, usize> = lower
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let upper = simplices(c, k);
    let mut m = vec![vec![0i128; upper.len()]; lower.len()];
    let is_id = |f: usize| c.identities()[c.src(f)] == f;
    for (j, s) in upper.iter().enumerate() {
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let face: Option<Vec<usize>> = if k == 1 {
                Some(vec![if i == 0 { c.tgt(s[0]) } else { c.src(s[0]) }])
            } else if i == 0 {
                Some(s[1..].to_vec())
            } else if i == k {
                Some(s[..k - 1].to_vec())
            } else {
                let g = c.compose(s[i], s[i - 1]);
                if is_id(g) {
                    None
                } else {
                    let mut f = s[..i - 1].to_vec();
                    f.push(g);
                    f.extend_from_slice(&s[i + 1..]);
                    Some(f)
                }
            };
            if let Some(f) = face {
                m[index[&f]][j] += sign;
            }
        }
    }
    m
}

/// Textbook Smith normal form: diagonal entries `d_1 | d_2 | …`, all
/// positive.
pub fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            for j in t..cols {
                a[i][j] -= q * a[t][j];
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            for i in t..rows {
                a[i][j] -= q * a[i][t];
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and retry
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0)) {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// `(rank, torsion)` of `H_k` for `k = 0..=top`.
pub fn homology(c: &FiniteCategory, top: usize) -> Vec<(usize, Vec<i128>)> {
    let dims: Vec<usize> = (0..=top + 1).map(|k| simplices(c, k).len()).collect();
    let diags: Vec<Vec<i128>> = (0..=top + 1)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                smith_diagonal(boundary(c, k))
            }
        })
        .collect();
    (0..=top)
        .map(|k| {
            let out_rank = diags[k].len();
            let in_diag = &diags[k + 1];
            let rank = dims[k] - out_rank - in_diag.len();
            (rank, in_diag.iter().copied().filter(|&d| d > 1).collect())
        })
        .collect()
}
