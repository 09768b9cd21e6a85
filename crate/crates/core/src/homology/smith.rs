//! Smith normal form over the integers, with overflow detection.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{CatError, Result};

/// Default cap on `rows * cols` for a dense boundary matrix.
pub const DEFAULT_MATRIX_CAP: usize = 4_000_000;

/// A dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) of `m`; `r` is
/// the rank.
pub fn invariant_factors(m: &IntMatrix) -> Result<Vec<u64>> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // smallest nonzero entry in the trailing block as pivot
        let mut best: Option<(usize, usize, i64)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = a.get(r, c).abs();
                if v != 0 && best.is_none_or(|(_, _, b)| v < b) {
                    best = Some((r, c, v));
                    if v == 1 {
                        break;
                    }
                }
            }
            if matches!(best, Some((_, _, 1))) {
                break;
            }
        }
        let Some((pr, pc, _)) = best else { break };
        swap_rows(&mut a, t, pr);
        swap_cols(&mut a, t, pc);
        let p = a.get(t, t);
        if p.abs() == 1 {
            // a unit pivot clears its column by row operations alone; the
            // matching column operations only touch row t
            for r in t + 1..rows {
                let v = a.get(r, t);
                if v != 0 {
                    row_axpy(&mut a, r, t, -v * p, t)?;
                }
            }
            diag.push(1);
            t += 1;
            continue;
        }
        loop {
            let mut dirty = false;
            let p = a.get(t, t);
            for r in t + 1..rows {
                let v = a.get(r, t);
                if v != 0 {
                    let q = v.div_euclid(p);
                    row_axpy(&mut a, r, t, -q, t)?;
                    if a.get(r, t) != 0 {
                        dirty = true;
                    }
                }
            }
            for c in t + 1..cols {
                let v = a.get(t, c);
                if v != 0 {
                    let q = v.div_euclid(p);
                    col_axpy(&mut a, c, t, -q, t)?;
                    if a.get(t, c) != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t, a.get(t, t).abs());
                for r in t + 1..rows {
                    let v = a.get(r, t).abs();
                    if v != 0 && v < best.2 {
                        best = (r, t, v);
                    }
                }
                for c in t + 1..cols {
                    let v = a.get(t, c).abs();
                    if v != 0 && v < best.2 {
                        best = (t, c, v);
                    }
                }
                swap_rows(&mut a, t, best.0);
                swap_cols(&mut a, t, best.1);
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = a.get(t, t);
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| a.get(r, c) % p != 0));
            match bad {
                Some(r) => row_axpy(&mut a, t, r, 1, t)?,
                None => break,
            }
        }
        diag.push(a.get(t, t).unsigned_abs());
        t += 1;
    }
    Ok(diag)
}

/// A sparse integer matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r].get(&c).copied().unwrap_or(0)
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        assert!(c < self.cols, "column out of range");
        let e = self.data[r].entry(c).or_insert(0);
        *e += v;
        if *e == 0 {
            self.data[r].remove(&c);
        }
    }

    /// Nonzero entries of row `r` as `(column, value)`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.data[r].iter().map(|(&c, &v)| (c, v))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    /// `self * other` is the zero matrix.
    pub fn product_is_zero(&self, other: &SparseMatrix) -> bool {
        assert_eq!(self.cols, other.rows);
        (0..self.rows).all(|r| {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (m, a) in self.row(r) {
                for (c, b) in other.row(m) {
                    *acc.entry(c).or_insert(0) += a * b;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

/// Invariant factors of a sparse matrix. Pivots on entries `±1` first
/// (preferring short rows), then hands the remaining block to the dense
/// algorithm, subject to `dense_cap` on its size.
pub fn sparse_invariant_factors(m: &SparseMatrix, dense_cap: usize) -> Result<Vec<u64>> {
    let mut rows = m.data.clone();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            cols[c].insert(r);
        }
    }
    let mut units = 0;
    loop {
        let mut progress = false;
        for c in 0..m.cols {
            let pivot = cols[c]
                .iter()
                .copied()
                .filter(|&r| rows[r][&c].abs() == 1)
                .min_by_key(|&r| rows[r].len());
            let Some(p) = pivot else { continue };
            let u = rows[p][&c];
            let prow: Vec<(usize, i64)> = rows[p].iter().map(|(&c, &v)| (c, v)).collect();
            let others: Vec<usize> = cols[c].iter().copied().filter(|&r| r != p).collect();
            for r in others {
                let k = -rows[r][&c] * u;
                for &(cc, pv) in &prow {
                    let old = rows[r].get(&cc).copied().unwrap_or(0);
                    let v = k
                        .checked_mul(pv)
                        .and_then(|x| x.checked_add(old))
                        .ok_or(CatError::Overflow)?;
                    if v == 0 {
                        rows[r].remove(&cc);
                        cols[cc].remove(&r);
                    } else {
                        rows[r].insert(cc, v);
                        cols[cc].insert(r);
                    }
                }
            }
            for &(cc, _) in &prow {
                cols[cc].remove(&p);
            }
            rows[p].clear();
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| !cols[c].is_empty()).collect();
    if live_rows.len().saturating_mul(live_cols.len()) > dense_cap {
        return Err(CatError::MatrixCap {
            rows: live_rows.len(),
            cols: live_cols.len(),
        });
    }
    let col_pos: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (i, &r) in live_rows.iter().enumerate() {
        for (&c, &v) in &rows[r] {
            dense.set(i, col_pos[&c], v);
        }
    }
    let mut factors = vec![1; units];
    factors.extend(invariant_factors(&dense)?);
    Ok(factors)
}

pub fn rank(m: &IntMatrix) -> Result<usize> {
    Ok(invariant_factors(m)?.len())
}

fn swap_rows(a: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for c in 0..a.cols {
            a.data.swap(i * a.cols + c, j * a.cols + c);
        }
    }
}

fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for r in 0..a.rows {
            a.data.swap(r * a.cols + i, r * a.cols + j);
        }
    }
}

// row[dst] += k * row[src], on columns from `from` on
fn row_axpy(a: &mut IntMatrix, dst: usize, src: usize, k: i64, from: usize) -> Result<()> {
    for c in from..a.cols {
        let s = a.get(src, c);
        if s != 0 {
            let v = k
                .checked_mul(s)
                .and_then(|x| x.checked_add(a.get(dst, c)))
                .ok_or(CatError::Overflow)?;
            a.set(dst, c, v);
        }
    }
    Ok(())
}

// col[dst] += k * col[src], on rows from `from` on
fn col_axpy(a: &mut IntMatrix, dst: usize, src: usize, k: i64, from: usize) -> Result<()> {
    for r in from..a.rows {
        let s = a.get(r, src);
        if s != 0 {
            let v = k
                .checked_mul(s)
                .and_then(|x| x.checked_add(a.get(r, dst)))
                .ok_or(CatError::Overflow)?;
            a.set(r, dst, v);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[test]
    fn known_forms() {
        assert_eq!(
            invariant_factors(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).unwrap(),
            vec![2, 6, 12]
        );
        assert_eq!(
            invariant_factors(&mat(&[&[2, 0], &[0, 3]])).unwrap(),
            vec![1, 6]
        );
        assert_eq!(
            invariant_factors(&mat(&[&[0, 0], &[0, 0]])).unwrap(),
            Vec::<u64>::new()
        );
        assert_eq!(
            invariant_factors(&IntMatrix::zeros(0, 3)).unwrap(),
            Vec::<u64>::new()
        );
    }

    #[test]
    fn determinant_is_product_of_factors() {
        // det = -2 * ... compute by hand: [[1,2],[3,4]] det -2
        assert_eq!(
            invariant_factors(&mat(&[&[1, 2], &[3, 4]])).unwrap(),
            vec![1, 2]
        );
    }

    proptest::proptest! {
        #[test]
        fn unimodular_scrambling_keeps_factors(
            steps in proptest::collection::vec((1u64..4, 0u64..3), 0..4),
            rows in 4usize..7,
            cols in 4usize..7,
            ops in proptest::collection::vec((0usize..7, 0usize..7, -2i64..3, proptest::bool::ANY), 0..30),
        ) {
            // d_i = product of the first i multipliers, so d_1 | d_2 | ...
            let mut want = Vec::new();
            let mut d = 1u64;
            for &(m, zero) in &steps {
                d *= m;
                if zero > 0 {
                    want.push(d);
                }
            }
            want.truncate(rows.min(cols));
            let mut a = IntMatrix::zeros(rows, cols);
            for (i, &v) in want.iter().enumerate() {
                a.set(i, i, v as i64);
            }
            for &(i, j, k, on_rows) in &ops {
                if on_rows && i % rows != j % rows {
                    row_axpy(&mut a, i % rows, j % rows, k, 0).unwrap();
                } else if !on_rows && i % cols != j % cols {
                    col_axpy(&mut a, i % cols, j % cols, k, 0).unwrap();
                }
            }
            let mut sp = SparseMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    sp.add(r, c, a.get(r, c));
                }
            }
            proptest::prop_assert_eq!(sparse_invariant_factors(&sp, usize::MAX).unwrap(), want.clone());
            proptest::prop_assert_eq!(invariant_factors(&a).unwrap(), want);
        }
    }
}
