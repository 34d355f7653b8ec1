use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Sparse matrix with at most one stored entry per cell and no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T> SparseMatrix<T>
where
    T: Clone + Zero + PartialEq,
{
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    /// Builds from `(row, col, value)` triplets. Repeated cells are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut m = SparseMatrix::new(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Validation(format!("entry ({r},{c}) outside a {rows}x{cols} matrix")));
            }
            m.add_to(r, c, v);
        }
        Ok(m)
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            return;
        }
        let key = (r, c);
        let sum = match self.entries.remove(&key) {
            Some(old) => old + v,
            None => v,
        };
        if !sum.is_zero() {
            self.entries.insert(key, sum);
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(T::zero)
    }

    /// Non-zero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn map<U, F>(&self, mut f: F) -> SparseMatrix<U>
    where
        U: Clone + Zero + PartialEq,
        F: FnMut(&T) -> U,
    {
        let mut out = SparseMatrix::new(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.add_to(r, c, f(v));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self>
    where
        T: std::ops::Mul<Output = T>,
    {
        if self.cols != rhs.rows {
            return Err(Error::Validation(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut rhs_rows: Vec<Vec<(usize, &T)>> = vec![Vec::new(); rhs.rows];
        for (&(r, c), v) in &rhs.entries {
            rhs_rows[r].push((c, v));
        }
        let mut out = SparseMatrix::new(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &rhs_rows[k] {
                out.add_to(i, j, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    /// Rank over the field `F`, converting entries with `conv`.
    pub fn rank_over<F, C>(&self, conv: C) -> usize
    where
        F: Field,
        C: Fn(&T) -> F,
    {
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            let x = conv(v);
            if !x.is_zero() {
                rows[r].push((c, x));
            }
        }
        rank_of_rows(rows, self.cols)
    }
}

impl<F: Field> SparseMatrix<F> {
    /// Exact rank by sparse Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rank_over(|x: &F| x.clone())
    }
}

impl SparseMatrix<i64> {
    /// Rank over the field `F` of an integer matrix.
    pub fn rank_in<F: Field>(&self) -> usize {
        self.rank_over(|&x| F::from_int(x))
    }
}

/// Column-by-column elimination over rows stored as sorted `(col, value)` lists.
///
/// For each column the pivot is chosen among the live rows touching it,
/// preferring unit entries, then the shortest row, then the lowest index,
/// which keeps fill-in small for boundary matrices with ±1 entries.
fn rank_of_rows<F: Field>(mut rows: Vec<Vec<(usize, F)>>, ncols: usize) -> usize {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut rank = 0;
    for c in 0..ncols {
        if col_rows[c].is_empty() {
            continue;
        }
        let pivot = *col_rows[c]
            .iter()
            .min_by_key(|&&r| {
                let v = &rows[r].iter().find(|(cc, _)| *cc == c).unwrap().1;
                (!v.is_unit_magnitude(), rows[r].len(), r)
            })
            .unwrap();
        let prow = std::mem::take(&mut rows[pivot]);
        for (cc, _) in &prow {
            col_rows[*cc].remove(&pivot);
        }
        let pval = prow.iter().find(|(cc, _)| *cc == c).unwrap().1.clone();
        let pinv = pval.inv();
        let targets: Vec<usize> = col_rows[c].iter().copied().collect();
        for r in targets {
            let old = std::mem::take(&mut rows[r]);
            let factor = old.iter().find(|(cc, _)| *cc == c).unwrap().1.clone() * pinv.clone();
            let merged = axpy(&old, &prow, &factor);
            let old_cols: BTreeSet<usize> = old.iter().map(|(cc, _)| *cc).collect();
            let new_cols: BTreeSet<usize> = merged.iter().map(|(cc, _)| *cc).collect();
            for cc in old_cols.difference(&new_cols) {
                col_rows[*cc].remove(&r);
            }
            for cc in new_cols.difference(&old_cols) {
                col_rows[*cc].insert(r);
            }
            rows[r] = merged;
        }
        debug_assert!(col_rows[c].is_empty());
        rank += 1;
    }
    rank
}

/// `a - factor * b` for sorted sparse rows.
fn axpy<F: Field>(a: &[(usize, F)], b: &[(usize, F)], factor: &F) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(factor.clone() * b[j].1.clone())));
            j += 1;
        } else {
            let v = a[i].1.clone() - factor.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
