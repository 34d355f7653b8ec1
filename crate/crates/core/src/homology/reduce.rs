//! Cancellation of unit differential entries.
//!
//! Writing `d(x) = c·y + …` with `c = ±1`, the pair `(x, y)` is removed and
//! every other `a` with `⟨d a, y⟩ = a_y` gets `d(a) − a_y c⁻¹ d(x)`. This is
//! a chain homotopy equivalence, so homology is unchanged.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::SparseMatrix;
use crate::complex::{ClassComplex, TriGradedComplex};

struct Work {
    lo: i64,
    alive: Vec<Vec<bool>>,
    /// cols[k][x]: targets of generator x in degree lo + k.
    cols: Vec<Vec<BTreeMap<usize, i64>>>,
    /// rows[k][y]: sources in degree lo + k of generator y in degree lo + k + 1.
    rows: Vec<Vec<BTreeSet<usize>>>,
}

impl Work {
    fn new(cls: &ClassComplex) -> Option<Self> {
        let lo = *cls.groups.keys().next()?;
        let hi = *cls.groups.keys().next_back()?;
        let len = (hi - lo + 1) as usize;
        let dims: Vec<usize> = (0..len).map(|k| cls.dim(lo + k as i64)).collect();
        let mut cols: Vec<Vec<BTreeMap<usize, i64>>> =
            dims.iter().map(|&d| vec![BTreeMap::new(); d]).collect();
        let mut rows: Vec<Vec<BTreeSet<usize>>> =
            (0..len).map(|k| vec![BTreeSet::new(); dims.get(k + 1).copied().unwrap_or(0)]).collect();
        for (&i, d) in &cls.diffs {
            let k = (i - lo) as usize;
            for (r, c, &v) in d.triplets() {
                cols[k][c].insert(r, v);
                rows[k][r].insert(c);
            }
        }
        Some(Work { lo, alive: dims.iter().map(|&d| vec![true; d]).collect(), cols, rows })
    }

    fn candidates(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (k, cols) in self.cols.iter().enumerate() {
            for (x, targets) in cols.iter().enumerate() {
                if let Some((&y, _)) = targets.iter().find(|(_, v)| v.abs() == 1) {
                    out.push((k, x, y));
                }
            }
        }
        out
    }

    fn cancel(&mut self, k: usize, x: usize, y: usize) -> bool {
        if !self.alive[k][x] || !self.alive[k + 1][y] {
            return false;
        }
        let c = match self.cols[k][x].get(&y) {
            Some(&v) if v.abs() == 1 => v,
            _ => return false,
        };
        let dx: Vec<(usize, i64)> = self.cols[k][x].iter().map(|(&t, &v)| (t, v)).collect();
        let others: Vec<usize> = self.rows[k][y].iter().copied().filter(|&a| a != x).collect();
        for a in others {
            let a_y = self.cols[k][a][&y];
            let factor = a_y.checked_mul(c).expect("coefficient overflow");
            for &(t, v) in &dx {
                let entry = self.cols[k][a].entry(t).or_insert(0);
                *entry = entry
                    .checked_sub(factor.checked_mul(v).expect("coefficient overflow"))
                    .expect("coefficient overflow");
                if *entry == 0 {
                    self.cols[k][a].remove(&t);
                    self.rows[k][t].remove(&a);
                } else {
                    self.rows[k][t].insert(a);
                }
            }
        }
        // Drop x as a source and as a target.
        for (t, _) in std::mem::take(&mut self.cols[k][x]) {
            self.rows[k][t].remove(&x);
        }
        if k > 0 {
            for b in std::mem::take(&mut self.rows[k - 1][x]) {
                self.cols[k - 1][b].remove(&x);
            }
        }
        // Drop y as a target and as a source.
        for a in std::mem::take(&mut self.rows[k][y]) {
            self.cols[k][a].remove(&y);
        }
        if k + 1 < self.cols.len() {
            for (w, _) in std::mem::take(&mut self.cols[k + 1][y]) {
                self.rows[k + 1][w].remove(&y);
            }
        }
        self.alive[k][x] = false;
        self.alive[k + 1][y] = false;
        true
    }

    fn into_class(self, cls: &ClassComplex) -> ClassComplex {
        let mut out = ClassComplex::default();
        let mut new_index: Vec<Vec<Option<usize>>> = Vec::new();
        for (k, alive) in self.alive.iter().enumerate() {
            let i = self.lo + k as i64;
            let mut idx = vec![None; alive.len()];
            let mut gens = Vec::new();
            for (g, &ok) in alive.iter().enumerate() {
                if ok {
                    idx[g] = Some(gens.len());
                    gens.push(cls.groups[&i][g]);
                }
            }
            if !gens.is_empty() {
                out.groups.insert(i, gens);
            }
            new_index.push(idx);
        }
        for (k, cols) in self.cols.iter().enumerate() {
            let i = self.lo + k as i64;
            let mut trip = Vec::new();
            for (x, targets) in cols.iter().enumerate() {
                let Some(nx) = new_index[k][x] else { continue };
                for (&y, &v) in targets {
                    trip.push((new_index[k + 1][y].expect("live target"), nx, v));
                }
            }
            if !trip.is_empty() {
                let m =
                    SparseMatrix::from_triplets(out.dim(i + 1), out.dim(i), trip).expect("indices in range");
                out.diffs.insert(i, m);
            }
        }
        out
    }
}

/// Cancels `±1` entries in rounds until none remain. Candidates found at
/// the start of a round are processed before entries created during it.
pub fn reduce_complex(cx: &TriGradedComplex) -> TriGradedComplex {
    use rayon::prelude::*;
    let classes = cx
        .classes
        .par_iter()
        .map(|(&key, cls)| {
            let Some(mut work) = Work::new(cls) else {
                return (key, cls.clone());
            };
            loop {
                let cands = work.candidates();
                let mut changed = false;
                for (k, x, y) in cands {
                    changed |= work.cancel(k, x, y);
                }
                if !changed {
                    break;
                }
            }
            (key, work.into_class(cls))
        })
        .filter(|(_, c)| c.generator_count() > 0)
        .collect();
    TriGradedComplex { classes, n_plus: cx.n_plus, n_minus: cx.n_minus }
}
