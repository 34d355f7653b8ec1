//! Brute-force reduced Khovanov homology of a closed knot diagram over ℚ.
//!
//! Deliberately shares nothing with the library's complex: circles come from
//! a fresh union-find, labels are stored per edge, and ranks use dense
//! rational elimination. The marked circle carries `X`; gradings are shifted
//! so that the unknot sits at `(0, 0)`.

use std::collections::{BTreeMap, HashMap};

use knotoid::diagram::KnotoidPD;
use num_rational::BigRational;
use num_traits::{One, Zero};

struct Cube<'a> {
    pd: &'a KnotoidPD,
    edges: Vec<i64>,
    index: HashMap<i64, usize>,
}

fn root(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        x = p[x];
    }
    x
}

impl Cube<'_> {
    /// Circle id of every edge, circles numbered by their smallest edge.
    fn circles(&self, s: u64) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.edges.len()).collect();
        for (c, rec) in self.pd.crossings().iter().enumerate() {
            let pairs = if s >> c & 1 == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
            for (x, y) in pairs {
                let a = root(&mut p, self.index[&rec.0[x]]);
                let b = root(&mut p, self.index[&rec.0[y]]);
                if a != b {
                    p[a.max(b)] = a.min(b);
                }
            }
        }
        let roots: Vec<usize> = (0..self.edges.len()).map(|e| root(&mut p, e)).collect();
        let mut ids = HashMap::new();
        roots
            .iter()
            .map(|r| {
                let next = ids.len();
                *ids.entry(*r).or_insert(next)
            })
            .collect()
    }
}

/// A generator: state bits and the label (true = X) of each circle.
type Gen = (u64, Vec<bool>);

/// Ranks of reduced Khovanov homology keyed by `(i, j)`.
pub fn reduced_khovanov(pd: &KnotoidPD, marked_edge: i64) -> BTreeMap<(i64, i64), usize> {
    assert!(!pd.has_open_component());
    let n = pd.n();
    let edges = pd.edge_labels();
    let index: HashMap<i64, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let cube = Cube { pd, edges, index };
    let mark = cube.index[&marked_edge];
    let (np, nm) = (pd.n_plus() as i64, pd.n_minus() as i64);

    // Generators grouped by (i, j).
    let mut groups: BTreeMap<(i64, i64), Vec<Gen>> = BTreeMap::new();
    let mut circles_of: HashMap<u64, Vec<usize>> = HashMap::new();
    for s in 0..1u64 << n {
        let circ = cube.circles(s);
        let count = circ.iter().max().map_or(0, |m| m + 1);
        let marked = circ[mark];
        for labels in 0..1u64 << count {
            let l: Vec<bool> = (0..count).map(|k| labels >> k & 1 == 1).collect();
            if !l[marked] {
                continue;
            }
            let ones = s.count_ones() as i64;
            let xs = l.iter().filter(|&&x| x).count() as i64;
            let i = ones - nm;
            let j = (count as i64 - 2 * xs) + i + np - nm + 1;
            groups.entry((i, j)).or_default().push((s, l));
        }
        circles_of.insert(s, circ);
    }

    // Image of one generator under the full differential.
    let image = |g: &Gen| -> Vec<(Gen, i64)> {
        let (s, labels) = g;
        let circ = &circles_of[s];
        let mut out = Vec::new();
        for (c, rec) in pd.crossings().iter().enumerate() {
            if s >> c & 1 == 1 {
                continue;
            }
            let t = s | 1 << c;
            let sign = if (s & ((1 << c) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let tc = &circles_of[&t];
            let tcount = tc.iter().max().map_or(0, |m| m + 1);
            // Edge-wise labels of the source; circles at c get rewritten below.
            let a = circ[cube.index[&rec.0[0]]];
            // At a 0-smoothing the arcs are {0, 1} and {2, 3}.
            let b = circ[cube.index[&rec.0[2]]];
            let mut results: Vec<(Vec<Option<bool>>, i64)> = Vec::new();
            let mut base = vec![None; tcount];
            for (e, &tcid) in tc.iter().enumerate() {
                let scid = circ[e];
                if scid != a && scid != b {
                    base[tcid] = Some(labels[scid]);
                }
            }
            let t0 = tc[cube.index[&rec.0[0]]];
            let t1 = tc[cube.index[&rec.0[1]]];
            if a != b {
                // Merge.
                let (la, lb) = (labels[a], labels[b]);
                if !(la && lb) {
                    let mut v = base.clone();
                    v[t0] = Some(la || lb);
                    results.push((v, 1));
                }
            } else if labels[a] {
                let mut v = base.clone();
                v[t0] = Some(true);
                v[t1] = Some(true);
                results.push((v, 1));
            } else {
                for (x, y) in [(true, false), (false, true)] {
                    let mut v = base.clone();
                    v[t0] = Some(x);
                    v[t1] = Some(y);
                    results.push((v, 1));
                }
            }
            for (v, coef) in results {
                let l: Vec<bool> = v.into_iter().map(|x| x.expect("every circle labelled")).collect();
                out.push(((t, l), sign * coef));
            }
        }
        out
    };

    let rank_of = |i: i64, j: i64| -> usize {
        let (Some(src), Some(dst)) = (groups.get(&(i, j)), groups.get(&(i + 1, j))) else {
            return 0;
        };
        let pos: HashMap<&Gen, usize> = dst.iter().enumerate().map(|(k, g)| (g, k)).collect();
        let mut m = vec![vec![BigRational::zero(); src.len()]; dst.len()];
        for (col, g) in src.iter().enumerate() {
            for (h, coef) in image(g) {
                let row = pos[&h];
                m[row][col] += BigRational::from_integer(coef.into());
            }
        }
        dense_rank(m)
    };

    let mut ranks = BTreeMap::new();
    for (&(i, j), gens) in &groups {
        let h = gens.len() - rank_of(i, j) - rank_of(i - 1, j);
        if h > 0 {
            ranks.insert((i, j), h);
        }
    }
    ranks
}

fn dense_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][col].clone();
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone() * inv.clone();
                for (x, p) in row.iter_mut().zip(&pivot).skip(col) {
                    *x -= p.clone() * f.clone();
                }
            }
        }
        rank += 1;
    }
    rank
}
