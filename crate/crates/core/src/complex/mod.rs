//! The triply graded chain complex of a knotoid diagram.
//!
//! Generators are a state together with a label `1` or `X` on every circle;
//! the segment always carries `X`. The tensor factors are ordered circles
//! first (in canonical circle order), segment last. Exterior-power factors
//! are replaced by the sign `(−1)^{#1-bits before the changed crossing}`.

mod maps;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::algebra::SparseMatrix;
use crate::diagram::KnotoidPD;
use crate::error::{Error, Result};
use crate::resolution::{canonical_trace, mu_from_shortcut, resolve, Resolution, ShortcutTrace, State};

/// Where the u-grading comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuSource {
    /// Local crossing formula; single-segment diagrams only.
    Combinatorial,
    /// An explicit shortcut trace.
    Trace(ShortcutTrace),
    /// The push-off shortcut computed from the PD (also valid for multi-knotoids).
    Canonical,
}

/// Basis element of the chain complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub state: State,
    /// Bit `j` set means circle `j` is labelled `X`, otherwise `1`.
    pub labels: u64,
    pub i: i64,
    pub q: i64,
    pub u: i64,
}

/// The part of the complex with fixed `(q, u)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ClassComplex {
    /// Generators per homological degree.
    pub groups: BTreeMap<i64, Vec<Generator>>,
    /// `d_i: C_i → C_{i+1}`; rows index `C_{i+1}`, columns `C_i`.
    pub diffs: BTreeMap<i64, SparseMatrix<i64>>,
}

impl ClassComplex {
    pub fn dim(&self, i: i64) -> usize {
        self.groups.get(&i).map_or(0, Vec::len)
    }

    pub fn generator_count(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }

    /// The differential out of degree `i`, as an empty matrix if absent.
    pub fn d(&self, i: i64) -> SparseMatrix<i64> {
        self.diffs.get(&i).cloned().unwrap_or_else(|| SparseMatrix::new(self.dim(i + 1), self.dim(i)))
    }
}

/// Chain complex split by `(q, u)`; the differential preserves both.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TriGradedComplex {
    pub classes: BTreeMap<(i64, i64), ClassComplex>,
    pub n_plus: usize,
    pub n_minus: usize,
}

/// First violation of `d ∘ d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquaredFailure {
    pub q: i64,
    pub u: i64,
    pub i: i64,
    pub source: Generator,
    pub target: Generator,
    pub coefficient: i64,
}

impl std::fmt::Display for DSquaredFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "d∘d ≠ 0 in class (q={}, u={}) from degree {}: states {:b} → {:b}, coefficient {}",
            self.q,
            self.u,
            self.i,
            self.source.state.bits(),
            self.target.state.bits(),
            self.coefficient
        )
    }
}

impl TriGradedComplex {
    pub fn generator_count(&self) -> usize {
        self.classes.values().map(ClassComplex::generator_count).sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.classes.values().flat_map(|c| c.groups.values().flatten())
    }

    /// Checks `d_{i+1} d_i = 0` in every class.
    pub fn verify_d_squared(&self) -> std::result::Result<(), DSquaredFailure> {
        for (&(q, u), cls) in &self.classes {
            for (&i, d) in &cls.diffs {
                let Some(next) = cls.diffs.get(&(i + 1)) else { continue };
                let prod = next.mul(d).expect("composable differentials");
                let first = prod.triplets().next().map(|(r, c, &v)| (r, c, v));
                if let Some((r, c, v)) = first {
                    return Err(DSquaredFailure {
                        q,
                        u,
                        i,
                        source: cls.groups[&i][c],
                        target: cls.groups[&(i + 2)][r],
                        coefficient: v,
                    });
                }
            }
        }
        Ok(())
    }

    /// Negates one entry of a differential. Exists so tests can check that
    /// `verify_d_squared` catches sign errors.
    pub fn negate_entry(&mut self, class: (i64, i64), i: i64, row: usize, col: usize) -> bool {
        let Some(d) = self.classes.get_mut(&class).and_then(|c| c.diffs.get_mut(&i)) else {
            return false;
        };
        let v = d.get(row, col);
        if v == 0 {
            return false;
        }
        d.add_to(row, col, -2 * v);
        true
    }

    /// Sparse triplet dump: a `class q u` header per class, then for each
    /// differential a `d i rows cols` line followed by `row col value` lines.
    pub fn dump_triplets(&self) -> String {
        let mut out = String::new();
        for (&(q, u), cls) in &self.classes {
            writeln!(out, "class {q} {u}").unwrap();
            for (&i, d) in &cls.diffs {
                writeln!(out, "d {i} {} {}", d.rows(), d.cols()).unwrap();
                for (r, c, v) in d.triplets() {
                    writeln!(out, "{r} {c} {v}").unwrap();
                }
            }
        }
        out
    }
}

pub(crate) struct StateData {
    pub res: Resolution,
    pub mu: i64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flavor {
    Reduced,
    Unreduced,
}

/// Builds the winding-homology complex of a knotoid diagram.
pub fn build_complex(pd: &KnotoidPD, mu_source: &MuSource) -> Result<TriGradedComplex> {
    if !pd.has_open_component() {
        return Err(Error::Validation("diagram has no open component".into()));
    }
    let trace = match mu_source {
        MuSource::Combinatorial => {
            if !pd.is_single_segment() {
                return Err(Error::MuUnavailable(
                    "multi-knotoid needs a shortcut trace for the u-grading".into(),
                ));
            }
            None
        }
        MuSource::Trace(t) => Some(t.clone()),
        MuSource::Canonical => Some(canonical_trace(pd)?),
    };
    let states = state_data(pd, |res| match &trace {
        None => Ok(crate::resolution::mu_from_visits(pd, res)),
        Some(t) => mu_from_shortcut(pd, t, res),
    })?;
    Ok(assemble(pd, &states, Flavor::Reduced))
}

/// Standard (unreduced) Khovanov complex of a diagram with only closed
/// components, stored with `u = 0`.
pub fn build_unreduced_complex(pd: &KnotoidPD) -> Result<TriGradedComplex> {
    if pd.has_open_component() {
        return Err(Error::Validation("unreduced complex needs a closed diagram".into()));
    }
    let states = state_data(pd, |_| Ok(0))?;
    Ok(assemble(pd, &states, Flavor::Unreduced))
}

fn state_data<F>(pd: &KnotoidPD, mu: F) -> Result<Vec<StateData>>
where
    F: Fn(&Resolution) -> Result<i64> + Sync,
{
    if pd.n() > 30 {
        return Err(Error::Operation(format!("{} crossings is too many to enumerate", pd.n())));
    }
    State::all(pd.n())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| {
            let res = resolve(pd, s);
            let mu = mu(&res)?;
            Ok(StateData { res, mu })
        })
        .collect()
}

fn grading(pd: &KnotoidPD, flavor: Flavor, s: State, labels: u64, circles: usize) -> (i64, i64) {
    let n_minus = pd.n_minus() as i64;
    let n_plus = pd.n_plus() as i64;
    let xs = labels.count_ones() as i64;
    let ones = circles as i64 - xs;
    let i = s.ones() as i64 - n_minus;
    let q = match flavor {
        // deg counts the segment's X: (#1 − #X − 1), then q = deg + i + n₊ − n₋ + 1.
        Flavor::Reduced => (ones - xs - 1) + i + n_plus - n_minus + 1,
        Flavor::Unreduced => (ones - xs) + i + n_plus - n_minus,
    };
    (i, q)
}

fn assemble(pd: &KnotoidPD, states: &[StateData], flavor: Flavor) -> TriGradedComplex {
    let mut cx = TriGradedComplex { classes: BTreeMap::new(), n_plus: pd.n_plus(), n_minus: pd.n_minus() };
    let mut index: HashMap<(u64, u64), ((i64, i64), i64, usize)> = HashMap::new();
    for sd in states {
        let k = sd.res.circles.len();
        for labels in 0..(1u64 << k) {
            let (i, q) = grading(pd, flavor, sd.res.state, labels, k);
            let g = Generator { state: sd.res.state, labels, i, q, u: sd.mu };
            let group = cx.classes.entry((q, sd.mu)).or_default().groups.entry(i).or_default();
            index.insert((sd.res.state.bits(), labels), ((q, sd.mu), i, group.len()));
            group.push(g);
        }
    }
    let entries: Vec<((i64, i64), i64, usize, usize, i64)> = states
        .par_iter()
        .flat_map_iter(|sd| {
            let mut out = Vec::new();
            let s = sd.res.state;
            for c in 0..pd.n() {
                if s.get(c) == 1 {
                    continue;
                }
                let t = s.with(c, 1);
                let target = &states[t.bits() as usize];
                let sign = if s.ones_before(c) % 2 == 0 { 1 } else { -1 };
                let k = sd.res.circles.len();
                for labels in 0..(1u64 << k) {
                    let &(class, i, col) = &index[&(s.bits(), labels)];
                    for (tl, coef) in maps::edge_map(&sd.res, &target.res, c, labels) {
                        let &(tclass, ti, row) = &index[&(t.bits(), tl)];
                        debug_assert_eq!(tclass, class, "edge map changes (q, u)");
                        debug_assert_eq!(ti, i + 1);
                        out.push((class, i, row, col, sign * coef));
                    }
                }
            }
            out
        })
        .collect();
    let mut buckets: BTreeMap<((i64, i64), i64), Vec<(usize, usize, i64)>> = BTreeMap::new();
    for (class, i, r, c, v) in entries {
        buckets.entry((class, i)).or_default().push((r, c, v));
    }
    for ((class, i), trip) in buckets {
        let cls = cx.classes.get_mut(&class).expect("class exists");
        let m = SparseMatrix::from_triplets(cls.dim(i + 1), cls.dim(i), trip).expect("indices in range");
        if !m.is_zero() {
            cls.diffs.insert(i, m);
        }
    }
    cx
}
