//! Geometric smoothing of states and the winding pair `(Δw_L, Δw_H)`.

use std::collections::BTreeSet;

use super::shortcut::shortcut_crossings;
use super::{point_segment_distance, winding_potential, ClosedCurve};
use crate::diagram::Embedding;
use crate::error::{Error, Result};
use crate::resolution::{smoothing_partner, State};
use crate::Point;

/// A state drawn in the plane: the resolved segment and circles as polylines.
#[derive(Clone, Debug)]
pub struct GeometricResolution {
    pub segment: Vec<Point>,
    pub circles: Vec<ClosedCurve<f64>>,
}

/// Radius of the disks inside which crossings are smoothed.
///
/// Small enough that the disks are disjoint, miss the shortcut and every
/// non-incident strand, and only contain the first straight piece of each
/// incident edge.
pub fn smoothing_radius(emb: &Embedding, shortcut: &[Point]) -> f64 {
    let mut r = f64::INFINITY;
    let pts = &emb.crossing_points;
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            r = r.min(p.dist(q) / 4.0);
        }
        for (a, b) in emb.segments() {
            let d = point_segment_distance(p, a, b).0;
            if d > emb.tolerance {
                r = r.min(d / 2.0);
            }
        }
        for w in shortcut.windows(2) {
            r = r.min(point_segment_distance(p, w[0], w[1]).0 / 2.0);
        }
    }
    for path in emb.edge_paths.values() {
        let m = path.len();
        if m >= 2 {
            r = r.min(path[0].dist(path[1]) / 2.0);
            r = r.min(path[m - 2].dist(path[m - 1]) / 2.0);
        }
    }
    r
}

fn trimmed(emb: &Embedding, edge: i64, radius: f64) -> Vec<Point> {
    let pd = &emb.pd;
    let table = pd.edge_table();
    let mut path = emb.edge_paths[&edge].clone();
    let m = path.len();
    if table.tail_at.contains_key(&edge) {
        path[0] = path[0] + (path[1] - path[0]).unit() * radius;
    }
    if table.head_at.contains_key(&edge) {
        path[m - 1] = path[m - 1] + (path[m - 2] - path[m - 1]).unit() * radius;
    }
    path
}

/// Smooths every crossing of the embedded diagram according to `s`.
pub fn geometric_resolution(emb: &Embedding, s: State, radius: f64) -> Result<GeometricResolution> {
    let pd = &emb.pd;
    if s.len() != pd.n() {
        return Err(Error::Validation("state length differs from crossing count".into()));
    }
    let table = pd.edge_table();
    let mut used = BTreeSet::new();
    let walk = |start: i64, used: &mut BTreeSet<i64>| -> Vec<Point> {
        let mut pts: Vec<Point> = Vec::new();
        let (mut e, mut fwd) = (start, true);
        loop {
            used.insert(e);
            let mut piece = trimmed(emb, e, radius);
            if !fwd {
                piece.reverse();
            }
            pts.extend(piece);
            let end = if fwd { table.head_at.get(&e) } else { table.tail_at.get(&e) };
            let Some(&(c, slot)) = end else { break };
            let p = smoothing_partner(slot, s.get(c));
            let next = pd.crossing(c).0[p];
            let next_fwd = table.tail_at.get(&next) == Some(&(c, p));
            if next == start && next_fwd {
                break;
            }
            e = next;
            fwd = next_fwd;
        }
        pts
    };
    let segment = match pd.leg_edge() {
        Some(leg) => walk(leg, &mut used),
        None => Vec::new(),
    };
    let mut circles = Vec::new();
    for e in pd.edge_labels() {
        if !used.contains(&e) {
            let mut pts = walk(e, &mut used);
            if pts.len() > 1 && pts[0].dist(*pts.last().unwrap()) <= emb.tolerance {
                pts.pop();
            }
            circles.push(ClosedCurve::new(pts));
        }
    }
    Ok(GeometricResolution { segment, circles })
}

/// Shortcut-dependent data shared by all states of one embedded diagram.
#[derive(Clone, Debug)]
pub struct WindingFrame<'a> {
    pub embedding: &'a Embedding,
    pub shortcut: Vec<Point>,
    pub radius: f64,
    /// Doubled `w_γ(L)` and `w_γ(H)` for `γ = K ∪ α^r`.
    pub base: (i64, i64),
}

impl<'a> WindingFrame<'a> {
    pub fn new(emb: &'a Embedding, shortcut: Vec<Point>) -> Result<Self> {
        shortcut_crossings(emb, &shortcut)?;
        let radius = smoothing_radius(emb, &shortcut);
        if !(radius > emb.tolerance) {
            return Err(Error::Degenerate("no room to smooth crossings".into()));
        }
        let k = emb.polylines[0].1.clone();
        let gamma = close_with_shortcut(&k, &shortcut);
        let (l, h) = (k[0], *k.last().unwrap());
        let base =
            (winding_potential(&gamma, l, emb.tolerance)?, winding_potential(&gamma, h, emb.tolerance)?);
        Ok(WindingFrame { embedding: emb, shortcut, radius, base })
    }

    pub fn resolution(&self, s: State) -> Result<GeometricResolution> {
        geometric_resolution(self.embedding, s, self.radius)
    }

    /// `(Δw_L, Δw_H)` for state `s`.
    pub fn pair(&self, s: State) -> Result<(i64, i64)> {
        let res = self.resolution(s)?;
        self.pair_of(&res)
    }

    pub fn pair_of(&self, res: &GeometricResolution) -> Result<(i64, i64)> {
        let gamma_s = close_with_shortcut(&res.segment, &self.shortcut);
        let l = res.segment[0];
        let h = *res.segment.last().unwrap();
        let tol = self.embedding.tolerance;
        let dl = winding_potential(&gamma_s, l, tol)? - self.base.0;
        let dh = winding_potential(&gamma_s, h, tol)? - self.base.1;
        if dl % 2 != 0 || dh % 2 != 0 {
            return Err(Error::Degenerate("winding differences are not integers".into()));
        }
        Ok((dl / 2, dh / 2))
    }
}

/// `k ∪ α^r`: the open polyline `k` from leg to head, closed up by the
/// shortcut traversed from head back to leg.
fn close_with_shortcut(k: &[Point], shortcut: &[Point]) -> ClosedCurve<f64> {
    let mut v = k.to_vec();
    let m = shortcut.len();
    for &p in shortcut[1..m - 1].iter().rev() {
        v.push(p);
    }
    ClosedCurve::new(v)
}

/// `(Δw_L, Δw_H)` of state `s` with respect to the given shortcut.
pub fn state_winding_pair(emb: &Embedding, shortcut: &[Point], s: State) -> Result<(i64, i64)> {
    WindingFrame::new(emb, shortcut.to_vec())?.pair(s)
}

/// Checks `w_γ(H) − w_γ(L) = α·K`, counting a crossing `+1` when the
/// shortcut passes from the right of the knotoid to its left.
pub fn winding_identity_holds(emb: &Embedding, shortcut: &[Point]) -> Result<bool> {
    let frame = WindingFrame::new(emb, shortcut.to_vec())?;
    let open: BTreeSet<i64> = emb.pd.open().iter().copied().collect();
    // Trace signs record K crossing α from right to left, which is α crossing
    // K from left to right.
    let alpha_dot_k: i64 = shortcut_crossings(emb, shortcut)?
        .iter()
        .filter(|(e, _)| open.contains(e))
        .map(|&(_, s)| -(s as i64))
        .sum();
    Ok(frame.base.1 - frame.base.0 == 2 * alpha_dot_k)
}
