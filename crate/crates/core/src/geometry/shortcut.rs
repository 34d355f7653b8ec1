//! Shortcut arcs from leg to head and their intersections with the diagram.

use crate::diagram::Embedding;
use crate::error::{Error, Result};
use crate::geometry::{point_segment_distance, segment_intersection, Point2};
use crate::Point;

fn scale(emb: &Embedding) -> f64 {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (_, v) in &emb.polylines {
        for p in v {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
    }
    lo.dist(hi).max(1.0)
}

fn margin(emb: &Embedding) -> f64 {
    (scale(emb) * 1e-7).max(emb.tolerance * 10.0)
}

/// Signed intersections of the shortcut with the diagram's edges, ordered
/// from leg to head. An entry is `+1` when the diagram crosses the shortcut
/// from its right-hand side to its left-hand side.
///
/// Errors if the shortcut is not in general position.
pub fn shortcut_crossings(emb: &Embedding, path: &[Point]) -> Result<Vec<(i64, i8)>> {
    let (Some(leg), Some(head)) = (emb.leg(), emb.head()) else {
        return Err(Error::Operation("shortcuts need an open component".into()));
    };
    if path.len() < 2 || path[0].dist(leg) > emb.tolerance || path.last().unwrap().dist(head) > emb.tolerance
    {
        return Err(Error::Degenerate("shortcut must run from leg to head".into()));
    }
    let delta = margin(emb);
    let interior_points = emb
        .crossing_points
        .iter()
        .copied()
        .chain(emb.polylines.iter().flat_map(|(_, v)| v.iter().copied()))
        .filter(|p| p.dist(leg) > delta && p.dist(head) > delta);
    for (k, w) in path.windows(2).enumerate() {
        if w[0].dist(w[1]) <= delta {
            return Err(Error::Degenerate(format!("shortcut segment {k} is too short")));
        }
    }
    for p in interior_points {
        for w in path.windows(2) {
            if point_segment_distance(p, w[0], w[1]).0 <= delta {
                return Err(Error::Degenerate("shortcut passes through a vertex or crossing".into()));
            }
        }
    }
    for &v in &path[1..path.len() - 1] {
        for (a, b) in emb.segments() {
            if point_segment_distance(v, a, b).0 <= delta {
                return Err(Error::Degenerate("shortcut vertex lies on the diagram".into()));
            }
        }
    }
    let mut hits: Vec<(usize, f64, i64, i8)> = Vec::new();
    for (k, w) in path.windows(2).enumerate() {
        let a_dir = w[1] - w[0];
        for (&label, edge) in &emb.edge_paths {
            for e in edge.windows(2) {
                let k_dir = e[1] - e[0];
                if a_dir.cross(k_dir).abs() <= 1e-12 * a_dir.norm() * k_dir.norm() {
                    let near = point_segment_distance(e[0], w[0], w[1]).0 <= delta
                        || point_segment_distance(e[1], w[0], w[1]).0 <= delta
                        || point_segment_distance(w[0], e[0], e[1]).0 <= delta
                        || point_segment_distance(w[1], e[0], e[1]).0 <= delta;
                    if near {
                        return Err(Error::Degenerate("shortcut runs along the diagram".into()));
                    }
                    continue;
                }
                if let Some((t, _)) = segment_intersection(w[0], w[1], e[0], e[1]) {
                    let x = w[0].lerp(w[1], t);
                    if x.dist(leg) <= delta || x.dist(head) <= delta {
                        continue;
                    }
                    let sign = if a_dir.cross(k_dir) > 0.0 { 1 } else { -1 };
                    hits.push((k, t, label, sign));
                }
            }
        }
    }
    hits.sort_by(|x, y| (x.0, x.1).partial_cmp(&(y.0, y.1)).unwrap());
    Ok(hits.into_iter().map(|(_, _, e, s)| (e, s)).collect())
}

pub fn is_generic_shortcut(emb: &Embedding, path: &[Point]) -> bool {
    shortcut_crossings(emb, path).is_ok()
}

/// The straight segment from leg to head, bent slightly at its midpoint
/// by a deterministic sequence of offsets until it is generic.
pub fn default_shortcut(emb: &Embedding) -> Result<Vec<Point>> {
    let (Some(leg), Some(head)) = (emb.leg(), emb.head()) else {
        return Err(Error::Operation("shortcuts need an open component".into()));
    };
    let straight = vec![leg, head];
    if is_generic_shortcut(emb, &straight) {
        return Ok(straight);
    }
    let d = head - leg;
    let mid = leg.lerp(head, 0.5);
    let perp = if d.norm() > 0.0 { d.perp().unit() } else { Point2::new(0.0, 1.0) };
    let len = d.norm().max(scale(emb) * 1e-3);
    for k in 1..200 {
        let mag = len * 1e-3 * ((k + 1) / 2) as f64;
        let off = if k % 2 == 1 { mag } else { -mag };
        let path = vec![leg, mid + perp * off, head];
        if is_generic_shortcut(emb, &path) {
            return Ok(path);
        }
    }
    Err(Error::Degenerate("no generic straight shortcut found".into()))
}

/// Several generic shortcuts that differ from each other, including wide
/// detours around the diagram.
pub fn alternate_shortcuts(emb: &Embedding, count: usize) -> Vec<Vec<Point>> {
    let (Some(leg), Some(head)) = (emb.leg(), emb.head()) else {
        return Vec::new();
    };
    let mut out: Vec<Vec<Point>> = Vec::new();
    if let Ok(p) = default_shortcut(emb) {
        out.push(p);
    }
    let mid = leg.lerp(head, 0.5);
    let d = head - leg;
    let perp = if d.norm() > 1e-12 { d.perp().unit() } else { Point2::new(0.0, 1.0) };
    let s = scale(emb);
    let factors = [0.37, -0.41, 0.73, -0.79, 1.31, -1.27, 2.03, -2.11, 0.19, -0.23];
    for f in factors {
        if out.len() >= count {
            break;
        }
        let p = mid + perp * (f * s) + d * (0.013 * f);
        let path = vec![leg, p, head];
        if is_generic_shortcut(emb, &path) {
            out.push(path);
        }
    }
    // Go around the whole diagram.
    for f in [1.7, -1.9] {
        if out.len() >= count {
            break;
        }
        let far = mid + perp * (f * s);
        let side = d.unit_or_x() * (1.3 * s);
        let path = vec![leg, far - side, far + side, head];
        if is_generic_shortcut(emb, &path) {
            out.push(path);
        }
    }
    out
}

trait UnitOrX {
    fn unit_or_x(self) -> Self;
}

impl UnitOrX for Point {
    fn unit_or_x(self) -> Self {
        if self.norm() > 1e-12 {
            self.unit()
        } else {
            Point2::new(1.0, 0.0)
        }
    }
}
