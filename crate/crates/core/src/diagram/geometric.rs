//! Polyline diagrams and their combinatorial PD.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::gauss::{GaussCode, GaussComponent, Passage};
use super::KnotoidPD;
use crate::error::{Error, Result};
use crate::geometry::{point_segment_distance, segment_intersection, Point2};
use crate::Point;

/// One polyline component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeomComponent {
    pub open: bool,
    pub vertices: Vec<[f64; 2]>,
}

/// Over/under data for one crossing: the segment `crossing_hint =
/// [component, segment]` passes under segment `over_segment` of `over_component`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverHint {
    pub crossing_hint: [usize; 2],
    pub over_component: usize,
    pub over_segment: usize,
}

/// Diagram given by coordinates. Segment `j` of a component joins vertex `j`
/// to vertex `j + 1` (wrapping for closed components). The order of `over`
/// fixes the crossing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometricDiagram {
    pub components: Vec<GeomComponent>,
    #[serde(default)]
    pub over: Vec<OverHint>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_tolerance() -> f64 {
    1e-9
}

/// A geometric diagram together with its induced PD and the planar data
/// needed to smooth states geometrically.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub pd: KnotoidPD,
    pub tolerance: f64,
    /// Crossing points, indexed like `pd.crossings()`.
    pub crossing_points: Vec<Point>,
    /// Polyline of each edge from its tail to its head (crossing points,
    /// leg or head included as end vertices).
    pub edge_paths: BTreeMap<i64, Vec<Point>>,
    /// Polylines of all components, open component first, as given.
    pub polylines: Vec<(bool, Vec<Point>)>,
}

impl Embedding {
    pub fn leg(&self) -> Option<Point> {
        self.polylines.first().filter(|(closed, _)| !closed).map(|(_, v)| v[0])
    }

    pub fn head(&self) -> Option<Point> {
        self.polylines.first().filter(|(closed, _)| !closed).map(|(_, v)| *v.last().unwrap())
    }

    /// Every segment of every component.
    pub fn segments(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for (closed, v) in &self.polylines {
            let m = v.len();
            let count = if *closed { m } else { m - 1 };
            for j in 0..count {
                out.push((v[j], v[(j + 1) % m]));
            }
        }
        out
    }
}

impl GeometricDiagram {
    pub fn parse(text: &[u8]) -> Result<Self> {
        Ok(serde_json::from_slice(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Detects crossings and builds the induced PD with its embedding.
    pub fn embed(&self) -> Result<Embedding> {
        embed(self)
    }
}

/// Induced combinatorial diagram of a polyline diagram.
pub fn pd_from_geometric(geom: &GeometricDiagram) -> Result<KnotoidPD> {
    Ok(embed(geom)?.pd)
}

struct Hit {
    comps: [(usize, usize, f64); 2],
    point: Point,
}

fn embed(geom: &GeometricDiagram) -> Result<Embedding> {
    let tol = geom.tolerance;
    if !(tol > 0.0) {
        return Err(Error::Validation("tolerance must be positive".into()));
    }
    let opens = geom.components.iter().filter(|c| c.open).count();
    if opens > 1 {
        return Err(Error::Validation("at most one open component is allowed".into()));
    }
    let mut order: Vec<usize> = (0..geom.components.len()).collect();
    order.sort_by_key(|&i| !geom.components[i].open);
    let polylines: Vec<(bool, Vec<Point>)> = geom
        .components
        .iter()
        .map(|c| {
            let mut v: Vec<Point> = c.vertices.iter().map(|p| Point2::new(p[0], p[1])).collect();
            if !c.open && v.len() > 1 && v[0].dist(*v.last().unwrap()) <= tol {
                v.pop();
            }
            (!c.open, v)
        })
        .collect();
    for (i, (closed, v)) in polylines.iter().enumerate() {
        let need = if *closed { 3 } else { 2 };
        if v.len() < need {
            return Err(Error::Validation(format!("component {i} has too few vertices")));
        }
        if v.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::Validation(format!("component {i} has a non-finite coordinate")));
        }
    }
    let seg_count = |i: usize| {
        let (closed, v) = &polylines[i];
        if *closed {
            v.len()
        } else {
            v.len() - 1
        }
    };
    let seg = |i: usize, j: usize| {
        let v = &polylines[i].1;
        (v[j], v[(j + 1) % v.len()])
    };
    let mut all: Vec<(usize, usize)> = Vec::new();
    for i in 0..polylines.len() {
        for j in 0..seg_count(i) {
            let (a, b) = seg(i, j);
            if a.dist(b) <= tol {
                return Err(Error::Degenerate(format!("component {i} segment {j} has zero length")));
            }
            all.push((i, j));
        }
    }

    // Vertices may not touch non-incident segments.
    for (i, (_, v)) in polylines.iter().enumerate() {
        for (k, &p) in v.iter().enumerate() {
            for &(ci, sj) in &all {
                let incident =
                    ci == i && (sj == k || (sj + 1) % polylines[ci].1.len() == k && seg_count(ci) > sj);
                if incident {
                    continue;
                }
                let (a, b) = seg(ci, sj);
                if point_segment_distance(p, a, b).0 <= tol {
                    return Err(Error::Degenerate(format!(
                        "vertex {k} of component {i} touches component {ci} segment {sj}"
                    )));
                }
            }
        }
    }

    let adjacent = |x: (usize, usize), y: (usize, usize)| {
        if x.0 != y.0 {
            return false;
        }
        let m = seg_count(x.0);
        let closed = polylines[x.0].0;
        x.1 + 1 == y.1
            || y.1 + 1 == x.1
            || (closed && m > 1 && (x.1 + 1) % m == y.1)
            || (closed && m > 1 && (y.1 + 1) % m == x.1)
    };

    let mut hits: Vec<Hit> = Vec::new();
    for (ix, &x) in all.iter().enumerate() {
        for &y in &all[ix + 1..] {
            let (p0, p1) = seg(x.0, x.1);
            let (q0, q1) = seg(y.0, y.1);
            if adjacent(x, y) {
                let (d0, d1) = (p1 - p0, q1 - q0);
                if d0.cross(d1).abs() <= tol * d0.norm() * d1.norm() && d0.dot(d1) < 0.0 {
                    return Err(Error::Degenerate(format!(
                        "component {} folds back at segments {} and {}",
                        x.0, x.1, y.1
                    )));
                }
                continue;
            }
            let (r, s) = (p1 - p0, q1 - q0);
            if r.cross(s).abs() <= tol * r.norm() * s.norm() {
                // Parallel: overlapping collinear pieces are degenerate.
                if point_segment_distance(q0, p0, p1).0 <= tol
                    || point_segment_distance(q1, p0, p1).0 <= tol
                    || point_segment_distance(p0, q0, q1).0 <= tol
                {
                    return Err(Error::Degenerate(format!(
                        "segments ({},{}) and ({},{}) overlap",
                        x.0, x.1, y.0, y.1
                    )));
                }
                continue;
            }
            if let Some((t, u)) = segment_intersection(p0, p1, q0, q1) {
                hits.push(Hit { comps: [(x.0, x.1, t), (y.0, y.1, u)], point: p0.lerp(p1, t) });
            }
        }
    }
    for (i, h) in hits.iter().enumerate() {
        for g in &hits[i + 1..] {
            if h.point.dist(g.point) <= tol {
                return Err(Error::Degenerate(format!("triple point near ({}, {})", h.point.x, h.point.y)));
            }
        }
    }

    // Match crossings with over/under hints.
    let mut crossing_of_hit: Vec<Option<usize>> = vec![None; hits.len()];
    let mut signs = Vec::with_capacity(geom.over.len());
    let mut points = Vec::with_capacity(geom.over.len());
    let mut under_side: Vec<usize> = Vec::with_capacity(geom.over.len());
    for (c, hint) in geom.over.iter().enumerate() {
        let under = (hint.crossing_hint[0], hint.crossing_hint[1]);
        let over = (hint.over_component, hint.over_segment);
        let found = hits.iter().position(|h| {
            let a = (h.comps[0].0, h.comps[0].1);
            let b = (h.comps[1].0, h.comps[1].1);
            (a == under && b == over) || (a == over && b == under)
        });
        let Some(hi) = found else {
            return Err(Error::Validation(format!(
                "over entry {c}: segments {under:?} and {over:?} do not cross"
            )));
        };
        if crossing_of_hit[hi].is_some() {
            return Err(Error::Validation(format!("over entry {c} repeats a crossing")));
        }
        crossing_of_hit[hi] = Some(c);
        let h = &hits[hi];
        let ui = if (h.comps[0].0, h.comps[0].1) == under { 0 } else { 1 };
        under_side.push(ui);
        let dir = |k: usize| {
            let (a, b) = seg(h.comps[k].0, h.comps[k].1);
            b - a
        };
        let (u, v) = (dir(ui), dir(1 - ui));
        signs.push(if u.cross(v) < 0.0 { 1i8 } else { -1 });
        points.push(h.point);
    }
    if let Some(hi) = crossing_of_hit.iter().position(Option::is_none) {
        let h = &hits[hi];
        return Err(Error::Validation(format!(
            "crossing of component {} segment {} with component {} segment {} has no over entry",
            h.comps[0].0, h.comps[0].1, h.comps[1].0, h.comps[1].1
        )));
    }

    // Passages along each component, open component first.
    let mut per_segment: BTreeMap<(usize, usize), Vec<(f64, usize, bool)>> = BTreeMap::new();
    for (hi, h) in hits.iter().enumerate() {
        let c = crossing_of_hit[hi].unwrap();
        for k in 0..2 {
            let (ci, sj, t) = h.comps[k];
            per_segment.entry((ci, sj)).or_default().push((t, c, k != under_side[c]));
        }
    }
    for v in per_segment.values_mut() {
        v.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    }
    let mut components = Vec::new();
    let mut ordered_polylines = Vec::new();
    for &i in &order {
        let mut passages = Vec::new();
        for j in 0..seg_count(i) {
            for &(_, c, over) in per_segment.get(&(i, j)).map(|v| v.as_slice()).unwrap_or(&[]) {
                passages.push(Passage { crossing: c, over });
            }
        }
        components.push(GaussComponent { closed: polylines[i].0, passages });
        ordered_polylines.push(polylines[i].clone());
    }
    let pd = GaussCode { components, signs }.to_pd()?;

    // Edge paths: walk each component, splitting at crossing points.
    let mut edge_paths = BTreeMap::new();
    let labels: Vec<Vec<i64>> = pd.components().iter().map(|(_, l)| l.to_vec()).collect();
    for (k, &i) in order.iter().enumerate() {
        let (closed, v) = &polylines[i];
        let mut pieces: Vec<Vec<Point>> = vec![vec![v[0]]];
        for j in 0..seg_count(i) {
            for &(t, _, _) in per_segment.get(&(i, j)).map(|v| v.as_slice()).unwrap_or(&[]) {
                let (a, b) = seg(i, j);
                let p = a.lerp(b, t);
                pieces.last_mut().unwrap().push(p);
                pieces.push(vec![p]);
            }
            pieces.last_mut().unwrap().push(seg(i, j).1);
        }
        if *closed && pieces.len() > 1 {
            // The piece through vertex 0 wraps: append the first piece to the last.
            let first = pieces.remove(0);
            pieces.last_mut().unwrap().extend(first.into_iter().skip(1));
            pieces.rotate_right(1);
        }
        for (piece, &label) in pieces.into_iter().zip(&labels[k]) {
            edge_paths.insert(label, piece);
        }
    }
    Ok(Embedding { pd, tolerance: tol, crossing_points: points, edge_paths, polylines: ordered_polylines })
}
