//! Seeded random diagrams shared by the integration tests.
#![allow(dead_code)]

pub mod khovanov;

use knotoid::diagram::{Embedding, GeomComponent, GeometricDiagram, KnotoidPD, OverHint};
use knotoid::fixtures::Fixtures;
use knotoid::geometry::segment_intersection;
use knotoid::Point;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixtures() -> Fixtures {
    Fixtures::load(Fixtures::bundled_dir()).expect("bundled fixtures load")
}

fn segments(c: &GeomComponent) -> Vec<(Point, Point)> {
    let p: Vec<Point> = c.vertices.iter().map(|v| Point::new(v[0], v[1])).collect();
    let m = p.len();
    let count = if c.open { m - 1 } else { m };
    (0..count).map(|j| (p[j], p[(j + 1) % m])).collect()
}

fn adjacent(c: &GeomComponent, a: usize, b: usize, count: usize) -> bool {
    a.abs_diff(b) <= 1 || (!c.open && a.abs_diff(b) == count - 1)
}

/// Random polyline diagram with one open component and, with probability
/// `closed_prob`, one extra closed triangle or quadrilateral. Over/under is
/// chosen by coin flips.
pub fn random_geometric(rng: &mut impl Rng, closed_prob: f64) -> GeometricDiagram {
    let k = rng.gen_range(3..=7);
    let mut components = vec![GeomComponent {
        open: true,
        vertices: (0..k).map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect(),
    }];
    if rng.gen_bool(closed_prob) {
        let m = rng.gen_range(3..=4);
        let (cx, cy, r) = (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), rng.gen_range(0.2..0.8));
        let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        components.push(GeomComponent {
            open: false,
            vertices: (0..m)
                .map(|j| {
                    let a = phase + j as f64 * std::f64::consts::TAU / m as f64;
                    [cx + r * a.cos(), cy + r * a.sin()]
                })
                .collect(),
        });
    }
    let segs: Vec<Vec<(Point, Point)>> = components.iter().map(segments).collect();
    let mut over = Vec::new();
    for c1 in 0..components.len() {
        for c2 in c1..components.len() {
            for (i, s) in segs[c1].iter().enumerate() {
                for (j, t) in segs[c2].iter().enumerate() {
                    if c1 == c2 && (j <= i || adjacent(&components[c1], i, j, segs[c1].len())) {
                        continue;
                    }
                    if segment_intersection(s.0, s.1, t.0, t.1).is_some() {
                        let ((uc, us), (oc, os)) =
                            if rng.gen_bool(0.5) { ((c1, i), (c2, j)) } else { ((c2, j), (c1, i)) };
                        over.push(OverHint { crossing_hint: [uc, us], over_component: oc, over_segment: os });
                    }
                }
            }
        }
    }
    GeometricDiagram { components, over, tolerance: 1e-9 }
}

/// A random diagram that embeds cleanly and has between `min_n` and `max_n`
/// crossings.
pub fn random_embedding(
    rng: &mut impl Rng,
    min_n: usize,
    max_n: usize,
    closed_prob: f64,
) -> (GeometricDiagram, Embedding) {
    loop {
        let g = random_geometric(rng, closed_prob);
        if g.over.len() < min_n || g.over.len() > max_n {
            continue;
        }
        if let Ok(e) = g.embed() {
            return (g, e);
        }
    }
}

pub fn random_pd(rng: &mut impl Rng, max_n: usize, closed_prob: f64) -> KnotoidPD {
    random_embedding(rng, 0, max_n, closed_prob).1.pd
}
