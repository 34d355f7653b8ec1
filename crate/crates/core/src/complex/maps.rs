//! Edge maps of the cube.

use crate::resolution::{Comp, Resolution};

fn image(from: &Resolution, to: &Resolution, circle: usize) -> Comp {
    let e = from.circles[circle][0].edge;
    to.edge_component(e).expect("edge present in both resolutions").0
}

fn is_x(labels: u64, j: usize) -> bool {
    labels >> j & 1 == 1
}

/// Image of the generator `(from.state, labels)` under the edge map that
/// changes crossing `c` from 0 to 1, without the cube sign.
///
/// Returns target label words with coefficients. Diagrams without an open
/// component only ever produce `m₁` and `Δ₁`.
pub(super) fn edge_map(from: &Resolution, to: &Resolution, c: usize, labels: u64) -> Vec<(u64, i64)> {
    let [a, b] = from.sites[c];
    // Labels of circles that are carried over unchanged.
    let mut base = 0u64;
    let mut touched = Vec::new();
    for j in 0..from.circles.len() {
        let comp = Comp::Circle(j);
        if comp == a || comp == b {
            continue;
        }
        match image(from, to, j) {
            Comp::Circle(t) => {
                touched.push(t);
                if is_x(labels, j) {
                    base |= 1 << t;
                }
            }
            Comp::Segment => unreachable!("an untouched circle cannot join the segment"),
        }
    }
    let fresh: Vec<usize> = (0..to.circles.len()).filter(|t| !touched.contains(t)).collect();
    match (a, b) {
        (Comp::Circle(x), Comp::Circle(y)) if x != y => {
            // m₁: 1⊗1 ↦ 1, 1⊗X ↦ X, X⊗1 ↦ X, X⊗X ↦ 0.
            let (lx, ly) = (is_x(labels, x), is_x(labels, y));
            if lx && ly {
                return Vec::new();
            }
            let Comp::Circle(t) = image(from, to, x) else { unreachable!() };
            vec![(base | if lx || ly { 1 << t } else { 0 }, 1)]
        }
        (Comp::Segment, Comp::Circle(x)) | (Comp::Circle(x), Comp::Segment) => {
            // m₂: the circle's 1 is absorbed, X ↦ 0.
            if is_x(labels, x) {
                Vec::new()
            } else {
                vec![(base, 1)]
            }
        }
        (Comp::Circle(x), Comp::Circle(_)) => {
            // Δ₁: 1 ↦ 1⊗X + X⊗1, X ↦ X⊗X.
            let [t1, t2] = [fresh[0], fresh[1]];
            if is_x(labels, x) {
                vec![(base | 1 << t1 | 1 << t2, 1)]
            } else {
                vec![(base | 1 << t2, 1), (base | 1 << t1, 1)]
            }
        }
        (Comp::Segment, Comp::Segment) => {
            if to.circles.len() == from.circles.len() + 1 {
                // Δ₂: a circle labelled X splits off the segment.
                vec![(base | 1 << fresh[0], 1)]
            } else {
                // ∇: the anticurl map is zero.
                Vec::new()
            }
        }
    }
}
