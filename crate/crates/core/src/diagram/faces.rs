use std::collections::{BTreeMap, BTreeSet};

use super::KnotoidPD;
use crate::error::{Error, Result};

/// Side of an oriented edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A face of the diagram, as the set of edge sides bounding it.
///
/// Leg and head edges are spikes into a single face and contribute both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Darts `(crossing, slot)` leaving a crossing with the face on the left.
    pub darts: Vec<(usize, usize)>,
    pub sides: BTreeSet<(i64, Side)>,
}

impl Face {
    pub fn touches(&self, e: i64) -> bool {
        self.sides.contains(&(e, Side::Left)) || self.sides.contains(&(e, Side::Right))
    }

    pub fn side_of(&self, e: i64) -> Option<Side> {
        if self.sides.contains(&(e, Side::Left)) {
            Some(Side::Left)
        } else if self.sides.contains(&(e, Side::Right)) {
            Some(Side::Right)
        } else {
            None
        }
    }
}

fn occurrences(pd: &KnotoidPD) -> BTreeMap<i64, Vec<(usize, usize)>> {
    let mut occ: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, rec) in pd.crossings().iter().enumerate() {
        for (s, &e) in rec.0.iter().enumerate() {
            occ.entry(e).or_default().push((c, s));
        }
    }
    occ
}

/// Faces traced by always turning to the clockwise-next slot, which keeps
/// the face on the left of the walk. Components without crossings are not
/// represented.
impl KnotoidPD {
    pub fn faces(&self) -> Vec<Face> {
        let occ = occurrences(self);
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for c in 0..self.n() {
            for s in 0..4 {
                if seen.contains(&(c, s)) {
                    continue;
                }
                let mut face = Face { darts: Vec::new(), sides: BTreeSet::new() };
                let mut cur = (c, s);
                while seen.insert(cur) {
                    face.darts.push(cur);
                    let e = self.crossing(cur.0).0[cur.1];
                    let ends = &occ[&e];
                    if ends.len() == 1 {
                        face.sides.insert((e, Side::Left));
                        face.sides.insert((e, Side::Right));
                    } else if self.slot_roles(cur.0).is_incoming(cur.1) {
                        face.sides.insert((e, Side::Right));
                    } else {
                        face.sides.insert((e, Side::Left));
                    }
                    let other = if ends.len() == 1 {
                        cur
                    } else if ends[0] == cur {
                        ends[1]
                    } else {
                        ends[0]
                    };
                    cur = (other.0, (other.1 + 3) % 4);
                }
                faces.push(face);
            }
        }
        faces
    }
}

/// Checks the Euler relation on every connected piece of the diagram.
pub(crate) fn check_planar(pd: &KnotoidPD) -> Result<()> {
    if pd.n() == 0 {
        return Ok(());
    }
    let occ = occurrences(pd);
    let mut parent: Vec<usize> = (0..pd.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nxt = p[y];
            p[y] = r;
            y = nxt;
        }
        r
    }
    for ends in occ.values() {
        if ends.len() == 2 {
            let (a, b) = (find(&mut parent, ends[0].0), find(&mut parent, ends[1].0));
            parent[a] = b;
        }
    }
    let pieces: BTreeSet<usize> = (0..pd.n()).map(|c| find(&mut parent, c)).collect();
    let endpoints = occ.values().filter(|v| v.len() == 1).count();
    let vertices = pd.n() + endpoints;
    let edges = occ.len();
    let expected = 2 * pieces.len() as i64 - vertices as i64 + edges as i64;
    let found = pd.faces().len() as i64;
    if found != expected {
        return Err(Error::Validation(format!(
            "crossing data is not planar ({found} faces, expected {expected})"
        )));
    }
    Ok(())
}
