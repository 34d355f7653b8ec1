//! Diagram operations: reverse, mirror, symmetric reflection, product,
//! knot-to-knotoid cut, Reidemeister insertions and crossing reordering.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::faces::Side;
use super::gauss::{GaussCode, GaussComponent, Passage};
use super::{CrossingRecord, KnotoidPD};
use crate::error::{Error, Result};

/// Which strands the cut may pull off the new head, named after the strand
/// that is removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutMode {
    /// Pull over-strands off the head, where the end of the arc passes
    /// under them (an Ω₋ move).
    Over,
    /// Pull under-strands off the head (an Ω̄₋ move).
    Under,
    /// Delete whatever passages lie at the end of the arc.
    Any,
}

fn negate(signs: Option<&[i8]>) -> Option<Vec<i8>> {
    signs.map(|s| s.iter().map(|&x| -x).collect())
}

impl KnotoidPD {
    /// Reverses the orientation of every component.
    ///
    /// Labels are permuted among each component's own labels so that they
    /// still increase along the new orientation; applying it twice is the identity.
    pub fn reverse(&self) -> KnotoidPD {
        let mut relabel: BTreeMap<i64, i64> = BTreeMap::new();
        for (closed, labels) in self.components() {
            let k = labels.len();
            for j in 0..k {
                let target = if closed { (k - j) % k } else { k - 1 - j };
                relabel.insert(labels[j], labels[target]);
            }
        }
        let crossings = self
            .crossings()
            .iter()
            .map(|r| {
                let [a, b, c, d] = r.0.map(|e| relabel[&e]);
                CrossingRecord([c, d, a, b])
            })
            .collect();
        KnotoidPD::new(
            crossings,
            self.open().to_vec(),
            self.closed().to_vec(),
            self.explicit_signs().map(|s| s.to_vec()),
        )
        .expect("reverse of a valid diagram")
    }

    /// Exchanges over- and under-strands at every crossing.
    pub fn mirror(&self) -> KnotoidPD {
        let crossings: Vec<CrossingRecord> = self
            .crossings()
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let [a, b, c, d] = r.0;
                if self.sign(i) > 0 {
                    CrossingRecord([d, a, b, c])
                } else {
                    CrossingRecord([b, c, d, a])
                }
            })
            .collect();
        let build =
            |signs| KnotoidPD::new(crossings.clone(), self.open().to_vec(), self.closed().to_vec(), signs);
        // An under-strand on a two-edge circle becomes an ambiguous over-strand.
        match build(negate(self.explicit_signs())) {
            Err(Error::AmbiguousSign { .. }) => build(negate(Some(self.signs()))),
            other => other,
        }
        .expect("mirror of a valid diagram")
    }

    /// Reflects the diagram in a line of the plane.
    pub fn sym(&self) -> KnotoidPD {
        let crossings =
            self.crossings().iter().map(|r| CrossingRecord([r.0[0], r.0[3], r.0[2], r.0[1]])).collect();
        KnotoidPD::new(crossings, self.open().to_vec(), self.closed().to_vec(), negate(self.explicit_signs()))
            .expect("reflection of a valid diagram")
    }

    /// Edge labels relabeled 1, 2, ... along components; crossing order unchanged.
    pub fn canonical(&self) -> KnotoidPD {
        super::gauss::canonical(self)
    }

    /// Product `self · other`: the head of `self` is joined to the leg of `other`.
    pub fn product(&self, other: &KnotoidPD) -> Result<KnotoidPD> {
        if !self.has_open_component() || !other.has_open_component() {
            return Err(Error::Operation("product needs two knotoids".into()));
        }
        let g1 = GaussCode::from_pd(self);
        let g2 = shifted(GaussCode::from_pd(other), self.n());
        let mut open = g1.components[0].passages.clone();
        open.extend(g2.components[0].passages.iter().copied());
        let mut components = vec![GaussComponent { closed: false, passages: open }];
        components.extend(g1.components[1..].iter().cloned());
        components.extend(g2.components[1..].iter().cloned());
        let mut signs = g1.signs;
        signs.extend(g2.signs);
        GaussCode { components, signs }.to_pd()
    }

    /// Adds the closed components of `link` as a split sublink.
    pub fn disjoint_union(&self, link: &KnotoidPD) -> Result<KnotoidPD> {
        if link.has_open_component() {
            return Err(Error::Operation("disjoint union expects a closed diagram".into()));
        }
        let mut g = GaussCode::from_pd(self);
        let g2 = shifted(GaussCode::from_pd(link), self.n());
        g.components.extend(g2.components);
        g.signs.extend(g2.signs);
        g.to_pd()
    }

    /// Permutes the crossing order: new crossing `i` is old crossing `perm[i]`.
    pub fn reorder(&self, perm: &[usize]) -> Result<KnotoidPD> {
        let n = self.n();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::Operation(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        KnotoidPD::new(
            perm.iter().map(|&i| self.crossings()[i]).collect(),
            self.open().to_vec(),
            self.closed().to_vec(),
            self.explicit_signs().map(|s| perm.iter().map(|&i| s[i]).collect()),
        )
    }

    /// Opens a one-component closed diagram into a knotoid.
    ///
    /// The knot is cut just before its first edge and then `moves` crossings
    /// are removed from the end of the resulting arc, sliding the head
    /// backwards. The leg stays at the start of the first edge.
    pub fn cut_knot_to_knotoid(&self, moves: usize, mode: CutMode) -> Result<KnotoidPD> {
        if self.has_open_component() || self.closed().len() != 1 {
            return Err(Error::Operation("cut expects a one-component closed diagram".into()));
        }
        let mut g = GaussCode::from_pd(self);
        g.components[0].closed = false;
        for step in 0..moves {
            let Some(&last) = g.components[0].passages.last() else {
                return Err(Error::Operation(format!(
                    "cannot delete {moves} crossings: only {step} available on the arc"
                )));
            };
            let ok = match mode {
                CutMode::Over => !last.over,
                CutMode::Under => last.over,
                CutMode::Any => true,
            };
            if !ok {
                return Err(Error::Operation(format!(
                    "deletion {} passes {} a strand, which the cut mode forbids",
                    step + 1,
                    if last.over { "over" } else { "under" }
                )));
            }
            g.remove_crossing(last.crossing);
        }
        g.to_pd()
    }

    /// Adds a kink of the given sign on edge `e`.
    pub fn insert_r1(&self, e: i64, positive: bool) -> Result<KnotoidPD> {
        let (comp, at) = GaussCode::edge_position(self, e)?;
        let mut g = GaussCode::from_pd(self);
        let x = g.n();
        g.signs.push(if positive { 1 } else { -1 });
        let passages = &mut g.components[comp].passages;
        passages.insert(at, Passage { crossing: x, over: true });
        passages.insert(at, Passage { crossing: x, over: false });
        g.to_pd()
    }

    /// Pushes edge `over` across edge `under` through a shared face,
    /// creating two new crossings where `over` passes over `under`.
    pub fn insert_r2(&self, over: i64, under: i64) -> Result<KnotoidPD> {
        if over == under {
            return Err(Error::Operation("R2 needs two distinct edges".into()));
        }
        let (ca, pa) = GaussCode::edge_position(self, over)?;
        let (cb, pb) = GaussCode::edge_position(self, under)?;
        let faces = self.faces();
        let face = faces
            .iter()
            .find(|f| f.touches(over) && f.touches(under))
            .ok_or_else(|| Error::Operation(format!("edges {over} and {under} do not share a face")))?;
        let side_a = face.side_of(over).unwrap();
        let side_b = face.side_of(under).unwrap();
        let same_direction = side_a != side_b;
        // Signs of (first, second) crossing along `over`, and the order in
        // which `under` meets them.
        let (s1, s2) = match (side_a, same_direction) {
            (Side::Left, true) | (Side::Right, false) => (-1, 1),
            (Side::Left, false) | (Side::Right, true) => (1, -1),
        };
        let mut g = GaussCode::from_pd(self);
        let x1 = g.n();
        let x2 = x1 + 1;
        g.signs.extend([s1, s2]);
        let under_seq = if same_direction { [x1, x2] } else { [x2, x1] };
        let over_ins = [x1, x2].map(|crossing| Passage { crossing, over: true });
        let under_ins = under_seq.map(|crossing| Passage { crossing, over: false });
        let mut edits = [(ca, pa, over_ins), (cb, pb, under_ins)];
        // Insert at the later position first so the earlier index stays valid.
        edits.sort_by_key(|&(c, p, _)| std::cmp::Reverse((c, p)));
        for (c, p, ins) in edits {
            let passages = &mut g.components[c].passages;
            passages.splice(p..p, ins);
        }
        g.to_pd()
    }
}

fn shifted(mut g: GaussCode, by: usize) -> GaussCode {
    for comp in &mut g.components {
        for p in &mut comp.passages {
            p.crossing += by;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_of_segment_over_two_edge_circle() {
        let pd = KnotoidPD::parse(br#"{"crossings":[[5,2,6,1],[6,2,5,3]],"open":[1,2,3],"closed":[[5,6]]}"#)
            .unwrap();
        let m = pd.mirror();
        assert_eq!(m.signs(), pd.signs().iter().map(|s| -s).collect::<Vec<_>>());
        assert_eq!(m.mirror().signs(), pd.signs());
    }

    fn trefoil() -> KnotoidPD {
        KnotoidPD::new(
            vec![CrossingRecord([1, 5, 2, 4]), CrossingRecord([3, 1, 4, 6]), CrossingRecord([5, 3, 6, 2])],
            vec![],
            vec![vec![1, 2, 3, 4, 5, 6]],
            None,
        )
        .unwrap()
    }

    #[test]
    fn involutions() {
        let k = trefoil().cut_knot_to_knotoid(1, CutMode::Any).unwrap();
        for pd in [trefoil(), k] {
            assert_eq!(pd.mirror().mirror(), pd);
            assert_eq!(pd.sym().sym(), pd);
            assert_eq!(pd.reverse().reverse(), pd);
            assert_eq!(pd.mirror().writhe(), -pd.writhe());
        }
    }

    #[test]
    fn kink_mirror_is_negative() {
        let kink = KnotoidPD::trivial().insert_r1(1, true).unwrap();
        assert_eq!(kink.crossings(), &[CrossingRecord([1, 3, 2, 2])]);
        assert_eq!(kink.mirror().sign(0), -1);
    }

    #[test]
    fn cut_of_trefoil() {
        let t = trefoil();
        let k0 = t.cut_knot_to_knotoid(0, CutMode::Any).unwrap();
        assert_eq!(k0.n(), 3);
        assert_eq!(k0.open().len(), 7);
        let k1 = t.cut_knot_to_knotoid(1, CutMode::Any).unwrap();
        assert_eq!(k1.n(), 2);
        assert!(t.cut_knot_to_knotoid(1, CutMode::Over).is_err());
        assert!(t.cut_knot_to_knotoid(1, CutMode::Under).is_ok());
        assert!(t.cut_knot_to_knotoid(4, CutMode::Any).is_err());
    }

    #[test]
    fn product_and_units() {
        let k = trefoil().cut_knot_to_knotoid(1, CutMode::Any).unwrap();
        let t = KnotoidPD::trivial();
        assert_eq!(k.product(&t).unwrap(), k.canonical());
        assert_eq!(t.product(&k).unwrap(), k.canonical());
        assert_eq!(k.product(&k).unwrap().n(), 2 * k.n());
    }

    #[test]
    fn r2_on_every_face_pair() {
        let k = trefoil().cut_knot_to_knotoid(1, CutMode::Any).unwrap();
        let mut done = 0;
        for f in k.faces() {
            let edges: Vec<i64> = f.sides.iter().map(|&(e, _)| e).collect();
            for &a in &edges {
                for &b in &edges {
                    if a != b {
                        let r = k.insert_r2(a, b).unwrap();
                        assert_eq!(r.n(), k.n() + 2);
                        done += 1;
                    }
                }
            }
        }
        assert!(done > 0);
    }

    #[test]
    fn unknown_edge() {
        assert_eq!(KnotoidPD::trivial().insert_r1(7, true).unwrap_err(), Error::UnknownEdge(7));
    }
}
