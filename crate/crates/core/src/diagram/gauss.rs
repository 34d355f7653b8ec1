//! Signed Gauss codes: the intermediate form used by the structural operations.
//!
//! A signed Gauss code (passage sequence per component plus crossing signs)
//! determines the PD records, so operations edit passages and then relabel.

use super::{CrossingRecord, KnotoidPD, SlotRoles};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Passage {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GaussComponent {
    pub closed: bool,
    /// Passage `j` sits between edge `j` and edge `j + 1` of the component.
    pub passages: Vec<Passage>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GaussCode {
    pub components: Vec<GaussComponent>,
    pub signs: Vec<i8>,
}

impl GaussCode {
    pub fn from_pd(pd: &KnotoidPD) -> Self {
        let table = pd.edge_table();
        let mut components = Vec::new();
        for (closed, labels) in pd.components() {
            let mut passages = Vec::new();
            for &e in labels {
                if let Some(&(c, slot)) = table.head_at.get(&e) {
                    passages.push(Passage { crossing: c, over: pd.slot_roles(c).is_over(slot) });
                }
            }
            components.push(GaussComponent { closed, passages });
        }
        GaussCode { components, signs: pd.signs().to_vec() }
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    /// Labels edges 1, 2, ... along the components and rebuilds the PD.
    pub fn to_pd(&self) -> Result<KnotoidPD> {
        let n = self.n();
        let mut ends: Vec<[Option<i64>; 4]> = vec![[None; 4]; n];
        let mut open = Vec::new();
        let mut closed = Vec::new();
        let mut next_label = 1i64;
        for (ci, comp) in self.components.iter().enumerate() {
            if !comp.closed && ci != 0 {
                return Err(Error::Operation("open component must come first".into()));
            }
            let k = comp.passages.len();
            let edges = if comp.closed { k.max(1) } else { k + 1 };
            let labels: Vec<i64> = (0..edges as i64).map(|i| next_label + i).collect();
            next_label += edges as i64;
            for (j, p) in comp.passages.iter().enumerate() {
                let incoming = labels[j];
                let outgoing = labels[(j + 1) % edges];
                let roles = SlotRoles::for_sign(self.signs[p.crossing]);
                let (si, so) =
                    if p.over { (roles.in_over, roles.out_over) } else { (roles.in_under, roles.out_under) };
                let rec = &mut ends[p.crossing];
                if rec[si].is_some() || rec[so].is_some() {
                    return Err(Error::Operation(format!(
                        "crossing {} visited twice on the same strand",
                        p.crossing
                    )));
                }
                rec[si] = Some(incoming);
                rec[so] = Some(outgoing);
            }
            if comp.closed {
                closed.push(labels);
            } else {
                open = labels;
            }
        }
        let mut crossings = Vec::with_capacity(n);
        for (c, rec) in ends.iter().enumerate() {
            let mut out = [0i64; 4];
            for (s, v) in rec.iter().enumerate() {
                out[s] = v.ok_or_else(|| Error::Operation(format!("crossing {c} is missing a passage")))?;
            }
            crossings.push(CrossingRecord(out));
        }
        match KnotoidPD::new(crossings.clone(), open.clone(), closed.clone(), None) {
            Ok(pd) if pd.signs() == self.signs.as_slice() => Ok(pd),
            Ok(_) | Err(Error::AmbiguousSign { .. }) => {
                KnotoidPD::new(crossings, open, closed, Some(self.signs.clone()))
            }
            Err(e) => Err(e),
        }
    }

    /// Locates the passage slot for edge `e` of `pd`: `(component, insertion index)`.
    /// Inserting at that index places new passages on edge `e`.
    pub fn edge_position(pd: &KnotoidPD, e: i64) -> Result<(usize, usize)> {
        let table = pd.edge_table();
        let &(comp, pos) = table.place.get(&e).ok_or(Error::UnknownEdge(e))?;
        Ok((comp, pos))
    }

    /// Removes crossing `x`, shifting later crossing indices down.
    pub fn remove_crossing(&mut self, x: usize) {
        for comp in &mut self.components {
            comp.passages.retain(|p| p.crossing != x);
            for p in &mut comp.passages {
                if p.crossing > x {
                    p.crossing -= 1;
                }
            }
        }
        self.signs.remove(x);
    }
}

/// Relabels edges 1, 2, ... along components (open component first) without
/// changing crossing order.
pub fn canonical(pd: &KnotoidPD) -> KnotoidPD {
    GaussCode::from_pd(pd).to_pd().expect("relabeling a valid diagram")
}
