//! Knotoid diagrams in planar-diagram (PD) form.
//!
//! # PD convention
//!
//! A crossing is a record `(a, b, c, d)` of four edge labels listed
//! counterclockwise, starting at the incoming under-edge `a`; `c` is the
//! outgoing under-edge. The over-strand runs either `d → b` (positive
//! crossing) or `b → d` (negative crossing). Edge labels increase along the
//! orientation of each component; closed components wrap around from their
//! last label to their first.
//!
//! This is the KnotTheory convention extended to an open component. Tables
//! that list crossings clockwise, or start at another slot, must be rotated
//! before use.

mod dt;
mod faces;
mod gauss;
mod geometric;
mod ops;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dt::{dt_from_letters, knot_from_dt};
pub use faces::{Face, Side};
pub use geometric::{pd_from_geometric, Embedding, GeomComponent, GeometricDiagram, OverHint};
pub use ops::CutMode;

/// Four edge labels `(a, b, c, d)`, counterclockwise from the incoming under-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CrossingRecord(pub [i64; 4]);

impl CrossingRecord {
    pub fn slots(&self) -> [i64; 4] {
        self.0
    }
}

/// Slot indices (0..4) of the four strand ends at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlotRoles {
    pub in_under: usize,
    pub out_under: usize,
    pub in_over: usize,
    pub out_over: usize,
}

impl SlotRoles {
    pub fn for_sign(sign: i8) -> Self {
        if sign > 0 {
            SlotRoles { in_under: 0, out_under: 2, in_over: 3, out_over: 1 }
        } else {
            SlotRoles { in_under: 0, out_under: 2, in_over: 1, out_over: 3 }
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == self.in_under || slot == self.in_over
    }

    pub fn is_over(&self, slot: usize) -> bool {
        slot == self.in_over || slot == self.out_over
    }
}

/// Validated knotoid (or multi-knotoid) diagram.
///
/// An empty `open` list denotes a diagram of closed components only; such
/// diagrams are accepted for the knot-to-knotoid cut and the unreduced
/// Khovanov complex, and rejected by the knotoid pipelines.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnotoidPD {
    crossings: Vec<CrossingRecord>,
    open: Vec<i64>,
    closed: Vec<Vec<i64>>,
    explicit_signs: Option<Vec<i8>>,
    signs: Vec<i8>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PdJson {
    #[serde(default)]
    crossings: Vec<CrossingRecord>,
    #[serde(default)]
    open: Vec<i64>,
    #[serde(default)]
    closed: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signs: Option<Vec<i8>>,
}

/// Where each edge label lives and how it meets the crossings.
#[derive(Clone, Debug, Default)]
pub(crate) struct EdgeTable {
    /// label -> (component index, position in component)
    pub place: BTreeMap<i64, (usize, usize)>,
    /// label -> (crossing, slot) where the edge ends
    pub head_at: BTreeMap<i64, (usize, usize)>,
    /// label -> (crossing, slot) where the edge starts
    pub tail_at: BTreeMap<i64, (usize, usize)>,
}

impl KnotoidPD {
    /// Builds and validates a diagram. Crossing order is kept as given.
    pub fn new(
        crossings: Vec<CrossingRecord>,
        open: Vec<i64>,
        closed: Vec<Vec<i64>>,
        explicit_signs: Option<Vec<i8>>,
    ) -> Result<Self> {
        let mut pd = KnotoidPD { crossings, open, closed, explicit_signs, signs: Vec::new() };
        pd.signs = pd.validate()?;
        Ok(pd)
    }

    /// The 0-crossing knotoid: a single edge from leg to head.
    pub fn trivial() -> Self {
        KnotoidPD::new(Vec::new(), vec![1], Vec::new(), None).expect("trivial diagram")
    }

    /// Parses the JSON PD format.
    pub fn parse(text: &[u8]) -> Result<Self> {
        let raw: PdJson = serde_json::from_slice(text)?;
        KnotoidPD::new(raw.crossings, raw.open, raw.closed, raw.signs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PdJson {
            crossings: self.crossings.clone(),
            open: self.open.clone(),
            closed: self.closed.clone(),
            signs: self.explicit_signs.clone(),
        })
        .expect("serializable")
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[CrossingRecord] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> &CrossingRecord {
        &self.crossings[c]
    }

    /// Edge labels of the open component, leg edge first. Empty for closed diagrams.
    pub fn open(&self) -> &[i64] {
        &self.open
    }

    pub fn closed(&self) -> &[Vec<i64>] {
        &self.closed
    }

    pub fn explicit_signs(&self) -> Option<&[i8]> {
        self.explicit_signs.as_deref()
    }

    pub fn has_open_component(&self) -> bool {
        !self.open.is_empty()
    }

    /// True for a knotoid without closed components.
    pub fn is_single_segment(&self) -> bool {
        self.has_open_component() && self.closed.is_empty()
    }

    pub fn leg_edge(&self) -> Option<i64> {
        self.open.first().copied()
    }

    pub fn head_edge(&self) -> Option<i64> {
        self.open.last().copied()
    }

    /// Sign of crossing `c` (explicit override or inferred).
    pub fn sign(&self, c: usize) -> i8 {
        self.signs[c]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn slot_roles(&self, c: usize) -> SlotRoles {
        SlotRoles::for_sign(self.signs[c])
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|&&s| s > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    /// All edge labels in component order (open component first).
    pub fn edge_labels(&self) -> Vec<i64> {
        self.open.iter().chain(self.closed.iter().flatten()).copied().collect()
    }

    /// Components as `(is_closed, labels)`, open component first.
    pub fn components(&self) -> Vec<(bool, &[i64])> {
        let mut out = Vec::new();
        if !self.open.is_empty() {
            out.push((false, self.open.as_slice()));
        }
        for c in &self.closed {
            out.push((true, c.as_slice()));
        }
        out
    }

    /// Successor of an edge along its component; `None` for the head edge.
    pub fn successor(&self, e: i64) -> Option<i64> {
        for (closed, labels) in self.components() {
            if let Some(i) = labels.iter().position(|&x| x == e) {
                return if i + 1 < labels.len() {
                    Some(labels[i + 1])
                } else if closed {
                    Some(labels[0])
                } else {
                    None
                };
            }
        }
        None
    }

    pub(crate) fn edge_table(&self) -> EdgeTable {
        let mut t = EdgeTable::default();
        for (ci, (_, labels)) in self.components().into_iter().enumerate() {
            for (i, &e) in labels.iter().enumerate() {
                t.place.insert(e, (ci, i));
            }
        }
        for (c, rec) in self.crossings.iter().enumerate() {
            let roles = self.slot_roles(c);
            for (slot, &e) in rec.0.iter().enumerate() {
                if roles.is_incoming(slot) {
                    t.head_at.insert(e, (c, slot));
                } else {
                    t.tail_at.insert(e, (c, slot));
                }
            }
        }
        t
    }

    fn validate(&self) -> Result<Vec<i8>> {
        let mut seen = BTreeSet::new();
        let mut succ: BTreeMap<i64, i64> = BTreeMap::new();
        for (closed, labels) in self.components() {
            if labels.is_empty() {
                return Err(Error::Validation("empty closed component".into()));
            }
            for w in labels.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::Validation(format!(
                        "edge labels must increase along each component ({} then {})",
                        w[0], w[1]
                    )));
                }
            }
            for &e in labels {
                if !seen.insert(e) {
                    return Err(Error::Validation(format!("edge {e} listed twice")));
                }
            }
            for w in labels.windows(2) {
                succ.insert(w[0], w[1]);
            }
            if closed {
                succ.insert(*labels.last().unwrap(), labels[0]);
            }
        }
        if let Some(es) = &self.explicit_signs {
            if es.len() != self.crossings.len() {
                return Err(Error::Validation(format!(
                    "{} explicit signs for {} crossings",
                    es.len(),
                    self.crossings.len()
                )));
            }
            if let Some(c) = es.iter().position(|&s| s != 1 && s != -1) {
                return Err(Error::Validation(format!("crossing {c}: sign must be +1 or -1")));
            }
        }

        let mut signs = Vec::with_capacity(self.crossings.len());
        let mut ins: BTreeMap<i64, usize> = BTreeMap::new();
        let mut outs: BTreeMap<i64, usize> = BTreeMap::new();
        for (c, rec) in self.crossings.iter().enumerate() {
            let [a, b, cc, d] = rec.0;
            for e in [a, b, cc, d] {
                if !seen.contains(&e) {
                    return Err(Error::UnknownEdge(e));
                }
            }
            if succ.get(&a) != Some(&cc) {
                return Err(Error::Validation(format!(
                    "crossing {c}: edge {cc} does not follow incoming under-edge {a}"
                )));
            }
            let plus = succ.get(&d) == Some(&b);
            let minus = succ.get(&b) == Some(&d);
            let sign = match self.explicit_signs.as_ref().map(|s| s[c]) {
                Some(1) if plus => 1,
                Some(-1) if minus => -1,
                Some(s) => {
                    return Err(Error::Validation(format!(
                        "crossing {c}: explicit sign {s} contradicts the over-strand edges"
                    )))
                }
                None => match (plus, minus) {
                    (true, true) => return Err(Error::AmbiguousSign { crossing: c }),
                    (true, false) => 1,
                    (false, true) => -1,
                    (false, false) => {
                        return Err(Error::Validation(format!(
                            "crossing {c}: over-strand edges {b} and {d} are not consecutive"
                        )))
                    }
                },
            };
            signs.push(sign);
            let roles = SlotRoles::for_sign(sign);
            for (slot, &e) in rec.0.iter().enumerate() {
                let counter = if roles.is_incoming(slot) { &mut ins } else { &mut outs };
                *counter.entry(e).or_default() += 1;
            }
        }

        let leg = self.open.first().copied();
        let head = self.open.last().copied();
        for (closed, labels) in self.components() {
            let free = labels.len() == 1 && !ins.contains_key(&labels[0]) && !outs.contains_key(&labels[0]);
            for &e in labels {
                let want_in = usize::from(!(Some(e) == head && !closed) && !free);
                let want_out = usize::from(!(Some(e) == leg && !closed) && !free);
                let got_in = ins.get(&e).copied().unwrap_or(0);
                let got_out = outs.get(&e).copied().unwrap_or(0);
                if got_in != want_in || got_out != want_out {
                    return Err(Error::Validation(format!(
                        "edge {e} appears in {} crossing slot(s), expected {}",
                        got_in + got_out,
                        want_in + want_out
                    )));
                }
            }
        }

        let probe = KnotoidPD {
            crossings: self.crossings.clone(),
            open: self.open.clone(),
            closed: self.closed.clone(),
            explicit_signs: None,
            signs: signs.clone(),
        };
        faces::check_planar(&probe)?;
        Ok(signs)
    }
}

/// Parses a PD file (JSON bytes).
pub fn parse_pd(text: &[u8]) -> Result<KnotoidPD> {
    KnotoidPD::parse(text)
}

/// Sign of crossing `c`.
pub fn crossing_sign(pd: &KnotoidPD, c: usize) -> Result<i8> {
    if c >= pd.n() {
        return Err(Error::Validation(format!("crossing {c} out of range")));
    }
    Ok(pd.sign(c))
}
