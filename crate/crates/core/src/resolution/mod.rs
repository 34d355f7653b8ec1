//! States of the cube of resolutions, resolved components, and the
//! u-grading `μ(s)`.

mod mu;

use std::collections::BTreeMap;

use crate::diagram::KnotoidPD;
use crate::error::{Error, Result};

pub(crate) use mu::mu_from_visits;
pub use mu::{canonical_trace, mu_combinatorial, mu_from_shortcut, ShortcutTrace};

/// Largest crossing count for which states are enumerated.
pub const MAX_CROSSINGS: usize = 63;

/// One smoothing bit per crossing, bit `c` for crossing `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    bits: u64,
    n: usize,
}

impl State {
    pub fn new(bits: u64, n: usize) -> Self {
        assert!(n <= MAX_CROSSINGS, "too many crossings");
        assert!(n == 64 || bits >> n == 0, "state bits exceed crossing count");
        State { bits, n }
    }

    pub fn zeros(n: usize) -> Self {
        State::new(0, n)
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut s = State::zeros(bits.len());
        for (c, &b) in bits.iter().enumerate() {
            if b != 0 {
                s.bits |= 1 << c;
            }
        }
        s
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, c: usize) -> u8 {
        ((self.bits >> c) & 1) as u8
    }

    /// Number of 1-smoothings, `‖s‖`.
    pub fn ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// `σ_s`: number of 0-smoothings minus number of 1-smoothings.
    pub fn sigma(&self) -> i64 {
        self.n as i64 - 2 * self.ones() as i64
    }

    pub fn with(&self, c: usize, bit: u8) -> Self {
        let mask = 1u64 << c;
        State { bits: if bit == 0 { self.bits & !mask } else { self.bits | mask }, n: self.n }
    }

    /// Number of 1-bits at crossings before `c`.
    pub fn ones_before(&self, c: usize) -> usize {
        (self.bits & ((1u64 << c) - 1)).count_ones() as usize
    }

    /// All `2ⁿ` states in increasing bit order.
    pub fn all(n: usize) -> impl Iterator<Item = State> {
        assert!(n <= MAX_CROSSINGS, "too many crossings");
        (0..1u64 << n).map(move |b| State { bits: b, n })
    }
}

/// Which resolved component something belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Comp {
    Segment,
    Circle(usize),
}

/// A diagram edge as traversed by a resolved component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub edge: i64,
    /// True when the component runs along the edge in the diagram's orientation.
    pub forward: bool,
}

/// Slot paired with `slot` by the smoothing `bit`:
/// the 0-smoothing joins `a–b` and `c–d`, the 1-smoothing joins `a–d` and `b–c`.
pub fn smoothing_partner(slot: usize, bit: u8) -> usize {
    match (bit, slot) {
        (0, 0) => 1,
        (0, 1) => 0,
        (0, 2) => 3,
        (0, 3) => 2,
        (_, 0) => 3,
        (_, 3) => 0,
        (_, 1) => 2,
        (_, 2) => 1,
        _ => unreachable!("slot out of range"),
    }
}

/// The components of one state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub state: State,
    /// Arcs from leg to head; `None` for diagrams without an open component.
    pub segment: Option<Vec<Arc>>,
    /// Circles, ordered by their smallest edge label; each starts at that
    /// edge, traversed forward.
    pub circles: Vec<Vec<Arc>>,
    /// Crossing visits of the segment in order: `(crossing, slot of arrival)`.
    pub segment_visits: Vec<(usize, usize)>,
    /// Component through each smoothing arc: index 0 is the arc at slot `a`.
    pub sites: Vec<[Comp; 2]>,
    edge_comp: BTreeMap<i64, (Comp, bool)>,
}

impl Resolution {
    /// `|s|`: number of components, the segment included.
    pub fn component_count(&self) -> usize {
        self.circles.len() + usize::from(self.segment.is_some())
    }

    /// Component containing `edge` and whether it traverses it forward.
    pub fn edge_component(&self, edge: i64) -> Option<(Comp, bool)> {
        self.edge_comp.get(&edge).copied()
    }
}

/// Resolves every crossing of `pd` according to `s`.
pub fn resolve(pd: &KnotoidPD, s: State) -> Resolution {
    assert_eq!(s.len(), pd.n(), "state length differs from crossing count");
    let table = pd.edge_table();
    let mut used: BTreeMap<i64, bool> = BTreeMap::new();
    // Follows the component from `start` (traversed in direction `forward`)
    // until it ends at an endpoint or returns to `start`.
    let trace = |start: i64, forward: bool, used: &mut BTreeMap<i64, bool>| {
        let mut arcs = Vec::new();
        let mut visits = Vec::new();
        let (mut e, mut fwd) = (start, forward);
        loop {
            used.insert(e, true);
            arcs.push(Arc { edge: e, forward: fwd });
            let end = if fwd { table.head_at.get(&e) } else { table.tail_at.get(&e) };
            let Some(&(c, slot)) = end else { break };
            visits.push((c, slot));
            let p = smoothing_partner(slot, s.get(c));
            let next = pd.crossing(c).0[p];
            let next_fwd = table.tail_at.get(&next) == Some(&(c, p));
            if next == start && next_fwd == forward {
                break;
            }
            e = next;
            fwd = next_fwd;
        }
        (arcs, visits)
    };
    let (segment, segment_visits) = match pd.leg_edge() {
        Some(leg) => {
            let (arcs, visits) = trace(leg, true, &mut used);
            (Some(arcs), visits)
        }
        None => (None, Vec::new()),
    };
    let mut circles = Vec::new();
    for e in pd.edge_labels() {
        if !used.contains_key(&e) {
            circles.push(trace(e, true, &mut used).0);
        }
    }
    let mut edge_comp = BTreeMap::new();
    if let Some(seg) = &segment {
        for a in seg {
            edge_comp.insert(a.edge, (Comp::Segment, a.forward));
        }
    }
    for (i, circ) in circles.iter().enumerate() {
        for a in circ {
            edge_comp.insert(a.edge, (Comp::Circle(i), a.forward));
        }
    }
    let sites = (0..pd.n())
        .map(|c| {
            let rec = pd.crossing(c).0;
            let other = if s.get(c) == 0 { 2 } else { 1 };
            [edge_comp[&rec[0]].0, edge_comp[&rec[other]].0]
        })
        .collect();
    Resolution { state: s, segment, circles, segment_visits, sites, edge_comp }
}

pub(crate) fn require_segment(pd: &KnotoidPD) -> Result<()> {
    if pd.has_open_component() {
        Ok(())
    } else {
        Err(Error::Validation("diagram has no open component".into()))
    }
}
