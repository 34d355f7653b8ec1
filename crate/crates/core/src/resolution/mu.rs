use serde::{Deserialize, Serialize};

use super::{require_segment, resolve, Comp, Resolution, State};
use crate::diagram::KnotoidPD;
use crate::error::{Error, Result};

/// Signed intersections of a shortcut with the diagram edges, leg to head.
///
/// An entry `(e, +1)` means edge `e` crosses the shortcut from its right to
/// its left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShortcutTrace {
    pub trace: Vec<(i64, i8)>,
}

impl ShortcutTrace {
    pub fn parse(text: &[u8]) -> Result<Self> {
        let t: ShortcutTrace = serde_json::from_slice(text)?;
        if let Some(&(e, s)) = t.trace.iter().find(|(_, s)| *s != 1 && *s != -1) {
            return Err(Error::Validation(format!("trace entry on edge {e} has sign {s}")));
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// `K·α`: signed count of intersections with every component of the
    /// diagram. Counting closed components too keeps μ even when a closed
    /// component separates the endpoints.
    pub fn k_dot_alpha(&self, pd: &KnotoidPD) -> Result<i64> {
        let labels = pd.edge_labels();
        let mut sum = 0;
        for &(e, s) in &self.trace {
            if !labels.contains(&e) {
                return Err(Error::UnknownEdge(e));
            }
            sum += s as i64;
        }
        Ok(sum)
    }
}

/// `μ(s)` from the local crossing contributions of the canonical shortcut.
///
/// Each visit of the segment to a crossing `c`, arriving along arc `γ`,
/// contributes `(−1)^{s(c)} φ λ` when `sign(c) = (−1)^{s(c)+1}`, where
/// `φ = ±1` records whether `γ` keeps the diagram's orientation and
/// `λ = ±1` whether `γ` is part of the over-strand.
pub fn mu_combinatorial(pd: &KnotoidPD, s: State) -> Result<i64> {
    if !pd.is_single_segment() {
        return Err(Error::MuUnavailable(
            "the local formula needs a knotoid without closed components; supply a shortcut trace".into(),
        ));
    }
    Ok(mu_from_visits(pd, &resolve(pd, s)))
}

pub(crate) fn mu_from_visits(pd: &KnotoidPD, r: &Resolution) -> i64 {
    let s = r.state;
    let mut mu = 0;
    for &(c, slot) in &r.segment_visits {
        let bit = s.get(c);
        let active = if bit == 0 { pd.sign(c) < 0 } else { pd.sign(c) > 0 };
        if !active {
            continue;
        }
        let roles = pd.slot_roles(c);
        // Arrival slot is the head of γ exactly when γ is traversed forward.
        let phi = if roles.is_incoming(slot) { 1 } else { -1 };
        let lambda = if roles.is_over(slot) { 1 } else { -1 };
        let parity = if bit == 0 { 1 } else { -1 };
        mu += parity * phi * lambda;
    }
    mu
}

/// `μ(s) = k_s·α − K·α` for an explicit shortcut `α`.
pub fn mu_from_shortcut(pd: &KnotoidPD, trace: &ShortcutTrace, resolution: &Resolution) -> Result<i64> {
    require_segment(pd)?;
    let k_alpha = trace.k_dot_alpha(pd)?;
    let mut ks_alpha = 0;
    for &(e, sign) in &trace.trace {
        match resolution.edge_component(e) {
            Some((Comp::Segment, fwd)) => ks_alpha += if fwd { sign as i64 } else { -(sign as i64) },
            Some(_) => {}
            None => return Err(Error::UnknownEdge(e)),
        }
    }
    Ok(ks_alpha - k_alpha)
}

/// Trace of the shortcut obtained by pushing the open component slightly to
/// its right.
///
/// Where the segment passes under a crossing the push-off crosses the
/// over-strand on edge `b`; where it passes over, it crosses the
/// under-strand on `a` (positive crossing) or `c` (negative crossing). The
/// push-off is an honest shortcut in any diagram, so this also serves
/// multi-knotoids.
pub fn canonical_trace(pd: &KnotoidPD) -> Result<ShortcutTrace> {
    require_segment(pd)?;
    let table = pd.edge_table();
    let mut trace = Vec::new();
    for &e in pd.open() {
        let Some(&(c, slot)) = table.head_at.get(&e) else { continue };
        let rec = pd.crossing(c).0;
        let roles = pd.slot_roles(c);
        let positive = pd.sign(c) > 0;
        let entry = if !roles.is_over(slot) {
            (rec[1], if positive { -1 } else { 1 })
        } else if positive {
            (rec[0], 1)
        } else {
            (rec[2], -1)
        };
        trace.push(entry);
    }
    Ok(ShortcutTrace { trace })
}
