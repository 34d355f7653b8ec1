//! Plain `2ⁿ` state sums: Kauffman bracket, Jones and Turaev polynomials,
//! and the refined polynomials of planar knotoids.
//!
//! Components of each state are found by a union-find of edge labels and the
//! segment is walked separately here, so these sums do not share code with
//! the chain complex and can serve as its Euler-characteristic check.

mod refined;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::algebra::Var;
use crate::complex::MuSource;
use crate::diagram::{KnotoidPD, SlotRoles};
use crate::error::{Error, Result};
use crate::resolution::{canonical_trace, ShortcutTrace, State, MAX_CROSSINGS};
use crate::LaurentPoly;

pub use refined::{refined_bracket_bullet, refined_bracket_bullet_with, refined_turaev, refined_turaev_with};

/// Largest diagram the state sums will enumerate.
pub const MAX_STATESUM_CROSSINGS: usize = 30;

/// Where each edge enters and leaves a crossing.
struct Ends {
    /// edge → (crossing, slot) where the edge arrives.
    head: HashMap<i64, (usize, usize)>,
    /// edge → (crossing, slot) where the edge departs.
    tail: HashMap<i64, (usize, usize)>,
    roles: Vec<SlotRoles>,
}

impl Ends {
    fn new(pd: &KnotoidPD) -> Self {
        let mut head = HashMap::new();
        let mut tail = HashMap::new();
        let roles: Vec<SlotRoles> = (0..pd.n()).map(|c| SlotRoles::for_sign(pd.sign(c))).collect();
        for (c, rec) in pd.crossings().iter().enumerate() {
            for (slot, &e) in rec.0.iter().enumerate() {
                if roles[c].is_incoming(slot) {
                    head.insert(e, (c, slot));
                } else {
                    tail.insert(e, (c, slot));
                }
            }
        }
        Ends { head, tail, roles }
    }
}

/// The strand end joined to `slot` by the smoothing `bit`.
fn joined(slot: usize, bit: u8) -> usize {
    match (bit, slot) {
        (0, 0) => 1,
        (0, 1) => 0,
        (0, 2) => 3,
        (0, 3) => 2,
        (_, 0) => 3,
        (_, 3) => 0,
        (_, 1) => 2,
        _ => 1,
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Number of components of the resolution `s`.
fn component_count(pd: &KnotoidPD, labels: &[i64], index: &HashMap<i64, usize>, s: State) -> usize {
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    let mut count = labels.len();
    for (c, rec) in pd.crossings().iter().enumerate() {
        let bit = s.get(c);
        for slot in 0..4 {
            let other = joined(slot, bit);
            if other < slot {
                continue;
            }
            let a = find(&mut parent, index[&rec.0[slot]]);
            let b = find(&mut parent, index[&rec.0[other]]);
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
    }
    count
}

/// Walks the segment of state `s` from the leg, returning each edge with its
/// direction (true = along the diagram) and the arrival slots at crossings.
fn walk_segment(pd: &KnotoidPD, ends: &Ends, s: State) -> (Vec<(i64, bool)>, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    let mut visits = Vec::new();
    let Some(mut e) = pd.leg_edge() else { return (edges, visits) };
    let mut forward = true;
    loop {
        edges.push((e, forward));
        let end = if forward { ends.head.get(&e) } else { ends.tail.get(&e) };
        let Some(&(c, slot)) = end else { break };
        visits.push((c, slot));
        let out = joined(slot, s.get(c));
        e = pd.crossing(c).0[out];
        // Leaving through an incoming slot means walking that edge backwards.
        forward = !ends.roles[c].is_incoming(out);
        if edges.len() > 2 * pd.edge_labels().len() + 2 {
            unreachable!("segment walk did not terminate");
        }
    }
    (edges, visits)
}

/// Prepared u-grading rule for a diagram.
enum Mu {
    None,
    Local,
    Trace { trace: Vec<(i64, i8)>, k_alpha: i64 },
}

impl Mu {
    fn prepare(pd: &KnotoidPD, source: &MuSource) -> Result<Self> {
        if !pd.has_open_component() {
            return Err(Error::MuUnavailable("the diagram has no segment component".into()));
        }
        let trace = match source {
            MuSource::Combinatorial => {
                if !pd.is_single_segment() {
                    return Err(Error::MuUnavailable(
                        "the local formula needs a knotoid without closed components".into(),
                    ));
                }
                return Ok(Mu::Local);
            }
            MuSource::Trace(t) => t.trace.clone(),
            MuSource::Canonical => canonical_trace(pd)?.trace,
        };
        let k_alpha = ShortcutTrace { trace: trace.clone() }.k_dot_alpha(pd)?;
        Ok(Mu::Trace { trace, k_alpha })
    }

    fn value(&self, pd: &KnotoidPD, ends: &Ends, s: State) -> i64 {
        match self {
            Mu::None => 0,
            Mu::Local => {
                let (_, visits) = walk_segment(pd, ends, s);
                visits
                    .iter()
                    .map(|&(c, slot)| {
                        let bit = s.get(c);
                        let sign = pd.sign(c);
                        let active = (bit == 0 && sign < 0) || (bit == 1 && sign > 0);
                        if !active {
                            return 0;
                        }
                        let roles = ends.roles[c];
                        let phi = if roles.is_incoming(slot) { 1 } else { -1 };
                        let lambda = if roles.is_over(slot) { 1 } else { -1 };
                        let parity = if bit == 0 { 1 } else { -1 };
                        parity * phi * lambda
                    })
                    .sum()
            }
            Mu::Trace { trace, k_alpha } => {
                let (edges, _) = walk_segment(pd, ends, s);
                let dir: HashMap<i64, bool> = edges.into_iter().collect();
                let ks: i64 = trace
                    .iter()
                    .filter_map(|(e, sign)| {
                        dir.get(e).map(|&f| if f { *sign as i64 } else { -(*sign as i64) })
                    })
                    .sum();
                ks - k_alpha
            }
        }
    }
}

/// Counts states by `(‖s‖, μ(s), |s|)`.
fn state_census(pd: &KnotoidPD, mu: &Mu) -> Result<BTreeMap<(usize, i64, usize), i64>> {
    let n = pd.n();
    if n > MAX_STATESUM_CROSSINGS.min(MAX_CROSSINGS) {
        return Err(Error::Operation(format!(
            "{n} crossings exceeds the state-sum limit of {MAX_STATESUM_CROSSINGS}"
        )));
    }
    let labels = pd.edge_labels();
    let index: HashMap<i64, usize> = labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let ends = Ends::new(pd);
    let census = (0u64..1 << n)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, bits| {
            let s = State::new(bits, n);
            let key = (s.ones(), mu.value(pd, &ends, s), component_count(pd, &labels, &index, s));
            *acc.entry(key).or_insert(0i64) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(census)
}

/// `−A² − A⁻²` in the given variables.
pub(crate) fn loop_value(vars: &[Var]) -> LaurentPoly {
    LaurentPoly::monomial(vars, &[(Var::A, 2)], -1) + LaurentPoly::monomial(vars, &[(Var::A, -2)], -1)
}

/// `(−A³)^{−wr}`.
pub(crate) fn writhe_factor(vars: &[Var], writhe: i64) -> LaurentPoly {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    LaurentPoly::monomial(vars, &[(Var::A, -3 * writhe)], sign)
}

fn a_sum(pd: &KnotoidPD, census: &BTreeMap<(usize, i64, usize), i64>, vars: &[Var]) -> LaurentPoly {
    let delta = loop_value(vars);
    let mut powers = vec![LaurentPoly::one(vars)];
    let mut total = LaurentPoly::zero(vars);
    for (&(ones, mu, comps), &count) in census {
        while powers.len() < comps {
            let next = powers.last().unwrap().clone() * delta.clone();
            powers.push(next);
        }
        let sigma = pd.n() as i64 - 2 * ones as i64;
        let mut mono = vec![(Var::A, sigma)];
        if vars.contains(&Var::U) {
            mono.push((Var::U, mu));
        }
        total = total + LaurentPoly::monomial(vars, &mono, count) * powers[comps - 1].clone();
    }
    total
}

/// `⟨K⟩ = Σ_s A^{σ_s} (−A² − A⁻²)^{|s|−1}`.
pub fn kauffman_bracket(pd: &KnotoidPD) -> Result<LaurentPoly> {
    let census = state_census(pd, &Mu::None)?;
    Ok(a_sum(pd, &census, &[Var::A]))
}

/// `(−A³)^{−wr} ⟨K⟩`.
pub fn jones_a(pd: &KnotoidPD) -> Result<LaurentPoly> {
    Ok(writhe_factor(&[Var::A], pd.writhe()) * kauffman_bracket(pd)?)
}

/// Turaev polynomial in `A` and `u`.
pub fn turaev_au(pd: &KnotoidPD, source: &MuSource) -> Result<LaurentPoly> {
    let census = state_census(pd, &Mu::prepare(pd, source)?)?;
    let vars = [Var::U, Var::A];
    Ok(writhe_factor(&vars, pd.writhe()) * a_sum(pd, &census, &vars))
}

/// Turaev polynomial in `q = −A⁻²` and `u`.
pub fn turaev_qu(pd: &KnotoidPD, source: &MuSource) -> Result<LaurentPoly> {
    let census = state_census(pd, &Mu::prepare(pd, source)?)?;
    let vars = [Var::Q, Var::U];
    let q_plus_inv =
        LaurentPoly::monomial(&vars, &[(Var::Q, 1)], 1) + LaurentPoly::monomial(&vars, &[(Var::Q, -1)], 1);
    let mut powers = vec![LaurentPoly::one(&vars)];
    let mut total = LaurentPoly::zero(&vars);
    for (&(ones, mu, comps), &count) in &census {
        while powers.len() < comps {
            let next = powers.last().unwrap().clone() * q_plus_inv.clone();
            powers.push(next);
        }
        let sign = if ones % 2 == 0 { count } else { -count };
        total = total
            + LaurentPoly::monomial(&vars, &[(Var::Q, ones as i64), (Var::U, mu)], sign)
                * powers[comps - 1].clone();
    }
    let (np, nm) = (pd.n_plus() as i64, pd.n_minus() as i64);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    Ok(LaurentPoly::monomial(&vars, &[(Var::Q, np - 2 * nm)], sign) * total)
}
