//! Homology ranks of the winding complex and the polynomials derived from them.

mod reduce;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Substitution, Var};
use crate::complex::TriGradedComplex;
use crate::diagram::KnotoidPD;
use crate::error::Result;
use crate::{LaurentPoly, Rational};

pub use reduce::reduce_complex;

/// Ranks of `H_{i,j}^k`, keyed by `(i, j, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    pub ranks: BTreeMap<(i64, i64, i64), usize>,
    pub n_plus: usize,
    pub n_minus: usize,
    /// SHA-256 of the diagram's PD JSON, when known.
    pub diagram_hash: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RanksJson {
    ranks: Vec<[i64; 4]>,
}

impl HomologyTable {
    /// `{"ranks":[[i,j,k,r],...]}` in increasing `(i, j, k)` order.
    pub fn to_json(&self) -> String {
        let ranks = self.ranks.iter().map(|(&(i, j, k), &r)| [i, j, k, r as i64]).collect();
        serde_json::to_string(&RanksJson { ranks }).expect("serializable")
    }

    pub fn from_json(text: &[u8]) -> Result<Self> {
        let raw: RanksJson = serde_json::from_slice(text)?;
        let mut t = HomologyTable::default();
        for [i, j, k, r] in raw.ranks {
            if r < 0 {
                return Err(crate::Error::Validation(format!("negative rank at ({i},{j},{k})")));
            }
            if r > 0 {
                t.ranks.insert((i, j, k), r as usize);
            }
        }
        Ok(t)
    }

    /// Records which diagram the table belongs to.
    pub fn tag_diagram(&mut self, pd: &KnotoidPD) {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(pd.to_json().as_bytes());
        self.diagram_hash = Some(digest.iter().map(|b| format!("{b:02x}")).collect());
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// `max k − min k` over nonzero entries.
    pub fn u_breadth(&self) -> i64 {
        let ks = self.ranks.keys().map(|&(_, _, k)| k);
        match (ks.clone().min(), ks.max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }
}

/// `dim C_i − rank d_i − rank d_{i−1}` in every `(q, u)` class, over ℚ.
pub fn homology_ranks(cx: &TriGradedComplex) -> HomologyTable {
    let jobs: Vec<((i64, i64), i64)> =
        cx.classes.iter().flat_map(|(&k, cls)| cls.diffs.keys().map(move |&i| (k, i))).collect();
    let ranks: BTreeMap<((i64, i64), i64), usize> =
        jobs.into_par_iter().map(|(k, i)| ((k, i), cx.classes[&k].diffs[&i].rank_in::<Rational>())).collect();
    let mut table =
        HomologyTable { ranks: BTreeMap::new(), n_plus: cx.n_plus, n_minus: cx.n_minus, diagram_hash: None };
    for (&(q, u), cls) in &cx.classes {
        for (&i, gens) in &cls.groups {
            let out = ranks.get(&((q, u), i)).copied().unwrap_or(0);
            let inc = ranks.get(&((q, u), i - 1)).copied().unwrap_or(0);
            let h = gens.len() - out - inc;
            if h > 0 {
                table.ranks.insert((i, q, u), h);
            }
        }
    }
    table
}

/// `W(t, q, u) = Σ rank · t^i q^j u^k`.
pub fn poincare(table: &HomologyTable) -> LaurentPoly {
    let vars = [Var::T, Var::Q, Var::U];
    LaurentPoly::from_terms(&vars, table.ranks.iter().map(|(&(i, j, k), &r)| (vec![i, j, k], r as i64)))
}

/// Graded Euler characteristic of the chain groups, `Σ (−1)^i q^j u^k dim C`.
pub fn euler_characteristic(cx: &TriGradedComplex) -> LaurentPoly {
    let vars = [Var::Q, Var::U];
    LaurentPoly::from_terms(
        &vars,
        cx.classes.iter().flat_map(|(&(q, u), cls)| {
            cls.groups.iter().map(move |(&i, g)| {
                let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                (vec![q, u], sign * g.len() as i64)
            })
        }),
    )
}

/// The invariants recovered from `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specializations {
    /// `Kh(t, q) = W(t, q, 1)`
    pub kh: LaurentPoly,
    /// `T(q, u) = W(−1, q, u)`
    pub turaev: LaurentPoly,
    /// `J(q) = Kh(−1, q)`
    pub jones: LaurentPoly,
    /// `T` with `u² = −q⁻³`
    pub jones_minus: LaurentPoly,
    /// `T` with `u² = −q³`
    pub jones_plus: LaurentPoly,
}

pub fn specialize(w: &LaurentPoly) -> Result<Specializations> {
    let kh = w.substitute(Substitution::UToOne)?;
    let turaev = w.substitute(Substitution::TToMinusOne)?;
    let jones = kh.substitute(Substitution::TToMinusOne)?;
    let jones_minus = turaev.substitute(Substitution::USquaredToMinusQInvCubed)?;
    let jones_plus = turaev.substitute(Substitution::USquaredToMinusQCubed)?;
    Ok(Specializations { kh, turaev, jones, jones_minus, jones_plus })
}
