//! Refined polynomials of knotoids in ℝ², from explicit polylines.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{loop_value, writhe_factor};
use crate::algebra::Var;
use crate::diagram::{Embedding, GeometricDiagram};
use crate::error::{Error, Result};
use crate::geometry::{default_shortcut, surrounds, WindingFrame};
use crate::resolution::State;
use crate::{LaurentPoly, Point};

/// Per-state data: `(σ_s, Δw_L, Δw_H, e_s, f_s)`.
type Census = BTreeMap<(i64, i64, i64, usize, usize), i64>;

fn census(emb: &Embedding, shortcut: &[Point]) -> Result<Census> {
    if !emb.pd.is_single_segment() {
        return Err(Error::Operation("refined polynomials need a single-segment knotoid".into()));
    }
    let n = emb.pd.n();
    if n > super::MAX_STATESUM_CROSSINGS {
        return Err(Error::Operation(format!("{n} crossings exceeds the state-sum limit")));
    }
    let frame = WindingFrame::new(emb, shortcut.to_vec())?;
    let entries: Result<Vec<_>> = (0u64..1 << n)
        .into_par_iter()
        .map(|bits| {
            let s = State::new(bits, n);
            let res = frame.resolution(s)?;
            let (dl, dh) = frame.pair_of(&res)?;
            let leg = res.segment[0];
            let mut f = 0;
            for c in &res.circles {
                if surrounds(c, leg, emb.tolerance)? {
                    f += 1;
                }
            }
            Ok((s.sigma(), dl, dh, res.circles.len() - f, f))
        })
        .collect();
    let mut out = Census::new();
    for key in entries? {
        *out.entry(key).or_insert(0) += 1;
    }
    Ok(out)
}

fn assemble(emb: &Embedding, census: &Census, vars: &[Var]) -> LaurentPoly {
    let delta = loop_value(vars);
    let bullet = vars.contains(&Var::B);
    let mut total = LaurentPoly::zero(vars);
    for (&(sigma, dl, dh, e, f), &count) in census {
        let (loops, surrounding) = if bullet { (e, f) } else { (e + f, 0) };
        let term = LaurentPoly::monomial(vars, &[(Var::A, sigma), (Var::L, dl), (Var::H, dh)], count)
            * delta.pow(loops as u32);
        total = total
            + if surrounding > 0 {
                term * LaurentPoly::monomial(vars, &[(Var::B, surrounding as i64)], 1)
            } else {
                term
            };
    }
    writhe_factor(vars, emb.pd.writhe()) * total
}

/// `T*(A, ℓ, h)` with respect to the given shortcut.
pub fn refined_turaev_with(emb: &Embedding, shortcut: &[Point]) -> Result<LaurentPoly> {
    Ok(assemble(emb, &census(emb, shortcut)?, &[Var::A, Var::L, Var::H]))
}

/// `[K]_•(A, B, ℓ, h)` with respect to the given shortcut. A circle counts
/// towards `B` when it winds around the leg.
pub fn refined_bracket_bullet_with(emb: &Embedding, shortcut: &[Point]) -> Result<LaurentPoly> {
    Ok(assemble(emb, &census(emb, shortcut)?, &[Var::A, Var::B, Var::L, Var::H]))
}

/// `T*(A, ℓ, h)` using the default shortcut.
pub fn refined_turaev(geom: &GeometricDiagram) -> Result<LaurentPoly> {
    let emb = geom.embed()?;
    refined_turaev_with(&emb, &default_shortcut(&emb)?)
}

/// `[K]_•(A, B, ℓ, h)` using the default shortcut.
pub fn refined_bracket_bullet(geom: &GeometricDiagram) -> Result<LaurentPoly> {
    let emb = geom.embed()?;
    refined_bracket_bullet_with(&emb, &default_shortcut(&emb)?)
}
