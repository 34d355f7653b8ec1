//! Knot diagrams from Dowker–Thistlethwaite codes.

use super::{CrossingRecord, KnotoidPD};
use crate::error::{Error, Result};

/// Decodes the letter form of a one-component DT code (as used by the
/// Hoste–Thistlethwaite tables), e.g. `"kaKdgfhijbce"`.
///
/// The first three letters give the crossing count, the number of
/// components and the component length; each further letter encodes the
/// even number `2·(index + 1)`, uppercase meaning negative.
pub fn dt_from_letters(code: &str) -> Result<Vec<i64>> {
    let code = code.split('.').next().unwrap_or("");
    let chars: Vec<char> = code.chars().collect();
    if chars.len() < 3 || !chars.iter().all(|c| c.is_ascii_alphabetic()) {
        return Err(Error::Syntax(format!("bad DT letter code {code:?}")));
    }
    let idx = |c: char| (c.to_ascii_lowercase() as u8 - b'a') as i64 + 1;
    let n = idx(chars[0]) as usize;
    if idx(chars[1]) != 1 || chars.len() != n + 3 {
        return Err(Error::Syntax(format!("{code:?} is not a one-component code")));
    }
    Ok(chars[3..]
        .iter()
        .map(|&c| {
            let v = 2 * idx(c);
            if c.is_ascii_uppercase() {
                -v
            } else {
                v
            }
        })
        .collect())
}

fn records(dt: &[i64], signs: &[i8]) -> Vec<CrossingRecord> {
    let m = 2 * dt.len() as i64;
    let next = |e: i64| e % m + 1;
    dt.iter()
        .enumerate()
        .map(|(i, &e)| {
            let odd = 2 * i as i64 + 1;
            let (over, under) = if e > 0 { (odd, e) } else { (e.abs(), odd) };
            if signs[i] > 0 {
                CrossingRecord([under, next(over), next(under), over])
            } else {
                CrossingRecord([under, over, next(under), next(over)])
            }
        })
        .collect()
}

/// Builds a closed diagram from a DT code.
///
/// Edge `p` is the edge entering the `p`-th passage. A positive even entry
/// means the odd passage at that crossing is the over-passage. The planar
/// embedding is recovered by searching crossing handedness for a planar
/// assignment, with the first crossing fixed positive; this reproduces the
/// KnotTheory/KnotInfo PD codes.
pub fn knot_from_dt(dt: &[i64]) -> Result<KnotoidPD> {
    let n = dt.len();
    let mut seen = vec![false; 2 * n + 1];
    for &e in dt {
        let v = e.unsigned_abs() as usize;
        if !v.is_multiple_of(2) || v == 0 || v > 2 * n || seen[v] {
            return Err(Error::Syntax(format!("{dt:?} is not a DT code")));
        }
        seen[v] = true;
    }
    if n == 0 {
        return KnotoidPD::new(vec![], vec![], vec![vec![1]], None);
    }
    let closed = vec![(1..=2 * n as i64).collect::<Vec<_>>()];
    for mask in 0u64..(1u64 << (n - 1)) {
        let signs: Vec<i8> =
            (0..n).map(|i| if i > 0 && mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 }).collect();
        let recs = records(dt, &signs);
        if let Ok(pd) = KnotoidPD::new(recs, vec![], closed.clone(), None) {
            return Ok(pd);
        }
    }
    Err(Error::Validation(format!("DT code {dt:?} has no planar realization")))
}
