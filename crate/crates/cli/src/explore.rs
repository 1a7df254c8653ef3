//! Observational scans for three open questions about monomial digraph
//! diameters. Nothing here proves anything; rows report what was computed.

use std::collections::BTreeMap;

use monodigraph::{arith, Diameter, Result};
use serde::Serialize;

use crate::verify::Verifier;

/// Largest divisor of `q - 1` divisible by no subfield index, if any.
pub fn problem1_r(p: u32, e: u32) -> Option<u64> {
    let q = (p as u64).pow(e);
    let indices = arith::proper_subfield_indices(p, e);
    arith::divisors(q - 1)
        .into_iter()
        .rev()
        .find(|&r| indices.iter().all(|&qd| r % qd != 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Problem1Row {
    pub q: u32,
    /// `None` serializes as "undefined".
    #[serde(serialize_with = "r_or_undefined")]
    pub r: Option<u64>,
    pub max_diameter: u32,
    pub maximizers: Vec<(u32, u32)>,
    pub diameter_rr: Option<u32>,
    pub equal: Option<bool>,
}

fn r_or_undefined<S: serde::Serializer>(r: &Option<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_u64(*r),
        None => s.serialize_str("undefined"),
    }
}

/// Max diameter over strong `D(q; m, n)`, `m <= n`, and its maximizers.
fn strong_maximum(v: &mut Verifier, q: u64, skip: Option<(u32, u32)>) -> Result<(u32, Vec<(u32, u32)>)> {
    let mut best = 0;
    let mut who = Vec::new();
    for m in 1..q as u32 {
        for n in m..q as u32 {
            if Some((m, n)) == skip {
                continue;
            }
            if let Diameter::Finite(d) = v.pair(q, m, n)?.diameter {
                if d > best {
                    best = d;
                    who.clear();
                }
                if d == best {
                    who.push((m, n));
                }
            }
        }
    }
    Ok((best, who))
}

/// Is the maximum over strong pairs attained at `(r, r)`? One row per
/// non-prime prime power in `lo..=hi`.
pub fn problem1(v: &mut Verifier, lo: u64, hi: u64) -> Result<Vec<Problem1Row>> {
    let mut rows = Vec::new();
    for q in arith::prime_powers_in(lo, hi) {
        let (p, e) = arith::prime_power(q).expect("prime power");
        if e < 2 {
            continue;
        }
        let (max_diameter, maximizers) = strong_maximum(v, q, None)?;
        let r = problem1_r(p, e);
        let diameter_rr = match r {
            Some(r) => v.pair(q, r as u32, r as u32)?.diameter.finite(),
            None => None,
        };
        rows.push(Problem1Row {
            q: q as u32,
            r,
            max_diameter,
            maximizers,
            diameter_rr,
            equal: diameter_rr.map(|d| d == max_diameter),
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Problem2Row {
    pub p: u32,
    pub max_diameter: u32,
    /// `(p + 3) / 2`
    pub bound: u32,
    pub within_bound: bool,
    pub maximizers: Vec<(u32, u32)>,
    /// Maximum equals the bound and is attained exactly at
    /// `((p-1)/2, (p-1)/2)` and `((p-1)/2, p-1)`.
    pub matches_expected: bool,
}

/// Max diameter over `(m, n) != (p-1, p-1)` against `(p + 3) / 2`, odd primes.
pub fn problem2(v: &mut Verifier, lo: u64, hi: u64) -> Result<Vec<Problem2Row>> {
    let mut rows = Vec::new();
    for p in arith::primes_in(lo.max(3), hi) {
        let p32 = p as u32;
        let (max_diameter, maximizers) = strong_maximum(v, p, Some((p32 - 1, p32 - 1)))?;
        let bound = (p32 + 3) / 2;
        let h = (p32 - 1) / 2;
        let mut expected = vec![(h, h), (h, p32 - 1)];
        expected.sort_unstable();
        expected.dedup();
        rows.push(Problem2Row {
            p: p32,
            max_diameter,
            bound,
            within_bound: max_diameter <= bound,
            matches_expected: max_diameter == bound && maximizers == expected,
            maximizers,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Problem3Class {
    pub gcd: u32,
    pub pairs: usize,
    pub diameters: Vec<u32>,
    /// At most two values, and consecutive when there are two.
    pub consecutive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Problem3Row {
    pub p: u32,
    pub classes: Vec<Problem3Class>,
    pub all_consecutive: bool,
}

/// Diameter values of `D(p; m, n)` grouped by `gcd(p - 1, m, n)`.
pub fn problem3(v: &mut Verifier, lo: u64, hi: u64) -> Result<Vec<Problem3Row>> {
    let mut rows = Vec::new();
    for p in arith::primes_in(lo, hi) {
        let mut groups: BTreeMap<u32, (usize, Vec<u32>)> = BTreeMap::new();
        for m in 1..p as u32 {
            for n in m..p as u32 {
                let g = arith::gcd(arith::gcd(p - 1, m as u64), n as u64) as u32;
                let d = v
                    .pair(p, m, n)?
                    .diameter
                    .finite()
                    .expect("prime-field monomial digraphs are strong");
                let entry = groups.entry(g).or_default();
                entry.0 += 1;
                entry.1.push(d);
            }
        }
        let classes: Vec<Problem3Class> = groups
            .into_iter()
            .map(|(gcd, (pairs, mut ds))| {
                ds.sort_unstable();
                ds.dedup();
                let consecutive = ds.len() == 1 || (ds.len() == 2 && ds[1] == ds[0] + 1);
                Problem3Class {
                    gcd,
                    pairs,
                    diameters: ds,
                    consecutive,
                }
            })
            .collect();
        rows.push(Problem3Row {
            p: p as u32,
            all_consecutive: classes.iter().all(|c| c.consecutive),
            classes,
        });
    }
    Ok(rows)
}
