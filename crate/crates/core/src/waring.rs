//! Waring numbers over finite fields.
//!
//! `gamma(r, q)` is the least `s` with every element a sum of `s` r-th powers;
//! `delta(r, q)` allows each term a sign. Both are computed by growing sumsets
//! of the power class `{x^r}` until they saturate.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// One imported upper bound whose hypothesis applies.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    /// Value of the bound, for display only; `satisfied` is decided exactly.
    pub value: f64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WaringResult {
    pub r: u32,
    pub q: u32,
    pub exists: bool,
    pub gamma: Option<u32>,
    pub delta: Option<u32>,
    pub bound_report: Vec<BoundCheck>,
}

fn check_r(r: u32, field: &Field) -> Result<()> {
    if r == 0 || r > field.q() - 1 {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as u64,
            lo: 1,
            hi: field.q() as u64 - 1,
        });
    }
    Ok(())
}

/// Existence criterion: `gamma(r, q)` exists iff no proper subfield index
/// `(q-1)/(p^d-1)` divides `r`.
pub fn gamma_exists(r: u32, field: &Field) -> Result<bool> {
    check_r(r, field)?;
    Ok(arith::proper_subfield_indices(field.p(), field.e())
        .into_iter()
        .all(|qd| !(r as u64).is_multiple_of(qd)))
}

/// Rounds of `S <- S + steps` starting from `{0}` until `S` is everything
/// (`Some(rounds)`) or stops growing (`None`). `steps` must contain 0.
fn saturate(field: &Field, steps: &[Elem]) -> Option<u32> {
    let q = field.q() as usize;
    let mut reach = FixedBitSet::with_capacity(q);
    reach.insert(0);
    let mut count = 1;
    for round in 1..=q as u32 {
        let mut next = reach.clone();
        for s in reach.ones() {
            for &c in steps {
                next.insert(field.add_codes(s as u32, c.0) as usize);
            }
        }
        let grown = next.count_ones(..);
        if grown == q {
            return Some(round);
        }
        if grown == count {
            return None;
        }
        count = grown;
        reach = next;
    }
    None
}

fn signed_steps(field: &Field, classes: &[Elem]) -> Vec<Elem> {
    let mut steps: Vec<Elem> = classes
        .iter()
        .flat_map(|&c| [c, field.neg(c)])
        .collect();
    steps.sort_unstable();
    steps.dedup();
    steps
}

pub fn waring_gamma(r: u32, field: &Field) -> Result<Option<u32>> {
    let classes = field.power_classes(r)?;
    Ok(saturate(field, &classes))
}

pub fn waring_delta(r: u32, field: &Field) -> Result<Option<u32>> {
    let classes = field.power_classes(r)?;
    Ok(saturate(field, &signed_steps(field, &classes)))
}

/// A shortest signed representation `a = sum eps_i y_i^r`, found breadth-first.
/// The empty representation stands for `a = 0`.
pub fn signed_representation(a: Elem, r: u32, field: &Field) -> Result<Option<Vec<(Sign, Elem)>>> {
    let classes = field.power_classes(r)?;
    let q = field.q() as usize;
    // r-th root for each nonzero power-class element.
    let mut root = vec![None; q];
    for x in field.elements() {
        root[field.pow(x, r as u64).0 as usize].get_or_insert(x);
    }
    let mut parent: Vec<Option<(u32, Sign, Elem)>> = vec![None; q];
    let mut seen = FixedBitSet::with_capacity(q);
    seen.insert(0);
    let mut frontier = vec![0u32];
    while !seen.contains(a.0 as usize) && !frontier.is_empty() {
        let mut next = Vec::new();
        for &s in &frontier {
            for &c in classes.iter().filter(|c| !c.is_zero()) {
                for sign in [Sign::Plus, Sign::Minus] {
                    let term = match sign {
                        Sign::Plus => c,
                        Sign::Minus => field.neg(c),
                    };
                    let t = field.add_codes(s, term.0) as usize;
                    if !seen.contains(t) {
                        seen.insert(t);
                        parent[t] = Some((s, sign, root[c.0 as usize].expect("class has a root")));
                        next.push(t as u32);
                    }
                }
            }
        }
        frontier = next;
    }
    if !seen.contains(a.0 as usize) {
        return Ok(None);
    }
    let mut terms = Vec::new();
    let mut cur = a.0 as usize;
    while let Some((prev, sign, y)) = parent[cur] {
        terms.push((sign, y));
        cur = prev as usize;
    }
    terms.reverse();
    Ok(Some(terms))
}

/// A solution of `x_1^r - x_2^r + x_3^r - ... + (-1)^(k+1) x_k^r = a`, built by
/// placing a shortest signed representation of `a` at positions whose
/// alternating sign matches, zeros elsewhere. Requires `k >= 2 delta(r, q)`.
pub fn alternating_solution(a: Elem, r: u32, k: usize, field: &Field) -> Result<Vec<Elem>> {
    let delta = waring_delta(r, field)?.ok_or(Error::NotExists { r, q: field.q() })?;
    let needed = 2 * delta as usize;
    if k < needed {
        return Err(Error::KTooSmall { k, needed });
    }
    let terms = signed_representation(a, r, field)?
        .expect("delta exists, so every element has a signed representation");
    let mut xs = vec![Elem::ZERO; k];
    let mut pos = 0;
    // In characteristic 2 both signs are the same element.
    let char2 = field.p() == 2;
    for (sign, y) in terms {
        loop {
            let slot_sign = if pos % 2 == 0 { Sign::Plus } else { Sign::Minus };
            pos += 1;
            if char2 || slot_sign == sign {
                xs[pos - 1] = y;
                break;
            }
        }
    }
    debug_assert!(pos <= k);
    Ok(xs)
}

/// Evaluates `x_1^r - x_2^r + ... + (-1)^(k+1) x_k^r`.
pub fn alternating_sum(xs: &[Elem], r: u32, field: &Field) -> Elem {
    xs.iter().enumerate().fold(Elem::ZERO, |acc, (i, &x)| {
        let t = field.pow(x, r as u64);
        if i % 2 == 0 {
            field.add(acc, t)
        } else {
            field.sub(acc, t)
        }
    })
}

/// `value^2 <= c^2 * radicand`, i.e. `value <= c * sqrt(radicand)`.
fn le_c_sqrt(value: u64, c: u64, radicand: u64) -> bool {
    (value as u128).pow(2) <= (c as u128).pow(2) * radicand as u128
}

/// Checks every imported bound whose hypothesis applies to `(r, q)`.
pub fn check_bounds(result: &WaringResult, field: &Field) -> Result<Vec<BoundCheck>> {
    let (Some(gamma), Some(delta)) = (result.gamma, result.delta) else {
        return Err(Error::NotExists {
            r: result.r,
            q: result.q,
        });
    };
    let (r, q, p, e) = (result.r as u64, result.q as u64, field.p() as u64, field.e());
    let gamma = gamma as u64;
    let delta = delta as u64;
    let mut out = Vec::new();
    if e == 2 {
        out.push(BoundCheck {
            name: "gamma <= 16 sqrt(r+1) [e = 2]",
            value: 16.0 * ((r + 1) as f64).sqrt(),
            satisfied: le_c_sqrt(gamma, 16, r + 1),
        });
    }
    if e >= 3 {
        out.push(BoundCheck {
            name: "gamma <= 10 sqrt(r+1) [e >= 3]",
            value: 10.0 * ((r + 1) as f64).sqrt(),
            satisfied: le_c_sqrt(gamma, 10, r + 1),
        });
    }
    if r * r < q {
        out.push(BoundCheck {
            name: "gamma <= 8 [r < sqrt(q)]",
            value: 8.0,
            satisfied: gamma <= 8,
        });
    }
    if e == 1 {
        let nonzero_powers = (q - 1) / arith::gcd(r, q - 1);
        if nonzero_powers > 2 {
            out.push(BoundCheck {
                name: "delta <= 20 sqrt(r) [q prime, |{x^r : x != 0}| > 2]",
                value: 20.0 * (r as f64).sqrt(),
                satisfied: le_c_sqrt(delta, 20, r),
            });
        }
    }
    if (q as u128) > ((r - 1) as u128).pow(4) {
        out.push(BoundCheck {
            name: "gamma <= 2 [q > (r-1)^4]",
            value: 2.0,
            satisfied: gamma <= 2,
        });
    }
    if e == 1 && (p as u128) > ((r - 1) as u128).pow(3) {
        out.push(BoundCheck {
            name: "gamma <= 3 [q prime, q > (r-1)^3]",
            value: 3.0,
            satisfied: gamma <= 3,
        });
    }
    Ok(out)
}

/// Computes existence, `gamma`, `delta` and the bound report.
pub fn waring(r: u32, field: &Field) -> Result<WaringResult> {
    let exists = gamma_exists(r, field)?;
    let gamma = waring_gamma(r, field)?;
    let delta = waring_delta(r, field)?;
    let mut result = WaringResult {
        r,
        q: field.q(),
        exists,
        gamma,
        delta,
        bound_report: Vec::new(),
    };
    if gamma.is_some() && delta.is_some() {
        result.bound_report = check_bounds(&result, field)?;
    }
    Ok(result)
}
