//! Exhaustive checks of the diameter claims over small parameter ranges.
//!
//! Each claim walks its parameter points, and every point where the claim's
//! hypothesis holds produces one [`VerificationOutcome`].

use std::collections::HashMap;
use std::fmt;

use monodigraph::walks::level_sets_pm1;
use monodigraph::{arith, curves, Diameter, Digraph, Field, Result, Vertex};
use serde::Serialize;

use crate::scan::{analyze, PairResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    LowerBound,
    SqrtBound,
    GcdBound,
    DiameterThreeCurve,
    Bound49,
    Bound13,
    Bound9,
    PrimeBound,
    PrimeSqrtBound,
    Prime19,
    Criterion,
    Levels,
}

impl Claim {
    pub const ALL: [Claim; 12] = [
        Claim::LowerBound,
        Claim::SqrtBound,
        Claim::GcdBound,
        Claim::DiameterThreeCurve,
        Claim::Bound49,
        Claim::Bound13,
        Claim::Bound9,
        Claim::PrimeBound,
        Claim::PrimeSqrtBound,
        Claim::Prime19,
        Claim::Criterion,
        Claim::Levels,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::LowerBound => "thm1.1-1",
            Claim::SqrtBound => "thm1.1-2",
            Claim::GcdBound => "thm1.1-3",
            Claim::DiameterThreeCurve => "thm1.1-4",
            Claim::Bound49 => "thm1.1-5a",
            Claim::Bound13 => "thm1.1-5b",
            Claim::Bound9 => "thm1.1-5c",
            Claim::PrimeBound => "thm1.2-1",
            Claim::PrimeSqrtBound => "thm1.2-2",
            Claim::Prime19 => "thm1.2-3",
            Claim::Criterion => "thm2.1",
            Claim::Levels => "levels",
        }
    }

    pub fn parse(id: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.id() == id)
    }

    fn over_primes(self) -> bool {
        matches!(
            self,
            Claim::PrimeBound | Claim::PrimeSqrtBound | Claim::Prime19 | Claim::Levels
        )
    }

    /// Largest field order (or prime) checked when no override is given.
    pub fn default_max(self, small: bool) -> u64 {
        let (s, big) = match self {
            Claim::LowerBound | Claim::SqrtBound | Claim::Bound49 | Claim::Bound13 | Claim::Bound9 => (27, 49),
            Claim::GcdBound => (32, 49),
            Claim::DiameterThreeCurve => (64, 81),
            Claim::PrimeBound | Claim::PrimeSqrtBound | Claim::Prime19 | Claim::Levels => (13, 23),
            Claim::Criterion => (16, 32),
        };
        if small {
            s
        } else {
            big
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Parameter range for a run. `None` fields fall back to the claim default.
#[derive(Clone, Copy, Debug, Default)]
pub struct Ranges {
    pub qmin: Option<u64>,
    pub qmax: Option<u64>,
    pub pmax: Option<u64>,
    /// Desk-scale defaults instead of the extended ones.
    pub small: bool,
}

impl Ranges {
    pub fn small() -> Ranges {
        Ranges {
            small: true,
            ..Ranges::default()
        }
    }

    fn orders(&self, claim: Claim) -> Vec<u64> {
        let lo = self.qmin.unwrap_or(2);
        if claim.over_primes() {
            let hi = self.pmax.or(self.qmax).unwrap_or(claim.default_max(self.small));
            let lo = if claim == Claim::Levels { lo.max(3) } else { lo };
            arith::primes_in(lo, hi)
        } else {
            let hi = self.qmax.unwrap_or(claim.default_max(self.small));
            arith::prime_powers_in(lo, hi)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub q: u32,
    pub m: u32,
    pub n: u32,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationOutcome {
    pub claim: &'static str,
    pub q: u32,
    pub m: u32,
    pub n: u32,
    pub pass: bool,
    pub expected: String,
    pub observed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub claim: &'static str,
    pub points: usize,
    pub failures: usize,
}

/// `d <= c sqrt(x) + 1`, decided on integers.
pub fn within_sqrt_bound(d: u32, c: u64, x: u64) -> bool {
    d <= 1 || ((d - 1) as u128).pow(2) <= (c as u128).pow(2) * x as u128
}

fn pow4_below(q: u64, r: u32) -> bool {
    (q as u128) > ((r as u128).saturating_sub(1)).pow(4)
}

/// Runs claims and caches diameters across them.
#[derive(Default)]
pub struct Verifier {
    fields: HashMap<u64, Field>,
    pairs: HashMap<(u64, u32, u32), PairResult>,
}

impl Verifier {
    pub fn new() -> Verifier {
        Verifier::default()
    }

    pub fn field(&mut self, q: u64) -> Result<Field> {
        if let Some(f) = self.fields.get(&q) {
            return Ok(f.clone());
        }
        let f = Field::of_order(q)?;
        self.fields.insert(q, f.clone());
        Ok(f)
    }

    /// Cached [`analyze`] for `m <= n`.
    pub fn pair(&mut self, q: u64, m: u32, n: u32) -> Result<PairResult> {
        let key = (q, m.min(n), m.max(n));
        if let Some(&r) = self.pairs.get(&key) {
            return Ok(r);
        }
        let field = self.field(q)?;
        let r = analyze(&field, m, n)?;
        self.pairs.insert(key, r);
        Ok(r)
    }

    /// Checks `claim` over `ranges`, handing each outcome to `sink`.
    pub fn run(
        &mut self,
        claim: Claim,
        ranges: &Ranges,
        sink: &mut dyn FnMut(&VerificationOutcome),
    ) -> Result<Summary> {
        let mut summary = Summary {
            claim: claim.id(),
            ..Summary::default()
        };
        let mut emit = |o: VerificationOutcome| {
            summary.points += 1;
            summary.failures += !o.pass as usize;
            sink(&o);
        };
        for q in ranges.orders(claim) {
            match claim {
                Claim::Criterion => self.check_criterion(q, &mut emit)?,
                Claim::Levels => self.check_levels(q, &mut emit)?,
                Claim::DiameterThreeCurve => self.check_curve_family(q, &mut emit)?,
                _ => self.check_pairs(claim, q, &mut emit)?,
            }
        }
        Ok(summary)
    }

    fn check_pairs(&mut self, claim: Claim, q: u64, emit: &mut dyn FnMut(VerificationOutcome)) -> Result<()> {
        let (p, e) = arith::prime_power(q).expect("orders are prime powers");
        let order = q - 1;
        for m in 1..q as u32 {
            for n in m..q as u32 {
                let hypothesis_needs_strong = !matches!(claim, Claim::GcdBound | Claim::PrimeBound);
                let both_coprime = arith::gcd(m as u64, order) == 1 && arith::gcd(n as u64, order) == 1;
                let (expected, applies) = match claim {
                    Claim::LowerBound => ("diameter >= 3".to_string(), true),
                    Claim::SqrtBound => {
                        let c = if e == 2 { 96 } else { 60 };
                        (format!("diameter <= {c} sqrt({}) + 1", n + 1), e >= 2)
                    }
                    Claim::GcdBound => {
                        let gm = arith::gcd(m as u64, order) == 1;
                        let gn = arith::gcd(n as u64, order) == 1;
                        let text = if gm && gn { "diameter = 3" } else { "diameter <= 4" };
                        (text.to_string(), gm || gn)
                    }
                    Claim::Bound49 => ("diameter <= 49".to_string(), q > (n as u64).pow(2)),
                    Claim::Bound13 => ("diameter <= 13".to_string(), pow4_below(q, m)),
                    Claim::Bound9 => ("diameter <= 9".to_string(), m == n && pow4_below(q, n)),
                    Claim::PrimeBound => {
                        let text = if m == n && n == p - 1 {
                            format!("diameter = {}", 2 * p - 1)
                        } else {
                            format!("diameter < {}", 2 * p - 1)
                        };
                        (text, true)
                    }
                    Claim::PrimeSqrtBound => {
                        let h = (p - 1) / 2;
                        let excluded = [(h, h), (h, p - 1), (p - 1, p - 1)].contains(&(m, n));
                        (format!("diameter <= 120 sqrt({m}) + 1"), !excluded)
                    }
                    Claim::Prime19 => (
                        "diameter <= 19".to_string(),
                        (p as u128) > ((m as u128) - 1).pow(3),
                    ),
                    _ => unreachable!("handled separately"),
                };
                if !applies {
                    continue;
                }
                let r = self.pair(q, m, n)?;
                if hypothesis_needs_strong && !r.strong {
                    continue;
                }
                let d = r.diameter;
                let pass = match (claim, d) {
                    (_, Diameter::Infinite) => false,
                    (Claim::LowerBound, Diameter::Finite(d)) => d >= 3,
                    (Claim::SqrtBound, Diameter::Finite(d)) => {
                        within_sqrt_bound(d, if e == 2 { 96 } else { 60 }, n as u64 + 1)
                    }
                    (Claim::GcdBound, Diameter::Finite(d)) => {
                        if both_coprime {
                            d == 3
                        } else {
                            d <= 4
                        }
                    }
                    (Claim::Bound49, Diameter::Finite(d)) => d <= 49,
                    (Claim::Bound13, Diameter::Finite(d)) => d <= 13,
                    (Claim::Bound9, Diameter::Finite(d)) => d <= 9,
                    (Claim::PrimeBound, Diameter::Finite(d)) => {
                        let top = 2 * p - 1;
                        d <= top && ((d == top) == (m == n && n == p - 1))
                    }
                    (Claim::PrimeSqrtBound, Diameter::Finite(d)) => within_sqrt_bound(d, 120, m as u64),
                    (Claim::Prime19, Diameter::Finite(d)) => d <= 19,
                    _ => unreachable!("handled separately"),
                };
                emit(outcome(claim, q, m, n, pass, expected, d.to_string()));
            }
        }
        Ok(())
    }

    /// `diam(D(q; 1, n)) = 3` whenever `p` does not divide `n` and
    /// `q > (n^2 - n + 1)^2`.
    fn check_curve_family(&mut self, q: u64, emit: &mut dyn FnMut(VerificationOutcome)) -> Result<()> {
        let (p, _) = arith::prime_power(q).expect("orders are prime powers");
        for n in 1..q as u32 {
            if n % p == 0 || q <= curves::diam3_threshold(n) {
                continue;
            }
            let d = self.pair(q, 1, n)?.diameter;
            let pass = d == Diameter::Finite(3);
            emit(outcome(
                Claim::DiameterThreeCurve,
                q,
                1,
                n,
                pass,
                "diameter = 3".into(),
                d.to_string(),
            ));
        }
        Ok(())
    }

    /// The subfield criterion against Tarjan, for every `1 <= m, n <= q - 1`.
    fn check_criterion(&mut self, q: u64, emit: &mut dyn FnMut(VerificationOutcome)) -> Result<()> {
        let field = self.field(q)?;
        for m in 1..q as u32 {
            for n in 1..q as u32 {
                let g = Digraph::monomial(field.clone(), m, n)?;
                let predicted = g.is_strong_by_criterion()?;
                let scc = g.tarjan_scc();
                let pass = predicted == scc.is_strong();
                emit(outcome(
                    Claim::Criterion,
                    q,
                    m,
                    n,
                    pass,
                    format!("strong = {predicted}"),
                    format!("strong = {} ({} components)", scc.is_strong(), scc.len()),
                ));
            }
        }
        Ok(())
    }

    /// Closed-form layers of `D(p; p-1, p-1)` against BFS from `(0, 0)`.
    fn check_levels(&mut self, p: u64, emit: &mut dyn FnMut(VerificationOutcome)) -> Result<()> {
        let field = self.field(p)?;
        let k = p as u32 - 1;
        let g = Digraph::monomial(field, k, k)?;
        let dm = g.bfs_distances(Vertex::new(0, 0));
        let ls = level_sets_pm1(p as u32)?;
        let mismatch = ls
            .sets
            .iter()
            .enumerate()
            .find(|(i, set)| dm.level(*i as u32) != **set)
            .map(|(i, _)| i);
        let ecc = dm.eccentricity();
        let pass = mismatch.is_none() && ecc == Some(2 * p as u32 - 1);
        let observed = match mismatch {
            Some(i) => format!("level {i} differs from BFS"),
            None => format!("{} levels match BFS", ls.sets.len()),
        };
        emit(outcome(
            Claim::Levels,
            p,
            k,
            k,
            pass,
            format!("{} closed-form levels", 2 * p),
            observed,
        ));
        Ok(())
    }
}

fn outcome(claim: Claim, q: u64, m: u32, n: u32, pass: bool, expected: String, observed: String) -> VerificationOutcome {
    let counterexample = (!pass).then(|| Counterexample {
        q: q as u32,
        m,
        n,
        observed: observed.clone(),
    });
    VerificationOutcome {
        claim: claim.id(),
        q: q as u32,
        m,
        n,
        pass,
        expected,
        observed,
        counterexample,
    }
}
