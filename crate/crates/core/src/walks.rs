//! Explicit walks that certify distance upper bounds.
//!
//! A walk of length `k` from `(a, b)` is determined by the first coordinates
//! `x_1, ..., x_k` of the vertices it visits: the `i`-th vertex is
//! `(x_i, f(x_{i-1}, x_i) - y_{i-1})`. The constructors below choose the `x_i`
//! so that the walk ends at a requested target, then re-derive the vertex
//! sequence and check every arc before handing out a certificate.

use serde::{Serialize, Serializer};

use crate::arith;
use crate::digraph::{Digraph, DigraphKind, Vertex};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::waring;

/// A vertex sequence witnessing `dist(start, end) <= xs.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCertificate {
    pub q: u32,
    pub kind: DigraphKind,
    pub start: Vertex,
    pub end: Vertex,
    pub xs: Vec<Elem>,
    /// `vertices[0] = start`, `vertices[i] = (xs[i-1], ...)`.
    pub vertices: Vec<Vertex>,
    pub valid: bool,
}

impl WalkCertificate {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

impl Serialize for WalkCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record<'a> {
            q: u32,
            m: Option<u32>,
            n: Option<u32>,
            start: Vertex,
            end: Vertex,
            xs: &'a [Elem],
            length: usize,
            valid: bool,
        }
        let (m, n) = match self.kind {
            DigraphKind::Monomial { m, n } => (Some(m), Some(n)),
            DigraphKind::General => (None, None),
        };
        Record {
            q: self.q,
            m,
            n,
            start: self.start,
            end: self.end,
            xs: &self.xs,
            length: self.xs.len(),
            valid: self.valid,
        }
        .serialize(s)
    }
}

/// Follows the walk from `start` whose vertices have first coordinates `xs`
/// and checks each step against the arc rule. `end` is wherever it lands.
pub fn walk_from_solution(g: &Digraph, start: Vertex, xs: &[Elem]) -> WalkCertificate {
    let q = g.q();
    let mut vertices = Vec::with_capacity(xs.len() + 1);
    vertices.push(start);
    let mut valid = !xs.is_empty() && start.a.0 < q && start.b.0 < q;
    if valid {
        for &x in xs {
            if x.0 >= q {
                valid = false;
                break;
            }
            let prev = *vertices.last().expect("nonempty");
            vertices.push(g.successor(prev, x));
        }
        valid &= vertices.windows(2).all(|w| g.has_arc(w[0], w[1]));
    }
    WalkCertificate {
        q,
        kind: g.kind(),
        start,
        end: *vertices.last().expect("nonempty"),
        xs: xs.to_vec(),
        vertices,
        valid,
    }
}

/// Builds the certificate for `xs` and rejects it unless it is a valid walk
/// ending at `to`.
fn certify(g: &Digraph, from: Vertex, to: Vertex, xs: Vec<Elem>, what: &str) -> Result<WalkCertificate> {
    let cert = walk_from_solution(g, from, &xs);
    if !cert.valid || cert.end != to {
        return Err(Error::CertificateRejected(format!(
            "{what}: walk from {from} with xs {:?} ends at {} instead of {to}",
            xs.iter().map(|x| x.0).collect::<Vec<_>>(),
            cert.end
        )));
    }
    Ok(cert)
}

fn check_vertex(g: &Digraph, v: Vertex) -> Result<()> {
    g.field().elem(v.a.0)?;
    g.field().elem(v.b.0)?;
    Ok(())
}

/// Length-3 or length-4 walks when `m` or `n` is coprime to `q - 1`.
///
/// With `gcd(m, q-1) = 1` the walk has the shape `(0, x_2, 1, u)`, with
/// `gcd(n, q-1) = 1` the shape `(1, x_2, 0, u)`; `x_2` is the unique root.
/// When both hold, the shape is `(x_1, 1, u)` if `a = 0` and `(x_1, 0, u)`
/// otherwise.
pub fn construct_walk_gcd(g: &Digraph, from: Vertex, to: Vertex) -> Result<WalkCertificate> {
    let (m, n) = g.exponents()?;
    check_vertex(g, from)?;
    check_vertex(g, to)?;
    let f = g.field();
    let order = f.q() as u64 - 1;
    let m_unit = arith::gcd(m as u64, order) == 1;
    let n_unit = arith::gcd(n as u64, order) == 1;
    let (a, b, u, v) = (from.a, from.b, to.a, to.b);
    let un = f.pow(u, n as u64);
    let unique_root = |y: Elem, r: u32| f.root(y, r as u64).expect("power map is a bijection");

    let xs = if m_unit && n_unit {
        if a.is_zero() {
            // -x_1^m + u^n - b = v
            let x1 = unique_root(f.sub(f.sub(un, b), v), m);
            vec![x1, Elem::ONE, u]
        } else {
            // a^m x_1^n - b = v
            let am = f.pow(a, m as u64);
            let x1 = unique_root(f.div(f.add(v, b), am)?, n);
            vec![x1, Elem::ZERO, u]
        }
    } else if m_unit {
        // -x_2^m + u^n + b = v
        let x2 = unique_root(f.sub(f.add(un, b), v), m);
        vec![Elem::ZERO, x2, Elem::ONE, u]
    } else if n_unit {
        // -a^m + x_2^n + b = v
        let x2 = unique_root(f.add(f.sub(v, b), f.pow(a, m as u64)), n);
        vec![Elem::ONE, x2, Elem::ZERO, u]
    } else {
        return Err(Error::GcdHypothesisFails);
    };
    certify(g, from, to, xs, "gcd walk")
}

/// Smallest nonzero `x` with `coef * x^r` outside `{0, 1}`.
fn witness(f: &Field, r: u32, coef: Elem) -> Option<Elem> {
    if coef.is_zero() {
        return None;
    }
    f.nonzero().find(|&x| f.mul(coef, f.pow(x, r as u64)) != Elem::ONE)
}

/// The endpoints `(a, b)`, `(u, v)` of a walk problem.
#[derive(Clone, Copy, Debug)]
struct Endpoints {
    a: Elem,
    b: Elem,
    u: Elem,
    v: Elem,
}

impl Endpoints {
    /// Image under `(x, y) -> (l x, l^(m+n) y)`.
    fn scaled(self, f: &Field, m: u32, n: u32, l: Elem) -> Endpoints {
        let lmn = f.pow(l, (m + n) as u64);
        Endpoints {
            a: f.mul(l, self.a),
            b: f.mul(lmn, self.b),
            u: f.mul(l, self.u),
            v: f.mul(lmn, self.v),
        }
    }
}

/// One step of a case ladder: either a finished solution or a request to
/// rescale the endpoints first.
enum Step {
    Leaf { xs: Vec<Elem>, case: &'static str },
    Normalize(Elem),
}

/// Prime-field context shared by both ladders.
struct Ladder<'a> {
    f: &'a Field,
    p: u32,
    m: u32,
    n: u32,
    /// `(p - 1) / 2`
    h: u32,
}

/// Sets `xs[i-1]` for `lo <= i <= hi` to 1 when `i mod 4` is in `ones`,
/// else 0. Indices are 1-based to match the walk coordinates.
fn pattern(xs: &mut [Elem], lo: usize, hi: usize, ones: [usize; 2]) {
    for i in lo..=hi {
        xs[i - 1] = if ones.contains(&(i % 4)) { Elem::ONE } else { Elem::ZERO };
    }
}

/// Which branch of a case ladder produced a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderOutcome {
    pub certificate: WalkCertificate,
    pub case: &'static str,
    /// Product of the rescalings applied before the leaf was reached.
    pub scale: Elem,
}

impl<'a> Ladder<'a> {
    fn new(g: &'a Digraph) -> Result<Ladder<'a>> {
        let (m, n) = g.exponents()?;
        let f = g.field();
        if !f.is_prime_field() {
            return Err(Error::NotPrimeField(f.q()));
        }
        let p = f.p();
        Ok(Ladder {
            f,
            p,
            m,
            n,
            h: (p - 1) / 2,
        })
    }

    fn res(&self, x: Elem) -> u32 {
        x.0
    }

    fn internal(&self, case: &str, t: u32) -> Error {
        Error::CertificateRejected(format!(
            "case {case}: residue {t} falls outside every branch (p = {})",
            self.p
        ))
    }

    /// Solves `a^m x_1^n - x_1^m x_2^n + ... - x_{2p-3}^m x_{2p-2}^n
    /// + x_{2p-2}^m u^n = b + v` for `xs = (x_1, ..., x_{2p-2}, u)`.
    fn odd_step(&self, e: Endpoints) -> Result<Step> {
        let (p, h, f) = (self.p as usize, self.h, self.f);
        let k = 2 * p - 1;
        let mut xs = vec![Elem::ZERO; k];
        xs[k - 1] = e.u;
        let s = self.res(f.add(e.b, e.v));
        let case = if s == 0 {
            "0"
        } else if s >= h + 2 {
            pattern(&mut xs, 1, 4 * (p - s as usize), [0, 3]);
            "1.1"
        } else if s <= h {
            pattern(&mut xs, 1, 4 * s as usize - 1, [2, 3]);
            "1.2"
        } else if e.u.is_zero() {
            pattern(&mut xs, 1, 2 * p - 2, [0, 3]);
            "1.3.1"
        } else if e.a.is_zero() {
            pattern(&mut xs, 1, 2 * p - 2, [1, 2]);
            "1.3.2"
        } else if e.a != Elem::ONE {
            return Ok(Step::Normalize(f.inv(e.a)?));
        } else {
            let t = self.res(f.sub(f.add(e.b, e.v), f.pow(e.u, self.n as u64)));
            let case = if t == 0 {
                "1.3.3.1"
            } else if t <= h {
                pattern(&mut xs, 1, 4 * (t as usize - 1) + 1, [0, 1]);
                "1.3.3.2"
            } else if t >= h + 2 {
                pattern(&mut xs, 1, 4 * (p - t as usize), [0, 3]);
                "1.3.3.3"
            } else {
                return Err(self.internal("1.3.3", t));
            };
            xs[k - 2] = Elem::ONE;
            case
        };
        Ok(Step::Leaf { xs, case })
    }

    /// Solves `-a^m x_1^n + x_1^m x_2^n - ... - x_{2p-4}^m x_{2p-3}^n
    /// + x_{2p-3}^m u^n = v - b` for `xs = (x_1, ..., x_{2p-3}, u)`.
    fn even_step(&self, e: Endpoints) -> Result<Step> {
        let (p, h, f) = (self.p as usize, self.h, self.f);
        let (m, n) = (self.m, self.n);
        let k = 2 * p - 2;
        let mut xs = vec![Elem::ZERO; k];
        xs[k - 1] = e.u;
        let s = self.res(f.sub(e.v, e.b));
        let one = Elem::ONE;
        let case = if s == 0 {
            "0"
        } else if s < h {
            pattern(&mut xs, 1, 4 * s as usize, [0, 3]);
            "2.1"
        } else if s >= h + 2 {
            pattern(&mut xs, 1, 4 * (p - s as usize) - 1, [2, 3]);
            "2.2"
        } else if s == h {
            if e.a.is_zero() {
                pattern(&mut xs, 1, 2 * p - 3, [1, 2]);
                "2.3.1"
            } else if n != self.p - 1 {
                // Rescaling to a = 1 would change v - b and could move the
                // endpoints into case 2.4, so a^m is kept in the witness.
                let am = f.pow(e.a, m as u64);
                let beta = witness(f, n, am).expect("n != p-1 leaves two nonzero n-th powers");
                xs[0] = beta;
                let t = self.res(f.add(f.sub(e.v, e.b), f.mul(am, f.pow(beta, n as u64))));
                if t == 0 {
                    "2.3.2.1.1"
                } else if t < h {
                    pattern(&mut xs, 2, 4 * t as usize, [0, 3]);
                    "2.3.2.1.2"
                } else if t >= h + 2 {
                    pattern(&mut xs, 2, 4 * (p - t as usize) + 1, [0, 1]);
                    "2.3.2.1.3"
                } else {
                    return Err(self.internal("2.3.2.1", t));
                }
            } else if !e.u.is_zero() {
                pattern(&mut xs, 1, 2 * p - 3, [0, 3]);
                "2.3.2.2.1"
            } else {
                let alpha = witness(f, m, one).expect("m != p-1 when n = p-1");
                xs[0] = Elem::ZERO;
                xs[1] = alpha;
                xs[2] = one;
                let t = self.res(f.add(f.sub(e.v, e.b), f.pow(alpha, m as u64)));
                if t == 0 {
                    "2.3.2.2.2.1"
                } else if t < h {
                    pattern(&mut xs, 4, 4 * t as usize, [0, 3]);
                    "2.3.2.2.2.2"
                } else if t >= h + 2 {
                    pattern(&mut xs, 4, 4 * (p - t as usize) + 3, [2, 3]);
                    "2.3.2.2.2.3"
                } else {
                    return Err(self.internal("2.3.2.2.2", t));
                }
            }
        } else if e.u.is_zero() {
            pattern(&mut xs, 1, 2 * p - 3, [2, 3]);
            "2.4.1"
        } else if m != self.p - 1 {
            let un = f.pow(e.u, n as u64);
            let alpha = witness(f, m, un).expect("m != p-1 leaves two nonzero m-th powers");
            xs[2 * p - 4] = alpha;
            let t = self.res(f.sub(f.sub(e.v, e.b), f.mul(f.pow(alpha, m as u64), un)));
            if t == 0 {
                "2.4.2.1.1"
            } else if t < h {
                pattern(&mut xs, 1, 4 * t as usize, [0, 3]);
                "2.4.2.1.2"
            } else if t >= h + 2 {
                pattern(&mut xs, 1, 4 * (p - t as usize) - 1, [2, 3]);
                "2.4.2.1.3"
            } else {
                return Err(self.internal("2.4.2.1", t));
            }
        } else if !e.a.is_zero() {
            pattern(&mut xs, 1, 2 * p - 5, [0, 1]);
            "2.4.2.2.1"
        } else {
            let beta = witness(f, n, one).expect("n != p-1 when m = p-1");
            xs[2 * p - 6] = one;
            xs[2 * p - 5] = beta;
            xs[2 * p - 4] = Elem::ZERO;
            let t = self.res(f.sub(f.sub(e.v, e.b), f.pow(beta, n as u64)));
            if t == 0 {
                "2.4.2.2.2.1"
            } else if t < h {
                pattern(&mut xs, 1, 4 * t as usize - 2, [1, 2]);
                "2.4.2.2.2.2"
            } else if t >= h + 2 {
                pattern(&mut xs, 1, 4 * (p - t as usize) - 1, [2, 3]);
                "2.4.2.2.2.3"
            } else {
                return Err(self.internal("2.4.2.2.2", t));
            }
        };
        Ok(Step::Leaf { xs, case })
    }

    /// Runs a ladder, rescaling the endpoints whenever a branch asks for a
    /// normalized coordinate, and maps the solution back to the original
    /// endpoints.
    fn solve(
        &self,
        g: &Digraph,
        from: Vertex,
        to: Vertex,
        step: impl Fn(&Self, Endpoints) -> Result<Step>,
    ) -> Result<LadderOutcome> {
        let f = self.f;
        let mut ends = Endpoints {
            a: from.a,
            b: from.b,
            u: to.a,
            v: to.b,
        };
        let mut scale = Elem::ONE;
        // Only case 1.3.3 rescales, and it leaves a = 1 afterwards.
        for _ in 0..2 {
            match step(self, ends)? {
                Step::Leaf { xs, case } => {
                    let back = f.inv(scale)?;
                    let xs = xs.into_iter().map(|x| f.mul(back, x)).collect();
                    let certificate = certify(g, from, to, xs, case)?;
                    return Ok(LadderOutcome {
                        certificate,
                        case,
                        scale,
                    });
                }
                Step::Normalize(l) => {
                    ends = ends.scaled(f, self.m, self.n, l);
                    scale = f.mul(scale, l);
                }
            }
        }
        Err(Error::CertificateRejected(format!(
            "normalization did not settle for {from} -> {to}"
        )))
    }
}

/// Exhaustive search over walks of exactly length `k` ending at `to`.
fn search_exact(g: &Digraph, from: Vertex, to: Vertex, k: usize) -> Result<WalkCertificate> {
    let q = g.q() as u64;
    let free = (k - 1) as u32;
    for code in 0..q.pow(free) {
        let mut xs: Vec<Elem> = (0..free)
            .map(|i| Elem((code / q.pow(i) % q) as u32))
            .collect();
        xs.push(to.a);
        let cert = walk_from_solution(g, from, &xs);
        if cert.valid && cert.end == to {
            return Ok(cert);
        }
    }
    Err(Error::CertificateRejected(format!(
        "no walk of length {k} from {from} to {to}"
    )))
}

/// A walk of length exactly `2p - 1` in `D(p; m, n)`, with its case label.
pub fn construct_walk_2p_minus_1_traced(g: &Digraph, from: Vertex, to: Vertex) -> Result<LadderOutcome> {
    let ladder = Ladder::new(g)?;
    check_vertex(g, from)?;
    check_vertex(g, to)?;
    if ladder.p == 2 {
        return Ok(LadderOutcome {
            certificate: search_exact(g, from, to, 3)?,
            case: "search",
            scale: Elem::ONE,
        });
    }
    ladder.solve(g, from, to, Ladder::odd_step)
}

/// A walk of length exactly `2p - 1` between any two vertices of `D(p; m, n)`.
pub fn construct_walk_2p_minus_1(g: &Digraph, from: Vertex, to: Vertex) -> Result<WalkCertificate> {
    construct_walk_2p_minus_1_traced(g, from, to).map(|o| o.certificate)
}

/// A walk of length exactly `2p - 2` in `D(p; m, n)`, with its case label.
pub fn construct_walk_2p_minus_2_traced(g: &Digraph, from: Vertex, to: Vertex) -> Result<LadderOutcome> {
    let ladder = Ladder::new(g)?;
    check_vertex(g, from)?;
    check_vertex(g, to)?;
    if ladder.m == ladder.p - 1 && ladder.n == ladder.p - 1 {
        return Err(Error::EqualityCase);
    }
    ladder.solve(g, from, to, Ladder::even_step)
}

/// A walk of length exactly `2p - 2`, available unless `m = n = p - 1`.
pub fn construct_walk_2p_minus_2(g: &Digraph, from: Vertex, to: Vertex) -> Result<WalkCertificate> {
    construct_walk_2p_minus_2_traced(g, from, to).map(|o| o.certificate)
}

fn exceeds_fourth_power(q: u32, r: u32) -> bool {
    q as u128 > ((r as u128).saturating_sub(1)).pow(4)
}

/// A walk of length 13 when `q > (m-1)^4`: `x_1 = x_4 = x_7 = x_10 = 0`,
/// `x_3 = x_6 = x_9 = x_12 = 1`, and
/// `x_2^m - x_5^m + x_8^m - x_11^m = v - u^n + b`.
pub fn construct_walk_13(g: &Digraph, from: Vertex, to: Vertex) -> Result<WalkCertificate> {
    let (m, n) = g.exponents()?;
    check_vertex(g, from)?;
    check_vertex(g, to)?;
    let f = g.field();
    if !exceeds_fourth_power(f.q(), m) {
        return Err(Error::HypothesisFails(format!("q = {} <= (m-1)^4", f.q())));
    }
    let target = f.add(f.sub(to.b, f.pow(to.a, n as u64)), from.b);
    let ys = waring::alternating_solution(target, m, 4, f)
        .map_err(|e| Error::HypothesisFails(format!("no 4-term alternating m-th power sum: {e}")))?;
    let mut xs = vec![Elem::ZERO; 13];
    for (slot, y) in [2usize, 5, 8, 11].into_iter().zip(ys) {
        xs[slot - 1] = y;
    }
    for i in [3, 6, 9, 12] {
        xs[i - 1] = Elem::ONE;
    }
    xs[12] = to.a;
    certify(g, from, to, xs, "13-walk")
}

/// A walk of length 9 in `D(q; n, n)` when `q > (n-1)^4`:
/// `x_1 = x_4 = x_5 = x_8 = 0`, `x_3 = x_7 = 1`, `x_2^n + x_6^n = v + b`.
pub fn construct_walk_9(g: &Digraph, from: Vertex, to: Vertex) -> Result<WalkCertificate> {
    let (m, n) = g.exponents()?;
    check_vertex(g, from)?;
    check_vertex(g, to)?;
    if m != n {
        return Err(Error::HypothesisFails(format!("m = {m} differs from n = {n}")));
    }
    let f = g.field();
    if !exceeds_fourth_power(f.q(), n) {
        return Err(Error::HypothesisFails(format!("q = {} <= (n-1)^4", f.q())));
    }
    let target = f.add(to.b, from.b);
    let (x2, x6) = f
        .elements()
        .find_map(|x2| {
            let rest = f.sub(target, f.pow(x2, n as u64));
            f.root(rest, n as u64).map(|x6| (x2, x6))
        })
        .ok_or_else(|| Error::HypothesisFails(format!("{target} is not a sum of two n-th powers")))?;
    let mut xs = vec![Elem::ZERO; 9];
    xs[1] = x2;
    xs[2] = Elem::ONE;
    xs[5] = x6;
    xs[6] = Elem::ONE;
    xs[8] = to.a;
    certify(g, from, to, xs, "9-walk")
}

/// Distance layers `N_0, ..., N_{2p-1}` from `(0, 0)` in `D(p; p-1, p-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSets {
    pub p: u32,
    pub sets: Vec<Vec<Vertex>>,
}

/// Closed-form layers: `N_{4t} = {(0, t)}`, `N_{4t+1} = (*, -t)` for
/// `0 <= t <= (p-1)/2`, and `N_{4t+2} = (*, t+1)`, `N_{4t+3} = {(0, -t-1)}`
/// for `0 <= t <= (p-3)/2`, where `(*, c)` is `{(x, c) : x != 0}`.
pub fn level_sets_pm1(p: u32) -> Result<LevelSets> {
    if !arith::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p == 2 {
        return Err(Error::OutOfRange {
            what: "p",
            value: 2,
            lo: 3,
            hi: u32::MAX as u64,
        });
    }
    let res = |c: i64| c.rem_euclid(p as i64) as u32;
    let star = |c: i64| -> Vec<Vertex> { (1..p).map(|x| Vertex::new(x, res(c))).collect() };
    let point = |c: i64| vec![Vertex::new(0, res(c))];
    let mut sets = vec![Vec::new(); 2 * p as usize];
    for t in 0..=(p as i64 - 1) / 2 {
        sets[4 * t as usize] = point(t);
        sets[4 * t as usize + 1] = star(-t);
    }
    for t in 0..=(p as i64 - 3) / 2 {
        sets[4 * t as usize + 2] = star(t + 1);
        sets[4 * t as usize + 3] = point(-t - 1);
    }
    for s in &mut sets {
        s.sort_unstable();
    }
    Ok(LevelSets { p, sets })
}
