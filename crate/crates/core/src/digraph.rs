//! Implicit digraphs `D(q; f)` on `GF(q)^2`.
//!
//! There is an arc `(x1, x2) -> (y1, y2)` iff `x2 + y2 = f(x1, y1)`. Every
//! vertex has exactly `q` out-neighbors (one per `y1`) and `q` in-neighbors
//! (one per `x1`). Arcs are recomputed from a `q x q` table of `f` values;
//! nothing of size `q^3` is ever stored.

use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Largest field order for which a digraph may be built (`q^2` vertices).
pub const MAX_DIGRAPH_ORDER: u32 = 4096;

const UNREACHABLE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DigraphKind {
    /// `f(x, y) = x^m y^n`.
    Monomial { m: u32, n: u32 },
    /// Arbitrary `f`, given as a table.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub a: Elem,
    pub b: Elem,
}

impl Vertex {
    pub fn new(a: u32, b: u32) -> Vertex {
        Vertex {
            a: Elem(a),
            b: Elem(b),
        }
    }

    /// Dense index `a * q + b`.
    #[inline]
    pub fn index(self, q: u32) -> usize {
        (self.a.0 * q + self.b.0) as usize
    }

    #[inline]
    pub fn from_index(idx: usize, q: u32) -> Vertex {
        Vertex::new(idx as u32 / q, idx as u32 % q)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.a.0)?;
        t.serialize_element(&self.b.0)?;
        t.end()
    }
}

/// A diameter value; `Infinite` when the digraph is not strong.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Diameter {
    Finite(u32),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<u32> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Diameter::Infinite
    }

    pub fn max(self, other: Diameter) -> Diameter {
        match (self, other) {
            (Diameter::Finite(a), Diameter::Finite(b)) => Diameter::Finite(a.max(b)),
            _ => Diameter::Infinite,
        }
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u32(*d),
            Diameter::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Shortest-walk lengths from one source.
#[derive(Clone, Debug)]
pub struct DistanceMap {
    source: Vertex,
    q: u32,
    dist: Vec<u32>,
}

impl DistanceMap {
    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn get(&self, v: Vertex) -> Option<u32> {
        let d = self.dist[v.index(self.q)];
        (d != UNREACHABLE).then_some(d)
    }

    /// Raw distances by dense index; `u32::MAX` marks unreachable vertices.
    pub fn as_slice(&self) -> &[u32] {
        &self.dist
    }

    /// Out-eccentricity of the source, `None` if something is unreachable.
    pub fn eccentricity(&self) -> Option<u32> {
        let max = *self.dist.iter().max().expect("nonempty");
        (max != UNREACHABLE).then_some(max)
    }

    /// Vertices at exactly distance `k`, ascending by dense index.
    pub fn level(&self, k: u32) -> Vec<Vertex> {
        self.dist
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == k)
            .map(|(i, _)| Vertex::from_index(i, self.q))
            .collect()
    }
}

/// Strong components as sorted dense-index lists, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongComponents {
    pub components: Vec<Vec<u32>>,
}

impl StrongComponents {
    pub fn is_strong(&self) -> bool {
        self.components.len() == 1
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Component sizes, ascending.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.components.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterReport {
    pub diameter: Diameter,
    /// Number of BFS sources examined.
    pub sources: usize,
}

#[derive(Clone, Debug)]
pub struct Digraph {
    field: Field,
    kind: DigraphKind,
    /// `f_table[x1 * q + y1] = f(x1, y1)`.
    f_table: Vec<u32>,
}

impl Digraph {
    /// `D(q; m, n)` with `1 <= m, n <= q - 1`. `m > n` is accepted as is.
    pub fn monomial(field: Field, m: u32, n: u32) -> Result<Digraph> {
        let q = field.q();
        check_order(q)?;
        for (what, v) in [("m", m), ("n", n)] {
            if v == 0 || v > q - 1 {
                return Err(Error::OutOfRange {
                    what,
                    value: v as u64,
                    lo: 1,
                    hi: q as u64 - 1,
                });
            }
        }
        let pm: Vec<Elem> = field.elements().map(|x| field.pow(x, m as u64)).collect();
        let pn: Vec<Elem> = field.elements().map(|y| field.pow(y, n as u64)).collect();
        let mut f_table = Vec::with_capacity((q * q) as usize);
        for &xm in &pm {
            for &yn in &pn {
                f_table.push(field.mul(xm, yn).0);
            }
        }
        Ok(Digraph {
            field,
            kind: DigraphKind::Monomial { m, n },
            f_table,
        })
    }

    /// `D(q; f)` for an arbitrary `f`, given row-major by `(x1, y1)` as field codes.
    pub fn general(field: Field, table: Vec<u32>) -> Result<Digraph> {
        let q = field.q();
        check_order(q)?;
        let expected = (q * q) as usize;
        if table.len() != expected {
            return Err(Error::BadTable {
                got: table.len(),
                expected,
            });
        }
        if let Some(&bad) = table.iter().find(|&&c| c >= q) {
            return Err(Error::InvalidElement { code: bad, q });
        }
        Ok(Digraph {
            field,
            kind: DigraphKind::General,
            f_table: table,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn kind(&self) -> DigraphKind {
        self.kind
    }

    /// `(m, n)` for monomial digraphs.
    pub fn exponents(&self) -> Result<(u32, u32)> {
        match self.kind {
            DigraphKind::Monomial { m, n } => Ok((m, n)),
            DigraphKind::General => Err(Error::NotMonomial),
        }
    }

    pub fn vertex_count(&self) -> usize {
        (self.q() as usize).pow(2)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(|i| Vertex::from_index(i, self.q()))
    }

    #[inline]
    pub fn f(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.f_table[(x.0 * self.q() + y.0) as usize])
    }

    pub fn has_arc(&self, from: Vertex, to: Vertex) -> bool {
        self.field.add(from.b, to.b) == self.f(from.a, to.a)
    }

    /// The unique out-neighbor of `v` with first coordinate `y1`.
    #[inline]
    pub fn successor(&self, v: Vertex, y1: Elem) -> Vertex {
        Vertex {
            a: y1,
            b: self.field.sub(self.f(v.a, y1), v.b),
        }
    }

    /// The unique in-neighbor of `v` with first coordinate `x1`.
    #[inline]
    pub fn predecessor(&self, v: Vertex, x1: Elem) -> Vertex {
        Vertex {
            a: x1,
            b: self.field.sub(self.f(x1, v.a), v.b),
        }
    }

    pub fn out_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.field.elements().map(|y1| self.successor(v, y1)).collect()
    }

    pub fn in_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.field.elements().map(|x1| self.predecessor(v, x1)).collect()
    }

    /// Every arc, tail-major in dense order.
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        self.vertices()
            .flat_map(|v| self.out_neighbors(v).into_iter().map(move |w| (v, w)))
            .collect()
    }

    /// Strong connectivity from the subfield-index criterion: strong iff no
    /// `(q-1)/(p^d-1)`, `d | e`, `d < e`, divides `gcd(q-1, m, n)`.
    pub fn is_strong_by_criterion(&self) -> Result<bool> {
        let (m, n) = self.exponents()?;
        let f = &self.field;
        let g = arith::gcd(arith::gcd(f.q() as u64 - 1, m as u64), n as u64);
        Ok(arith::proper_subfield_indices(f.p(), f.e())
            .into_iter()
            .all(|qd| !g.is_multiple_of(qd)))
    }

    /// `(a, b) -> (lambda a, lambda^(m+n) b)`.
    pub fn apply_automorphism(&self, lambda: Elem, v: Vertex) -> Result<Vertex> {
        let (m, n) = self.exponents()?;
        if lambda.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let f = &self.field;
        Ok(Vertex {
            a: f.mul(lambda, v.a),
            b: f.mul(f.pow(lambda, (m + n) as u64), v.b),
        })
    }

    /// One vertex per class under the scalings `(a, b) -> (l a, l^(m+n) b)`:
    /// every `(1, b)`, `(0, 0)`, and the smallest `(0, b)` of each orbit of
    /// `GF(q)*` under multiplication by `{l^(m+n)}`. Ascending dense order.
    pub fn orbit_representatives(&self) -> Result<Vec<Vertex>> {
        let (m, n) = self.exponents()?;
        let f = &self.field;
        let q = f.q();
        let mut multipliers: Vec<Elem> = f.nonzero().map(|l| f.pow(l, (m + n) as u64)).collect();
        multipliers.sort_unstable();
        multipliers.dedup();

        let mut reps = vec![Vertex::new(0, 0)];
        let mut covered = vec![false; q as usize];
        for b in f.nonzero() {
            if covered[b.0 as usize] {
                continue;
            }
            reps.push(Vertex { a: Elem::ZERO, b });
            for &h in &multipliers {
                covered[f.mul(h, b).0 as usize] = true;
            }
        }
        reps.extend(f.elements().map(|b| Vertex { a: Elem::ONE, b }));
        Ok(reps)
    }

    pub fn bfs_distances(&self, source: Vertex) -> DistanceMap {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue = Vec::with_capacity(self.vertex_count());
        self.bfs_into(source.index(self.q()), &mut dist, &mut queue);
        DistanceMap {
            source,
            q: self.q(),
            dist,
        }
    }

    /// Level-order BFS into caller-owned buffers. Returns the source's
    /// out-eccentricity, or `None` if some vertex is unreachable.
    fn bfs_into(&self, source: usize, dist: &mut [u32], queue: &mut Vec<u32>) -> Option<u32> {
        let q = self.q() as usize;
        dist.fill(UNREACHABLE);
        queue.clear();
        dist[source] = 0;
        queue.push(source as u32);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head] as usize;
            head += 1;
            let d = dist[v] + 1;
            let (x1, x2) = (v / q, (v % q) as u32);
            let row = &self.f_table[x1 * q..(x1 + 1) * q];
            for (y1, &fv) in row.iter().enumerate() {
                let w = y1 * q + self.field.sub_codes(fv, x2) as usize;
                if dist[w] == UNREACHABLE {
                    dist[w] = d;
                    queue.push(w as u32);
                }
            }
        }
        if queue.len() == dist.len() {
            Some(dist[*queue.last().expect("source is queued") as usize])
        } else {
            None
        }
    }

    fn diameter_from_sources(&self, sources: &[usize]) -> Diameter {
        let n = self.vertex_count();
        sources
            .par_iter()
            .map_init(
                || (vec![UNREACHABLE; n], Vec::with_capacity(n)),
                |(dist, queue), &s| match self.bfs_into(s, dist, queue) {
                    Some(e) => Diameter::Finite(e),
                    None => Diameter::Infinite,
                },
            )
            .reduce(|| Diameter::Finite(0), Diameter::max)
    }

    /// Exact diameter. Monomial digraphs only search from orbit
    /// representatives; general ones from every vertex.
    pub fn diameter(&self) -> Diameter {
        self.diameter_report().diameter
    }

    pub fn diameter_report(&self) -> DiameterReport {
        let q = self.q();
        let sources: Vec<usize> = match self.orbit_representatives() {
            Ok(reps) => reps.into_iter().map(|v| v.index(q)).collect(),
            Err(_) => (0..self.vertex_count()).collect(),
        };
        DiameterReport {
            diameter: self.diameter_from_sources(&sources),
            sources: sources.len(),
        }
    }

    /// Diameter from a BFS at every vertex, without orbit reduction.
    pub fn diameter_all_sources(&self) -> Diameter {
        let sources: Vec<usize> = (0..self.vertex_count()).collect();
        self.diameter_from_sources(&sources)
    }

    /// Tarjan's algorithm, iterative, over the implicit arc set.
    pub fn tarjan_scc(&self) -> StrongComponents {
        let q = self.q() as usize;
        let n = self.vertex_count();
        let mut index = vec![UNREACHABLE; n];
        let mut low = vec![0u32; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<u32> = Vec::new();
        // (vertex, next y1 to explore)
        let mut calls: Vec<(u32, u32)> = Vec::new();
        let mut next_index = 0u32;
        let mut components = Vec::new();

        let head = |v: usize, y1: usize| -> usize {
            let (x1, x2) = (v / q, (v % q) as u32);
            y1 * q + self.field.sub_codes(self.f_table[x1 * q + y1], x2) as usize
        };

        for root in 0..n {
            if index[root] != UNREACHABLE {
                continue;
            }
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root as u32);
            on_stack[root] = true;
            calls.push((root as u32, 0));

            while let Some(&mut (v, ref mut next)) = calls.last_mut() {
                let v = v as usize;
                if (*next as usize) < q {
                    let w = head(v, *next as usize);
                    *next += 1;
                    if index[w] == UNREACHABLE {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w as u32);
                        on_stack[w] = true;
                        calls.push((w as u32, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                calls.pop();
                if let Some(&(parent, _)) = calls.last() {
                    let parent = parent as usize;
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w as usize] = false;
                        comp.push(w);
                        if w as usize == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
        components.sort_unstable_by_key(|c| c[0]);
        StrongComponents { components }
    }
}

fn check_order(q: u32) -> Result<()> {
    if q > MAX_DIGRAPH_ORDER {
        return Err(Error::FieldTooLarge {
            q: q as u64,
            cap: MAX_DIGRAPH_ORDER as u64,
        });
    }
    Ok(())
}
