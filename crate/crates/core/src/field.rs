//! Exact arithmetic in GF(p^e).
//!
//! Elements are encoded as integer codes `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_0 + c_1 t + ... + c_{e-1} t^{e-1}` is the residue modulo the field
//! modulus. Multiplication goes through exp/log tables over a fixed primitive
//! element; addition is digit-wise (tabulated for small extension fields).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Largest order accepted by [`Field::new`].
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

/// Extension fields up to this order get full q x q addition/subtraction tables.
const ARITH_TABLE_MAX: u32 = 1024;

/// A field element, identified by its integer code in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field GF(p^e) with its modulus and exp/log tables.
#[derive(Clone)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low degree first; `None` for prime fields.
    modulus: Option<Vec<u32>>,
    primitive: Elem,
    /// `exp[i] = g^i` for `i` in `[0, q-1)`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
    sub_table: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl Field {
    /// GF(p^e) with the default modulus (the lexicographically smallest monic
    /// irreducible, comparing coefficients from the constant term up).
    pub fn new(p: u32, e: u32) -> Result<Field> {
        Field::with_cap(p, e, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u32, e: u32, cap: u64) -> Result<Field> {
        let q = check_order(p, e, cap)?;
        let modulus = if e == 1 {
            None
        } else {
            Some(
                poly::first_irreducible(p, e)
                    .ok_or_else(|| Error::InvalidModulus(format!("no irreducible of degree {e}")))?,
            )
        };
        Ok(Field::build(p, e, q, modulus))
    }

    /// GF(p^e) built over an explicit modulus, given as `e + 1` coefficients
    /// `c_0, ..., c_e` with `c_e = 1`.
    pub fn with_modulus(p: u32, e: u32, modulus: &[u32]) -> Result<Field> {
        let q = check_order(p, e, DEFAULT_FIELD_CAP)?;
        if modulus.len() != e as usize + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients, got {}",
                e + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
        }
        if modulus[e as usize] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if e == 1 {
            return Ok(Field::build(p, e, q, None));
        }
        if !poly::is_irreducible(modulus, p) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is reducible over GF({p})")));
        }
        Ok(Field::build(p, e, q, Some(modulus.to_vec())))
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, e) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, e)
    }

    /// Every monic irreducible polynomial of degree `e` over GF(p), in the
    /// same order used to pick the default modulus.
    pub fn irreducible_moduli(p: u32, e: u32) -> Vec<Vec<u32>> {
        poly::all_irreducible(p, e)
    }

    fn build(p: u32, e: u32, q: u32, modulus: Option<Vec<u32>>) -> Field {
        let slow_mul = |x: u32, y: u32| -> u32 {
            match &modulus {
                None => ((x as u64 * y as u64) % p as u64) as u32,
                Some(md) => poly::mul_codes(x, y, md, p, e),
            }
        };
        let slow_pow = |x: u32, mut k: u64| -> u32 {
            let mut base = x;
            let mut acc = 1;
            while k > 0 {
                if k & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                k >>= 1;
            }
            acc
        };

        let order = (q - 1) as u64;
        let factors = arith::prime_factors(order);
        let primitive = (1..q)
            .find(|&c| factors.iter().all(|&l| slow_pow(c, order / l) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for i in 0..q - 1 {
            assert_eq!(log[x as usize], u32::MAX, "primitive element repeats a power");
            exp.push(x);
            log[x as usize] = i;
            x = slow_mul(x, primitive);
        }
        debug_assert_eq!(x, 1);

        let neg: Vec<u32> = (0..q).map(|c| digit_neg(c, p, e)).collect();
        let (add_table, sub_table) = if e > 1 && q <= ARITH_TABLE_MAX {
            let mut add = vec![0u32; (q * q) as usize];
            let mut sub = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    let s = digit_add(a, b, p, e);
                    add[(a * q + b) as usize] = s;
                    sub[(a * q + b) as usize] = digit_add(a, neg[b as usize], p, e);
                }
            }
            (Some(add), Some(sub))
        } else {
            (None, None)
        };

        Field {
            p,
            e,
            q,
            modulus,
            primitive: Elem(primitive),
            exp,
            log,
            neg,
            add_table,
            sub_table,
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Modulus coefficients `c_0..=c_e`, absent for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code < self.q {
            Ok(Elem(code))
        } else {
            Err(Error::InvalidElement { code, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.q).map(Elem)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Base-p digits `c_0, ..., c_{e-1}` of an element.
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let mut c = x.0;
        (0..self.e)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.add_codes(x.0, y.0))
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.sub_codes(x.0, y.0))
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        Elem(self.neg[x.0 as usize])
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.mul_codes(x.0, y.0))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[x.0 as usize];
        let order = self.q - 1;
        Ok(Elem(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^k`, with `0^0 = 1`.
    pub fn pow(&self, x: Elem, k: u64) -> Elem {
        if k == 0 {
            return Elem::ONE;
        }
        if x.is_zero() {
            return Elem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[x.0 as usize] as u64;
        Elem(self.exp[((l * (k % order)) % order) as usize])
    }

    /// Discrete logarithm to the base of the primitive element.
    pub fn log(&self, x: Elem) -> Option<u32> {
        (!x.is_zero()).then(|| self.log[x.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Elem) -> Option<u64> {
        let l = self.log(x)? as u64;
        let n = (self.q - 1) as u64;
        Some(n / arith::gcd(l, n))
    }

    /// Some `x` with `x^r = y`, if one exists. The choice is deterministic.
    pub fn root(&self, y: Elem, r: u64) -> Option<Elem> {
        if r == 0 {
            return (y == Elem::ONE).then_some(Elem::ONE);
        }
        if y.is_zero() {
            return Some(Elem::ZERO);
        }
        let n = (self.q - 1) as u64;
        let l = self.log[y.0 as usize] as u64;
        let g = arith::gcd(r % n, n);
        let g = if g == 0 { n } else { g };
        if !l.is_multiple_of(g) {
            return None;
        }
        let modulus = n / g;
        let r_red = (r / g) % modulus;
        let inv = arith::mod_inverse(r_red, modulus)?;
        let base = ((l / g) % modulus) * inv % modulus.max(1);
        Some(Elem(self.exp[base as usize]))
    }

    /// The set `{x^r : x in GF(q)}`, ascending by code.
    pub fn power_classes(&self, r: u32) -> Result<Vec<Elem>> {
        if r == 0 || r > self.q - 1 {
            return Err(Error::OutOfRange {
                what: "r",
                value: r as u64,
                lo: 1,
                hi: self.q as u64 - 1,
            });
        }
        let mut seen = vec![false; self.q as usize];
        for x in self.elements() {
            seen[self.pow(x, r as u64).0 as usize] = true;
        }
        Ok(seen
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(c, _)| Elem(c as u32))
            .collect())
    }

    #[inline]
    pub(crate) fn add_codes(&self, x: u32, y: u32) -> u32 {
        if self.e == 1 {
            let s = x + y;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(x * self.q + y) as usize]
        } else {
            digit_add(x, y, self.p, self.e)
        }
    }

    #[inline]
    pub(crate) fn sub_codes(&self, x: u32, y: u32) -> u32 {
        if self.e == 1 {
            if x >= y {
                x - y
            } else {
                x + self.p - y
            }
        } else if let Some(t) = &self.sub_table {
            t[(x * self.q + y) as usize]
        } else {
            digit_add(x, self.neg[y as usize], self.p, self.e)
        }
    }

    #[inline]
    pub(crate) fn mul_codes(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let s = self.log[x as usize] + self.log[y as usize];
        let n = self.q - 1;
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Product via polynomial multiplication modulo the modulus, bypassing
    /// the exp/log tables.
    pub fn mul_by_polynomial(&self, x: Elem, y: Elem) -> Elem {
        match &self.modulus {
            None => Elem(((x.0 as u64 * y.0 as u64) % self.p as u64) as u32),
            Some(md) => Elem(poly::mul_codes(x.0, y.0, md, self.p, self.e)),
        }
    }
}

fn check_order(p: u32, e: u32, cap: u64) -> Result<u32> {
    if !arith::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if e == 0 {
        return Err(Error::ZeroExponent);
    }
    let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
    if q > cap || q > u32::MAX as u64 {
        return Err(Error::FieldTooLarge { q, cap });
    }
    Ok(q as u32)
}

fn digit_add(mut x: u32, mut y: u32, p: u32, e: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..e {
        let d = (x % p + y % p) % p;
        out += d * place;
        place *= p;
        x /= p;
        y /= p;
    }
    out
}

fn digit_neg(mut x: u32, p: u32, e: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..e {
        let d = (p - x % p) % p;
        out += d * place;
        place *= p;
        x /= p;
    }
    out
}

/// Dense polynomials over GF(p), coefficients low degree first.
mod poly {
    pub fn from_code(mut c: u32, p: u32, len: usize) -> Vec<u32> {
        (0..len)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn to_code(v: &[u32], p: u32) -> u32 {
        v.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    fn inv_mod_p(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut k = p as u64 - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            k >>= 1;
        }
        r as u32
    }

    /// Remainder of `a` divided by `b` (b nonzero).
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let db = degree(b).expect("division by zero polynomial");
        let lead_inv = inv_mod_p(b[db], p) as u64;
        let mut r: Vec<u32> = a.to_vec();
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let f = (r[dr] as u64 * lead_inv % p as u64) as u32;
            let shift = dr - db;
            for (i, &bc) in b.iter().enumerate().take(db + 1) {
                let sub = (f as u64 * bc as u64 % p as u64) as u32;
                r[i + shift] = (r[i + shift] + p - sub) % p;
            }
        }
        r.truncate(db.max(1));
        r
    }

    pub fn mul_codes(x: u32, y: u32, modulus: &[u32], p: u32, e: u32) -> u32 {
        let e = e as usize;
        let a = from_code(x, p, e);
        let b = from_code(y, p, e);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] += ai as u64 * bj as u64;
            }
        }
        let prod: Vec<u32> = prod.iter().map(|&c| (c % p as u64) as u32).collect();
        let mut r = rem(&prod, modulus, p);
        r.resize(e, 0);
        to_code(&r, p)
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let Some(deg) = degree(f) else {
            return false;
        };
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = p.pow(d as u32);
            for low in 0..count {
                let mut g = from_code(low, p, d);
                g.push(1);
                if degree(&rem(f, &g, p)).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Monic degree-`e` candidates in lexicographic order of
    /// `(c_0, c_1, ..., c_{e-1})`.
    fn candidates(p: u32, e: u32) -> impl Iterator<Item = Vec<u32>> {
        let count = p.pow(e);
        (0..count).map(move |idx| {
            // c_0 is the most significant position of the lexicographic key.
            let mut digits = vec![0u32; e as usize + 1];
            let mut rest = idx;
            for pos in (0..e as usize).rev() {
                digits[pos] = rest % p;
                rest /= p;
            }
            digits[e as usize] = 1;
            digits
        })
    }

    pub fn first_irreducible(p: u32, e: u32) -> Option<Vec<u32>> {
        candidates(p, e).find(|f| is_irreducible(f, p))
    }

    pub fn all_irreducible(p: u32, e: u32) -> Vec<Vec<u32>> {
        candidates(p, e).filter(|f| is_irreducible(f, p)).collect()
    }
}
