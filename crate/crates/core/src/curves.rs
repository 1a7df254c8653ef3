//! Point counts for the curves `a x^n - x y^n + c = 0` and the Hasse–Weil
//! lower bound they must satisfy.

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Affine point count of `a x^n - x y^n + c = 0` over `GF(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCount {
    pub q: u32,
    pub a: Elem,
    pub c: Elem,
    pub n: u32,
    #[serde(rename = "N")]
    pub count: u64,
    pub genus: u64,
}

impl CurveCount {
    /// `N - ceil(q - 1 - 2g sqrt(q))`; nonnegative exactly when the bound holds.
    pub fn margin(&self) -> i64 {
        let q = self.q as u128;
        let two_g = 2 * self.genus as u128;
        let slack = arith::isqrt(two_g * two_g * q) as i64;
        self.count as i64 - (self.q as i64 - 1 - slack)
    }

    /// `N >= q - 1 - 2g sqrt(q)`, compared after squaring.
    pub fn satisfies_hasse_weil(&self) -> bool {
        let deficit = self.q as i128 - 1 - self.count as i128;
        if deficit <= 0 {
            return true;
        }
        let two_g = 2 * self.genus as i128;
        deficit * deficit <= two_g * two_g * self.q as i128
    }
}

fn powers(field: &Field, n: u32) -> Vec<Elem> {
    field.elements().map(|x| field.pow(x, n as u64)).collect()
}

/// Counts the affine solutions by enumerating all of `GF(q)^2`.
pub fn count_affine(a: Elem, c: Elem, n: u32, field: &Field) -> CurveCount {
    let pw = powers(field, n);
    let mut count = 0u64;
    for x in field.elements() {
        // a x^n + c = x y^n
        let lhs = field.add(field.mul(a, pw[x.0 as usize]), c);
        for y in field.elements() {
            if field.mul(x, pw[y.0 as usize]) == lhs {
                count += 1;
            }
        }
    }
    CurveCount {
        q: field.q(),
        a,
        c,
        n,
        count,
        genus: n as u64 * (n as u64).saturating_sub(1) / 2,
    }
}

fn check_characteristic(n: u32, field: &Field) -> Result<()> {
    if n.is_multiple_of(field.p()) {
        return Err(Error::CharacteristicDividesN { p: field.p(), n });
    }
    Ok(())
}

/// Whether `F = a X^n Z - X Y^n + c Z^(n+1)` and its three partial
/// derivatives have no common projective zero over `GF(q)`.
pub fn check_nonsingular(a: Elem, c: Elem, n: u32, field: &Field) -> Result<bool> {
    check_characteristic(n, field)?;
    if a.is_zero() || c.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    let f = field;
    let nn = f.from_int(n as i64);
    let n1 = f.from_int(n as i64 + 1);
    let k = n as u64;
    let singular = |x: Elem, y: Elem, z: Elem| {
        let xn = f.pow(x, k);
        let yn = f.pow(y, k);
        let zn = f.pow(z, k);
        let big_f = f.add(f.sub(f.mul(f.mul(a, xn), z), f.mul(x, yn)), f.mul(c, f.mul(zn, z)));
        let fx = f.sub(f.mul(f.mul(nn, a), f.mul(f.pow(x, k - 1), z)), yn);
        let fy = f.neg(f.mul(nn, f.mul(x, f.pow(y, k - 1))));
        let fz = f.add(f.mul(a, xn), f.mul(f.mul(n1, c), zn));
        [big_f, fx, fy, fz].iter().all(|v| v.is_zero())
    };
    // Canonical representatives: first nonzero coordinate is 1.
    let one = Elem::ONE;
    let zero = Elem::ZERO;
    for y in f.elements() {
        for z in f.elements() {
            if singular(one, y, z) {
                return Ok(false);
            }
        }
    }
    for z in f.elements() {
        if singular(zero, one, z) {
            return Ok(false);
        }
    }
    Ok(!singular(zero, zero, one))
}

/// Outcome of checking every `(a, c)` with `a, c != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HasseWeilVerdict {
    pub q: u32,
    pub n: u32,
    pub pairs: u64,
    pub all_pass: bool,
    pub min_count: u64,
    pub min_margin: i64,
    /// `(a, c)` pairs violating the bound; empty when `all_pass`.
    pub failures: Vec<(Elem, Elem)>,
}

pub fn hasse_weil_lower_bound(n: u32, field: &Field) -> Result<HasseWeilVerdict> {
    check_characteristic(n, field)?;
    let mut verdict = HasseWeilVerdict {
        q: field.q(),
        n,
        pairs: 0,
        all_pass: true,
        min_count: u64::MAX,
        min_margin: i64::MAX,
        failures: Vec::new(),
    };
    for a in field.nonzero() {
        for c in field.nonzero() {
            let cc = count_affine(a, c, n, field);
            verdict.pairs += 1;
            verdict.min_count = verdict.min_count.min(cc.count);
            verdict.min_margin = verdict.min_margin.min(cc.margin());
            if !cc.satisfies_hasse_weil() {
                verdict.all_pass = false;
                verdict.failures.push((a, c));
            }
        }
    }
    Ok(verdict)
}

/// `(n^2 - n + 1)^2`: above this field size `D(q; 1, n)` has diameter 3.
pub fn diam3_threshold(n: u32) -> u64 {
    let n = n as u64;
    (n * n - n + 1).pow(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::of_order(q).unwrap()
    }

    fn naive_count(a: Elem, c: Elem, n: u32, f: &Field) -> u64 {
        let mut count = 0;
        for x in f.elements() {
            for y in f.elements() {
                let v = f.add(
                    f.sub(f.mul(a, f.pow(x, n as u64)), f.mul(x, f.pow(y, n as u64))),
                    c,
                );
                count += v.is_zero() as u64;
            }
        }
        count
    }

    #[test]
    fn small_counts() {
        let f = gf(3);
        assert_eq!(count_affine(Elem(1), Elem(1), 1, &f).count, 2);
        for q in [5u64, 7, 9] {
            let f = gf(q);
            for a in f.elements() {
                assert!(count_affine(a, Elem::ZERO, 2, &f).count >= q);
                for c in f.elements() {
                    assert_eq!(count_affine(a, c, 2, &f).count, naive_count(a, c, 2, &f));
                }
            }
        }
    }

    #[test]
    fn counts_over_c_sum_to_q_squared() {
        for q in [4u64, 5, 8, 9, 11] {
            let f = gf(q);
            for a in f.elements() {
                for n in 1..4 {
                    let total: u64 = f.elements().map(|c| count_affine(a, c, n, &f).count).sum();
                    assert_eq!(total, q * q);
                }
            }
        }
    }

    #[test]
    fn nonsingular_examples() {
        assert!(check_nonsingular(Elem(1), Elem(1), 2, &gf(5)).unwrap());
        assert!(check_nonsingular(Elem(2), Elem(3), 3, &gf(7)).unwrap());
        assert_eq!(
            check_nonsingular(Elem(1), Elem(1), 3, &gf(9)).unwrap_err(),
            Error::CharacteristicDividesN { p: 3, n: 3 }
        );
        for q in [5u64, 7, 11, 25] {
            let f = gf(q);
            for a in f.nonzero() {
                for c in f.nonzero() {
                    assert!(check_nonsingular(a, c, 2, &f).unwrap());
                }
            }
        }
    }

    #[test]
    fn hasse_weil_examples() {
        let v = hasse_weil_lower_bound(2, &gf(11)).unwrap();
        assert!(v.all_pass);
        assert_eq!(v.pairs, 100);
        assert!(v.min_count >= 1);
        let v = hasse_weil_lower_bound(3, &gf(49)).unwrap();
        assert!(v.all_pass);
        for q in [3u64, 7, 8] {
            let v = hasse_weil_lower_bound(1, &gf(q)).unwrap();
            assert!(v.all_pass);
            assert_eq!(v.min_count, q - 1);
        }
        assert!(hasse_weil_lower_bound(2, &gf(16)).is_err());
    }

    #[test]
    fn margin_agrees_with_squared_comparison() {
        for count in 0..40u64 {
            for n in 1..4 {
                let cc = CurveCount {
                    q: 31,
                    a: Elem::ONE,
                    c: Elem::ONE,
                    n,
                    count,
                    genus: (n * (n - 1) / 2) as u64,
                };
                assert_eq!(cc.margin() >= 0, cc.satisfies_hasse_weil());
            }
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(diam3_threshold(1), 1);
        assert_eq!(diam3_threshold(2), 9);
        assert_eq!(diam3_threshold(3), 49);
    }
}
