//! Arbitrary-precision integers that stay on the machine word while they fit.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    pub fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    /// `±1`.
    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    /// The residue in `0..p`.
    pub fn residue(&self, p: u64) -> u64 {
        match self {
            Int::Small(v) => v.rem_euclid(p as i64) as u64,
            Int::Big(b) => b.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits"),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_big().abs().cmp(&other.to_big().abs()),
        }
    }

    pub fn add(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(v) = a.checked_add(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(v) = a.checked_sub(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(v) = a.checked_mul(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() * other.to_big())
    }

    pub fn neg(&self) -> Int {
        if let Int::Small(a) = self {
            if let Some(v) = a.checked_neg() {
                return Int::Small(v);
            }
        }
        Int::from_big(-self.to_big())
    }

    /// Floor division and remainder with `0 <= r < |d|` for `d > 0`.
    pub fn div_mod_floor(&self, d: &Int) -> (Int, Int) {
        assert!(!d.is_zero(), "division by zero");
        if let (Int::Small(a), Int::Small(b)) = (self, d) {
            if !(*a == i64::MIN && *b == -1) {
                return (Int::Small(a.div_floor(b)), Int::Small(a.mod_floor(b)));
            }
        }
        let (q, r) = self.to_big().div_mod_floor(&d.to_big());
        (Int::from_big(q), Int::from_big(r))
    }

    /// `self / d` when `d` divides `self`.
    pub fn div_exact(&self, d: &Int) -> Option<Int> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_mod_floor(d);
        r.is_zero().then_some(q)
    }

    /// `(g, x, y)` with `g = gcd(a, b) >= 0` and `x a + y b = g`.
    pub fn extended_gcd(&self, other: &Int) -> (Int, Int, Int) {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            let (mut r0, mut r1) = (*a as i128, *b as i128);
            let (mut s0, mut s1) = (1i128, 0i128);
            let (mut t0, mut t1) = (0i128, 1i128);
            while r1 != 0 {
                let q = r0.div_euclid(r1);
                (r0, r1) = (r1, r0 - q * r1);
                (s0, s1) = (s1, s0 - q * s1);
                (t0, t1) = (t1, t0 - q * t1);
            }
            if r0 < 0 {
                (r0, s0, t0) = (-r0, -s0, -t0);
            }
            let conv = |v: i128| Int::from_big(BigInt::from(v));
            return (conv(r0), conv(s0), conv(t0));
        }
        let e = self.to_big().extended_gcd(&other.to_big());
        let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            x = -x;
            y = -y;
        }
        (Int::from_big(g), Int::from_big(x), Int::from_big(y))
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::Small(v)
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Int {
        Int::from_big(v.clone())
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let big = Int::Small(i64::MAX);
        let s = big.add(&Int::ONE);
        assert!(matches!(s, Int::Big(_)));
        assert_eq!(s.sub(&Int::ONE), big);
        assert!(matches!(s.sub(&Int::ONE), Int::Small(_)));
        let sq = big.mul(&big);
        assert_eq!(sq.div_exact(&big), Some(big.clone()));
        assert_eq!(Int::Small(i64::MIN).neg().to_big(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn bezout_identity() {
        for (a, b) in [(12i64, 18i64), (-7, 3), (0, 5), (5, 0), (-4, -6)] {
            let (g, x, y) = Int::from(a).extended_gcd(&Int::from(b));
            assert_eq!(x.mul(&Int::from(a)).add(&y.mul(&Int::from(b))), g);
            assert_eq!(g.to_big(), num_integer::Integer::gcd(&BigInt::from(a), &BigInt::from(b)));
        }
    }

    #[test]
    fn floor_division() {
        assert_eq!(Int::from(-7).div_mod_floor(&Int::from(2)), (Int::from(-4), Int::from(1)));
        assert_eq!(Int::from(6).div_exact(&Int::from(-3)), Some(Int::from(-2)));
        assert_eq!(Int::from(7).div_exact(&Int::from(2)), None);
    }
}
