//! Exact coefficient rings: the integers, the rationals and the integers
//! modulo `m`.
//!
//! Every algebra in this crate is a free module over one of these rings. No
//! floating point is used anywhere; integers and fractions are arbitrary
//! precision, residues are kept in `[0, m)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground ring `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RingSpec {
    Integers,
    Rationals,
    /// `Z/m` with `m >= 2`; composite moduli are allowed for element
    /// arithmetic only.
    ModM(u64),
}

impl RingSpec {
    pub fn modm(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::invalid(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(RingSpec::ModM(modulus))
    }

    /// True for `Q` and for `Z/p` with `p` prime.
    pub fn is_field(&self) -> bool {
        match *self {
            RingSpec::Integers => false,
            RingSpec::Rationals => true,
            RingSpec::ModM(m) => is_prime(m),
        }
    }

    /// Characteristic of the ring (0 for `Z` and `Q`).
    pub fn characteristic(&self) -> u64 {
        match *self {
            RingSpec::ModM(m) => m,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            RingSpec::Integers => Scalar::Int(v.clone()),
            RingSpec::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            RingSpec::ModM(m) => Scalar::Mod {
                value: v.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits"),
                modulus: m,
            },
        }
    }

    /// Parses a scalar written in this ring's syntax: `"-3"` everywhere,
    /// `"1/2"` in `Q`. Integers are reduced modulo `m` in `Z/m`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        if let RingSpec::Rationals = self {
            if let Some((num, den)) = t.split_once('/') {
                let num = parse_bigint(text, num)?;
                let den = parse_bigint(text, den)?;
                if den.is_zero() {
                    return Err(Error::parse(text, t.find('/').unwrap_or(0) + 1, "zero denominator"));
                }
                return Ok(Scalar::Rat(BigRational::new(num, den)));
            }
        }
        Ok(self.from_bigint(&parse_bigint(text, t)?))
    }
}

fn parse_bigint(whole: &str, part: &str) -> Result<BigInt> {
    BigInt::from_str(part.trim()).map_err(|_| {
        let pos = whole.find(part).unwrap_or(0);
        Error::parse(whole, pos, format!("expected an integer, found {part:?}"))
    })
}

pub(crate) fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::ModM(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(RingSpec::Integers),
            "Q" => Ok(RingSpec::Rationals),
            t => {
                let rest = t
                    .strip_prefix("Z/")
                    .ok_or_else(|| Error::parse(s, 0, "expected Z, Q or Z/m"))?;
                let m = rest
                    .parse::<u64>()
                    .map_err(|_| Error::parse(s, 2, "modulus must be a positive integer"))?;
                if m < 2 {
                    return Err(Error::parse(s, 2, "modulus must be at least 2"));
                }
                Ok(RingSpec::ModM(m))
            }
        }
    }
}

impl TryFrom<String> for RingSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RingSpec> for String {
    fn from(r: RingSpec) -> String {
        r.to_string()
    }
}

/// An exact element of one of the rings named by [`RingSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    /// Always in lowest terms with positive denominator.
    Rat(BigRational),
    /// `0 <= value < modulus`.
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn ring(&self) -> RingSpec {
        match self {
            Scalar::Int(_) => RingSpec::Integers,
            Scalar::Rat(_) => RingSpec::Rationals,
            Scalar::Mod { modulus, .. } => RingSpec::ModM(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::RingMismatch {
            left: self.ring().to_string(),
            right: other.ring().to_string(),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Ok(Scalar::Int(a + b)),
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a + b)),
            (Scalar::Mod { value: a, modulus: m }, Scalar::Mod { value: b, modulus: n }) if m == n => {
                Ok(Scalar::Mod {
                    value: ((*a as u128 + *b as u128) % *m as u128) as u64,
                    modulus: *m,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Ok(Scalar::Int(a * b)),
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            (Scalar::Mod { value: a, modulus: m }, Scalar::Mod { value: b, modulus: n }) if m == n => {
                Ok(Scalar::Mod {
                    value: ((*a as u128 * *b as u128) % *m as u128) as u64,
                    modulus: *m,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse. Fails with [`Error::NotInvertible`] when the
    /// element is not a unit of its ring.
    pub fn inverse(&self) -> Result<Scalar> {
        let fail = || Error::NotInvertible {
            value: self.to_string(),
            ring: self.ring().to_string(),
        };
        match self {
            Scalar::Int(a) => {
                if a.abs().is_one() {
                    Ok(self.clone())
                } else {
                    Err(fail())
                }
            }
            Scalar::Rat(a) => {
                if a.is_zero() {
                    Err(fail())
                } else {
                    Ok(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Mod { value, modulus } => {
                let e = BigInt::from(*value).extended_gcd(&BigInt::from(*modulus));
                if !e.gcd.is_one() {
                    return Err(fail());
                }
                let inv = e.x.mod_floor(&BigInt::from(*modulus));
                Ok(Scalar::Mod {
                    value: inv.to_u64().expect("residue fits"),
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = self.ring().one();
        for _ in 0..exp {
            acc = acc.try_mul(self).expect("same ring");
        }
        acc
    }

    /// The integer value if this scalar is an integer (or an integral
    /// rational, or a residue, read as its representative in `[0, m)`).
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(a) => Some(a.clone()),
            Scalar::Rat(a) => a.is_integer().then(|| a.to_integer()),
            Scalar::Mod { value, .. } => Some(BigInt::from(*value)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(a) => write!(f, "{a}"),
            Scalar::Rat(a) => {
                if a.is_integer() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}
