//! Exact coefficient fields: the rationals and prime fields.
//!
//! Coefficients are always stored as [`BigRational`]. Over a prime field the
//! value is kept as an integer in `0..p` with denominator one, so equality of
//! normalized coefficients is plain structural equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        Coeff::one()
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.normalize(Coeff::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(&self, n: BigInt) -> Coeff {
        self.normalize(Coeff::from_integer(n))
    }

    /// Brings an arbitrary rational into the canonical representative of the
    /// field. Over `F_p` a denominator divisible by `p` is a division by zero
    /// and panics; callers that read user input go through [`Self::try_normalize`].
    pub fn normalize(&self, c: Coeff) -> Coeff {
        self.try_normalize(c).expect("denominator divisible by the characteristic")
    }

    pub fn try_normalize(&self, c: Coeff) -> Result<Coeff> {
        match self {
            FieldSpec::Rationals => Ok(c),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(*p);
                let num = c.numer().mod_floor(&p);
                let den = c.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let inv = mod_inverse(&den, &p).ok_or(Error::DivisionByZero)?;
                Ok(Coeff::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            FieldSpec::Rationals => a + b,
            FieldSpec::Prime(p) => reduce_int(a.numer() + b.numer(), *p),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            FieldSpec::Rationals => a - b,
            FieldSpec::Prime(p) => reduce_int(a.numer() - b.numer(), *p),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            FieldSpec::Rationals => a * b,
            FieldSpec::Prime(p) => reduce_int(a.numer() * b.numer(), *p),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match self {
            FieldSpec::Rationals => -a,
            FieldSpec::Prime(p) => reduce_int(-a.numer(), *p),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(a.recip()),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(*p);
                let inv = mod_inverse(a.numer(), &p).ok_or(Error::DivisionByZero)?;
                Ok(Coeff::from_integer(inv))
            }
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Coeff, mut e: u64) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Small-integer view of an `F_p` coefficient.
    pub fn as_u64(&self, a: &Coeff) -> Option<u64> {
        match self {
            FieldSpec::Prime(_) => a.numer().to_u64(),
            FieldSpec::Rationals => {
                if a.is_integer() && !a.is_negative() {
                    a.numer().to_u64()
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn reduce_int(n: BigInt, p: u64) -> Coeff {
    Coeff::from_integer(n.mod_floor(&BigInt::from(p)))
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(m))
    } else {
        None
    }
}

/// Modular inverse for machine-word primes.
pub fn inv_mod_u64(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    Some(pow_mod_u64(a, p - 2, p))
}

pub fn pow_mod_u64(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}
