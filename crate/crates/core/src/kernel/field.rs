//! Prime field arithmetic.
//!
//! Elements are stored as `u32` residues; the modulus lives in a small
//! copyable [`PrimeField`] descriptor that matrices and polynomials carry
//! alongside their raw data.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Largest accepted modulus. Products of two residues must fit in a `u64`
    /// with room for accumulation.
    pub const MAX_P: u32 = 1 << 30;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=Self::MAX_P).contains(&p) || !is_prime(p) {
            return Err(Error::input(format!("modulus {p} is not a prime in [2, 2^30]")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero, which is always a caller bug.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    /// Reduce an arbitrary signed integer into `[0, p)`.
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn elem(self, value: i64) -> FieldElement {
        FieldElement { value: self.reduce(value), p: self.p }
    }

    /// All field elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A scalar of F_p that remembers its modulus.
///
/// Mixing elements of different fields is a programming error and panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<FieldElement> {
        if self.value == 0 {
            None
        } else {
            Some(FieldElement { value: self.field().inv(self.value), p: self.p })
        }
    }

    fn check(self, other: FieldElement) -> PrimeField {
        assert_eq!(self.p, other.p, "field mismatch");
        self.field()
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        let f = self.check(rhs);
        FieldElement { value: f.add(self.value, rhs.value), p: self.p }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        let f = self.check(rhs);
        FieldElement { value: f.sub(self.value, rhs.value), p: self.p }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        let f = self.check(rhs);
        FieldElement { value: f.mul(self.value, rhs.value), p: self.p }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { value: self.field().neg(self.value), p: self.p }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(5).is_ok());
    }

    #[test]
    fn signed_representatives() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.signed(4), -1);
        assert_eq!(f.signed(2), 2);
        assert_eq!(f.signed(3), -2);
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(a in 1u32..7919) {
            let f = PrimeField::new(7919).unwrap();
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }

        #[test]
        fn element_ops_agree_with_integers(a in -50i64..50, b in -50i64..50) {
            let f = PrimeField::new(7).unwrap();
            let (x, y) = (f.elem(a), f.elem(b));
            prop_assert_eq!((x + y).value(), f.reduce(a + b));
            prop_assert_eq!((x - y).value(), f.reduce(a - b));
            prop_assert_eq!((x * y).value(), f.reduce(a * b));
            prop_assert_eq!((-x).value(), f.reduce(-a));
        }
    }
}
