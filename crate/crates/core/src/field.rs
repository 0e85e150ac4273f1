//! Prime fields `F_p` with `p <= 97`.
//!
//! Elements are plain `u32` residues in `0..p`; all arithmetic goes through
//! the [`PrimeField`] that owns the modulus.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u32 = 97;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
    inverses: Vec<u32>,
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

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_CHARACTERISTIC {
            return Err(Error::InvalidCharacteristic(p));
        }
        let mut inverses = vec![0; p as usize];
        for a in 1..p {
            let inv = (1..p).find(|b| a * b % p == 1).expect("prime modulus");
            inverses[a as usize] = inv;
        }
        Ok(Self { p, inverses })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// `p^e`, the Frobenius power used throughout.
    pub fn q(&self, e: u32) -> u64 {
        (self.p as u64).pow(e)
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.inverses[a as usize]
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
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

    /// Integer `n` reduced into the field.
    pub fn from_u64(&self, n: u64) -> u32 {
        (n % self.p as u64) as u32
    }

    /// Signed representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large_primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(101).is_err());
        assert!(PrimeField::new(97).is_ok());
    }

    #[test]
    fn inverses_and_fermat() {
        for p in [2, 3, 5, 7, 11, 97] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.pow(a, p as u64), a);
            }
        }
    }

    #[test]
    fn signed_representatives() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.signed(4), -1);
        assert_eq!(f.signed(2), 2);
        assert_eq!(f.reduce(-7), 3);
    }
}
