//! Arithmetic in the prime field F_p with a modulus chosen at run time.
//!
//! Elements are plain `u64` values in `0..p`. The modulus must be an odd prime
//! below 2^32 so that a product of two reduced elements fits in a `u64`.
//! The Mersenne prime 2^31 - 1 gets a shift-and-add reduction.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// 2^31 - 1, the default modulus.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

const MERSENNE31: u64 = DEFAULT_PRIME;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    /// Checks that `p` is an odd prime below 2^32.
    pub fn new(p: u64) -> Result<Self> {
        if !(3..1 << 32).contains(&p) {
            return Err(Error::InvalidInput(format!(
                "modulus {p} must be an odd prime in [3, 2^32)"
            )));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn is_mersenne31(&self) -> bool {
        self.p == MERSENNE31
    }

    /// Reduces any `u64`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        if self.p == MERSENNE31 {
            reduce_m31(x)
        } else {
            x % self.p
        }
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    /// `acc + a*b`.
    #[inline(always)]
    pub fn mul_add(&self, acc: u64, a: u64, b: u64) -> u64 {
        self.reduce(acc + a * b)
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element. Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let m = v.rem_euclid(self.p as i64);
        m as u64
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[inline(always)]
pub(crate) fn reduce_m31(x: u64) -> u64 {
    let r = (x & MERSENNE31).wrapping_add(x >> 31);
    let r = (r & MERSENNE31).wrapping_add(r >> 31);
    if r >= MERSENNE31 {
        r.wrapping_sub(MERSENNE31)
    } else {
        r
    }
}

fn mulmod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u128(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_u128(r, b, m);
        }
        b = mulmod_u128(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites_and_out_of_range() {
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new((1u64 << 32) + 15).is_err());
        assert!(PrimeField::new(65_537).is_ok());
        assert!(PrimeField::new(DEFAULT_PRIME).unwrap().is_mersenne31());
    }

    #[test]
    fn signed_lift() {
        let f = PrimeField::default();
        assert_eq!(f.to_signed(f.from_i64(-5)), -5);
        assert_eq!(f.to_signed(7), 7);
    }

    proptest! {
        #[test]
        fn mersenne_reduction_matches_modulo(a in 0u64..DEFAULT_PRIME, b in 0u64..DEFAULT_PRIME, c in 0u64..DEFAULT_PRIME) {
            let f = PrimeField::default();
            prop_assert_eq!(f.mul(a, b), ((a as u128 * b as u128) % DEFAULT_PRIME as u128) as u64);
            prop_assert_eq!(f.mul_add(c, a, b), ((c as u128 + a as u128 * b as u128) % DEFAULT_PRIME as u128) as u64);
        }

        #[test]
        fn inverse_roundtrip(a in 1u64..65_537) {
            let f = PrimeField::new(65_537).unwrap();
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
