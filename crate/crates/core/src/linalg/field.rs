use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Primes just below `2^31`, used in order when several specializations
/// are requested.
pub const DEFAULT_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// The prime field `F_p` with `p < 2^32`, so elements fit in a `u32` and
/// products of two elements fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % self.p) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + self.p - u64::from(b)) % self.p) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (u64::from(a) * u64::from(b) % self.p) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            (self.p - u64::from(a)) as u32
        }
    }

    pub fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u64 % self.p;
        let mut b = u64::from(base) % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            exp >>= 1;
        }
        acc as u32
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Reduce an unsigned integer into the field.
    pub fn element(&self, v: u64) -> u32 {
        (v % self.p) as u32
    }

    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}
