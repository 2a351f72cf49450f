use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactpoly::is_prime_u64;

/// Largest admissible modulus (exclusive).
pub const MODULUS_LIMIT: u64 = 1 << 62;

/// The prime field `F_p` with elements kept in Montgomery form `a * 2^64 mod p`.
///
/// All element-level methods take and return Montgomery residues in `[0, p)`; use
/// [`PrimeField::to_mont`] and [`PrimeField::from_mont`] at the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    /// `-p^{-1} mod 2^64`
    neg_inv: u64,
    /// `2^128 mod p`
    r2: u64,
    /// `2^64 mod p`, the Montgomery image of 1
    one: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_LIMIT || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        // Newton iteration for p^{-1} mod 2^64 (p odd); p = 2 handled below.
        let inv = if p == 2 {
            0
        } else {
            let mut x: u64 = p;
            for _ in 0..6 {
                x = x.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(x)));
            }
            x
        };
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Ok(PrimeField {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
            one: if p == 2 { 1 } else { r },
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        self.one
    }

    /// Montgomery reduction of `t < p * 2^64`: returns `t / 2^64 mod p`.
    #[inline(always)]
    pub fn redc(&self, t: u128) -> u64 {
        if self.p == 2 {
            // 2^64 = 0 mod 2 makes Montgomery form degenerate; fall back to plain residues.
            return (t & 1) as u64;
        }
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    /// Reduction of an arbitrary accumulated sum of products of Montgomery residues.
    #[inline(always)]
    pub fn redc_wide(&self, t: u128) -> u64 {
        let hi = ((t >> 64) as u64) % self.p;
        self.redc(((hi as u128) << 64) | (t as u64 as u128))
    }

    /// How many products of residues can be summed in a `u128` before reducing.
    pub fn lazy_budget(&self) -> usize {
        let sq = (self.p as u128 - 1).max(1).pow(2);
        (u128::MAX / sq).min(1 << 20) as usize
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a & b;
        }
        self.redc(a as u128 * b as u128)
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

    pub fn to_mont(&self, a: u64) -> u64 {
        let a = a % self.p;
        if self.p == 2 {
            return a;
        }
        self.redc(a as u128 * self.r2 as u128)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        self.redc(a as u128)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        self.to_mont(a.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.p));
        self.to_mont(r.to_u64().expect("residue fits in u64"))
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Plain-residue multiplication through a 128-bit remainder; the reference the
    /// Montgomery path is tested against.
    pub fn naive_mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new((1 << 61) - 1).is_ok());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn roundtrip_and_inverse() {
        for p in [2u64, 3, 5, 101, 2160553, (1 << 61) - 1] {
            let f = PrimeField::new(p).unwrap();
            for a in [0u64, 1, 2, p - 1, p / 2] {
                let m = f.to_mont(a);
                assert_eq!(f.from_mont(m), a % p);
                if a % p != 0 {
                    assert_eq!(f.mul(m, f.inv(m)), f.one());
                }
            }
        }
    }

    #[test]
    fn wide_reduction_matches() {
        let f = PrimeField::new(2160553).unwrap();
        let (a, b) = (f.to_mont(123456), f.to_mont(2000000));
        let acc: u128 = (0..1000).map(|_| a as u128 * b as u128).sum();
        let expect = f.to_mont(((123456u128 * 2000000 * 1000) % 2160553) as u64);
        assert_eq!(f.redc_wide(acc), expect);
    }
}
