//! Small finite fields `F_q`, `q = p^k ≤ 2^16`, in a polynomial basis. An element is
//! the integer whose base-`p` digits are its coefficients, constant term lowest.

use crate::error::{Error, Result};
use crate::exactpoly::is_prime_u64;

pub const FIELD_LIMIT: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u16>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl SmallField {
    /// `F_q` over the first monic polynomial of degree `k` (in the order of
    /// [`SmallField::candidates`]) whose root generates the multiplicative group.
    pub fn new(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q)
            .filter(|_| q <= FIELD_LIMIT)
            .ok_or(Error::Parse(format!("field order {q} is not a prime power up to 2^16")))?;
        for modulus in Self::candidates(p, k) {
            if let Some(f) = Self::with_modulus(p, modulus.clone()) {
                return Ok(f);
            }
        }
        Err(Error::Internal("no primitive polynomial found"))
    }

    /// `F_{p^k}` for an explicit monic modulus (low degree first), which must be primitive.
    pub fn with_modulus_checked(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime_u64(p as u64) || modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(Error::Parse("field modulus must be monic over a prime".into()));
        }
        let q = (p as u64).pow(modulus.len() as u32 - 1);
        if q > FIELD_LIMIT as u64 {
            return Err(Error::Parse(format!("field order {q} exceeds 2^16")));
        }
        Self::with_modulus(p, modulus).ok_or(Error::Parse("field modulus is not primitive".into()))
    }

    /// Monic degree-`k` polynomials with nonzero constant term: `X^k + ...` with the
    /// lower coefficients read as a base-`p` counter, constant term most significant.
    fn candidates(p: u32, k: u32) -> impl Iterator<Item = Vec<u32>> {
        let count = p.pow(k);
        (0..count).filter_map(move |n| {
            let mut m = vec![0; k as usize + 1];
            m[k as usize] = 1;
            let mut r = n;
            for i in (0..k as usize).rev() {
                m[i] = r % p;
                r /= p;
            }
            (k == 1 || m[0] != 0).then_some(m)
        })
    }

    fn with_modulus(p: u32, modulus: Vec<u32>) -> Option<Self> {
        let k = modulus.len() as u32 - 1;
        let q = p.pow(k);
        let mut exp = vec![0u16; q as usize];
        let mut log = vec![0u16; q as usize];
        let mut field = SmallField {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let gen = if k == 1 {
            (1..p).find(|&g| field.naive_order(g) == p - 1)?
        } else {
            p // the class of X
        };
        let mut x = 1u32;
        for i in 0..q - 1 {
            if i > 0 && x == 1 {
                return None;
            }
            exp[i as usize] = x as u16;
            log[x as usize] = i as u16;
            x = field.naive_mul(x, gen);
        }
        if x != 1 {
            return None;
        }
        field.exp = exp;
        field.log = log;
        Some(field)
    }

    fn naive_order(&self, g: u32) -> u32 {
        let (mut x, mut n) = (g, 1);
        while x != 1 {
            x = (x * g) % self.p;
            n += 1;
        }
        n
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    /// Schoolbook product reduced by the modulus; used to build the tables.
    fn naive_mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a * b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u32; 2 * k];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        for i in (k..2 * k).rev() {
            let c = prod[i];
            if c != 0 {
                for j in 0..k {
                    let sub = c * self.modulus[j] % self.p;
                    prod[i - k + j] = (prod[i - k + j] + self.p - sub) % self.p;
                }
                prod[i] = 0;
            }
        }
        self.undigits(&prod[..k])
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.k == 1 {
            return ((a as u32 + b as u32) % self.p) as u16;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.digits(a as u32), self.digits(b as u32));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&s) as u16
    }

    pub fn neg(&self, a: u16) -> u16 {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u32> = self.digits(a as u32).iter().map(|x| (self.p - x) % self.p).collect();
        self.undigits(&d) as u16
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] as u32 + self.log[b as usize] as u32) % (self.q - 1);
        self.exp[s as usize]
    }

    pub fn inv(&self, a: u16) -> Option<u16> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize] as u32;
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 8, 9, 16, 25, 27] {
            let f = SmallField::new(q).unwrap();
            for a in 0..q as u16 {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q as u16 {
                    assert_eq!(f.mul(a, b), f.naive_mul(a as u32, b as u32) as u16);
                    for c in 0..q as u16 {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_modulus() {
        assert_eq!(SmallField::new(4).unwrap().modulus(), &[1, 1, 1]);
        assert!(SmallField::new(6).is_err());
        assert!(SmallField::with_modulus_checked(2, vec![1, 0, 1]).is_err());
    }
}
