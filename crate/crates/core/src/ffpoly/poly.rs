use num_bigint::BigUint;

use super::field::PrimeField;
use crate::error::{Error, Result};
use crate::exactpoly::{IntPolynomial, RatPolynomial};

/// Dense polynomial over `F_p`, coefficients in Montgomery form, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPolynomial {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl FpPolynomial {
    /// From Montgomery residues.
    pub fn from_mont(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPolynomial { field, coeffs }
    }

    /// From plain residues (reduced mod p).
    pub fn from_values(field: PrimeField, values: &[u64]) -> Self {
        Self::from_mont(field, values.iter().map(|&v| field.to_mont(v)).collect())
    }

    pub fn from_i64s(field: PrimeField, values: &[i64]) -> Self {
        Self::from_mont(field, values.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn from_int(field: PrimeField, f: &IntPolynomial) -> Self {
        Self::from_mont(field, f.coeffs().iter().map(|c| field.from_bigint(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        FpPolynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::from_mont(field, vec![field.one()])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::from_mont(field, vec![0, field.one()])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs_mont(&self) -> &[u64] {
        &self.coeffs
    }

    /// Plain residues, index = degree.
    pub fn values(&self) -> Vec<u64> {
        self.coeffs.iter().map(|&c| self.field.from_mont(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) if lc == self.field.one() => self.clone(),
            Some(&lc) => self.scale(self.field.inv(lc)),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        Self::from_mont(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_mont(
            f,
            (0..n)
                .map(|i| f.add(self.c(i), other.c(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_mont(
            f,
            (0..n)
                .map(|i| f.sub(self.c(i), other.c(i)))
                .collect(),
        )
    }

    #[inline]
    fn c(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let budget = f.lazy_budget();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let lo = k.saturating_sub(other.coeffs.len() - 1);
            let hi = k.min(self.coeffs.len() - 1);
            let mut acc: u128 = 0;
            let mut used = 0;
            let mut red = 0u64;
            for i in lo..=hi {
                acc += self.coeffs[i] as u128 * other.coeffs[k - i] as u128;
                used += 1;
                if used == budget {
                    red = f.add(red, f.redc_wide(acc));
                    acc = 0;
                    used = 0;
                }
            }
            out.push(f.add(red, f.redc_wide(acc)));
        }
        Self::from_mont(f, out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let Some(sd) = self.degree() else {
            return (Self::zero(f), Self::zero(f));
        };
        if sd < dd {
            return (Self::zero(f), self.clone());
        }
        let inv = f.inv(divisor.lc());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = rem[k + dd];
            if top == 0 {
                continue;
            }
            let q = f.mul(top, inv);
            quot[k] = q;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(rem[k + i], f.mul(q, d));
            }
        }
        rem.truncate(dd);
        (Self::from_mont(f, quot), Self::from_mont(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact division; `None` on a nonzero remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        Self::from_mont(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.to_mont(i as u64)))
                .collect(),
        )
    }

    /// Evaluate at a Montgomery residue.
    pub fn eval(&self, at: u64) -> u64 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, at), c))
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// `self^exp mod modulus` by left-to-right square-and-multiply.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(self.field).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if exp.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// `x^exp mod modulus`; multiplication by `x` is a shift.
    pub fn x_pow_mod(exp: &BigUint, modulus: &Self) -> Self {
        let field = modulus.field;
        let mut acc = Self::one(field).rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if exp.bit(i) {
                acc = acc.shift(1).rem(modulus);
            }
        }
        acc
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::from_mont(self.field, coeffs)
    }

    /// Composition `self(inner) mod modulus` by Horner.
    pub fn compose_mod(&self, inner: &Self, modulus: &Self) -> Self {
        let f = self.field;
        let mut acc = Self::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_mod(inner, modulus).add(&Self::from_mont(f, vec![c]));
        }
        acc
    }
}

/// Coefficient-wise reduction of a rational polynomial.
pub fn reduce_mod_p(f: &RatPolynomial, field: PrimeField) -> Result<FpPolynomial> {
    let mut out = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        let den = field.from_bigint(c.denom());
        if den == 0 {
            return Err(Error::BadPrime(field.modulus()));
        }
        out.push(field.mul(field.from_bigint(c.numer()), field.inv(den)));
    }
    Ok(FpPolynomial::from_mont(field, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let f = fp(5);
        let q: RatPolynomial = crate::exactpoly::Poly::from_i64s(&[15, -7, 1]);
        assert_eq!(reduce_mod_p(&q, f).unwrap().values(), vec![0, 3, 1]);
    }

    #[test]
    fn division_identity() {
        let f = fp(101);
        let a = FpPolynomial::from_i64s(f, &[3, 0, 5, 7, 1, 9]);
        let b = FpPolynomial::from_i64s(f, &[1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < 2);
    }

    #[test]
    fn frobenius_power_matches_repeated_product() {
        let f = fp(13);
        let m = FpPolynomial::from_i64s(f, &[2, 5, 0, 1, 1, 3, 0, 1]);
        let fast = FpPolynomial::x_pow_mod(&BigUint::from(13u32), &m);
        let mut slow = FpPolynomial::one(f);
        for _ in 0..13 {
            slow = slow.mul(&FpPolynomial::x(f)).rem(&m);
        }
        assert_eq!(fast, slow);
        assert_eq!(FpPolynomial::x(f).pow_mod(&BigUint::from(13u32), &m), slow);
        assert!(FpPolynomial::x(f).pow_mod(&BigUint::one(), &m) == FpPolynomial::x(f));
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = fp(7);
        let a = FpPolynomial::from_i64s(f, &[-1, 0, 1]);
        let b = FpPolynomial::from_i64s(f, &[3, 3]);
        assert_eq!(a.gcd(&b), FpPolynomial::from_i64s(f, &[1, 1]));
    }
}
