//! Integer and rational helpers: primality, p-adic valuations, small factorizations.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// The `k`-th prime (1-based) by sieving.
pub fn nth_prime(k: usize) -> u64 {
    assert!(k >= 1);
    let mut limit = 64usize.max((k as f64 * ((k as f64).ln() + (k as f64).ln().ln() + 2.0)) as usize);
    loop {
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut count = 0;
        for i in 2..=limit {
            if sieve[i] {
                count += 1;
                if count == k {
                    return i as u64;
                }
                let mut j = i * i;
                while j <= limit {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        limit *= 2;
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(q)`; `None` stands for `+infinity` (q = 0).
pub fn padic_valuation(q: &BigRational, p: u64) -> Result<Option<i64>> {
    require_prime(p)?;
    if q.is_zero() {
        return Ok(None);
    }
    Ok(Some(
        int_valuation(q.numer(), p) as i64 - int_valuation(q.denom(), p) as i64,
    ))
}

/// Prime factorization of `|n|` by trial division up to `bound`, finishing a 64-bit
/// cofactor with Miller–Rabin. `None` when a cofactor cannot be certified.
pub fn factor_integer(n: &BigInt, bound: u64) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    if n.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= bound {
        let dd = BigInt::from(d);
        if &dd * &dd > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&dd);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Some(out);
    }
    let fully_trialed = {
        let dd = BigInt::from(d);
        &dd * &dd > n
    };
    if fully_trialed || n.to_u64().is_some_and(is_prime_u64) {
        out.push((n, 1));
        Some(out)
    } else {
        None
    }
}

/// All positive divisors from a factorization.
pub fn divisors(factors: &[(BigInt, u32)]) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Parse `a`, `a/b` or `-a/b`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() || den.sign() == Sign::Minus {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&rat(9795, 2), 3).unwrap(), Some(1));
        assert_eq!(padic_valuation(&rat(0, 1), 3).unwrap(), None);
        assert_eq!(padic_valuation(&rat(74121075, 16), 3).unwrap(), Some(6));
        assert_eq!(padic_valuation(&rat(1, 18), 3).unwrap(), Some(-2));
        assert!(padic_valuation(&rat(1, 1), 4).is_err());
    }

    #[test]
    fn valuation_cross_check_by_trial_division() {
        // 74121075 = 3^6 * 5^2 * 7^2 * 83
        assert_eq!(74121075, 729 * 25 * 49 * 83);
        assert_ne!(83 % 3, 0);
        assert_eq!(9795, 3 * 5 * 653);
    }

    #[test]
    fn primes() {
        assert!(is_prime_u64(2160553));
        assert!(!is_prime_u64(2160553 * 3));
        assert!(is_prime_u64((1 << 61) - 1));
        assert_eq!(nth_prime(1), 2);
        assert_eq!(nth_prime(26), 101);
    }

    #[test]
    fn factoring_and_divisors() {
        let f = factor_integer(&BigInt::from(360), 1000).unwrap();
        assert_eq!(divisors(&f).len(), 24);
        let big = BigInt::from(3u64.pow(3)) * BigInt::from(5u64.pow(5)) * BigInt::from(11u64).pow(11);
        let f = factor_integer(&big, 1000).unwrap();
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-42189/2").unwrap(), rat(-42189, 2));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
