//! Arithmetic specific to `Z[x]` and `Q[x]`: contents, gcds, squarefree decomposition,
//! square recognition and rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::arith::{divisors, factor_integer};
use super::ring::rational_sqrt;
use super::{IntPolynomial, Poly, RatPolynomial};
use crate::error::{Error, Result};

/// Trial-division bound used when enumerating rational-root candidates.
const ROOT_FACTOR_BOUND: u64 = 10_000_000;

pub fn content(f: &IntPolynomial) -> BigInt {
    f.coeffs()
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(f: &IntPolynomial) -> IntPolynomial {
    if f.is_zero() {
        return f.clone();
    }
    let mut c = content(f);
    if f.lc().is_negative() {
        c = -c;
    }
    f.div_scalar_exact(&c).expect("content divides")
}

pub fn to_rat(f: &IntPolynomial) -> RatPolynomial {
    f.map(|c| BigRational::from_integer(c.clone()))
}

/// `(d, g)` with `f = g / d`, `g` integral and `d > 0` the lcm of the denominators.
pub fn clear_denominators(f: &RatPolynomial) -> (BigInt, IntPolynomial) {
    let d = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let g = f.map(|c| (c * BigRational::from_integer(d.clone())).to_integer());
    (d, g)
}

/// Primitive integer polynomial proportional to `f`.
pub fn primitive_of_rat(f: &RatPolynomial) -> IntPolynomial {
    primitive_part(&clear_denominators(f).1)
}

pub fn monic(f: &RatPolynomial) -> RatPolynomial {
    match f.leading_coeff() {
        Some(lc) => {
            let inv = lc.recip();
            f.scale(&inv)
        }
        None => f.clone(),
    }
}

/// Division with remainder over a field.
pub fn div_rem_rat(f: &RatPolynomial, g: &RatPolynomial) -> Result<(RatPolynomial, RatPolynomial)> {
    let dg = g.degree().ok_or(Error::ZeroPolynomial("division"))?;
    let inv = g.lc().recip();
    let mut rem = f.coeffs().to_vec();
    let Some(df) = f.degree() else {
        return Ok((Poly::zero(), Poly::zero()));
    };
    if df < dg {
        return Ok((Poly::zero(), f.clone()));
    }
    let mut quot = vec![BigRational::zero(); df - dg + 1];
    for k in (0..=df - dg).rev() {
        let top = rem[k + dg].clone();
        if top.is_zero() {
            continue;
        }
        let q = &top * &inv;
        for (i, c) in g.coeffs().iter().enumerate() {
            rem[k + i] = &rem[k + i] - &q * c;
        }
        quot[k] = q;
    }
    Ok((Poly::new(quot), Poly::new(rem)))
}

/// `f / g` when the division is exact, else [`Error::NotDivisible`].
pub fn divide_exact(f: &RatPolynomial, g: &RatPolynomial) -> Result<RatPolynomial> {
    let (q, r) = div_rem_rat(f, g)?;
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NotDivisible)
    }
}

/// Primitive gcd over `Z` (positive leading coefficient) via a primitive PRS.
pub fn gcd_int(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() {
        return primitive_part(b);
    }
    if b.is_zero() {
        return primitive_part(a);
    }
    let cont = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = x.pseudo_rem(&y);
        x = y;
        y = primitive_part(&r);
    }
    let g = primitive_part(&x);
    if g.degree() == Some(0) {
        return Poly::constant(cont);
    }
    g.scale(&cont)
}

/// Monic gcd over `Q`.
pub fn gcd_rat(a: &RatPolynomial, b: &RatPolynomial) -> RatPolynomial {
    let g = gcd_int(&primitive_of_rat(a), &primitive_of_rat(b));
    if g.is_zero() {
        return Poly::zero();
    }
    monic(&to_rat(&g))
}

/// Squarefree decomposition (Yun): `f = lc * prod a_i^i` with monic pairwise coprime
/// squarefree `a_i`. Only factors with `a_i != 1` are returned.
pub fn squarefree_decomposition(f: &RatPolynomial) -> Result<(BigRational, Vec<(RatPolynomial, u32)>)> {
    let lc = f.leading_coeff().ok_or(Error::ZeroPolynomial("squarefree decomposition"))?.clone();
    let f = monic(f);
    if f.degree() == Some(0) {
        return Ok((lc, Vec::new()));
    }
    let df = f.derivative();
    let a0 = gcd_rat(&f, &df);
    let mut b = divide_exact(&f, &a0)?;
    let c = divide_exact(&df, &a0)?;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = gcd_rat(&b, &d);
        let next_b = divide_exact(&b, &a)?;
        let next_c = divide_exact(&d, &a)?;
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        d = &next_c - &next_b.derivative();
        b = next_b;
        i += 1;
    }
    Ok((lc, out))
}

/// `Some(e)` with `d = e^2` when `d` is a square in `Q[s]`.
pub fn is_square(d: &RatPolynomial) -> Result<Option<RatPolynomial>> {
    let (lc, parts) = squarefree_decomposition(d)?;
    if parts.iter().any(|(_, m)| m % 2 == 1) {
        return Ok(None);
    }
    let Some(root) = rational_sqrt(&lc) else {
        return Ok(None);
    };
    let mut witness = Poly::constant(root);
    for (a, m) in &parts {
        witness = &witness * &a.pow(m / 2);
    }
    Ok(Some(witness))
}

/// Distinct rational roots, found by divisor enumeration on each squarefree factor.
///
/// Fails with [`Error::FactorizationTooHard`] if a coefficient needed for candidate
/// enumeration cannot be factored by trial division.
pub fn rational_roots(f: &RatPolynomial) -> Result<Vec<BigRational>> {
    let (_, parts) = squarefree_decomposition(f)?;
    let mut roots = Vec::new();
    for (part, _) in parts {
        roots.extend(rational_roots_squarefree(&primitive_of_rat(&part))?);
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn rational_roots_squarefree(f: &IntPolynomial) -> Result<Vec<BigRational>> {
    let mut roots = Vec::new();
    let mut f = f.clone();
    if let Some(v) = f.valuation() {
        if v > 0 {
            roots.push(BigRational::zero());
            f = Poly::new(f.coeffs()[v..].to_vec());
        }
    }
    let Some(deg) = f.degree() else {
        return Ok(roots);
    };
    if deg == 0 {
        return Ok(roots);
    }
    if deg == 1 {
        roots.push(BigRational::new(-f.coeff(0), f.coeff(1)));
        return Ok(roots);
    }
    let a0 = f.coeff(0);
    let an = f.lc();
    let num_divs = divisors(&factor_integer(&a0, ROOT_FACTOR_BOUND).ok_or(Error::FactorizationTooHard)?);
    let den_divs = divisors(&factor_integer(&an, ROOT_FACTOR_BOUND).ok_or(Error::FactorizationTooHard)?);
    let fq = to_rat(&f);
    let mut found = 0;
    'outer: for q in &den_divs {
        for p in &num_divs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = BigRational::new(p * sign, q.clone());
                if fq.eval(&cand).is_zero() {
                    roots.push(cand);
                    found += 1;
                    if found == deg {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::arith::int;

    fn rp(v: &[i64]) -> RatPolynomial {
        Poly::from_i64s(v)
    }

    #[test]
    fn exact_division_cases() {
        assert_eq!(divide_exact(&rp(&[-1, 0, 1]), &rp(&[-1, 1])).unwrap(), rp(&[1, 1]));
        assert!(matches!(
            divide_exact(&rp(&[1, 0, 1]), &rp(&[-1, 1])),
            Err(Error::NotDivisible)
        ));
    }

    #[test]
    fn square_recognition() {
        let e = rp(&[1, 0, 1]);
        let sq = &e * &e;
        assert_eq!(is_square(&sq).unwrap(), Some(e));
        assert_eq!(is_square(&rp(&[55, 0, 1])).unwrap(), None);
        // 4 s^2 is a square; 2 s^2 is not
        assert!(is_square(&rp(&[0, 0, 4])).unwrap().is_some());
        assert!(is_square(&rp(&[0, 0, 2])).unwrap().is_none());
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x-1)^3 (x+2)^2 (x^2+1)
        let a = rp(&[-1, 1]);
        let b = rp(&[2, 1]);
        let c = rp(&[1, 0, 1]);
        let f = (&(&a.pow(3) * &b.pow(2)) * &c).scale(&int(5));
        let (lc, parts) = squarefree_decomposition(&f).unwrap();
        assert_eq!(lc, int(5));
        assert_eq!(parts, vec![(c, 1), (b, 2), (a, 3)]);
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 3)(x + 5)^2 (x^2 + 7)
        let f = &(&rp(&[-3, 2]) * &rp(&[5, 1]).pow(2)) * &rp(&[7, 0, 1]);
        let roots = rational_roots(&f).unwrap();
        assert_eq!(roots, vec![int(-5), crate::exactpoly::arith::rat(3, 2)]);
        // quadratic with rational roots, squarefree
        let g = &rp(&[-3, 2]) * &rp(&[1, 3]);
        assert_eq!(rational_roots(&g).unwrap().len(), 2);
    }
}
