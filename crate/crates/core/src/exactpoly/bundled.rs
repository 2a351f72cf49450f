//! The specific polynomials under study, built from their closed forms, plus loaders
//! for their text serializations.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::arith::rat;
use super::bivariate::{from_t_slices, substitute_t};
use super::text::{parse_bi, parse_rat};
use super::{BiPolynomial, IntPolynomial, Poly, RatPolynomial};
use crate::error::{Error, Result};

fn ip(v: &[i64]) -> IntPolynomial {
    Poly::from_i64s(v)
}

/// `(X^2-7X+15)^5 (X^2+15X+180)^5 (X^2+4X+400)`
pub fn f_numerator() -> IntPolynomial {
    let a = ip(&[15, -7, 1]).pow(5);
    let b = ip(&[180, 15, 1]).pow(5);
    let c = ip(&[400, 4, 1]);
    &(&a * &b) * &c
}

/// `X^6 (X-4)^4`
pub fn f_denominator() -> IntPolynomial {
    &ip(&[0, 1]).pow(6) * &ip(&[-4, 1]).pow(4)
}

/// `f(t,X) = P(X) - t X^6 (X-4)^4`
pub fn f() -> BiPolynomial {
    let q = f_denominator();
    from_t_slices(&[f_numerator(), q.scale(&BigInt::from(-1))])
}

/// `t(s) = 3^3 5^4 11^10 (s^2 + 55) / 2^8`
pub fn t_of_s() -> RatPolynomial {
    let c = BigInt::from(27) * BigInt::from(625) * num_traits::pow(BigInt::from(11), 10);
    let lead = BigRational::new(c, BigInt::from(256));
    Poly::new(vec![&lead * rat(55, 1), rat(0, 1), lead])
}

/// `g(s,X) = 256 f(t(s), X)`
pub fn g() -> BiPolynomial {
    let sub = substitute_t(&f(), &t_of_s()).expect("t(s) is nonconstant");
    debug_assert_eq!(sub.scalar, BigInt::from(256));
    sub.poly
}

/// The degree-8 factor of `g(0,X)`.
pub fn gtilde() -> RatPolynomial {
    Poly::new(vec![
        rat(12301875, 1),
        rat(-23674275, 2),
        rat(74121075, 16),
        rat(-1312335, 2),
        rat(-42189, 2),
        rat(9795, 2),
        rat(783, 1),
        rat(38, 1),
        rat(1, 1),
    ])
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_bipoly(path: &Path) -> Result<BiPolynomial> {
    Ok(parse_bi(&read(path)?)?.2)
}

pub fn load_poly(path: &Path) -> Result<RatPolynomial> {
    Ok(parse_rat(&read(path)?)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::bivariate::{evaluate_t, t_degree};
    use crate::exactpoly::rational::divide_exact;

    #[test]
    fn shapes() {
        let f = f();
        assert_eq!(f.degree(), Some(22));
        assert_eq!(t_degree(&f), 1);
        let g = g();
        assert_eq!(g.degree(), Some(22));
        assert_eq!(t_degree(&g), 2);
        assert_eq!(g.lc(), ip(&[256]));
    }

    #[test]
    fn constant_term_at_zero() {
        let f0 = evaluate_t(&f(), &rat(0, 1));
        let expect = BigInt::from(15).pow(5) * BigInt::from(180).pow(5) * 400;
        assert_eq!(f0.coeff(0), BigRational::from_integer(expect));
    }

    #[test]
    fn gtilde_divides_g0() {
        let g0 = evaluate_t(&g(), &rat(0, 1));
        let q = divide_exact(&g0, &gtilde()).unwrap();
        assert_eq!(q.degree(), Some(14));
        assert_eq!(q.lc(), rat(256, 1));
    }
}
