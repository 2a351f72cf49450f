//! Polynomials in `Z[t][X]`: specialization, substitution and discriminants in `X`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::rational::{clear_denominators, to_rat};
use super::resultant::discriminant;
use super::{BiPolynomial, IntPolynomial, Poly, RatPolynomial};
use crate::error::{Error, Result};

/// Largest `t`-degree among the `X`-coefficients.
pub fn t_degree(f: &BiPolynomial) -> usize {
    f.coeffs().iter().filter_map(|c| c.degree()).max().unwrap_or(0)
}

/// Coefficient-wise specialization `t -> t0`.
pub fn evaluate_t(f: &BiPolynomial, t0: &BigRational) -> RatPolynomial {
    f.map(|c| to_rat(c).eval(t0))
}

/// Specialize at an integer, staying in `Z[X]`.
pub fn evaluate_t_int(f: &BiPolynomial, t0: &BigInt) -> IntPolynomial {
    f.map(|c| c.eval(t0))
}

/// Result of [`substitute_t`]: `poly = scalar * F(r(s), X)` with integral `poly`.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub poly: BiPolynomial,
    pub scalar: BigInt,
}

/// Replace `t` by `r(s)` and clear denominators; the clearing factor is returned
/// separately rather than folded away.
pub fn substitute_t(f: &BiPolynomial, r: &RatPolynomial) -> Result<Substitution> {
    if r.degree().unwrap_or(0) == 0 {
        return Err(Error::DegenerateSubstitution);
    }
    let (den, num) = clear_denominators(r);
    let top = t_degree(f);
    let num_powers: Vec<IntPolynomial> = (0..=top).map(|k| num.pow(k as u32)).collect();
    let den_powers: Vec<BigInt> = (0..=top).map(|k| num_traits::pow(den.clone(), k)).collect();
    let poly = f.map(|c| {
        let mut acc = IntPolynomial::zero();
        for (k, ck) in c.coeffs().iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let scale = ck * &den_powers[top - k];
            acc = &acc + &num_powers[k].scale(&scale);
        }
        acc
    });
    Ok(Substitution {
        poly,
        scalar: den_powers[top].clone(),
    })
}

/// `disc_X(F)` as a polynomial in `t`.
pub fn discriminant_x(f: &BiPolynomial) -> Result<IntPolynomial> {
    match f.degree() {
        Some(d) if d >= 2 => discriminant(f),
        Some(d) => Err(Error::DegreeTooSmall { needed: 2, got: d }),
        None => Err(Error::ZeroPolynomial("discriminant_x")),
    }
}

/// Build `P(X) - t Q(X)` style bivariates from `X`-polynomials per power of `t`.
pub fn from_t_slices(slices: &[IntPolynomial]) -> BiPolynomial {
    let deg_x = slices.iter().filter_map(|s| s.degree()).max().unwrap_or(0);
    Poly::new(
        (0..=deg_x)
            .map(|j| Poly::new(slices.iter().map(|s| s.coeff(j)).collect()))
            .collect(),
    )
}

/// The `X`-polynomial multiplying `t^k`.
pub fn t_slice(f: &BiPolynomial, k: usize) -> IntPolynomial {
    f.map(|c| c.coeff(k))
}

/// Value of a `Z[t]` polynomial at a rational point.
pub fn eval_int_at_rational(f: &IntPolynomial, t0: &BigRational) -> BigRational {
    to_rat(f).eval(t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::arith::int;

    fn ip(v: &[i64]) -> IntPolynomial {
        Poly::from_i64s(v)
    }

    /// X^2 - t
    fn x2_minus_t() -> BiPolynomial {
        Poly::new(vec![ip(&[0, -1]), ip(&[]), ip(&[1])])
    }

    #[test]
    fn quadratic_disc() {
        assert_eq!(discriminant_x(&x2_minus_t()).unwrap(), ip(&[0, 4]));
    }

    #[test]
    fn evaluate_simple() {
        assert_eq!(evaluate_t(&x2_minus_t(), &int(4)), Poly::from_i64s(&[-4, 0, 1]));
    }

    #[test]
    fn substitute_square() {
        // X - t with t = s^2
        let f: BiPolynomial = Poly::new(vec![ip(&[0, -1]), ip(&[1])]);
        let s = substitute_t(&f, &Poly::from_i64s(&[0, 0, 1])).unwrap();
        assert_eq!(s.scalar, BigInt::from(1));
        assert_eq!(s.poly, Poly::new(vec![ip(&[0, 0, -1]), ip(&[1])]));
    }

    #[test]
    fn constant_substitution_rejected() {
        assert!(matches!(
            substitute_t(&x2_minus_t(), &Poly::from_i64s(&[3])),
            Err(Error::DegenerateSubstitution)
        ));
    }

    #[test]
    fn slices_roundtrip() {
        let f = x2_minus_t();
        let rebuilt = from_t_slices(&[t_slice(&f, 0), t_slice(&f, 1)]);
        assert_eq!(rebuilt, f);
    }
}
