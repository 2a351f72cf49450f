use serde::Serialize;

use super::factor::{census_squarefree, is_squarefree};
use super::field::PrimeField;
use super::poly::FpPolynomial;
use crate::error::{Error, Result};
use crate::exactpoly::BiPolynomial;
use crate::permgrp::CycleType;

/// Result of reducing `F(t0, X)` modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SampleOutcome {
    /// Degrees of the irreducible factors of a squarefree reduction.
    CycleType(CycleType),
    /// The reduction has a repeated factor; no cycle type can be read off.
    NotSquarefree,
}

/// `F(t0, X) mod p` for `F` in `Z[t][X]`.
pub fn specialize_mod_p(f: &BiPolynomial, t0: u64, field: PrimeField) -> FpPolynomial {
    let t = field.to_mont(t0 % field.modulus());
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            c.coeffs()
                .iter()
                .rev()
                .fold(field.zero(), |acc, a| field.add(field.mul(acc, t), field.from_bigint(a)))
        })
        .collect();
    FpPolynomial::from_mont(field, coeffs)
}

/// Factor-degree pattern of `F(t0, X)` over `F_p`, the Frobenius cycle type when
/// the reduction is squarefree.
pub fn cycle_type_sample(f: &BiPolynomial, t0: u64, field: PrimeField) -> Result<SampleOutcome> {
    let n = f.degree().ok_or(Error::ZeroPolynomial("cycle_type_sample"))?;
    let red = specialize_mod_p(f, t0, field);
    if red.degree() != Some(n) {
        return Err(Error::DegreeDrop(format!(
            "leading coefficient vanishes at t0 = {t0} mod {}",
            field.modulus()
        )));
    }
    let monic = red.monic();
    if !is_squarefree(&monic) {
        return Ok(SampleOutcome::NotSquarefree);
    }
    let census = census_squarefree(&monic, n);
    let mut parts = Vec::new();
    for (d, c) in census.nonzero() {
        parts.extend(std::iter::repeat(d).take(c));
    }
    Ok(SampleOutcome::CycleType(CycleType::new(parts)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{IntPolynomial, Poly};

    fn bipoly(rows: &[&[i64]]) -> BiPolynomial {
        Poly::new(rows.iter().map(|r| IntPolynomial::from_i64s(r)).collect())
    }

    #[test]
    fn quadratic_in_x() {
        // X^2 - t
        let f = bipoly(&[&[0, -1], &[], &[1]]);
        let p = PrimeField::new(7).unwrap();
        // 2 is a square mod 7, 3 is not
        assert_eq!(
            cycle_type_sample(&f, 2, p).unwrap(),
            SampleOutcome::CycleType(CycleType::parse("1^2").unwrap())
        );
        assert_eq!(
            cycle_type_sample(&f, 3, p).unwrap(),
            SampleOutcome::CycleType(CycleType::parse("2").unwrap())
        );
        assert_eq!(cycle_type_sample(&f, 0, p).unwrap(), SampleOutcome::NotSquarefree);
    }

    #[test]
    fn degree_drop() {
        // t X^2 + 1
        let f = bipoly(&[&[1], &[], &[0, 1]]);
        let p = PrimeField::new(5).unwrap();
        assert!(matches!(cycle_type_sample(&f, 5, p), Err(Error::DegreeDrop(_))));
    }
}
