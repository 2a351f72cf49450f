//! Specializations of the `s`-family: integral models, ramification verdicts at single
//! primes, the degree-8 factor at `s = 0`, branch data of `f` and the square
//! discriminant after `t -> t(s)`.

mod branch;
mod dedekind;
mod degree8;
mod gtilde;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactpoly::arith::{factor_integer, int_valuation};
use crate::exactpoly::rational::{clear_denominators, primitive_part};
use crate::exactpoly::text::write_int;
use crate::exactpoly::{discriminant, evaluate_t, BiPolynomial, IntPolynomial, Poly, RatPolynomial};

pub use branch::{
    aut_m22_class_label, branch_and_inertia, msub_square_check, s_line_discriminant_roots, square_check,
    BranchData, BranchPoint, BranchReport,
};
pub use dedekind::{ramification_verdict, verdict_for, LocalPrime, Method, RamificationVerdict, Verdict};
pub use degree8::{agl32, two_transitive_degree8, Degree8Group};
pub use gtilde::{decomposition_at_3, gtilde_census, gtilde_checks, newton_segments_at, Decomposition, GtildeCensus, GtildeReport};

/// A monic integer polynomial whose roots are `scale` times the roots of `F(s0, X)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralModel {
    #[serde(serialize_with = "ser_rational")]
    pub s0: BigRational,
    #[serde(serialize_with = "ser_int_poly")]
    pub h: IntPolynomial,
    #[serde(serialize_with = "ser_bigint")]
    pub scale: BigInt,
}

impl IntegralModel {
    pub fn degree(&self) -> usize {
        self.h.degree().unwrap_or(0)
    }

    /// First 16 hex digits of the SHA-256 of the model's text form.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(write_int("Y", &self.h).as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub(crate) fn ser_bigint<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

fn ser_int_poly<S: serde::Serializer>(f: &IntPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&write_int("Y", f))
}

/// Integral model of `F(s0, X)`.
pub fn integral_model(f: &BiPolynomial, s0: &BigRational) -> Result<IntegralModel> {
    let n = f.degree().ok_or(Error::ZeroPolynomial("integral_model"))?;
    let special = evaluate_t(f, s0);
    if special.degree() != Some(n) {
        return Err(Error::DegreeDrop(format!("at s0 = {s0}")));
    }
    let (scale, h) = monic_model(&special)?;
    Ok(IntegralModel {
        s0: s0.clone(),
        h,
        scale,
    })
}

/// `(c, h)` with `h` monic integral and `h(c x) = 0` for every root `x` of `f`; `c` is
/// the least positive integer that works when the leading coefficient factors.
pub fn monic_model(f: &RatPolynomial) -> Result<(BigInt, IntPolynomial)> {
    let n = f.degree().ok_or(Error::ZeroPolynomial("monic_model"))?;
    let (_, a) = clear_denominators(f);
    let mut a = primitive_part(&a);
    if a.lc().is_negative() {
        a = -a;
    }
    let lead = a.lc();
    let c = minimal_scale(&a, n).unwrap_or_else(|| lead.clone());
    // h_j = a_j c^(n-j) / a_n
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut cpow = BigInt::one();
    for j in (0..=n).rev() {
        let num = a.coeff(j) * &cpow;
        let (q, r) = num.div_rem(&lead);
        if !r.is_zero() {
            return Err(Error::Internal("scaling does not clear the leading coefficient"));
        }
        coeffs.push(q);
        cpow *= &c;
    }
    coeffs.reverse();
    Ok((c, Poly::new(coeffs)))
}

fn minimal_scale(a: &IntPolynomial, n: usize) -> Option<BigInt> {
    let lead = a.lc();
    if lead.is_one() {
        return Some(BigInt::one());
    }
    let factors = factor_integer(&lead, 1_000_000)?;
    let mut c = BigInt::one();
    for (p, v) in factors {
        let p64: u64 = p.clone().try_into().ok()?;
        let mut e = 0u32;
        for j in 0..n {
            let aj = a.coeff(j);
            if aj.is_zero() {
                continue;
            }
            let vj = int_valuation(&aj, p64);
            if vj < v {
                let need = (v - vj).div_ceil((n - j) as u32);
                e = e.max(need);
            }
        }
        c *= num_traits::pow(p, e as usize);
    }
    Some(c)
}

/// Reject specializations at roots of the `s`-line discriminant, where the
/// specialized polynomial is not separable.
pub fn validate_s0(f: &BiPolynomial, s0: &BigRational) -> Result<()> {
    let special = evaluate_t(f, s0);
    let (_, a) = clear_denominators(&special);
    if discriminant(&a)?.is_zero() {
        return Err(Error::InconsistentBranchData(format!("s0 = {s0} is a root of the discriminant")));
    }
    Ok(())
}
