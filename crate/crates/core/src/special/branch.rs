//! Branch points and inertia cycle types of a family `P(X) - t Q(X)`, and the
//! square-discriminant test after a substitution `t -> r(s)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ser_rational;
use crate::error::{Error, Result};
use crate::exactpoly::arith::nth_prime;
use crate::exactpoly::bivariate::{t_degree, t_slice};
use crate::exactpoly::rational::{div_rem_rat, gcd_rat, primitive_of_rat, to_rat};
use crate::exactpoly::{
    discriminant, discriminant_x, evaluate_t, is_square, rational_roots, squarefree_decomposition, BiPolynomial,
    IntPolynomial, Poly, RatPolynomial,
};
use crate::ffpoly::{reduce_mod_p, squarefree_factorization, PrimeField};
use crate::permgrp::{rh_genus, CycleType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BranchPoint {
    #[serde(serialize_with = "ser_rational")]
    Finite(BigRational),
    Infinity,
}

impl std::fmt::Display for BranchPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BranchPoint::Finite(t) => write!(f, "{t}"),
            BranchPoint::Infinity => write!(f, "infinity"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchData {
    pub point: BranchPoint,
    #[serde(serialize_with = "ser_cycle_type")]
    pub cycle_type: CycleType,
    pub class_label: Option<&'static str>,
    /// Order of vanishing of `disc_X` at the point (at infinity: `2n - 2 - deg`).
    pub disc_multiplicity: usize,
    /// Primes at which the multiplicity pattern was confirmed.
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub degree: usize,
    pub points: Vec<BranchData>,
    pub index_sum: usize,
    pub genus: u64,
    /// Each inertia type is odd exactly when the discriminant vanishes to odd order.
    pub parities_match: bool,
}

fn ser_cycle_type<S: serde::Serializer>(c: &CycleType, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

/// Atlas names of the Aut(M22) classes met here, keyed by cycle type on 22 points.
/// The order-12 class is the one of type 12.6.4 (named 12A in one place of the
/// source and 12B in another).
pub fn aut_m22_class_label(t: &CycleType) -> Option<&'static str> {
    match t.to_string().as_str() {
        "5^4.1^2" => Some("5A"),
        "2^7.1^8" => Some("2B"),
        "12.6.4" => Some("12A"),
        _ => None,
    }
}

/// Multiplicity of the rational root `t0` in `f`.
fn root_multiplicity(f: &RatPolynomial, t0: &BigRational) -> Result<usize> {
    let lin = Poly::new(vec![-t0.clone(), BigRational::one()]);
    let mut f = f.clone();
    let mut m = 0;
    loop {
        let (q, r) = div_rem_rat(&f, &lin)?;
        if !r.is_zero() {
            return Ok(m);
        }
        f = q;
        m += 1;
    }
}

/// Ramification cycle lengths over one fibre: every root of multiplicity `m` is an
/// `m`-cycle, which holds when the `t`-derivative does not vanish at the multiple
/// roots. The pattern over `Q` is checked against the one mod `primes` good primes.
fn stable_pattern(fibre: &RatPolynomial, dt: &RatPolynomial, primes: usize) -> Result<(Vec<usize>, Vec<u64>)> {
    let n = fibre.degree().ok_or(Error::ZeroPolynomial("fibre"))?;
    let (_, parts) = squarefree_decomposition(fibre)?;
    let mut pattern = Vec::new();
    let mut radical = RatPolynomial::one();
    let mut multiple = RatPolynomial::one();
    for (a, m) in &parts {
        let d = a.degree().unwrap_or(0);
        pattern.extend(std::iter::repeat(*m as usize).take(d));
        radical = &radical * a;
        if *m > 1 {
            multiple = &multiple * a;
        }
    }
    pattern.sort_unstable_by(|a, b| b.cmp(a));
    if gcd_rat(&multiple, dt).degree() != Some(0) {
        return Err(Error::InconsistentBranchData(
            "t-derivative vanishes at a multiple root; cycle lengths are not read off multiplicities".into(),
        ));
    }
    let rad_n = radical.degree().unwrap_or(0);
    let rad_disc = if rad_n < 2 {
        BigInt::one()
    } else {
        discriminant(&primitive_of_rat(&radical))?
    };
    let mut confirmed = Vec::new();
    let mut k = 1;
    while confirmed.len() < primes {
        let p = nth_prime(k);
        k += 1;
        if p as usize <= n || (&rad_disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let field = PrimeField::new(p)?;
        let (Ok(red), Ok(rad)) = (reduce_mod_p(fibre, field), reduce_mod_p(&radical, field)) else {
            continue;
        };
        if red.degree() != Some(n) || rad.degree() != Some(rad_n) {
            continue;
        }
        let mut local = Vec::new();
        for (g, m) in squarefree_factorization(&red.monic()) {
            local.extend(std::iter::repeat(m as usize).take(g.deg()));
        }
        local.sort_unstable_by(|a, b| b.cmp(a));
        if local != pattern {
            return Err(Error::UnstablePattern(format!(
                "p = {p} gives {} where Q gives {}",
                CycleType::new(local),
                CycleType::new(pattern)
            )));
        }
        confirmed.push(p);
    }
    Ok((pattern, confirmed))
}

/// Branch points and inertia types of `F = P(X) + t R(X)`, from the rational roots of
/// `disc_X(F)` and the pole structure at `t = infinity`.
pub fn branch_and_inertia(f: &BiPolynomial, primes: usize) -> Result<BranchReport> {
    if t_degree(f) != 1 {
        return Err(Error::InconsistentBranchData("expected F linear in t".into()));
    }
    let n = f.degree().ok_or(Error::ZeroPolynomial("branch_and_inertia"))?;
    let p = to_rat(&t_slice(f, 0));
    let r = to_rat(&t_slice(f, 1));
    if p.degree() != Some(n) || r.degree().unwrap_or(0) >= n {
        return Err(Error::InconsistentBranchData("leading X-term must not involve t".into()));
    }
    let disc = to_rat(&discriminant_x(f)?);
    let mut points = Vec::new();
    for t0 in rational_roots(&disc)? {
        let fibre = evaluate_t(f, &t0);
        let (pattern, used) = stable_pattern(&fibre, &r, primes)?;
        let ct = CycleType::new(pattern);
        points.push(BranchData {
            class_label: aut_m22_class_label(&ct),
            disc_multiplicity: root_multiplicity(&disc, &t0)?,
            point: BranchPoint::Finite(t0),
            cycle_type: ct,
            primes: used,
        });
    }
    let deficit = n - r.degree().unwrap_or(0);
    let (mut pattern, used) = stable_pattern(&r, &p, primes)?;
    pattern.push(deficit);
    pattern.sort_unstable_by(|a, b| b.cmp(a));
    let ct = CycleType::new(pattern);
    let at_infinity = (2 * n - 2)
        .checked_sub(disc.degree().unwrap_or(0))
        .ok_or(Error::Internal("discriminant degree exceeds 2n - 2"))?;
    points.push(BranchData {
        class_label: aut_m22_class_label(&ct),
        disc_multiplicity: at_infinity,
        point: BranchPoint::Infinity,
        cycle_type: ct,
        primes: used,
    });
    points.retain(|b| b.cycle_type.index() > 0);
    let index_sum = points.iter().map(|b| b.cycle_type.index()).sum();
    let types: Vec<CycleType> = points.iter().map(|b| b.cycle_type.clone()).collect();
    let genus = rh_genus(n, &types)?;
    let parities_match = points
        .iter()
        .all(|b| b.cycle_type.is_even() == (b.disc_multiplicity % 2 == 0));
    Ok(BranchReport {
        degree: n,
        points,
        index_sum,
        genus,
        parities_match,
    })
}

/// Is `disc(r(s))` a square in `Q(s)`?
pub fn square_check(disc: &IntPolynomial, r: &RatPolynomial) -> Result<bool> {
    if r.degree().unwrap_or(0) == 0 {
        return Err(Error::DegenerateSubstitution);
    }
    Ok(is_square(&to_rat(disc).compose(r))?.is_some())
}

pub fn msub_square_check(f: &BiPolynomial, r: &RatPolynomial) -> Result<bool> {
    if r.degree().unwrap_or(0) == 0 {
        return Err(Error::DegenerateSubstitution);
    }
    square_check(&discriminant_x(f)?, r)
}

/// Rational `s` at which `disc_X(F)(r(s))` vanishes.
pub fn s_line_discriminant_roots(disc: &IntPolynomial, r: &RatPolynomial) -> Result<Vec<BigRational>> {
    rational_roots(&to_rat(disc).compose(r))
}
