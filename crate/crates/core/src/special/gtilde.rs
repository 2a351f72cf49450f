//! The degree-8 factor of `g(0,X)`: divisibility, its 3-adic Newton polygon, a
//! Frobenius cycle-type census, and the decomposition-group candidates at 3.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::degree8::{agl32, two_transitive_degree8};
use crate::error::{Error, Result};
use crate::exactpoly::arith::nth_prime;
use crate::exactpoly::{divide_exact, evaluate_t, BiPolynomial, RatPolynomial};
use crate::ffpoly::{census_squarefree, is_squarefree, reduce_mod_p, PrimeField};
use crate::newton::{newton_polygon, orbit_constraints, orbits_compatible};
use crate::permgrp::{all_subgroups_small, decomposition_plausible, CycleType};

#[derive(Clone, Debug, Serialize)]
pub struct GtildeCensus {
    pub samples: usize,
    /// Primes examined, including those skipped for bad reduction.
    pub primes_tried: usize,
    pub largest_prime: u64,
    pub cycle_types: BTreeMap<String, usize>,
    pub element_orders: BTreeMap<u64, usize>,
    /// Degree-8 2-transitive groups missing one of the observed cycle types.
    pub refuted: Vec<String>,
    pub not_refuted: Vec<String>,
    /// Every observed type occurs in AGL(3,2), order 7 was seen, orders 5 and 15 were not.
    pub consistent_with_agl32: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GtildeReport {
    pub divides: bool,
    pub cofactor_degree: usize,
    /// `(slope, length)` pairs of the Newton polygon at 3.
    pub newton_segments: Vec<(String, usize)>,
    pub census: GtildeCensus,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub fragments: Vec<String>,
    pub subgroup_classes: usize,
    pub orbit_filter: BTreeSet<String>,
    pub final_set: BTreeSet<String>,
}

/// Exact quotient `g(0,X) / g~`, failing when there is a remainder.
fn cofactor(g: &BiPolynomial, gtilde: &RatPolynomial) -> Result<RatPolynomial> {
    let g0 = evaluate_t(g, &BigRational::zero());
    divide_exact(&g0, gtilde).map_err(|_| Error::NotDivisible)
}

pub fn newton_segments_at(f: &RatPolynomial, p: u64) -> Result<Vec<(String, usize)>> {
    let np = newton_polygon(f, p)?;
    Ok(np
        .segments
        .iter()
        .map(|s| (s.slope.to_string(), s.length))
        .collect())
}

pub fn gtilde_checks(g: &BiPolynomial, gtilde: &RatPolynomial, samples: usize) -> Result<GtildeReport> {
    let co = cofactor(g, gtilde)?;
    Ok(GtildeReport {
        divides: true,
        cofactor_degree: co.degree().unwrap_or(0),
        newton_segments: newton_segments_at(gtilde, 3)?,
        census: gtilde_census(gtilde, samples)?,
    })
}

fn frobenius_type(f: &RatPolynomial, p: u64) -> Option<CycleType> {
    let field = PrimeField::new(p).ok()?;
    let n = f.degree()?;
    let red = reduce_mod_p(f, field).ok()?;
    if red.degree() != Some(n) {
        return None;
    }
    let red = red.monic();
    if !is_squarefree(&red) {
        return None;
    }
    let mut parts = Vec::new();
    for (d, c) in census_squarefree(&red, n).nonzero() {
        parts.extend(std::iter::repeat(d).take(c));
    }
    Some(CycleType::new(parts))
}

/// Cycle types of Frobenius at the first `samples` primes of good reduction.
pub fn gtilde_census(gtilde: &RatPolynomial, samples: usize) -> Result<GtildeCensus> {
    const BATCH: usize = 256;
    let mut found: Vec<CycleType> = Vec::with_capacity(samples);
    let mut k = 1;
    let mut tried = 0;
    let mut largest = 0;
    while found.len() < samples {
        let primes: Vec<u64> = (k..k + BATCH).map(nth_prime).collect();
        k += BATCH;
        let batch: Vec<(u64, Option<CycleType>)> =
            primes.par_iter().map(|&p| (p, frobenius_type(gtilde, p))).collect();
        for (p, t) in batch {
            if found.len() == samples {
                break;
            }
            tried += 1;
            largest = p;
            if let Some(t) = t {
                found.push(t);
            }
        }
    }
    let mut cycle_types = BTreeMap::new();
    let mut element_orders = BTreeMap::new();
    for t in &found {
        *cycle_types.entry(t.to_string()).or_insert(0) += 1;
        *element_orders.entry(t.order()).or_insert(0) += 1;
    }
    let observed: BTreeSet<&CycleType> = found.iter().collect();
    let mut refuted = Vec::new();
    let mut not_refuted = Vec::new();
    let mut agl_ok = false;
    for g in two_transitive_degree8()? {
        let types = g.cycle_types();
        let fits = observed.iter().all(|t| types.contains(t));
        if g.name == "AGL(3,2)" {
            agl_ok = fits;
        }
        if fits {
            not_refuted.push(g.name.to_string());
        } else {
            refuted.push(g.name.to_string());
        }
    }
    let consistent = agl_ok
        && element_orders.contains_key(&7)
        && !element_orders.contains_key(&5)
        && !element_orders.contains_key(&15);
    Ok(GtildeCensus {
        samples: found.len(),
        primes_tried: tried,
        largest_prime: largest,
        cycle_types,
        element_orders,
        refuted,
        not_refuted,
        consistent_with_agl32: consistent,
    })
}

/// Subgroups of AGL(3,2) on 8 points compatible with the 3-adic Newton polygon of
/// `g~`, then those with a normal 3-subgroup and metacyclic quotient.
pub fn decomposition_at_3(gtilde: &RatPolynomial) -> Result<Decomposition> {
    let np = newton_polygon(gtilde, 3)?;
    let fragments = orbit_constraints(&np)?;
    let (small, classes) = all_subgroups_small(&agl32()?)?;
    let mut orbit_filter = BTreeSet::new();
    let mut final_set = BTreeSet::new();
    for class in &classes {
        if !orbits_compatible(&small.orbit_lengths(&class.generators), &fragments) {
            continue;
        }
        let sub = small.restrict(&class.members, &class.generators);
        let label = sub.label();
        if decomposition_plausible(&sub, 3) {
            final_set.insert(label.clone());
        }
        orbit_filter.insert(label);
    }
    Ok(Decomposition {
        fragments: fragments.iter().map(|f| f.to_string()).collect(),
        subgroup_classes: classes.len(),
        orbit_filter,
        final_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::bundled;

    #[test]
    fn nondivisor_is_fatal() {
        let g = bundled::g();
        let mut bad = bundled::gtilde().into_coeffs();
        bad[0] += BigRational::from_integer(1.into());
        let bad = RatPolynomial::new(bad);
        assert!(matches!(gtilde_checks(&g, &bad, 10), Err(Error::NotDivisible)));
    }

    #[test]
    fn census_of_a_cyclic_quartic_sees_only_cyclic_types() {
        // X^4 + X^3 + X^2 + X + 1 has Galois group C4 acting regularly
        let f = RatPolynomial::from_i64s(&[1, 1, 1, 1, 1]);
        let mut types = BTreeSet::new();
        for k in 1..200 {
            if let Some(t) = frobenius_type(&f, nth_prime(k)) {
                types.insert(t.to_string());
            }
        }
        let expected: BTreeSet<String> = ["1^4", "2^2", "4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(types, expected);
    }
}
