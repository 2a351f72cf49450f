//! Point counting on the `k`-set resolvent curve over `F_λ`, set against the
//! Hasse–Weil bound for the genus that the full symmetric group would force.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{discriminant_x, is_prime_u64, BiPolynomial, IntPolynomial};
use crate::ffpoly::{census_squarefree, distinct_degree_census, full_factor, Census, FpPolynomial, PrimeField};
use crate::permgrp::{binomial, induced_kset_action, rh_genus, CycleType};

/// The 160000-th prime.
pub const LAMBDA: u64 = 2_160_553;

#[derive(Clone, Debug)]
pub struct ExclusionConfig {
    pub lambda: u64,
    pub k: usize,
    pub threads: usize,
    pub shard_size: u64,
    pub checkpoint: Option<PathBuf>,
}

impl ExclusionConfig {
    pub fn new(lambda: u64) -> Result<Self> {
        if !is_prime_u64(lambda) {
            return Err(Error::NotPrime(lambda));
        }
        Ok(ExclusionConfig {
            lambda,
            k: 4,
            threads: 1,
            shard_size: 1 << 16,
            checkpoint: None,
        })
    }
}

/// Genus of the curve attached to the action on `k`-subsets, when the inertia
/// generators have the given cycle types in the natural action of degree `n`.
pub fn hypothetical_genus(n: usize, k: usize, types: &[CycleType]) -> Result<u64> {
    let induced: Vec<CycleType> = types
        .iter()
        .map(|t| {
            if t.degree() != n {
                return Err(Error::InconsistentBranchData(format!("cycle type {t} is not of degree {n}")));
            }
            Ok(induced_kset_action(&t.representative(), k).cycle_type())
        })
        .collect::<Result<_>>()?;
    rh_genus(binomial(n, k), &induced)
}

/// `λ + 1 + ceil(2g sqrt(λ))`: the least integer at or above the Hasse–Weil bound.
pub fn hasse_weil_bound(lambda: u64, genus: u64) -> Result<u64> {
    let (floor, exact) = hasse_weil_parts(lambda, genus)?;
    Ok(if exact { floor } else { floor + 1 })
}

/// `λ + 1 + floor(2g sqrt(λ))`, the largest point count the bound permits.
pub fn hasse_weil_floor(lambda: u64, genus: u64) -> Result<u64> {
    Ok(hasse_weil_parts(lambda, genus)?.0)
}

fn hasse_weil_parts(lambda: u64, genus: u64) -> Result<(u64, bool)> {
    if !is_prime_u64(lambda) {
        return Err(Error::NotPrime(lambda));
    }
    let g = BigUint::from(genus);
    let radicand = BigUint::from(4u32) * &g * &g * BigUint::from(lambda);
    let s = radicand.sqrt();
    let exact = &s * &s == radicand;
    let floor = (s + BigUint::from(lambda) + 1u32)
        .to_u64()
        .ok_or(Error::Internal("Hasse-Weil bound overflows u64"))?;
    Ok((floor, exact))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShardResult {
    pub start: u64,
    pub end: u64,
    pub subtotal: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub lambda: u64,
    pub k: usize,
    /// Affine `t0` with `disc(t0) != 0`, counting monic degree-`k` divisors.
    pub strict: u64,
    /// `strict` plus degree-`k` divisors of the squarefree part at discriminant roots.
    pub inclusive: u64,
    /// Discriminant roots mod `λ` that were skipped.
    pub excluded: Vec<u64>,
    pub shards: Vec<ShardResult>,
    pub resumed_shards: usize,
    pub seconds: f64,
}

/// `F(t0, X) mod λ` evaluated from pre-reduced `t`-coefficients.
struct ReducedFamily {
    field: PrimeField,
    /// `coeffs[j]` is the `t`-polynomial of `X^j`, Montgomery form, low degree first.
    coeffs: Vec<Vec<u64>>,
    disc: Vec<u64>,
}

fn reduce_int_poly(f: &IntPolynomial, field: PrimeField) -> Vec<u64> {
    f.coeffs().iter().map(|c| field.from_bigint(c)).collect()
}

fn horner(field: PrimeField, c: &[u64], t: u64) -> u64 {
    c.iter().rev().fold(field.zero(), |acc, &a| field.add(field.mul(acc, t), a))
}

impl ReducedFamily {
    fn new(f: &BiPolynomial, lambda: u64) -> Result<Self> {
        let field = PrimeField::new(lambda)?;
        let n = f.degree().ok_or(Error::ZeroPolynomial("count_quartic_points"))?;
        let coeffs: Vec<Vec<u64>> = f.coeffs().iter().map(|c| reduce_int_poly(c, field)).collect();
        if coeffs[n].iter().all(|&c| c == field.zero()) {
            return Err(Error::BadPrime(lambda));
        }
        let disc = reduce_int_poly(&discriminant_x(f)?, field);
        Ok(ReducedFamily { field, coeffs, disc })
    }

    fn at(&self, t0: u64) -> FpPolynomial {
        let t = self.field.to_mont(t0);
        let values = self.coeffs.iter().map(|c| horner(self.field, c, t)).collect();
        FpPolynomial::from_mont(self.field, values)
    }

    fn disc_vanishes(&self, t0: u64) -> bool {
        horner(self.field, &self.disc, self.field.to_mont(t0)) == self.field.zero()
    }

    /// Number of monic degree-`k` divisors of `F(t0, X)`, or `None` at a
    /// discriminant root or where the leading coefficient vanishes.
    fn strict_count(&self, t0: u64, k: usize) -> Option<u64> {
        if self.disc_vanishes(t0) {
            return None;
        }
        let red = self.at(t0);
        if red.degree() != Some(self.coeffs.len() - 1) {
            return None;
        }
        Some(divisors_of_degree(&census_squarefree(&red.monic(), k), k))
    }
}

/// Completed shards, one `λ start end subtotal` line each.
fn read_checkpoint(path: &Path, lambda: u64) -> Result<BTreeMap<(u64, u64), u64>> {
    let mut done = BTreeMap::new();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(done),
        Err(source) => {
            return Err(Error::Io {
                path: path.display().to_string(),
                source,
            })
        }
    };
    for (i, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed: Option<Vec<u64>> = fields.iter().map(|f| f.parse().ok()).collect();
        match parsed {
            Some(v) if v.len() == 4 && v[0] == lambda => {
                done.insert((v[1], v[2]), v[3]);
            }
            Some(v) if v.len() == 4 => {
                return Err(Error::Parse(format!(
                    "checkpoint {} was written for λ = {}, not {lambda}",
                    path.display(),
                    v[0]
                )))
            }
            // a torn final line from an interrupted write is dropped
            _ if i + 1 == text.lines().count() => {}
            _ => return Err(Error::Parse(format!("checkpoint line {}: `{line}`", i + 1))),
        }
    }
    Ok(done)
}

/// Count monic degree-`k` divisors of `F(t0, X)` over all `t0 ∈ F_λ` off the discriminant.
pub fn count_quartic_points(f: &BiPolynomial, cfg: &ExclusionConfig) -> Result<CountReport> {
    let started = Instant::now();
    let family = ReducedFamily::new(f, cfg.lambda)?;
    let lambda = cfg.lambda;
    let size = cfg.shard_size.max(1);
    let shards: Vec<(u64, u64)> = (0..lambda.div_ceil(size))
        .map(|i| (i * size, ((i + 1) * size).min(lambda)))
        .collect();
    let done = match &cfg.checkpoint {
        Some(p) => read_checkpoint(p, lambda)?,
        None => BTreeMap::new(),
    };
    let writer = match &cfg.checkpoint {
        Some(p) => Some(Mutex::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .map_err(|source| Error::Io {
                    path: p.display().to_string(),
                    source,
                })?,
        )),
        None => None,
    };
    let k = cfg.k;
    let run_shard = |&(start, end): &(u64, u64)| -> Result<ShardResult> {
        if let Some(&subtotal) = done.get(&(start, end)) {
            return Ok(ShardResult { start, end, subtotal });
        }
        let subtotal = (start..end).filter_map(|t0| family.strict_count(t0, k)).sum();
        if let Some(w) = &writer {
            let mut file = w.lock().expect("checkpoint lock");
            writeln!(file, "{lambda} {start} {end} {subtotal}")
                .and_then(|_| file.flush())
                .map_err(|source| Error::Io {
                    path: "checkpoint".into(),
                    source,
                })?;
        }
        Ok(ShardResult { start, end, subtotal })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .map_err(|_| Error::Internal("thread pool"))?;
    let results: Vec<ShardResult> =
        pool.install(|| shards.par_iter().map(run_shard).collect::<Result<Vec<_>>>())?;
    let strict: u64 = results.iter().map(|r| r.subtotal).sum();

    let excluded = disc_roots(&family, lambda);
    let mut extra = 0u64;
    for &t0 in &excluded {
        let red = family.at(t0);
        if !red.is_zero() {
            extra += divisors_of_degree(&distinct_degree_census(&red, k)?, k);
        }
    }
    Ok(CountReport {
        lambda,
        k,
        strict,
        inclusive: strict + extra,
        excluded,
        resumed_shards: shards.iter().filter(|s| done.contains_key(s)).count(),
        shards: results,
        seconds: started.elapsed().as_secs_f64(),
    })
}

/// Monic degree-`k` divisors of a squarefree polynomial with the given census: the
/// coefficient of `x^k` in `prod_d (1 + x^d)^(c_d)`. These are the Frobenius-stable
/// `k`-sets of roots, i.e. the points of the `k`-set curve over `t0`.
pub fn divisors_of_degree(census: &Census, k: usize) -> u64 {
    let mut coef = vec![0u64; k + 1];
    coef[0] = 1;
    for d in 1..=k {
        let c = census.count(d) as u64;
        for _ in 0..c {
            for i in (d..=k).rev() {
                coef[i] += coef[i - d];
            }
        }
    }
    coef[k]
}

/// Roots of the reduced discriminant, from its linear factors.
fn disc_roots(family: &ReducedFamily, lambda: u64) -> Vec<u64> {
    let field = family.field;
    let disc = FpPolynomial::from_mont(field, family.disc.clone());
    if disc.is_zero() {
        return (0..lambda).collect();
    }
    let Ok(fact) = full_factor(&disc, 0) else {
        return Vec::new();
    };
    let mut roots: Vec<u64> = fact
        .factors
        .iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| field.from_mont(field.neg(g.coeffs_mont()[0])))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Oracle: full factorization of every specialization, no census.
pub fn count_bruteforce(f: &BiPolynomial, lambda: u64, k: usize) -> Result<u64> {
    let family = ReducedFamily::new(f, lambda)?;
    let n = f.degree().expect("nonzero");
    let mut total = 0;
    for t0 in 0..lambda {
        if family.disc_vanishes(t0) {
            continue;
        }
        let red = family.at(t0);
        if red.degree() != Some(n) {
            continue;
        }
        let fact = full_factor(&red, t0)?;
        let degrees: Vec<usize> = fact.factors.iter().map(|(g, _)| g.deg()).collect();
        total += subsets_summing_to(&degrees, k);
    }
    Ok(total)
}

/// Subsets of the factor list whose degrees add up to `k`, by explicit recursion.
fn subsets_summing_to(degrees: &[usize], k: usize) -> u64 {
    match degrees.split_first() {
        _ if k == 0 => 1,
        None => 0,
        Some((&d, rest)) => {
            let with = if d <= k { subsets_summing_to(rest, k - d) } else { 0 };
            with + subsets_summing_to(rest, k)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExclusionVerdict {
    /// More points than the bound allows: the hypothetical genus is impossible.
    Contradiction,
    Inconclusive,
}

pub fn exclusion_verdict(count: u64, bound: u64) -> ExclusionVerdict {
    if count > bound {
        ExclusionVerdict::Contradiction
    } else {
        ExclusionVerdict::Inconclusive
    }
}
