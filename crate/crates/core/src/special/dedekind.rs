//! Ramification of `p` in `Q[X]/(h)` for monic integral `h`: squarefreeness mod `p`,
//! Dedekind's criterion, then order-one `phi`-Newton polygons (Ore) for the factors
//! Dedekind leaves open.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::IntegralModel;
use crate::error::{Error, Result};
use crate::exactpoly::arith::{int_valuation, require_prime};
use crate::exactpoly::{IntPolynomial, Poly};
use crate::ffpoly::{full_factor, FpPolynomial, PrimeField};

const FACTOR_SEED: u64 = 0xded;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "squarefree")]
    Squarefree,
    #[serde(rename = "dedekind")]
    Dedekind,
    #[serde(rename = "newton-ore")]
    NewtonOre,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "UNRAMIFIED")]
    Unramified,
    /// Ramification indices `> 1` that were established.
    #[serde(rename = "RAMIFIED")]
    Ramified(Vec<u32>),
    #[serde(rename = "UNDETERMINED")]
    Undetermined,
}

/// A `p`-adic factor of `h` whose primes all have ramification index `e`;
/// `residue_degree` is the sum of their residue degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalPrime {
    pub e: u32,
    pub residue_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationVerdict {
    pub prime: u64,
    pub verdict: Verdict,
    pub method: Method,
    /// `(degree, multiplicity)` of the irreducible factors of `h mod p`.
    pub factorization: Vec<(usize, u32)>,
    pub primes: Vec<LocalPrime>,
    /// Degrees of the factors mod `p` that neither Dedekind nor Ore could resolve.
    pub unresolved: Vec<usize>,
}

pub fn ramification_verdict(model: &IntegralModel, p: u64) -> Result<RamificationVerdict> {
    verdict_for(&model.h, p)
}

/// [`ramification_verdict`] for a bare monic integral polynomial.
pub fn verdict_for(h: &IntPolynomial, p: u64) -> Result<RamificationVerdict> {
    require_prime(p)?;
    if h.degree().unwrap_or(0) == 0 || !h.lc().is_one() {
        return Err(Error::NotMonic);
    }
    let field = PrimeField::new(p)?;
    let fac = full_factor(&FpPolynomial::from_int(field, h), FACTOR_SEED)?;
    let factorization: Vec<(usize, u32)> = fac.factors.iter().map(|(g, m)| (g.deg(), *m)).collect();
    let lifts: Vec<IntPolynomial> = fac.factors.iter().map(|(g, _)| lift(g)).collect();

    // h = G H1 + p F
    let mut g = IntPolynomial::one();
    let mut h1 = IntPolynomial::one();
    for (phi, (_, m)) in lifts.iter().zip(&fac.factors) {
        g = &g * phi;
        h1 = &h1 * &phi.pow(m - 1);
    }
    let pb = BigInt::from(p);
    let f = (h - &(&g * &h1))
        .div_scalar_exact(&pb)
        .ok_or(Error::Internal("h - G H1 not divisible by p"))?;
    let fbar = FpPolynomial::from_int(field, &f);

    let mut primes = Vec::new();
    let mut bad = Vec::new();
    for (i, (phi, m)) in fac.factors.iter().enumerate() {
        if *m == 1 || !fbar.rem(phi).is_zero() {
            primes.push(LocalPrime {
                e: *m,
                residue_degree: phi.deg(),
            });
        } else {
            bad.push(i);
        }
    }
    let method = if bad.is_empty() {
        if factorization.iter().all(|&(_, m)| m == 1) {
            Method::Squarefree
        } else {
            Method::Dedekind
        }
    } else {
        Method::NewtonOre
    };
    let mut unresolved = Vec::new();
    for i in bad {
        let (phibar, m) = &fac.factors[i];
        match ore(h, &lifts[i], phibar, *m, p)? {
            Some(sides) => primes.extend(sides),
            None => unresolved.push(phibar.deg()),
        }
    }
    let mut ram: Vec<u32> = primes.iter().map(|q| q.e).filter(|&e| e > 1).collect();
    ram.sort_unstable_by(|a, b| b.cmp(a));
    let verdict = if !ram.is_empty() {
        Verdict::Ramified(ram)
    } else if !unresolved.is_empty() {
        Verdict::Undetermined
    } else {
        Verdict::Unramified
    };
    Ok(RamificationVerdict {
        prime: p,
        verdict,
        method,
        factorization,
        primes,
        unresolved,
    })
}

fn lift(g: &FpPolynomial) -> IntPolynomial {
    Poly::new(g.values().into_iter().map(BigInt::from).collect())
}

fn divrem_monic(a: &IntPolynomial, b: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
    let db = b.degree().expect("nonzero divisor");
    let Some(da) = a.degree() else {
        return (Poly::zero(), Poly::zero());
    };
    if da < db {
        return (Poly::zero(), a.clone());
    }
    let mut rem = a.coeffs().to_vec();
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let q = rem[k + db].clone();
        if q.is_zero() {
            continue;
        }
        for (i, d) in b.coeffs().iter().enumerate() {
            rem[k + i] -= &q * d;
        }
        quot[k] = q;
    }
    (Poly::new(quot), Poly::new(rem))
}

fn poly_valuation(a: &IntPolynomial, p: u64) -> Option<u32> {
    a.coeffs().iter().filter(|c| !c.is_zero()).map(|c| int_valuation(c, p)).min()
}

/// Sides of the principal `phi`-polygon with their residual polynomials; `None` when
/// some residual polynomial is inseparable.
fn ore(
    h: &IntPolynomial,
    phi: &IntPolynomial,
    phibar: &FpPolynomial,
    m: u32,
    p: u64,
) -> Result<Option<Vec<LocalPrime>>> {
    let m = m as usize;
    let mut digits = Vec::with_capacity(m + 1);
    let mut rest = h.clone();
    for _ in 0..=m {
        let (q, r) = divrem_monic(&rest, phi);
        digits.push(r);
        rest = q;
    }
    let vals: Vec<Option<u32>> = digits.iter().map(|a| poly_valuation(a, p)).collect();
    if vals[m] != Some(0) || vals[..m].iter().any(|v| *v == Some(0)) {
        return Err(Error::Internal("phi-adic expansion disagrees with the factorization mod p"));
    }
    if vals[0].is_none() {
        // phi divides h exactly; left to a finer analysis
        return Ok(None);
    }
    let points: Vec<(usize, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(k, v)| v.map(|v| (k, v as i64)))
        .collect();
    let hull = lower_hull(&points);
    let fq = ExtField::new(phibar.clone());
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        let len = (x1 - x0) as i64;
        let height = y0 - y1;
        let g = len.gcd(&height);
        let e = (len / g) as usize;
        let step = height / g;
        let mut residual = Vec::with_capacity(g as usize + 1);
        for j in 0..=g as usize {
            let x = x0 + j * e;
            let y = y0 - j as i64 * step;
            let c = if vals[x] == Some(y as u32) {
                let scaled = digits[x]
                    .div_scalar_exact(&num_traits::pow(BigInt::from(p), y as usize))
                    .ok_or(Error::Internal("valuation mismatch"))?;
                FpPolynomial::from_int(fq.field(), &scaled).rem(phibar)
            } else {
                FpPolynomial::zero(fq.field())
            };
            residual.push(c);
        }
        if !fq.is_separable(residual) {
            return Ok(None);
        }
        out.push(LocalPrime {
            e: e as u32,
            residue_degree: phibar.deg() * g as usize,
        });
    }
    Ok(Some(out))
}

fn lower_hull(points: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let cross = |o: (usize, i64), a: (usize, i64), b: (usize, i64)| {
        let (ax, ay) = (a.0 as i128 - o.0 as i128, (a.1 - o.1) as i128);
        let (bx, by) = (b.0 as i128 - o.0 as i128, (b.1 - o.1) as i128);
        ax * by - ay * bx
    };
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    hull
}

/// `F_p[x]/(phi)` for irreducible `phi`, elements kept reduced.
struct ExtField {
    modulus: FpPolynomial,
    inv_exp: BigUint,
}

impl ExtField {
    fn new(modulus: FpPolynomial) -> Self {
        let p = BigUint::from(modulus.field().modulus());
        let q = num_traits::pow(p, modulus.deg());
        ExtField {
            modulus,
            inv_exp: q - 2u32,
        }
    }

    fn field(&self) -> PrimeField {
        self.modulus.field()
    }

    fn mul(&self, a: &FpPolynomial, b: &FpPolynomial) -> FpPolynomial {
        a.mul_mod(b, &self.modulus)
    }

    fn inv(&self, a: &FpPolynomial) -> FpPolynomial {
        a.pow_mod(&self.inv_exp, &self.modulus)
    }

    fn trim(mut v: Vec<FpPolynomial>) -> Vec<FpPolynomial> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    fn rem(&self, a: &[FpPolynomial], b: &[FpPolynomial]) -> Vec<FpPolynomial> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = self.inv(&b[db]);
        while r.len() > db {
            let top = r.len() - 1;
            let q = self.mul(&r[top], &lead_inv);
            for (i, c) in b.iter().enumerate() {
                r[top - db + i] = r[top - db + i].sub(&self.mul(&q, c));
            }
            r = Self::trim(r);
        }
        r
    }

    fn is_separable(&self, r: Vec<FpPolynomial>) -> bool {
        let r = Self::trim(r);
        if r.len() <= 2 {
            return true;
        }
        let field = self.field();
        let dr = Self::trim(
            r.iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.mul(&FpPolynomial::from_values(field, &[j as u64 % field.modulus()])))
                .collect(),
        );
        if dr.is_empty() {
            return false;
        }
        let (mut a, mut b) = (r, dr);
        while !b.is_empty() {
            let t = self.rem(&a, &b);
            a = b;
            b = t;
        }
        a.len() == 1
    }
}
