//! Squarefree, distinct-degree and equal-degree factorization over `F_p`.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use super::poly::FpPolynomial;
use crate::error::{Error, Result};

/// Arithmetic modulo a fixed monic `f` of degree `n`, with the Frobenius matrix
/// `Q[i] = x^(p*i) mod f` so that `h^p = sum h_i Q[i]`.
pub struct FrobeniusContext {
    field: PrimeField,
    n: usize,
    modulus: FpPolynomial,
    /// Row `k` is `x^(n+k) mod f`, for `k < n - 1`.
    reduce: Vec<Vec<u64>>,
    /// `x^p mod f`
    xp: Vec<u64>,
    q: Vec<Vec<u64>>,
    lazy: bool,
}

impl FrobeniusContext {
    /// `f` must be monic of degree at least 1.
    pub fn new(f: &FpPolynomial) -> Self {
        let field = f.field();
        let n = f.deg();
        assert!(n >= 1 && f.lc() == field.one(), "Frobenius context needs a monic modulus");
        let mut reduce = Vec::with_capacity(n.saturating_sub(1));
        // x^n = -(f - x^n)
        let mut row: Vec<u64> = f.coeffs_mont()[..n].iter().map(|&c| field.neg(c)).collect();
        for _ in 0..n.saturating_sub(1) {
            reduce.push(row.clone());
            row = shift_once(field, &row, &reduce[0]);
        }
        let lazy = field.lazy_budget() >= 2 * n;
        let mut ctx = FrobeniusContext {
            field,
            n,
            modulus: f.clone(),
            reduce,
            xp: Vec::new(),
            q: Vec::new(),
            lazy,
        };
        ctx.xp = ctx.x_pow(field.modulus());
        let mut q = Vec::with_capacity(n);
        let mut cur = ctx.unit(0);
        for _ in 0..n {
            let next = ctx.mul(&cur, &ctx.xp);
            q.push(cur);
            cur = next;
        }
        ctx.q = q;
        ctx
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Dense vector of `x^k` for `k < n`.
    fn unit(&self, k: usize) -> Vec<u64> {
        let mut v = vec![0; self.n];
        if self.n == 1 {
            // everything is a constant modulo a linear polynomial
            if k == 0 {
                v[0] = self.field.one();
            }
            return v;
        }
        v[k] = self.field.one();
        v
    }

    /// `x mod f` as a dense vector.
    pub fn x(&self) -> Vec<u64> {
        if self.n == 1 {
            return vec![self.reduce_x_linear()];
        }
        self.unit(1)
    }

    fn reduce_x_linear(&self) -> u64 {
        self.field.neg(self.modulus.coeffs_mont()[0])
    }

    fn x_pow(&self, e: u64) -> Vec<u64> {
        if e == 0 {
            return self.unit(0);
        }
        let bits = 64 - e.leading_zeros();
        let mut acc = self.unit(0);
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc);
            if (e >> i) & 1 == 1 {
                acc = self.times_x(&acc);
            }
        }
        acc
    }

    fn times_x(&self, v: &[u64]) -> Vec<u64> {
        if self.n == 1 {
            return vec![self.field.mul(v[0], self.reduce_x_linear())];
        }
        shift_once(self.field, v, &self.reduce[0])
    }

    /// Product of two reduced residues.
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.n;
        let f = self.field;
        if !self.lazy || n == 1 {
            let pa = FpPolynomial::from_mont(f, a.to_vec());
            let pb = FpPolynomial::from_mont(f, b.to_vec());
            return self.dense(&pa.mul(&pb).rem(&self.modulus));
        }
        let mut prod = vec![0u64; 2 * n - 1];
        for (k, slot) in prod.iter_mut().enumerate() {
            let lo = k.saturating_sub(n - 1);
            let hi = k.min(n - 1);
            let mut acc: u128 = 0;
            for i in lo..=hi {
                acc += a[i] as u128 * b[k - i] as u128;
            }
            *slot = f.redc_wide(acc);
        }
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc: u128 = prod[j] as u128 * f.one() as u128;
            for k in 0..n - 1 {
                acc += prod[n + k] as u128 * self.reduce[k][j] as u128;
            }
            out.push(f.redc_wide(acc));
        }
        out
    }

    /// `v^p mod f`.
    pub fn frobenius(&self, v: &[u64]) -> Vec<u64> {
        let n = self.n;
        let f = self.field;
        if !self.lazy {
            let mut out = vec![0u64; n];
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    for j in 0..n {
                        out[j] = f.add(out[j], f.mul(c, self.q[i][j]));
                    }
                }
            }
            return out;
        }
        let mut acc = vec![0u128; n];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (slot, &qij) in acc.iter_mut().zip(&self.q[i]) {
                *slot += c as u128 * qij as u128;
            }
        }
        acc.into_iter().map(|a| f.redc_wide(a)).collect()
    }

    pub fn x_to_p(&self) -> &[u64] {
        &self.xp
    }

    pub fn dense(&self, p: &FpPolynomial) -> Vec<u64> {
        let mut v = p.coeffs_mont().to_vec();
        v.resize(self.n, 0);
        v
    }

    pub fn poly(&self, v: &[u64]) -> FpPolynomial {
        FpPolynomial::from_mont(self.field, v.to_vec())
    }
}

/// `x * v` reduced, given `x^n mod f` as `top_row`.
fn shift_once(field: PrimeField, v: &[u64], top_row: &[u64]) -> Vec<u64> {
    let n = v.len();
    let carry = v[n - 1];
    let mut out = Vec::with_capacity(n);
    out.push(0);
    out.extend_from_slice(&v[..n - 1]);
    if carry != 0 {
        for (o, &r) in out.iter_mut().zip(top_row) {
            *o = field.add(*o, field.mul(carry, r));
        }
    }
    out
}

/// Irreducible-factor census by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    /// `counts[d - 1]` irreducible factors of degree `d`, for `d <= dmax`.
    pub counts: Vec<usize>,
    /// Total degree of factors of degree `> dmax`.
    pub residual: usize,
    /// Degree of the squarefree part the counts refer to.
    pub squarefree_degree: usize,
    /// The input had a repeated factor.
    pub squarefree_defect: bool,
}

impl Census {
    pub fn count(&self, d: usize) -> usize {
        self.counts.get(d.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// `(degree, count)` for the degrees that occur.
    pub fn nonzero(&self) -> Vec<(usize, usize)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i + 1, c))
            .collect()
    }
}

/// Squarefree factorization `f = lc * prod g_i^{m_i}` with monic squarefree, pairwise
/// coprime `g_i`, sorted by multiplicity.
pub fn squarefree_factorization(f: &FpPolynomial) -> Vec<(FpPolynomial, u32)> {
    let field = f.field();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let f = f.monic();
    let c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut c = c;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if z.deg() > 0 {
            out.push((z, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if c.deg() > 0 {
        let p = field.modulus() as usize;
        let root = FpPolynomial::from_mont(
            field,
            c.coeffs_mont().iter().step_by(p).copied().collect(),
        );
        for (g, m) in squarefree_factorization(&root) {
            out.push((g, m * p as u32));
        }
    }
    out.sort_by_key(|(_, m)| *m);
    out
}

/// Product of the distinct monic irreducible factors of `f`.
pub fn squarefree_part(f: &FpPolynomial) -> FpPolynomial {
    squarefree_factorization(f)
        .into_iter()
        .fold(FpPolynomial::one(f.field()), |acc, (g, _)| acc.mul(&g))
}

pub fn is_squarefree(f: &FpPolynomial) -> bool {
    f.deg() == 0 || f.gcd(&f.derivative()).is_one()
}

/// Counts of irreducible factors of degree `1..=dmax` of the squarefree part of `f`.
pub fn distinct_degree_census(f: &FpPolynomial, dmax: usize) -> Result<Census> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("census"));
    }
    if dmax == 0 {
        return Err(Error::DegreeTooSmall { needed: 1, got: 0 });
    }
    let monic = f.monic();
    let defect = !is_squarefree(&monic);
    let sf = if defect { squarefree_part(&monic) } else { monic };
    let mut census = census_squarefree(&sf, dmax);
    census.squarefree_defect = defect;
    Ok(census)
}

/// Census of a monic squarefree polynomial (not checked).
pub fn census_squarefree(f: &FpPolynomial, dmax: usize) -> Census {
    let n = f.deg();
    let mut census = Census {
        counts: vec![0; dmax],
        residual: 0,
        squarefree_degree: n,
        squarefree_defect: false,
    };
    if n == 0 {
        return census;
    }
    if n == 1 {
        census.counts[0] = 1;
        return census;
    }
    let ctx = FrobeniusContext::new(f);
    let x = ctx.x();
    let mut cur = x.clone();
    let mut rest = f.clone();
    for d in 1..=dmax {
        let r = rest.deg();
        if r == 0 {
            break;
        }
        if r < 2 * d {
            // whatever is left is a single irreducible factor
            if r <= dmax {
                census.counts[r - 1] += 1;
            } else {
                census.residual += r;
            }
            return census;
        }
        cur = if d == 1 { ctx.x_to_p().to_vec() } else { ctx.frobenius(&cur) };
        let diff = ctx.poly(&cur).sub(&ctx.poly(&x));
        let g = rest.gcd(&diff);
        let gd = g.deg();
        if gd > 0 {
            census.counts[d - 1] += gd / d;
            rest = rest.div_exact(&g).expect("gcd divides");
        }
    }
    census.residual += rest.deg();
    census
}

/// Distinct-degree factorization of a monic squarefree polynomial: `(d, product of all
/// irreducible factors of degree d)`.
pub fn distinct_degree_factorization(f: &FpPolynomial) -> Vec<(usize, FpPolynomial)> {
    let mut out = Vec::new();
    let n = f.deg();
    if n == 0 {
        return out;
    }
    if n == 1 {
        out.push((1, f.clone()));
        return out;
    }
    let ctx = FrobeniusContext::new(f);
    let x = ctx.x();
    let mut cur = x.clone();
    let mut rest = f.clone();
    let mut d = 0;
    while rest.deg() > 0 {
        d += 1;
        if rest.deg() < 2 * d {
            out.push((rest.deg(), rest.clone()));
            break;
        }
        cur = if d == 1 { ctx.x_to_p().to_vec() } else { ctx.frobenius(&cur) };
        let g = rest.gcd(&ctx.poly(&cur).sub(&ctx.poly(&x)));
        if g.deg() > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            out.push((d, g));
        }
    }
    out
}

/// Split a monic squarefree product of irreducibles of common degree `d`.
pub fn equal_degree_factorization(f: &FpPolynomial, d: usize, rng: &mut impl Rng) -> Vec<FpPolynomial> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = field.modulus();
    let exp = if p == 2 {
        BigUint::one()
    } else {
        (BigUint::from(p).pow(d as u32) - 1u32) >> 1
    };
    loop {
        let a = FpPolynomial::from_values(field, &(0..n).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace a + a^2 + ... + a^(2^(d-1)) splits over F_2
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.pow_mod(&exp, f).sub(&FpPolynomial::one(field))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree_factorization(&g, d, rng);
            out.extend(equal_degree_factorization(&h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Leading coefficient (plain residue).
    pub unit: u64,
    pub factors: Vec<(FpPolynomial, u32)>,
}

impl Factorization {
    /// Degrees with multiplicity, sorted descending.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat(g.deg()).take(*m as usize))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn expand(&self, field: PrimeField) -> FpPolynomial {
        self.factors.iter().fold(
            FpPolynomial::from_values(field, &[self.unit]),
            |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)),
        )
    }
}

/// Squarefree, distinct-degree, then Cantor–Zassenhaus equal-degree splitting with a
/// seeded generator.
pub fn full_factor(f: &FpPolynomial, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("full_factor"));
    }
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (g, m) in squarefree_factorization(f) {
        for (d, prod) in distinct_degree_factorization(&g) {
            for h in equal_degree_factorization(&prod, d, &mut rng) {
                factors.push((h, m));
            }
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        (a.deg(), a.values(), ma).cmp(&(b.deg(), b.values(), mb))
    });
    Ok(Factorization {
        unit: field.from_mont(f.lc()),
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn census_examples() {
        let f2 = fp(2);
        // x (x+1) (x^2+x+1) = x^4 + x
        let f = FpPolynomial::from_i64s(f2, &[0, 1, 0, 0, 1]);
        assert_eq!(distinct_degree_census(&f, 2).unwrap().nonzero(), vec![(1, 2), (2, 1)]);
        let f3 = fp(3);
        let g = FpPolynomial::from_i64s(f3, &[1, 0, 0, 0, 1]);
        assert_eq!(distinct_degree_census(&g, 4).unwrap().nonzero(), vec![(2, 2)]);
    }

    #[test]
    fn census_flags_repeated_factors() {
        let f = fp(7);
        let a = FpPolynomial::from_i64s(f, &[1, 1]);
        let b = FpPolynomial::from_i64s(f, &[1, 0, 1]);
        let poly = a.mul(&a).mul(&b);
        let c = distinct_degree_census(&poly, 4).unwrap();
        assert!(c.squarefree_defect);
        assert_eq!(c.squarefree_degree, 3);
        assert_eq!(c.nonzero(), vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn factor_examples() {
        let f5 = fp(5);
        let f = FpPolynomial::from_i64s(f5, &[1, 0, 1]);
        let fac = full_factor(&f, 1).unwrap();
        let roots: Vec<Vec<u64>> = fac.factors.iter().map(|(g, _)| g.values()).collect();
        assert_eq!(roots, vec![vec![2, 1], vec![3, 1]]);
    }

    #[test]
    fn squarefree_in_characteristic_p() {
        let f = fp(3);
        // (x^3 + 2)^1 (x+1)^4 ; x^3+2 = (x+2)^3 in char 3
        let a = FpPolynomial::from_i64s(f, &[2, 0, 0, 1]);
        let b = FpPolynomial::from_i64s(f, &[1, 1]);
        let poly = a.mul(&b.mul(&b).mul(&b).mul(&b));
        let fac = full_factor(&poly, 3).unwrap();
        assert_eq!(fac.expand(f), poly);
        let mults: Vec<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![4, 3]);
    }
}
