use std::collections::BTreeMap;

use m22v::exactpoly::rational::to_rat;
use m22v::exactpoly::text::{parse_bi, parse_rat, write_bi, write_rat};
use m22v::exactpoly::{discriminant, resultant, BiPolynomial, IntPolynomial, Poly, RatPolynomial};
use m22v::ffpoly::{census_squarefree, full_factor, is_squarefree, squarefree_part, FpPolynomial, PrimeField};
use m22v::newton::newton_polygon;
use m22v::permgrp::{closure, rh_genus, CycleType, PermGroup, Permutation, StabChain};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 101, 1009, 65537, 2160553];

fn fp_poly() -> impl Strategy<Value = FpPolynomial> {
    (0..PRIMES.len(), 1usize..=16).prop_flat_map(|(pi, n)| {
        let p = PRIMES[pi];
        prop::collection::vec(0..p, n).prop_map(move |mut c| {
            c.push(1);
            FpPolynomial::from_values(PrimeField::new(p).unwrap(), &c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn census_agrees_with_full_factorization(f in fp_poly()) {
        let sf = squarefree_part(&f);
        prop_assert!(is_squarefree(&sf));
        let n = sf.deg();
        let census = census_squarefree(&sf, n.max(1));
        let fact = full_factor(&sf, 7).unwrap();
        let mut by_degree = vec![0usize; n.max(1)];
        for (g, m) in &fact.factors {
            prop_assert_eq!(*m, 1);
            by_degree[g.deg() - 1] += 1;
        }
        prop_assert_eq!(&census.counts, &by_degree);
        prop_assert_eq!(census.residual, 0);
        prop_assert_eq!(fact.expand(sf.field()), sf.clone());
        // linear factors are the roots, found by evaluation for small fields
        let p = sf.field().modulus();
        if p <= 1009 {
            let roots = (0..p).filter(|&a| sf.eval(a) == 0).count();
            prop_assert_eq!(census.count(1), roots);
        }
        // the full factorization of f itself multiplies back
        let full = full_factor(&f, 3).unwrap();
        prop_assert_eq!(full.expand(f.field()), f);
    }
}

fn int_poly(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-20i64..=20, 1..=max_deg + 1)
        .prop_map(|c| IntPolynomial::from_i64s(&c))
        .prop_filter("nonzero", |f| !f.is_zero())
}

/// Determinant by fraction-free elimination.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn sylvester(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, shifts, deg) in [(f, n, m), (g, m, n)] {
        for s in 0..shifts {
            let mut row = vec![BigInt::zero(); size];
            for j in 0..=deg {
                row[s + j] = poly.coeff(deg - j);
            }
            rows.push(row);
        }
    }
    bareiss(rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn resultant_is_multiplicative(f in int_poly(5), g in int_poly(5), h in int_poly(5)) {
        prop_assume!(f.degree() > Some(0) && g.degree() > Some(0) && h.degree() > Some(0));
        let fg = &f * &g;
        prop_assert_eq!(
            resultant(&fg, &h).unwrap(),
            resultant(&f, &h).unwrap() * resultant(&g, &h).unwrap()
        );
    }

    #[test]
    fn resultant_matches_sylvester_determinant(f in int_poly(6), g in int_poly(6)) {
        prop_assume!(f.degree() > Some(0) && g.degree() > Some(0));
        prop_assert_eq!(resultant(&f, &g).unwrap(), sylvester(&f, &g));
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        let swapped = resultant(&g, &f).unwrap();
        let sign = if m * n % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        prop_assert_eq!(resultant(&f, &g).unwrap(), sign * swapped);
    }

    #[test]
    fn discriminant_of_a_product(f in int_poly(4), g in int_poly(4)) {
        prop_assume!(f.degree() > Some(0) && g.degree() > Some(0));
        // disc(fg) = disc(f) disc(g) Res(f,g)^2
        let lhs = discriminant(&(&f * &g)).unwrap();
        let r = resultant(&f, &g).unwrap();
        prop_assert_eq!(lhs, discriminant(&f).unwrap() * discriminant(&g).unwrap() * &r * &r);
    }

    #[test]
    fn newton_polygon_of_a_product_merges_segments(f in int_poly(5), g in int_poly(5), pi in 0usize..3) {
        let p = [2u64, 3, 5][pi];
        let slopes = |h: &IntPolynomial| -> BTreeMap<BigRational, usize> {
            let mut m = BTreeMap::new();
            for s in newton_polygon(&to_rat(h), p).unwrap().segments {
                *m.entry(s.slope).or_insert(0) += s.length;
            }
            m
        };
        let mut merged = slopes(&f);
        for (s, l) in slopes(&g) {
            *merged.entry(s).or_insert(0) += l;
        }
        prop_assert_eq!(slopes(&(&f * &g)), merged);
    }

    #[test]
    fn text_round_trip(rows in prop::collection::vec(prop::collection::vec(-1000i64..1000, 0..4), 1..6),
                       num in prop::collection::vec(-50i64..50, 1..6), den in 1i64..30) {
        let f: BiPolynomial = Poly::new(rows.iter().map(|r| IntPolynomial::from_i64s(r)).collect());
        prop_assume!(!f.is_zero());
        let (_, _, back) = parse_bi(&write_bi("X", "t", &f)).unwrap();
        prop_assert_eq!(back, f);
        let q: RatPolynomial = Poly::new(num.iter().map(|&a| BigRational::new(a.into(), den.into())).collect());
        prop_assume!(!q.is_zero());
        prop_assert_eq!(parse_rat(&write_rat("s", &q)).unwrap().1, q);
    }
}

fn perm_gens() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (2usize..=7).prop_flat_map(|n| {
        let one = Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle();
        (Just(n), prop::collection::vec(one, 1..=3))
    })
    .prop_map(|(n, imgs)| (n, imgs.into_iter().map(|v| Permutation::from_images(v).unwrap()).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn schreier_sims_order_matches_enumeration((n, gens) in perm_gens(), seed in 0u64..1000) {
        let Ok(all) = closure(n, &gens, 5000) else { return Ok(()) };
        let chain = StabChain::new(n, &gens, seed);
        prop_assert_eq!(chain.order_u64(), Some(all.len() as u64));
        for g in &all {
            prop_assert!(chain.contains(g));
        }
        let group = PermGroup::new(n, gens.clone()).unwrap();
        prop_assert_eq!(group.elements().len(), all.len());
        // every conjugacy class size divides the order, and class sizes sum to |G|
        let mut seen = std::collections::HashSet::new();
        let mut total = 0;
        for g in &all {
            if seen.contains(g) {
                continue;
            }
            let (size, class) = group.conjugacy_class(g, 5000, true).unwrap();
            prop_assert_eq!(all.len() as u64 % size, 0);
            total += size;
            seen.extend(class);
        }
        prop_assert_eq!(total, all.len() as u64);
    }

    #[test]
    fn riemann_hurwitz_for_transitive_triples((n, gens) in perm_gens()) {
        let a = gens[0].clone();
        let b = gens.get(1).cloned().unwrap_or_else(|| Permutation::identity(n));
        let c = a.mul(&b).inverse();
        prop_assume!(PermGroup::new(n, vec![a.clone(), b.clone()]).unwrap().is_transitive());
        // a b c = 1 generates a transitive group, so a genus exists
        let types: Vec<CycleType> = [a, b, c].iter().map(|x| x.cycle_type()).collect();
        let g = rh_genus(n, &types);
        prop_assert!(g.is_ok(), "{:?}", types);
        let index: usize = types.iter().map(|t| t.index()).sum();
        prop_assert_eq!(index % 2, 0);
        prop_assert!(index + 2 >= 2 * n);
    }
}

#[test]
fn riemann_hurwitz_for_the_inertia_types() {
    let types: Vec<CycleType> = ["5^4.1^2", "2^7.1^8", "12.6.4"]
        .iter()
        .map(|t| CycleType::parse(t).unwrap())
        .collect();
    let index: usize = types.iter().map(|t| t.index()).sum();
    assert_eq!(index, 42);
    assert_eq!(index, 2 * 22 - 2);
    assert_eq!(rh_genus(22, &types).unwrap(), 0);
}
