use m22v::elkies::*;
use m22v::exactpoly::bivariate::evaluate_t_int;
use m22v::exactpoly::{bundled, discriminant_x, BiPolynomial, IntPolynomial, Poly};
use m22v::ffpoly::{full_factor, Census, FpPolynomial, PrimeField};
use m22v::permgrp::CycleType;
use m22v::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Number of sub-multisets of `degrees` (as a list of distinct items) summing to `k`.
fn choose_to_sum(degrees: &[usize], k: usize) -> u64 {
    let mut count = 0;
    for mask in 0u64..1 << degrees.len() {
        let s: usize = (0..degrees.len()).filter(|&i| mask >> i & 1 == 1).map(|i| degrees[i]).sum();
        if s == k {
            count += 1;
        }
    }
    count
}

/// Exact evaluation at `t0`, exact discriminant, reduction, full factorization.
fn oracle(f: &BiPolynomial, lambda: u64, k: usize) -> u64 {
    let field = PrimeField::new(lambda).unwrap();
    let disc = FpPolynomial::from_int(field, &discriminant_x(f).unwrap());
    let n = f.degree().unwrap();
    let mut total = 0;
    for t0 in 0..lambda {
        if disc.eval(field.to_mont(t0)) == 0 {
            continue;
        }
        let red = FpPolynomial::from_int(field, &evaluate_t_int(f, &BigInt::from(t0)));
        if red.degree() != Some(n) {
            continue;
        }
        let degrees: Vec<usize> = full_factor(&red, 1)
            .unwrap()
            .factors
            .iter()
            .filter(|(g, _)| g.deg() <= k)
            .map(|(g, _)| g.deg())
            .collect();
        total += choose_to_sum(&degrees, k);
    }
    total
}

#[test]
fn count_matches_oracle_on_f() {
    let f = bundled::f();
    for lambda in [101u64, 1009, 10007] {
        let mut cfg = ExclusionConfig::new(lambda).unwrap();
        cfg.shard_size = 997;
        let rep = count_quartic_points(&f, &cfg).unwrap();
        assert_eq!(rep.strict, oracle(&f, lambda, 4), "λ = {lambda}");
        assert_eq!(rep.strict, count_bruteforce(&f, lambda, 4).unwrap(), "λ = {lambda}");
        assert!(rep.inclusive >= rep.strict);
        assert!(rep.excluded.len() <= 21);
    }
}

#[test]
fn count_at_101_is_independent_of_threads_and_shards() {
    let f = bundled::f();
    let mut counts = Vec::new();
    for (threads, shard) in [(1, 1 << 16), (3, 7), (2, 1)] {
        let mut cfg = ExclusionConfig::new(101).unwrap();
        cfg.threads = threads;
        cfg.shard_size = shard;
        counts.push(count_quartic_points(&f, &cfg).unwrap().strict);
    }
    assert!(counts.windows(2).all(|w| w[0] == w[1]), "{counts:?}");
}

#[test]
fn checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("count.ckpt");
    let f = bundled::f();
    let mut cfg = ExclusionConfig::new(1009).unwrap();
    cfg.shard_size = 100;
    cfg.checkpoint = Some(path.clone());
    let first = count_quartic_points(&f, &cfg).unwrap();
    assert_eq!(first.resumed_shards, 0);

    // drop the last few shards and tear the final line, as after an interruption
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let kept = lines[..lines.len() - 3].join("\n") + "\n1009 90";
    std::fs::write(&path, kept).unwrap();
    let second = count_quartic_points(&f, &cfg).unwrap();
    assert_eq!(second.strict, first.strict);
    assert_eq!(second.resumed_shards, lines.len() - 3);

    // a checkpoint for another prime is refused
    let other = ExclusionConfig {
        checkpoint: Some(path.clone()),
        ..ExclusionConfig::new(1013).unwrap()
    };
    assert!(matches!(count_quartic_points(&f, &other), Err(Error::Parse(_))));
}

#[test]
fn genus_bound_and_verdict() {
    let types: Vec<CycleType> = ["12.6.4", "5^4.1^2", "2^7.1^8"]
        .iter()
        .map(|t| CycleType::parse(t).unwrap())
        .collect();
    let g = hypothetical_genus(22, 4, &types).unwrap();
    assert_eq!(g, 712);
    // 2 * 712 * sqrt(2160553) = 2093111.92..., plus λ + 1
    let bound = hasse_weil_bound(LAMBDA, g).unwrap();
    assert_eq!(bound, 2_160_553 + 1 + 2_093_112);
    assert_eq!(hasse_weil_floor(LAMBDA, g).unwrap(), bound - 1);
    let approx = LAMBDA as f64 + 1.0 + 2.0 * g as f64 * (LAMBDA as f64).sqrt();
    assert!((approx.ceil() as u64).abs_diff(bound) == 0);
    assert_eq!(exclusion_verdict(4_289_839, bound), ExclusionVerdict::Contradiction);
}

fn census_of(counts: Vec<usize>) -> Census {
    let squarefree_degree = counts.iter().enumerate().map(|(i, c)| (i + 1) * c).sum();
    Census {
        counts,
        residual: 0,
        squarefree_degree,
        squarefree_defect: false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn divisor_count_matches_subset_enumeration(counts in prop::collection::vec(0usize..4, 1..6), k in 0usize..7) {
        let mut degrees = Vec::new();
        for (i, &c) in counts.iter().enumerate() {
            degrees.extend(std::iter::repeat(i + 1).take(c));
        }
        let census = census_of(counts);
        prop_assert_eq!(divisors_of_degree(&census, k), choose_to_sum(&degrees, k));
    }

    #[test]
    fn small_families_match_oracle(
        p in prop::collection::vec(-9i64..10, 5..9),
        r in prop::collection::vec(-9i64..10, 1..4),
        k in 1usize..5,
    ) {
        // F = P(X) + t R(X), monic in X
        let mut p = p;
        *p.last_mut().unwrap() = 1;
        let rows: Vec<IntPolynomial> = p
            .iter()
            .enumerate()
            .map(|(j, &a)| IntPolynomial::from_i64s(&[a, *r.get(j).unwrap_or(&0)]))
            .collect();
        let f: BiPolynomial = Poly::new(rows);
        prop_assume!(!discriminant_x(&f).unwrap().is_zero());
        let mut cfg = ExclusionConfig::new(101).unwrap();
        cfg.k = k;
        cfg.shard_size = 17;
        prop_assert_eq!(count_quartic_points(&f, &cfg).unwrap().strict, oracle(&f, 101, k));
    }
}
