//! Induced action on `k`-subsets, indexed by colexicographic rank.

use super::perm::Permutation;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Colex rank of a strictly increasing subset: `sum_i C(c_i, i + 1)`.
pub fn colex_rank(subset: &[usize]) -> usize {
    subset.iter().enumerate().map(|(i, &c)| binomial(c, i + 1)).sum()
}

/// Inverse of [`colex_rank`] for `k`-subsets.
pub fn colex_unrank(mut rank: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while binomial(c + 1, i) <= rank {
            c += 1;
        }
        out[i - 1] = c;
        rank -= binomial(c, i);
    }
    out
}

/// Action of `sigma` on the `C(n, k)` subsets of size `k`.
pub fn induced_kset_action(sigma: &Permutation, k: usize) -> Permutation {
    let n = sigma.degree();
    assert!(k >= 1 && k <= n, "subset size out of range");
    let total = binomial(n, k);
    let mut images = Vec::with_capacity(total);
    let mut subset: Vec<usize> = (0..k).collect();
    let mut buf = vec![0usize; k];
    for _ in 0..total {
        for (b, &s) in buf.iter_mut().zip(&subset) {
            *b = sigma.apply(s);
        }
        buf.sort_unstable();
        images.push(colex_rank(&buf) as u32);
        next_colex(&mut subset);
    }
    Permutation::from_images_unchecked(images)
}

/// Advance to the next subset in colex order.
fn next_colex(subset: &mut [usize]) {
    let k = subset.len();
    for i in 0..k {
        let limit = if i + 1 < k { subset[i + 1] } else { usize::MAX };
        if subset[i] + 1 < limit {
            subset[i] += 1;
            for (j, s) in subset.iter_mut().enumerate().take(i) {
                *s = j;
            }
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_are_a_bijection() {
        let mut subset: Vec<usize> = (0..3).collect();
        for r in 0..binomial(7, 3) {
            assert_eq!(colex_rank(&subset), r);
            assert_eq!(colex_unrank(r, 3), subset);
            next_colex(&mut subset);
        }
    }

    #[test]
    fn transposition_on_pairs() {
        let t = Permutation::parse(4, "(1,2)").unwrap();
        let induced = induced_kset_action(&t, 2);
        assert_eq!(induced.degree(), 6);
        assert_eq!(induced.cycle_type().to_string(), "2^2.1^2");
        let id = induced_kset_action(&Permutation::identity(22), 4);
        assert_eq!(id.degree(), 7315);
        assert!(id.is_identity());
    }
}
