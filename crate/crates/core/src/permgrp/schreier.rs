//! Base and strong generating set by Schreier–Sims: a random-subproduct phase to
//! populate the chain quickly, then the deterministic Schreier-generator check, which
//! alone certifies the result.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// How a strong generator was obtained: an input generator, or a product of earlier
/// strong generators `(index, inverted)` taken left to right.
#[derive(Clone, Debug)]
pub enum GenOrigin {
    Input(usize),
    Word(Vec<(usize, bool)>),
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// Strong generator that reaches each orbit point from its parent.
    label: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    n_inputs: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    origin: Vec<GenOrigin>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Build a verified chain for the group generated by `gens` (degree `degree`).
    pub fn new(degree: usize, gens: &[Permutation], seed: u64) -> Self {
        Self::with_base_prefix(degree, gens, &[], seed)
    }

    /// As [`StabChain::new`], with the base starting at the given points.
    pub fn with_base_prefix(degree: usize, gens: &[Permutation], prefix: &[usize], seed: u64) -> Self {
        let mut chain = StabChain {
            degree,
            n_inputs: gens.len(),
            strong: Vec::new(),
            strong_inv: Vec::new(),
            origin: Vec::new(),
            levels: Vec::new(),
        };
        for &b in prefix {
            chain.new_level(b);
        }
        for (i, g) in gens.iter().enumerate() {
            chain.push_strong(g.clone(), GenOrigin::Input(i));
        }
        let inputs: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_identity()).collect();
        for &i in &inputs {
            chain.add_generator(i, 0);
        }
        chain.random_phase(seed);
        chain.deterministic_phase();
        chain
    }

    fn push_strong(&mut self, g: Permutation, origin: GenOrigin) -> usize {
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        self.origin.push(origin);
        self.strong.len() - 1
    }

    /// Register strong generator `s` on levels `from..` down to the first level whose
    /// base point it moves, appending a base point if it fixes all of them.
    fn add_generator(&mut self, s: usize, from: usize) {
        let mut l = from;
        loop {
            if l == self.levels.len() {
                let g = &self.strong[s];
                let moved = (0..self.degree)
                    .find(|&i| !g.fixes(i))
                    .expect("identity is never added");
                self.new_level(moved);
            }
            let moves = !self.strong[s].fixes(self.levels[l].point);
            self.extend_level(l, s);
            if moves {
                break;
            }
            l += 1;
        }
    }

    fn new_level(&mut self, point: usize) {
        let mut label = vec![NOT_IN_ORBIT; self.degree];
        label[point] = ROOT;
        self.levels.push(Level {
            point,
            gens: Vec::new(),
            orbit: vec![point as u32],
            label,
        });
    }

    /// Add generator `s` to level `l` and close the orbit.
    fn extend_level(&mut self, l: usize, s: usize) {
        let level = &mut self.levels[l];
        if level.gens.contains(&s) {
            return;
        }
        level.gens.push(s);
        let strong = &self.strong;
        // new generator on old points, then all generators on new points
        let old = level.orbit.len();
        for idx in 0..old {
            let x = level.orbit[idx] as usize;
            let y = strong[s].apply(x);
            if level.label[y] == NOT_IN_ORBIT {
                level.label[y] = s as u32;
                level.orbit.push(y as u32);
            }
        }
        let mut idx = old;
        while idx < level.orbit.len() {
            let x = level.orbit[idx] as usize;
            for &t in &level.gens {
                let y = strong[t].apply(x);
                if level.label[y] == NOT_IN_ORBIT {
                    level.label[y] = t as u32;
                    level.orbit.push(y as u32);
                }
            }
            idx += 1;
        }
    }

    /// Sift `g` through levels `from..`; returns the residue, the level where it
    /// stopped (`levels.len()` if it passed all), and the strong generators whose
    /// inverses were multiplied on, in order.
    fn strip(&self, mut g: Permutation, from: usize, trace: Option<&mut Vec<usize>>) -> (Permutation, usize) {
        let mut trace = trace;
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let mut b = g.apply(level.point);
            if level.label[b] == NOT_IN_ORBIT {
                return (g, l);
            }
            while level.label[b] != ROOT {
                let s = level.label[b] as usize;
                g = g.mul(&self.strong_inv[s]);
                b = self.strong_inv[s].apply(b);
                if let Some(t) = trace.as_deref_mut() {
                    t.push(s);
                }
            }
        }
        (g, self.levels.len())
    }

    /// Labels along the tree path from the base point to `p`, root first.
    fn path(&self, l: usize, mut p: usize) -> Vec<usize> {
        let level = &self.levels[l];
        let mut out = Vec::new();
        while level.label[p] != ROOT {
            let s = level.label[p] as usize;
            out.push(s);
            p = self.strong_inv[s].apply(p);
        }
        out.reverse();
        out
    }

    /// Coset representative mapping the level's base point to `p`.
    pub fn transversal_element(&self, l: usize, p: usize) -> Permutation {
        self.path(l, p)
            .iter()
            .fold(Permutation::identity(self.degree), |acc, &s| acc.mul(&self.strong[s]))
    }

    fn random_phase(&mut self, seed: u64) {
        if self.strong.is_empty() {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut quiet = 0;
        while quiet < 24 {
            let mut word = Vec::new();
            let mut g = Permutation::identity(self.degree);
            for s in 0..self.strong.len() {
                if rng.gen_bool(0.5) {
                    let inv = rng.gen_bool(0.5);
                    g = g.mul(if inv { &self.strong_inv[s] } else { &self.strong[s] });
                    word.push((s, inv));
                }
            }
            let mut trace = Vec::new();
            let (residue, _) = self.strip(g, 0, Some(&mut trace));
            if residue.is_identity() {
                quiet += 1;
                continue;
            }
            quiet = 0;
            word.extend(trace.into_iter().map(|s| (s, true)));
            let s = self.push_strong(residue, GenOrigin::Word(word));
            self.add_generator(s, 0);
        }
    }

    fn deterministic_phase(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let l = i - 1;
            match self.find_schreier_failure(l) {
                None => i -= 1,
                Some((residue, word, j)) => {
                    let s = self.push_strong(residue, GenOrigin::Word(word));
                    self.add_generator(s, l + 1);
                    // levels l+1..=j changed; resume checking at j
                    i = j + 1;
                }
            }
        }
    }

    /// A Schreier generator of level `l` that does not sift through levels `l+1..`.
    fn find_schreier_failure(&self, l: usize) -> Option<(Permutation, Vec<(usize, bool)>, usize)> {
        let level = &self.levels[l];
        for &p in &level.orbit {
            let p = p as usize;
            let up = self.transversal_element(l, p);
            for &s in &level.gens {
                let q = self.strong[s].apply(p);
                // the tree edge itself gives a trivial Schreier generator
                if level.label[q] == s as u32 && self.strong_inv[s].apply(q) == p {
                    continue;
                }
                let uq = self.transversal_element(l, q);
                let h = up.mul(&self.strong[s]).mul(&uq.inverse());
                let mut trace = Vec::new();
                let (residue, j) = self.strip(h, l + 1, Some(&mut trace));
                if !residue.is_identity() {
                    let mut word: Vec<(usize, bool)> = self.path(l, p).into_iter().map(|t| (t, false)).collect();
                    word.push((s, false));
                    word.extend(self.path(l, q).into_iter().rev().map(|t| (t, true)));
                    word.extend(trace.into_iter().map(|t| (t, true)));
                    return Some((residue, word, j));
                }
            }
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (residue, _) = self.strip(g.clone(), 0, None);
            residue.is_identity()
        }
    }

    /// Images of the base points; determines an element of the group uniquely.
    pub fn base_image(&self, g: &Permutation) -> Vec<u32> {
        self.levels.iter().map(|l| g.apply(l.point) as u32).collect()
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for l in (0..self.levels.len()).rev() {
            let orbit = &self.levels[l].orbit;
            let p = orbit[rng.gen_range(0..orbit.len())] as usize;
            g = g.mul(&self.transversal_element(l, p));
        }
        g
    }

    /// All transversals, explicitly.
    pub fn transversals(&self) -> Vec<Vec<Permutation>> {
        (0..self.levels.len())
            .map(|l| {
                self.levels[l]
                    .orbit
                    .iter()
                    .map(|&p| self.transversal_element(l, p as usize))
                    .collect()
            })
            .collect()
    }

    /// Every element, as products `u_k ... u_1` of transversal elements.
    pub fn elements(&self) -> Vec<Permutation> {
        let trans = self.transversals();
        let mut out = vec![Permutation::identity(self.degree)];
        for t in trans.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * t.len());
            for g in &out {
                for u in t {
                    next.push(g.mul(u));
                }
            }
            out = next;
        }
        out
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn origins(&self) -> &[GenOrigin] {
        &self.origin
    }

    pub fn num_inputs(&self) -> usize {
        self.n_inputs
    }

    /// Write `g` as a product of strong generators `(index, inverted)`, or `None` if
    /// `g` is not in the group.
    pub fn factor(&self, g: &Permutation) -> Option<Vec<(usize, bool)>> {
        let mut trace = Vec::new();
        let (residue, _) = self.strip(g.clone(), 0, Some(&mut trace));
        if !residue.is_identity() {
            return None;
        }
        // g * s1^-1 * s2^-1 ... = 1, so g = ... s2 s1
        Some(trace.into_iter().rev().map(|s| (s, false)).collect())
    }

    /// Strong generators of the stabilizer of the first `l` base points.
    pub fn stabilizer_gens(&self, l: usize) -> Vec<Permutation> {
        match self.levels.get(l) {
            Some(level) => level.gens.iter().map(|&s| self.strong[s].clone()).collect(),
            None => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn symmetric_groups() {
        for n in 2..8 {
            let gens = [perm(n, "(1,2)"), Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()];
            let chain = StabChain::new(n, &gens, 7);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(chain.order_u64(), Some(fact));
        }
    }

    #[test]
    fn membership_and_factoring() {
        // A5 on 5 points
        let gens = [perm(5, "(1,2,3)"), perm(5, "(1,2,3,4,5)")];
        let chain = StabChain::new(5, &gens, 1);
        assert_eq!(chain.order_u64(), Some(60));
        assert!(chain.contains(&perm(5, "(1,2)(3,4)")));
        assert!(!chain.contains(&perm(5, "(1,2)")));
        let g = perm(5, "(1,5)(2,4)");
        let word = chain.factor(&g).unwrap();
        let rebuilt = word
            .iter()
            .fold(Permutation::identity(5), |acc, &(s, _)| acc.mul(&chain.strong_generators()[s]));
        assert_eq!(rebuilt, g);
        assert_eq!(chain.elements().len(), 60);
    }
}
