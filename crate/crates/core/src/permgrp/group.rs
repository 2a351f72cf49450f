use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};

use super::perm::Permutation;
use super::schreier::StabChain;

/// Default cap on explicit conjugacy-class enumeration.
pub const DEFAULT_CLASS_CAP: usize = 10_000_000;

/// Permutation group given by generators; the stabilizer chain is built on first use.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    seed: u64,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            gens: self.gens.clone(),
            seed: self.seed,
            chain,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup {
            degree,
            gens,
            seed: 0x5eed,
            chain: OnceLock::new(),
        })
    }

    /// Seed for the randomized phase of Schreier–Sims (results do not depend on it).
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.chain = OnceLock::new();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.gens, self.seed))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as `u64`; every group handled here fits.
    pub fn order_u64(&self) -> u64 {
        self.chain().order_u64().expect("group order fits in u64")
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        self.chain().random_element(rng)
    }

    pub fn elements(&self) -> Vec<Permutation> {
        self.chain().elements()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Orbits of the generators, each sorted, in order of smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.gens)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Orbit lengths of the stabilizer of `point`, sorted ascending.
    pub fn stabilizer_orbit_lengths(&self, point: usize) -> Result<Vec<usize>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let stab = self.stabilizer(point);
        let mut lens: Vec<usize> = orbits_of(self.degree, &stab).iter().map(|o| o.len()).collect();
        lens.sort_unstable();
        Ok(lens)
    }

    /// Generators of the point stabilizer.
    pub fn stabilizer(&self, point: usize) -> Vec<Permutation> {
        let chain = StabChain::with_base_prefix(self.degree, &self.gens, &[point], self.seed);
        chain.stabilizer_gens(1)
    }

    /// Size of the conjugacy class of `x`, by breadth-first search over conjugates
    /// keyed by their base images. Fails once more than `cap` conjugates are seen.
    pub fn conjugacy_class_size(&self, x: &Permutation, cap: usize) -> Result<u64> {
        Ok(self.conjugacy_class(x, cap, false)?.0)
    }

    /// Class size, plus the class itself when `keep` is set.
    pub fn conjugacy_class(&self, x: &Permutation, cap: usize, keep: bool) -> Result<(u64, Vec<Permutation>)> {
        let chain = self.chain();
        if !chain.contains(x) {
            return Err(Error::NotFound("element is not in the group".into()));
        }
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut kept = Vec::new();
        seen.insert(chain.base_image(x));
        queue.push_back(x.clone());
        while let Some(y) = queue.pop_front() {
            for g in &self.gens {
                let z = y.conj(g);
                if seen.insert(chain.base_image(&z)) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "conjugacy class",
                            cap,
                        });
                    }
                    queue.push_back(z);
                }
            }
            if keep {
                kept.push(y);
            }
        }
        Ok((seen.len() as u64, kept))
    }

    /// `|G| / |x^G|`.
    pub fn centralizer_order(&self, x: &Permutation, cap: usize) -> Result<u64> {
        let class = self.conjugacy_class_size(x, cap)?;
        Ok(self.order_u64() / class)
    }

    /// Set of element orders, sampled from `samples` uniform random elements.
    pub fn sampled_element_orders(&self, samples: usize, rng: &mut impl Rng) -> Vec<u64> {
        let mut orders: Vec<u64> = (0..samples).map(|_| self.random_element(rng).order()).collect();
        orders.sort_unstable();
        orders.dedup();
        orders
    }

    /// Every element order, by exhaustive enumeration.
    pub fn element_orders(&self) -> Vec<u64> {
        let mut orders: Vec<u64> = self.elements().iter().map(|g| g.order()).collect();
        orders.sort_unstable();
        orders.dedup();
        orders
    }
}

pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut idx = 0;
        while idx < orbit.len() {
            let x = orbit[idx];
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            idx += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Group closure by breadth-first multiplication; for small groups and oracles.
pub fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut idx = 0;
    while idx < out.len() {
        let x = out[idx].clone();
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded { what: "closure", cap });
                }
                out.push(y);
            }
        }
        idx += 1;
    }
    Ok(out)
}
