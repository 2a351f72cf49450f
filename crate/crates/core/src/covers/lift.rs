//! Preimages of subgroups in a cover, splitting, and class-lifting indices.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgrp::{CycleType, PermGroup, Permutation, StabChain};

use super::element::GroupElement;
use super::group::FaithfulGroup;
use super::slp::SlpWord;

/// Largest preimage handled by [`splits`].
pub const SPLIT_CAP: usize = 100_000;

/// Breadth-first closure; `Ok(None)` once more than `cap` elements appear.
pub fn closure_capped(gens: &[GroupElement], identity: &GroupElement, cap: usize) -> Option<Vec<GroupElement>> {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    seen.insert(identity.clone());
    let mut out = vec![identity.clone()];
    let mut idx = 0;
    while idx < out.len() {
        let x = out[idx].clone();
        for g in gens {
            let y = x.mul(g);
            if !seen.contains(&y) {
                if out.len() >= cap {
                    return None;
                }
                seen.insert(y.clone());
                out.push(y);
            }
        }
        idx += 1;
    }
    Some(out)
}

#[derive(Clone, Debug)]
pub struct LiftedSubgroup {
    /// The words evaluated in the cover, one per generator of `U`.
    pub lifts: Vec<GroupElement>,
    /// All elements of the preimage of `U`.
    pub elements: Vec<GroupElement>,
    pub subgroup_order: usize,
    pub kernel_order: usize,
}

/// The full preimage of `U = <words>` (of order `u`) in the cover.
pub fn lift_subgroup(cover: &FaithfulGroup, words: &SlpWord, u: usize) -> Result<LiftedSubgroup> {
    let c = cover.kernel_order() as usize;
    let lifts = words.evaluate(cover.generators())?;
    let mut gens = lifts.clone();
    gens.push(cover.kernel_generator());
    let expected = u * c;
    let id = cover.generators()[0].identity_like();
    let elements = closure_capped(&gens, &id, expected).ok_or(Error::LiftSize {
        expected,
        found: expected + 1,
    })?;
    if elements.len() != expected {
        return Err(Error::LiftSize {
            expected,
            found: elements.len(),
        });
    }
    Ok(LiftedSubgroup {
        lifts,
        elements,
        subgroup_order: u,
        kernel_order: c,
    })
}

/// Whether `U` has a complement to the kernel in its preimage.
pub fn splits(cover: &FaithfulGroup, words: &SlpWord, u: usize) -> Result<bool> {
    if u * cover.kernel_order() as usize > SPLIT_CAP {
        return Err(Error::CapExceeded {
            what: "preimage for splitting",
            cap: SPLIT_CAP,
        });
    }
    let lifted = lift_subgroup(cover, words, u)?;
    if cover.kernel_order() == 2 {
        Ok(splits_by_abelianization(cover, &lifted))
    } else {
        Ok(splits_exhaustive(cover, &lifted))
    }
}

/// Kernel of order 2: split iff `z` is outside the subgroup generated by the squares and
/// commutators of the preimage, i.e. some homomorphism to `C2` is nontrivial on `z`.
pub fn splits_by_abelianization(cover: &FaithfulGroup, lifted: &LiftedSubgroup) -> bool {
    let z = cover.kernel_generator();
    let mut gens: Vec<GroupElement> = lifted.elements.iter().map(|x| x.mul(x)).collect();
    for (i, x) in lifted.lifts.iter().enumerate() {
        for y in &lifted.lifts[i + 1..] {
            gens.push(x.inverse().mul(&y.inverse()).mul(x).mul(y));
        }
    }
    let set: HashSet<GroupElement> = gens.into_iter().filter(|g| !g.is_identity()).collect();
    let gens: Vec<GroupElement> = set.into_iter().collect();
    let id = z.identity_like();
    let v = closure_capped(&gens, &id, lifted.elements.len()).expect("subgroup of the preimage");
    !v.contains(&z)
}

/// A complement contains exactly one lift of each generator of `U`, so try every
/// choice `w_i z^{j_i}` and accept a closure of order exactly `u`.
pub fn splits_exhaustive(cover: &FaithfulGroup, lifted: &LiftedSubgroup) -> bool {
    find_complement(cover, lifted).is_some()
}

/// Generators of a complement, if one exists.
pub fn find_complement(cover: &FaithfulGroup, lifted: &LiftedSubgroup) -> Option<Vec<GroupElement>> {
    let kernel = cover.kernel_elements();
    let c = kernel.len();
    let k = lifted.lifts.len();
    let id = kernel[0].clone();
    let total = c.pow(k as u32);
    for choice in 0..total {
        let mut r = choice;
        let gens: Vec<GroupElement> = lifted
            .lifts
            .iter()
            .map(|w| {
                let j = r % c;
                r /= c;
                w.mul(&kernel[j])
            })
            .collect();
        if let Some(s) = closure_capped(&gens, &id, lifted.subgroup_order) {
            if s.len() == lifted.subgroup_order {
                return Some(gens);
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Order6Kind {
    C6,
    S3,
}

#[derive(Clone, Debug)]
pub struct Order6Class {
    pub kind: Order6Kind,
    /// Number of subgroups in the conjugation orbit.
    pub orbit_size: usize,
    /// Generators of a representative (one for `C6`, two for `S3`).
    pub generators: Vec<Permutation>,
    pub words: SlpWord,
}

/// One representative per conjugation orbit of subgroups of order 6, from a full
/// element enumeration.
pub fn order6_survey(group: &PermGroup) -> Result<Vec<Order6Class>> {
    let elements = group.elements();
    let index: HashMap<&Permutation, u32> = elements.iter().enumerate().map(|(i, g)| (g, i as u32)).collect();
    let id_of = |g: &Permutation| index[g];
    let orders: Vec<u64> = elements.iter().map(|g| g.order()).collect();
    let involutions: Vec<usize> = (0..elements.len()).filter(|&i| orders[i] == 2).collect();

    // subgroup key: sorted element ids
    let mut subgroups: HashMap<Vec<u32>, (Order6Kind, Vec<u32>)> = HashMap::new();
    for (i, g) in elements.iter().enumerate() {
        if orders[i] != 6 {
            continue;
        }
        let mut key: Vec<u32> = (0..6).map(|e| id_of(&g.pow(e))).collect();
        key.sort_unstable();
        subgroups.entry(key).or_insert((Order6Kind::C6, vec![i as u32]));
    }
    for (i, x) in elements.iter().enumerate() {
        if orders[i] != 3 {
            continue;
        }
        let x2 = x.mul(x);
        if id_of(&x2) < i as u32 {
            continue; // each C3 once
        }
        let xi = x2.images();
        for &t in &involutions {
            let ti = elements[t].images();
            // t x t = x^-1 = x^2
            if (0..ti.len()).all(|p| ti[x.images()[ti[p] as usize] as usize] == xi[p]) {
                let tg = &elements[t];
                let members = [
                    group.identity(),
                    x.clone(),
                    x2.clone(),
                    tg.clone(),
                    tg.mul(x),
                    tg.mul(&x2),
                ];
                let mut key: Vec<u32> = members.iter().map(id_of).collect();
                key.sort_unstable();
                subgroups.entry(key).or_insert((Order6Kind::S3, vec![i as u32, t as u32]));
            }
        }
    }

    // conjugation orbits, visited in a deterministic order
    let mut keys: Vec<&Vec<u32>> = subgroups.keys().collect();
    keys.sort();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut reps = Vec::new();
    for start in keys {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start.clone()]);
        let mut size = 0;
        while let Some(key) = queue.pop_front() {
            size += 1;
            for g in group.generators() {
                let mut image: Vec<u32> = key.iter().map(|&e| id_of(&elements[e as usize].conj(g))).collect();
                image.sort_unstable();
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let (kind, gen_ids) = &subgroups[start];
        let generators: Vec<Permutation> = gen_ids.iter().map(|&e| elements[e as usize].clone()).collect();
        let words = super::words::chain_words(group.chain(), &generators)?;
        reps.push(Order6Class {
            kind: *kind,
            orbit_size: size,
            generators,
            words,
        });
    }
    Ok(reps)
}

/// How an element of the quotient was found: a random word, powered down.
#[derive(Clone, Debug)]
pub struct ClassRep {
    pub element: Permutation,
    pub word: SlpWord,
}

/// Search random words for an element of the given order and cycle type.
pub fn find_class_rep(
    quotient: &PermGroup,
    order: u64,
    cycle_type: &CycleType,
    rng: &mut impl Rng,
    tries: usize,
) -> Result<ClassRep> {
    let gens = quotient.generators();
    let k = gens.len();
    for _ in 0..tries {
        let len = rng.gen_range(8..40);
        let letters: Vec<(usize, i64)> = (0..len)
            .map(|_| (rng.gen_range(0..k), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let word = SlpWord::from_letters(k, &letters)?;
        let x = word.evaluate_one(gens)?;
        let n = x.order();
        if n % order != 0 {
            continue;
        }
        let word = word.pow((n / order) as i64);
        let y = word.evaluate_one(gens)?;
        if y.order() == order && &y.cycle_type() == cycle_type {
            return Ok(ClassRep { element: y, word });
        }
    }
    Err(Error::NotFound(format!("no element of order {order} and type {cycle_type}")))
}

/// Conjugacy class of `x` in a permutation group as a breadth-first tree: each
/// conjugate remembers its parent and the generator that reached it.
struct ClassTree {
    members: Vec<Permutation>,
    parent: Vec<(u32, u32)>,
}

impl ClassTree {
    fn build(group: &PermGroup, x: &Permutation, cap: usize) -> Result<(ClassTree, HashMap<Vec<u32>, u32>)> {
        let chain = group.chain();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        index.insert(chain.base_image(x), 0);
        let mut tree = ClassTree {
            members: vec![x.clone()],
            parent: vec![(u32::MAX, u32::MAX)],
        };
        let mut idx = 0;
        while idx < tree.members.len() {
            for (k, g) in group.generators().iter().enumerate() {
                let y = tree.members[idx].conj(g);
                let key = chain.base_image(&y);
                if !index.contains_key(&key) {
                    if tree.members.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "conjugacy class",
                            cap,
                        });
                    }
                    index.insert(key, tree.members.len() as u32);
                    tree.members.push(y);
                    tree.parent.push((idx as u32, k as u32));
                }
            }
            idx += 1;
        }
        Ok((tree, index))
    }

    /// Generator indices `k1 k2 ...` with `members[i] = x^(g_k1 g_k2 ...)`.
    fn path(&self, mut i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while self.parent[i].0 != u32::MAX {
            let (p, k) = self.parent[i];
            out.push(k as usize);
            i = p as usize;
        }
        out.reverse();
        out
    }
}

fn eval_path(gens: &[GroupElement], path: &[usize]) -> GroupElement {
    path.iter()
        .fold(gens[0].identity_like(), |acc, &k| acc.mul(&gens[k]))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassLift {
    pub order: u64,
    pub cycle_type: String,
    pub quotient_class_size: u64,
    pub cover_class_size: u64,
    /// `cover_class_size / quotient_class_size`.
    pub f: u64,
    /// Kernel exponents `j` with `g z^j` conjugate to the chosen lift `g`.
    pub conjugate_exponents: Vec<u64>,
    /// Exponents not conjugate to `g` that an invariant (order or cycle type in the
    /// faithful action) separates; the rest are left unseparated.
    pub separated_exponents: Vec<u64>,
    pub lift_word: String,
}

/// Class-lifting index of the class with the given order and cycle type:
/// `f = |class of the lift in the cover| / |class in the quotient|`.
pub fn class_lift_index(
    cover: &FaithfulGroup,
    quotient: &FaithfulGroup,
    order: u64,
    cycle_type: &CycleType,
    rng: &mut impl Rng,
    class_cap: usize,
) -> Result<ClassLift> {
    let qgroup = quotient.perm_group()?;
    let rep = find_class_rep(&qgroup, order, cycle_type, rng, 200_000)?;
    let kernel = cover.kernel_elements();
    let c = kernel.len();

    // a lift of the same element order
    let raw = rep.word.evaluate_one(cover.generators())?;
    let (shift, lift) = kernel
        .iter()
        .enumerate()
        .map(|(j, z)| (j, raw.mul(z)))
        .find(|(_, y)| y.order() == order)
        .ok_or_else(|| Error::NoEqualOrderLift(format!("order {order}, type {cycle_type}")))?;
    let lift_word = if shift == 0 {
        rep.word.clone()
    } else {
        let kw = cover.kernel_word().ok_or_else(|| Error::MissingData("kernel word".into()))?;
        rep.word.times(&kw.pow(shift as i64))
    };

    // centralizer of the quotient representative from Schreier generators of its class
    let (tree, index) = ClassTree::build(&qgroup, &rep.element, class_cap)?;
    let qclass = tree.members.len() as u64;
    let qorder = quotient.order_u64();
    let cent_order = qorder / qclass;
    let qgens: Vec<Permutation> = qgroup.generators().to_vec();
    let chain = qgroup.chain();
    let mut cent_gens: Vec<Permutation> = Vec::new();
    let mut cent_paths: Vec<(Vec<usize>, usize, Vec<usize>)> = Vec::new();
    let degree = qgroup.degree();
    let mut have = 1u64;
    let mut attempts = 0;
    while have < cent_order {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::Internal("centralizer generation did not converge"));
        }
        let i = rng.gen_range(0..tree.members.len());
        let k = rng.gen_range(0..qgens.len());
        let y = tree.members[i].conj(&qgens[k]);
        let j = index[&chain.base_image(&y)] as usize;
        let (pi, pj) = (tree.path(i), tree.path(j));
        let eval = |p: &[usize]| p.iter().fold(Permutation::identity(degree), |acc, &k| acc.mul(&qgens[k]));
        let s = eval(&pi).mul(&qgens[k]).mul(&eval(&pj).inverse());
        if s.is_identity() {
            continue;
        }
        let mut trial = cent_gens.clone();
        trial.push(s.clone());
        let n = StabChain::new(degree, &trial, 1).order_u64().unwrap_or(u64::MAX);
        if n > have {
            have = n;
            cent_gens = trial;
            cent_paths.push((pi, k, pj));
        }
    }
    if have != cent_order {
        return Err(Error::Internal("centralizer order exceeds the orbit-stabilizer bound"));
    }

    // the preimage of the centralizer permutes the fibre {lift z^j} by conjugation
    let cgens = cover.generators();
    let mut movers: Vec<GroupElement> = cent_paths
        .iter()
        .map(|(pi, k, pj)| {
            eval_path(cgens, pi)
                .mul(&cgens[*k])
                .mul(&eval_path(cgens, pj).inverse())
        })
        .collect();
    movers.push(cover.kernel_generator());
    let fibre: Vec<GroupElement> = kernel.iter().map(|z| lift.mul(z)).collect();
    let position = |x: &GroupElement| fibre.iter().position(|y| y == x);
    let mut reached = vec![false; c];
    reached[0] = true;
    let mut queue = vec![0usize];
    while let Some(j) = queue.pop() {
        for s in &movers {
            let image = fibre[j].conj(s);
            let t = position(&image).ok_or(Error::Internal("conjugate left the fibre"))?;
            if !reached[t] {
                reached[t] = true;
                queue.push(t);
            }
        }
    }
    let conjugate_exponents: Vec<u64> = (0..c as u64).filter(|&j| reached[j as usize]).collect();
    let f = conjugate_exponents.len() as u64;

    // independent check: unreached lifts should differ in some class invariant
    let invariant = |x: &GroupElement| -> (u64, Option<CycleType>) {
        (x.order(), cover.to_perm(x).ok().map(|p| p.cycle_type()))
    };
    let base = invariant(&fibre[0]);
    let separated_exponents: Vec<u64> = (0..c as u64)
        .filter(|&j| !reached[j as usize] && invariant(&fibre[j as usize]) != base)
        .collect();

    let cover_order = cover.order_u64();
    let cover_centralizer = (cent_order * c as u64) / f;
    let cover_class_size = cover_order / cover_centralizer;
    debug_assert_eq!(cover_class_size, qclass * f);
    Ok(ClassLift {
        order,
        cycle_type: cycle_type.to_string(),
        quotient_class_size: qclass,
        cover_class_size,
        f: cover_class_size / qclass,
        conjugate_exponents,
        separated_exponents,
        lift_word: lift_word.to_string(),
    })
}

/// `f_i` for each `(order, cycle type)` class specification.
pub fn class_lift_indices(
    cover: &FaithfulGroup,
    quotient: &FaithfulGroup,
    specs: &[(u64, CycleType)],
    rng: &mut impl Rng,
    class_cap: usize,
) -> Result<Vec<ClassLift>> {
    let out = specs
        .iter()
        .map(|(o, t)| class_lift_index(cover, quotient, *o, t, rng, class_cap))
        .collect::<Result<Vec<_>>>()?;
    for l in &out {
        debug_assert_eq!(cover.kernel_order() % l.f, 0);
    }
    Ok(out)
}
