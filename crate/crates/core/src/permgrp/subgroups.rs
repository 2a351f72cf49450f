//! Explicit subgroup machinery for small groups (at most [`SMALL_GROUP_CAP`]
//! elements): conjugacy classes of subgroups, normal subgroups, isomorphism labels
//! and the tame-decomposition-group test.

use std::collections::{BTreeMap, HashMap, HashSet};


use crate::error::{Error, Result};

use super::group::{orbits_of, PermGroup};
use super::perm::Permutation;

pub const SMALL_GROUP_CAP: usize = 10_000;
/// Multiplication tables are kept below this order.
const TABLE_LIMIT: usize = 2048;

type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

/// A group small enough to enumerate, with elements indexed `0..n` (0 = identity).
pub struct SmallGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: Option<Vec<u32>>,
    gens: Vec<usize>,
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub order: usize,
    /// Element indices of the representative, sorted.
    pub members: Vec<usize>,
    /// Element indices generating the representative.
    pub generators: Vec<usize>,
    /// Number of conjugates.
    pub class_size: usize,
}

impl SubgroupClass {
    pub fn is_normal(&self) -> bool {
        self.class_size == 1
    }
}

impl SmallGroup {
    pub fn new(group: &PermGroup) -> Result<Self> {
        let order = group.order_u64() as usize;
        if order > SMALL_GROUP_CAP {
            return Err(Error::CapExceeded {
                what: "small group order",
                cap: SMALL_GROUP_CAP,
            });
        }
        Ok(Self::from_elements(group.degree(), group.elements(), group.generators()))
    }

    /// From a complete, closed element list and generators inside it.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>, gens: &[Permutation]) -> Self {
        elements.sort();
        let id = Permutation::identity(degree);
        let pos = elements.iter().position(|e| *e == id).expect("identity present");
        elements.swap(0, pos);
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let gens = gens.iter().filter(|g| !g.is_identity()).map(|g| index[g]).collect();
        let mut group = SmallGroup {
            degree,
            elements,
            index,
            table: None,
            gens,
        };
        let n = group.elements.len();
        if n <= TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = group.index[&group.elements[a].mul(&group.elements[b])] as u32;
                }
            }
            group.table = Some(table);
        }
        group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].mul(&self.elements[b])],
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.elements[a].order() as usize
    }

    /// Closure of `gens` on top of an existing subgroup given by its member list.
    fn extend(&self, base: &[usize], gens: &[usize]) -> (Bits, Vec<usize>) {
        let mut set = bits_new(self.order());
        let mut list = Vec::with_capacity(base.len() * 2);
        for &x in base {
            set_bit(&mut set, x);
            list.push(x);
        }
        if list.is_empty() {
            set_bit(&mut set, 0);
            list.push(0);
        }
        let mut idx = 0;
        while idx < list.len() {
            let x = list[idx];
            for &g in gens {
                let y = self.mul(x, g);
                if !bit(&set, y) {
                    set_bit(&mut set, y);
                    list.push(y);
                }
            }
            idx += 1;
        }
        list.sort_unstable();
        (set, list)
    }

    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        self.extend(&[0], gens).1
    }

    /// Conjugation maps `e -> g^-1 e g` for each group generator.
    fn conjugation_maps(&self) -> Vec<Vec<u32>> {
        self.gens
            .iter()
            .map(|&g| {
                let gi = self.inverse(g);
                (0..self.order())
                    .map(|e| self.mul(self.mul(gi, e), g) as u32)
                    .collect()
            })
            .collect()
    }

    /// Representatives of all conjugacy classes of subgroups, by extending class
    /// representatives one element at a time and closing each new subgroup under
    /// conjugation.
    pub fn subgroup_classes(&self) -> Vec<SubgroupClass> {
        let n = self.order();
        let maps = self.conjugation_maps();
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut classes: Vec<SubgroupClass> = Vec::new();
        let trivial = vec![0usize];
        let (tb, _) = self.extend(&trivial, &[]);
        seen.insert(tb.clone());
        classes.push(SubgroupClass {
            order: 1,
            members: trivial,
            generators: Vec::new(),
            class_size: 1,
        });
        let mut next = 0;
        while next < classes.len() {
            let rep = classes[next].clone();
            next += 1;
            let mut covered = bits_new(n);
            for &h in &rep.members {
                set_bit(&mut covered, h);
            }
            for g in 0..n {
                if bit(&covered, g) {
                    continue;
                }
                // <H, g> = <H, h g> for h in H
                for &h in &rep.members {
                    set_bit(&mut covered, self.mul(h, g));
                }
                let mut gens = rep.generators.clone();
                gens.push(g);
                let (set, members) = self.extend(&rep.members, &gens);
                if seen.contains(&set) {
                    continue;
                }
                let size = self.register_class(set, &members, &maps, &mut seen);
                classes.push(SubgroupClass {
                    order: members.len(),
                    members,
                    generators: gens,
                    class_size: size,
                });
            }
        }
        classes.sort_by(|a, b| (a.order, &a.members).cmp(&(b.order, &b.members)));
        classes
    }

    fn register_class(&self, set: Bits, members: &[usize], maps: &[Vec<u32>], seen: &mut HashSet<Bits>) -> usize {
        let mut queue = vec![(set.clone(), members.to_vec())];
        seen.insert(set);
        let mut count = 1;
        while let Some((_, list)) = queue.pop() {
            for map in maps {
                let mut image = bits_new(self.order());
                let mut ilist = Vec::with_capacity(list.len());
                for &x in &list {
                    let y = map[x] as usize;
                    set_bit(&mut image, y);
                    ilist.push(y);
                }
                if !seen.contains(&image) {
                    seen.insert(image.clone());
                    count += 1;
                    queue.push((image, ilist));
                }
            }
        }
        count
    }

    /// Orbits on points of the subgroup generated by the given element indices.
    pub fn orbit_lengths(&self, gens: &[usize]) -> Vec<usize> {
        let perms: Vec<Permutation> = gens.iter().map(|&g| self.elements[g].clone()).collect();
        let mut lens: Vec<usize> = orbits_of(self.degree, &perms).iter().map(|o| o.len()).collect();
        lens.sort_unstable();
        lens
    }

    /// The subgroup on the given members as a group in its own right.
    pub fn restrict(&self, members: &[usize], gens: &[usize]) -> SmallGroup {
        let elements = members.iter().map(|&m| self.elements[m].clone()).collect();
        let gens: Vec<Permutation> = gens.iter().map(|&g| self.elements[g].clone()).collect();
        SmallGroup::from_elements(self.degree, elements, &gens)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Histogram `element order -> count`.
    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for a in 0..self.order() {
            *hist.entry(self.element_order(a)).or_insert(0) += 1;
        }
        hist
    }

    /// Isomorphism label for the whole group (see [`iso_label`]).
    pub fn label(&self) -> String {
        iso_label(self.order(), self.is_abelian(), &self.order_histogram())
    }

    /// Does the group have a normal `p`-subgroup `W` with `G/W` metacyclic (a cyclic
    /// normal subgroup with cyclic quotient)? Returns the witness orders `(|W|, |N|)`.
    pub fn tame_quotient_witness(&self, p: usize) -> Option<(usize, usize)> {
        let classes = self.subgroup_classes();
        let normal: Vec<&SubgroupClass> = classes.iter().filter(|c| c.is_normal()).collect();
        let n = self.order();
        for w in normal.iter().filter(|c| is_power_of(c.order, p)) {
            for nn in normal.iter().filter(|c| c.order % w.order == 0) {
                let n_set: HashSet<usize> = nn.members.iter().copied().collect();
                if !w.members.iter().all(|m| n_set.contains(m)) {
                    continue;
                }
                let cyclic_over = |big: &[usize], small: &[usize]| {
                    big.iter().any(|&x| self.extend(small, &[x]).1.len() == big.len())
                };
                let all: Vec<usize> = (0..n).collect();
                if cyclic_over(&nn.members, &w.members) && cyclic_over(&all, &nn.members) {
                    return Some((w.order, nn.order));
                }
            }
        }
        None
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Conjugacy classes of subgroups of a permutation group with at most
/// [`SMALL_GROUP_CAP`] elements.
pub fn all_subgroups_small(group: &PermGroup) -> Result<(SmallGroup, Vec<SubgroupClass>)> {
    let small = SmallGroup::new(group)?;
    let classes = small.subgroup_classes();
    Ok((small, classes))
}

/// `true` iff `H` could be the decomposition group at `p` of a tamely-or-wildly
/// ramified local extension: a normal `p`-subgroup with metacyclic quotient.
pub fn decomposition_plausible(h: &SmallGroup, p: usize) -> bool {
    h.tame_quotient_witness(p).is_some()
}

/// Name of a small group from its order, commutativity and element-order histogram.
/// Exact for the groups of order at most 24 that arise here; larger or ambiguous
/// groups get a descriptive fallback.
pub fn iso_label(order: usize, abelian: bool, hist: &BTreeMap<usize, usize>) -> String {
    let count = |k: usize| hist.get(&k).copied().unwrap_or(0);
    if order == 1 {
        return "1".into();
    }
    if abelian {
        return abelian_label(order, hist);
    }
    let inv = count(2);
    let named = match order {
        6 => Some("S3"),
        8 if inv == 5 => Some("D8"),
        8 if inv == 1 => Some("Q8"),
        10 => Some("D10"),
        12 if count(6) == 0 && count(4) == 0 => Some("A4"),
        12 if inv == 7 => Some("D12"),
        12 if inv == 1 => Some("C3 : C4"),
        14 => Some("D14"),
        16 if inv == 9 && count(8) == 2 => Some("D16"),
        16 if inv == 5 && count(8) == 2 => Some("QD16"),
        16 if inv == 1 && count(8) == 2 => Some("Q16"),
        18 if inv == 9 && count(9) == 6 => Some("D18"),
        20 if count(5) == 4 && inv == 5 && count(4) == 10 => Some("C5 : C4"),
        20 if inv == 11 => Some("D20"),
        21 => Some("C7 : C3"),
        24 if inv == 9 && count(3) == 8 && count(4) == 6 => Some("S4"),
        24 if inv == 1 && count(3) == 8 && count(6) == 8 => Some("SL(2,3)"),
        24 if inv == 3 && count(3) == 8 && count(6) == 8 => Some("C2 x A4"),
        168 if count(7) == 48 => Some("PSL(3,2)"),
        1344 if count(7) == 384 => Some("AGL(3,2)"),
        _ => None,
    };
    match named {
        Some(n) => n.into(),
        None => {
            let h: Vec<String> = hist.iter().map(|(o, c)| format!("{o}:{c}")).collect();
            format!("group of order {order} [{}]", h.join(" "))
        }
    }
}

/// Invariant factors of an abelian group read off from how many elements have order
/// dividing each prime power.
fn abelian_label(order: usize, hist: &BTreeMap<usize, usize>) -> String {
    let mut factors: Vec<usize> = Vec::new();
    let mut rest = order;
    let mut p = 2;
    while rest > 1 {
        if rest % p != 0 {
            p += 1;
            continue;
        }
        while rest % p == 0 {
            rest /= p;
        }
        // exps[k-1] = #{i : e_i >= k}, read off from N_k = #{x : x^(p^k) = 1}
        let mut exps = Vec::new();
        let mut prev_log = 0;
        let mut pk = p;
        loop {
            let nk: usize = hist
                .iter()
                .filter(|(o, _)| is_power_of(**o, p) && pk % **o == 0)
                .map(|(_, c)| *c)
                .sum();
            let log = order_valuation(nk, p) as usize;
            let rank_k = log - prev_log;
            if rank_k == 0 {
                break;
            }
            exps.push(rank_k);
            prev_log = log;
            pk *= p;
        }
        let r = exps.first().copied().unwrap_or(0);
        for i in 0..r {
            let e = exps.iter().filter(|&&c| c > i).count();
            factors.push(p.pow(e as u32));
        }
    }
    // combine primary factors into invariant factors d_1 | d_2 | ...
    let mut by_prime: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for f in factors {
        let q = smallest_prime_factor(f);
        by_prime.entry(q).or_default().push(f);
    }
    let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut inv = vec![1usize; len];
    for v in by_prime.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
        for (i, f) in v.iter().enumerate() {
            inv[len - 1 - i] *= f;
        }
    }
    inv.retain(|&d| d > 1);
    inv.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join(" x ")
}

fn order_valuation(mut n: usize, p: usize) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|g| Permutation::parse(n, g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn subgroup_class_counts() {
        let s3 = group(3, &["(1,2)", "(1,2,3)"]);
        assert_eq!(all_subgroups_small(&s3).unwrap().1.len(), 4);
        let c4 = group(4, &["(1,2,3,4)"]);
        assert_eq!(all_subgroups_small(&c4).unwrap().1.len(), 3);
        // S4 has 11 classes of subgroups
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        assert_eq!(all_subgroups_small(&s4).unwrap().1.len(), 11);
    }

    #[test]
    fn labels() {
        let s4 = SmallGroup::new(&group(4, &["(1,2)", "(1,2,3,4)"])).unwrap();
        assert_eq!(s4.label(), "S4");
        let a4 = SmallGroup::new(&group(4, &["(1,2,3)", "(2,3,4)"])).unwrap();
        assert_eq!(a4.label(), "A4");
        let v4 = SmallGroup::new(&group(4, &["(1,2)(3,4)", "(1,3)(2,4)"])).unwrap();
        assert_eq!(v4.label(), "C2 x C2");
        let c6 = SmallGroup::new(&group(5, &["(1,2,3)(4,5)"])).unwrap();
        assert_eq!(c6.label(), "C6");
        let c2c4 = SmallGroup::new(&group(6, &["(1,2,3,4)", "(5,6)"])).unwrap();
        assert_eq!(c2c4.label(), "C2 x C4");
    }

    #[test]
    fn tame_quotients() {
        let a4 = SmallGroup::new(&group(4, &["(1,2,3)", "(2,3,4)"])).unwrap();
        assert!(!decomposition_plausible(&a4, 3));
        let s3 = SmallGroup::new(&group(3, &["(1,2)", "(1,2,3)"])).unwrap();
        assert!(decomposition_plausible(&s3, 3));
        let c3 = SmallGroup::new(&group(3, &["(1,2,3)"])).unwrap();
        assert!(decomposition_plausible(&c3, 3));
        let s4 = SmallGroup::new(&group(4, &["(1,2)", "(1,2,3,4)"])).unwrap();
        assert!(!decomposition_plausible(&s4, 3));
        // S4 does have a normal 2-subgroup with metacyclic quotient S3
        assert!(decomposition_plausible(&s4, 2));
    }
}
