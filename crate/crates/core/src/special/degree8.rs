//! The 2-transitive permutation groups of degree 8, built from explicit generators.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::permgrp::{CycleType, PermGroup, Permutation};

pub struct Degree8Group {
    pub name: &'static str,
    pub group: PermGroup,
}

impl Degree8Group {
    pub fn cycle_types(&self) -> BTreeSet<CycleType> {
        self.group.elements().iter().map(|g| g.cycle_type()).collect()
    }
}

fn perm(f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..8).map(|i| f(i) as u32).collect()).expect("bijection on 8 points")
}

/// Multiplication in `F_8 = F_2[w]/(w^3 + w + 1)`, elements as bit vectors.
fn f8_mul(a: usize, b: usize) -> usize {
    let mut acc = 0;
    let mut a = a;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        if a & 8 != 0 {
            a ^= 0b1011;
        }
    }
    acc
}

fn affine_f8(frobenius: bool) -> Vec<Permutation> {
    let mut gens = vec![perm(|x| x ^ 1), perm(|x| f8_mul(x, 2))];
    if frobenius {
        gens.push(perm(|x| f8_mul(x, x)));
    }
    gens
}

/// Affine maps of `F_2^3` acting on the 8 vectors (bit patterns).
pub fn agl32() -> Result<PermGroup> {
    let gens = vec![
        perm(|x| x ^ 1),
        // cyclic shift of coordinates
        perm(|x| ((x << 1) & 7) | (x >> 2)),
        // swap of the first two coordinates
        perm(|x| (x & 4) | ((x & 1) << 1) | ((x >> 1) & 1)),
        // transvection x1 += x0
        perm(|x| x ^ ((x & 1) << 1)),
    ];
    PermGroup::new(8, gens)
}

/// Projective line over `F_7`, point 7 at infinity.
fn projective_f7(full: bool) -> Vec<Permutation> {
    const INF: usize = 7;
    let inv = |z: usize| (1..7).find(|w| z * w % 7 == 1).unwrap();
    let scale = |k: usize| perm(move |z| if z == INF { INF } else { z * k % 7 });
    let mut gens = vec![
        perm(|z| if z == INF { INF } else { (z + 1) % 7 }),
        scale(2),
        perm(|z| match z {
            INF => 0,
            0 => INF,
            z => (7 - inv(z)) % 7,
        }),
    ];
    if full {
        gens.push(scale(3));
    }
    gens
}

/// AGL(1,8), AΓL(1,8), AGL(3,2), PSL(2,7), PGL(2,7), A8, S8.
pub fn two_transitive_degree8() -> Result<Vec<Degree8Group>> {
    let seven = perm(|x| if x == 0 { 0 } else { x % 7 + 1 });
    let build = |name, gens| -> Result<Degree8Group> {
        Ok(Degree8Group {
            name,
            group: PermGroup::new(8, gens)?,
        })
    };
    Ok(vec![
        build("AGL(1,8)", affine_f8(false))?,
        build("AGammaL(1,8)", affine_f8(true))?,
        Degree8Group {
            name: "AGL(3,2)",
            group: agl32()?,
        },
        build("PSL(2,7)", projective_f7(false))?,
        build("PGL(2,7)", projective_f7(true))?,
        build("A8", vec![perm(|x| [1, 2, 0, 3, 4, 5, 6, 7][x]), seven.clone()])?,
        build("S8", vec![perm(|x| [1, 0, 2, 3, 4, 5, 6, 7][x]), perm(|x| (x + 1) % 8)])?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_two_transitivity() {
        let expected = [56u64, 168, 1344, 168, 336, 20160, 40320];
        for (g, n) in two_transitive_degree8().unwrap().iter().zip(expected) {
            assert_eq!(g.group.order_u64(), n, "{}", g.name);
            assert_eq!(g.group.stabilizer_orbit_lengths(0).unwrap(), vec![1, 7], "{}", g.name);
        }
    }

    #[test]
    fn agl32_has_no_element_of_order_8_or_5() {
        let orders: BTreeSet<u64> = agl32().unwrap().element_orders().into_iter().collect();
        assert_eq!(orders, BTreeSet::from([1, 2, 3, 4, 6, 7]));
    }
}
