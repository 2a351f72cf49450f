//! Permutation groups: elements, cycle types, Schreier–Sims stabilizer chains,
//! conjugacy classes, induced actions and explicit subgroup lattices of small groups.

mod cycle;
mod genus;
mod group;
mod kset;
mod perm;
mod schreier;
mod subgroups;

pub use cycle::CycleType;
pub use genus::{rh_euler_characteristic, rh_genus};
pub use group::{closure, orbits_of, PermGroup, DEFAULT_CLASS_CAP};
pub use kset::{binomial, colex_rank, colex_unrank, induced_kset_action};
pub use perm::Permutation;
pub use schreier::{GenOrigin, StabChain};
pub use subgroups::{
    all_subgroups_small, decomposition_plausible, iso_label, SmallGroup, SubgroupClass, SMALL_GROUP_CAP,
};
