//! Generator data for M22, Aut(M22) and their covering groups: loading with verified
//! orders and quotient correspondence, straight-line programs, preimages of subgroups,
//! splitting, and class-lifting indices.

mod element;
mod gf;
mod group;
mod lift;
mod slp;
mod words;

pub use element::{GroupElement, Matrix};
pub use gf::SmallField;
pub use group::{
    load_group, load_with_quotient, parse_mat_file, parse_perm_file, CoverManifest, FaithfulGroup, VECTOR_ORBIT_CAP,
};
pub use lift::{
    class_lift_index, class_lift_indices, closure_capped, find_class_rep, find_complement, lift_subgroup,
    order6_survey, splits, splits_by_abelianization, splits_exhaustive, ClassLift, ClassRep, LiftedSubgroup,
    Order6Class, Order6Kind, SPLIT_CAP,
};
pub use slp::{SlpElement, SlpWord, Source};
pub use words::{chain_word, chain_words};
