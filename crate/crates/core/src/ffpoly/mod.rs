//! Arithmetic over prime fields `F_p` (`p < 2^62`) and factorization of univariate
//! polynomials over them.

mod factor;
mod field;
mod poly;
mod sample;

pub use factor::{
    census_squarefree, distinct_degree_census, distinct_degree_factorization, equal_degree_factorization,
    full_factor, is_squarefree, squarefree_factorization, squarefree_part, Census, Factorization,
    FrobeniusContext,
};
pub use field::PrimeField;
pub use poly::{reduce_mod_p, FpPolynomial};
pub use sample::{cycle_type_sample, specialize_mod_p, SampleOutcome};
