//! Exact integer/rational polynomial algebra over `Z`, `Q` and `Z[t]`.

pub mod arith;
pub mod bivariate;
pub mod bundled;
mod poly;
pub mod rational;
pub mod resultant;
mod ring;
pub mod text;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use arith::{is_prime_u64, padic_valuation};
pub use bivariate::{discriminant_x, evaluate_t, substitute_t, Substitution};
pub use poly::Poly;
pub use rational::{divide_exact, is_square, rational_roots, squarefree_decomposition};
pub use resultant::{discriminant, resultant};
pub use ring::{rational_sqrt, Coefficient};

pub type IntPolynomial = Poly<BigInt>;
pub type RatPolynomial = Poly<BigRational>;
/// Element of `Z[t][X]`: `coeffs()[j]` is the coefficient of `X^j`, a polynomial in `t`.
pub type BiPolynomial = Poly<IntPolynomial>;
