//! Verification toolkit for the realization of the covering groups of the Mathieu group
//! M22 as regular Galois groups: exact polynomial algebra, finite-field factorization,
//! permutation-group machinery, Newton polygons, point counting and specialization
//! analysis, orchestrated as a registry of individually checkable claims.

pub mod claims;
pub mod error;
pub mod covers;
pub mod elkies;
pub mod exactpoly;
pub mod ffpoly;
pub mod newton;
pub mod permgrp;
pub mod special;

pub use error::{Error, Result};
