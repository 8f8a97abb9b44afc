//! Exact computation with totally sign-skew-symmetric cluster algebras with
//! principal coefficients: seed mutation, F-polynomials, g-, c- and d-vectors,
//! weighted Newton polytopes and their mutation, G/C-matrix dualities and the
//! fans built from mutated normal vectors.
//!
//! Directions and variable indices are 0-based throughout the library.

pub mod compat;
pub mod duality;
pub mod error;
pub mod exchange;
pub mod fan;
pub mod geometry;
pub mod json;
pub mod laurent;
pub mod matrix;
pub mod polytope;
pub mod sample;
pub mod seed;

pub use error::{Error, Result};
pub use exchange::ExchangeMatrix;
pub use laurent::{DegreeVector, LaurentPoly, Monomial};
pub use matrix::Matrix;
pub use compat::SeedCatalog;
pub use polytope::WeightedPolytope;
