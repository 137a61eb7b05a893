//! Exact computations in deformation theory.
//!
//! The crate provides sparse polynomial arithmetic over the rationals and
//! prime fields, a Gröbner-basis engine, finite-dimensional local algebra
//! calculus (structure constants, fibered products, small-extension
//! factorizations), first-order deformation data for isolated hypersurface
//! singularities (Tjurina algebras, miniversal families, specialization,
//! lifting, gluing), and sheaf-cohomology dimensions for line bundles on
//! projective space with an independent cross-checking oracle.
//!
//! Everything is exact: no floating point anywhere.

pub mod artin;
pub mod deform;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod projective;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
