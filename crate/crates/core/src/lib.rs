//! Exact-arithmetic construction and verification of symmetric parabolic
//! contact geometries.
//!
//! The crate builds the contact-graded algebras sl(n+2,R), su(p+1,q+1) and
//! sp(2n+2,R), the symmetric-space source data, and the extension maps
//! between them; computes Cartan curvature, regularity, normality and
//! torsion; determines infinitesimal automorphism algebras through the
//! holonomy iteration; and ships a named catalog of constructions with the
//! published curvature tables and automorphism dimensions as expected
//! results. All arithmetic is exact rational — every `= 0` below is literal.

pub mod algebra;
pub mod automorphism;
pub mod catalog;
pub mod contact;
pub mod error;
pub mod extension;
pub mod linalg;
pub mod mat;
pub mod moves;
pub mod report;
pub mod scalar;
pub mod subspace;
pub mod symmetric;

pub use error::CoreError;
pub use mat::Mat;
pub use scalar::{CScalar, Scalar};
pub use subspace::Subspace;
