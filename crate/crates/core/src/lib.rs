//! Finite graded-commutative algebras over the two-element field, with the
//! machinery needed to classify the small Poincaré duality algebras that
//! arise as fixed-point cohomology rings of involutions on sphere products.
//!
//! The main pieces:
//! - [`f2`]: packed linear algebra over F2 (echelon forms, kernels, GL(n)).
//! - [`algebra`]: the [`GradedAlgebra`] table type, validation, Poincaré
//!   duality checks, minimal generators, and isomorphism-invariant
//!   signatures.
//! - [`constructors`]: spheres, truncated polynomial rings, tensor products,
//!   connected sums, wedges, disjoint unions.
//! - [`presentation`]: generators-and-relations input, both programmatic and
//!   a small text syntax.
//! - [`iso`]: isomorphism testing and canonical forms.
//! - [`enumerate`] / [`classify`]: exhaustive enumeration of algebras with a
//!   given structure profile and the resulting classifications by rank.
//! - [`catalog`]: the named families the classification is checked against.
//! - [`verify`]: soundness/completeness comparison of enumeration output
//!   against the catalog.
//! - [`spectral`]: the Borel spectral-sequence side: involution actions,
//!   E2 pages, and feasible fixed-point rank counts.
//! - [`serialize`]: JSON interchange for algebras and actions.

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod constructors;
pub mod enumerate;
pub mod f2;
pub mod iso;
pub mod presentation;
pub mod profile;
pub mod serialize;
pub mod spectral;
pub mod verify;

pub use algebra::{
    AlgebraError, GradedAlgebra, Generators, HilbertSeries, PdReport, Signature,
    ValidationFailure, ValidationReport, MAX_RANK,
};
pub use iso::{are_isomorphic, find_isomorphism, Isomorphism};
pub use presentation::{from_presentation_text, parse_presentation, Presentation};
