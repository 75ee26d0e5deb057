//! Exact and numerical machinery for pointwise Dirac geometry, polynomial
//! Poisson calculus, quantum-torus Morita orbits, finite-group Picard
//! groups, and graph invariants of topologically stable Poisson structures
//! on the flat torus.
//!
//! The crate is split along those lines:
//!
//! * [`linalg`] — arbitrary-precision rational scalars, dense matrices over
//!   an abstract field, and canonical subspaces (reduced row echelon form).
//! * [`dirac`] — maximal isotropic subspaces of `V ⊕ V*`: graph
//!   constructors, the range/2-form correspondence, restriction, forward
//!   and backward images, gauge shears, generalized-complex tests and
//!   conjugation-twisted fibers.
//! * [`poisson`] — multivectors and forms with exact polynomial
//!   coefficients: brackets, integrability and twisted-integrability
//!   checks, structure-constant (linear) brackets, pointwise ranks and
//!   gauge transforms.
//! * [`qtorus`] — the twisted convolution algebra on finitely supported
//!   lattice functions, `SO(n,n|Z)` block matrices and their fractional
//!   action, orbit search, and the exact `n = 2` equivalence decision via
//!   continued fractions.
//! * [`tss`] — zero-curve tracing, modular periods, labeled-graph
//!   invariants and regularized volume for Poisson structures `f ∂x∧∂y`
//!   on the flat 2-torus.
//! * [`groups`] — finite groups, bispaces, their tensor calculus, and
//!   Picard group computation.

// Indexed loops over parallel tensor components are the local idiom.
#![allow(clippy::needless_range_loop)]

pub mod dirac;
pub mod groups;
pub mod linalg;
pub mod poisson;
pub mod qtorus;
pub mod tss;

pub use linalg::{ExactSubspace, Matrix, Scalar};
