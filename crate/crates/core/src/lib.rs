//! Exact verification of étale local normal forms of quadric surface bundles.
//!
//! The crate is organized bottom-up:
//!
//! * [`algebra`]: Laurent polynomials over ℚ, substitutions, exact division,
//!   fraction-free linear algebra and quotient rings `R[t]/(t² − f)`.
//! * [`bundles`]: the eight diagonal normal forms, their discriminants,
//!   flatness certificates and rank strata.
//! * [`maps`]: the explicit cover maps, their pullback factorizations, sign
//!   actions and generic-fiber inverses.
//! * [`brauer`]: Hilbert symbols, quaternion algebras and quadratic forms
//!   over ℚ, and the quaternion descent checks.
//! * [`appendix`]: monomial-scaled modules of (2,2)-biforms, their
//!   intersection, and the non-flatness witness curve.
//! * [`report`] and [`suites`]: report assembly shared by the CLI and the
//!   Python bindings.

pub mod algebra;
pub mod appendix;
pub mod bundles;
pub mod brauer;
pub mod maps;
pub mod report;
pub mod suites;
