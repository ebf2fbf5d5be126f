//! Monomial-scaled modules of (2,2)-biforms over localizations of
//! `k[r, s, t]`, their intersection, and the curve witnessing non-flatness.

mod biform;
mod checks;
mod curve;
mod modules;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use biform::{basis_exponents, parse_constant_form, BiformVector, BASIS_LABELS};
pub use checks::{
    graded_component, verify_intersection_contains_n, verify_intersection_equals_n, verify_n_free_rank9,
    ContainmentCertificate, ContainmentReport, FreenessReport, GradedMismatch, GradedReport,
};
pub use curve::{
    curve_coordinates, curve_table, nonflatness_witness, permutation_search, witness_trial, CurveData,
    IdentityCheck, NonflatnessReport, WitnessStatus, WitnessTrial, PRINTED_GAMMA_EXPONENT,
};
pub use modules::{coefficients, membership, module_m, module_n, Membership, MonomialScaledModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AppendixError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("`{0}` is not a (2,2)-biform")]
    NotBihomogeneous(String),
    #[error("`{0}` is not a monic monomial")]
    NotMonomial(String),
    #[error("module ring must be over r, s, t, got {0}")]
    Ring(String),
    #[error("expected 9 generators, got {0}")]
    GeneratorCount(usize),
    #[error("constant forms of {0} are linearly dependent")]
    DependentForms(String),
    #[error("no module M{0}; expected 1, 2 or 3")]
    NoSuchModule(usize),
    #[error("generator x{generator} is not in {module}; coefficients {certificate}")]
    MembershipFailed {
        generator: usize,
        module: String,
        certificate: String,
    },
    #[error("window {0} is below the minimum of 4")]
    WindowTooSmall(i32),
    #[error("gamma exponent must be -1 or -2, got {0}")]
    GammaExponent(i32),
}
