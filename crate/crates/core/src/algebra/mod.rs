//! Exact arithmetic substrate.
//!
//! Sparse multivariate Laurent polynomials over arbitrary-precision
//! rationals, substitution homomorphisms, exact division, fraction-field
//! linear algebra, and arithmetic in quotients `R[t]/(t^2 - f)`.

mod division;
mod hom;
mod linsolve;
mod parse;
mod poly;
pub mod qmatrix;
mod quotient;
mod table;

use thiserror::Error;

pub use hom::RingHomomorphism;
pub use linsolve::{determinant, rank, solve_linear, Fraction, PolyMatrix};
pub use poly::{Exponent, LaurentPolynomial};
pub use qmatrix::{QMatrix, Subspace};
pub use quotient::{quotient_reduce, QuotientAlgebraElement};
pub use table::VariableTable;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent on non-invertible variable `{0}`")]
    NegativeExponent(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("polynomials live over different variable tables")]
    TableMismatch,
    #[error("negative power of a polynomial that is not a unit")]
    NonUnitNegativePower,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact{}", .remainder.as_ref().map(|r| format!(" (remainder {r})")).unwrap_or_default())]
    InexactDivision { remainder: Option<String> },
    #[error("image of invertible variable `{0}` is not a unit")]
    NonUnitImage(String),
    #[error("homomorphism expects {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Parses a rational literal such as `-3/4` or `5`.
pub fn parse_rational(text: &str) -> Result<BigRational, AlgebraError> {
    let text = text.trim();
    let syntax = |message: &str| AlgebraError::Syntax {
        position: 0,
        message: format!("{message}: `{text}`"),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| syntax("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| syntax("bad denominator"))?;
    if den == BigInt::from(0) {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}
