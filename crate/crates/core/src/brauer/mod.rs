//! 2-torsion Brauer arithmetic over ℚ and quadratic fields.

mod descent;
mod forms;
mod local;
pub mod oracle;
mod quaternion;

use thiserror::Error;

pub use descent::{
    division_hypothesis, isotropic_over_quadratic, verify_quaternion_descent_instance, DescentReport,
    DivisionHypothesis,
};
pub use forms::{albert_form, forms_similar, FormInvariants, Isotropy, RationalQuadraticForm, Similarity};
pub use local::{
    factorize, hilbert_symbol, is_local_square, is_prime, prime_support, relevant_places, square_class,
    square_class_int, Place,
};
pub use quaternion::{
    check_quadratic_parameter, corestriction_projection, res_cor_doubling_check, splits_over_quadratic, BaseField,
    BrauerClass2, DoublingCheck, QuaternionClass, Splitting,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrauerError {
    #[error("zero is not allowed here")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse place {0:?}")]
    BadPlace(String),
    #[error("{0} is not a squarefree integer other than 0 and 1")]
    NotSquarefree(i64),
    #[error("operation requires a class over Q")]
    WrongField,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("{0}")]
    Unsupported(String),
}
