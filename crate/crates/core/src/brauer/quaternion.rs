use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::local::{hilbert_symbol, is_local_square, relevant_places, square_class, Place};
use super::BrauerError;

/// Base field of a quaternion symbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BaseField {
    Rationals,
    /// `ℚ(√d)` for a squarefree `d ≠ 0, 1`.
    Quadratic(i64),
}

/// The class of the quaternion algebra `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionClass {
    pub a: BigRational,
    pub b: BigRational,
    pub field: BaseField,
}

impl fmt::Display for QuaternionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            BaseField::Rationals => write!(f, "({}, {})", self.a, self.b),
            BaseField::Quadratic(d) => write!(f, "({}, {}) over Q(sqrt({d}))", self.a, self.b),
        }
    }
}

/// Checks that `d` is a squarefree integer other than 0 and 1.
pub fn check_quadratic_parameter(d: i64) -> Result<(), BrauerError> {
    if d == 0 || d == 1 || square_class(&BigRational::from_integer(d.into()))? != BigInt::from(d) {
        return Err(BrauerError::NotSquarefree(d));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Splitting {
    pub split: bool,
    pub ramified: Vec<Place>,
}

impl QuaternionClass {
    pub fn over_q(a: BigRational, b: BigRational) -> Result<Self, BrauerError> {
        if a.is_zero() || b.is_zero() {
            return Err(BrauerError::Zero);
        }
        Ok(Self {
            a,
            b,
            field: BaseField::Rationals,
        })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self, BrauerError> {
        Self::over_q(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    fn require_rational(&self) -> Result<(), BrauerError> {
        match self.field {
            BaseField::Rationals => Ok(()),
            BaseField::Quadratic(_) => Err(BrauerError::WrongField),
        }
    }

    /// Places where `(a, b)_v = −1`; always an even number of them.
    pub fn ramified_places(&self) -> Result<Vec<Place>, BrauerError> {
        self.require_rational()?;
        let mut out = Vec::new();
        for v in relevant_places([&self.a, &self.b]) {
            if hilbert_symbol(&self.a, &self.b, v)? == -1 {
                out.push(v);
            }
        }
        Ok(out)
    }

    pub fn is_split(&self) -> Result<Splitting, BrauerError> {
        let ramified = self.ramified_places()?;
        Ok(Splitting {
            split: ramified.is_empty(),
            ramified,
        })
    }

    /// Restriction to `ℚ(√d)`.
    pub fn restrict(&self, d: i64) -> Result<Self, BrauerError> {
        self.require_rational()?;
        check_quadratic_parameter(d)?;
        Ok(Self {
            field: BaseField::Quadratic(d),
            ..self.clone()
        })
    }
}

/// Whether `ℚ(√d)` splits `q`: at every ramified place `d` must be a local
/// non-square, so that the local degree is 2.
pub fn splits_over_quadratic(q: &QuaternionClass, d: i64) -> Result<bool, BrauerError> {
    q.require_rational()?;
    check_quadratic_parameter(d)?;
    let d = BigRational::from_integer(d.into());
    for v in q.ramified_places()? {
        if is_local_square(&d, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projection formula `cor(a, b) = (a, N(b))` for `a ∈ ℚ` and
/// `b = x + y√d ∈ ℚ(√d)`.
pub fn corestriction_projection(
    a: &BigRational,
    x: &BigRational,
    y: &BigRational,
    d: i64,
) -> Result<QuaternionClass, BrauerError> {
    check_quadratic_parameter(d)?;
    if x.is_zero() && y.is_zero() {
        return Err(BrauerError::Zero);
    }
    let norm = x * x - BigRational::from_integer(d.into()) * y * y;
    QuaternionClass::over_q(a.clone(), norm)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingCheck {
    pub beta: String,
    pub d: i64,
    pub corestriction: String,
    pub passed: bool,
}

/// `cor(res(β))` must be split. With `β = (a, b)`, both slots lie in ℚ, so
/// the projection formula gives `(a, N(b)) = (a, b²)`.
pub fn res_cor_doubling_check(beta: &QuaternionClass, d: i64) -> Result<DoublingCheck, BrauerError> {
    let restricted = beta.restrict(d)?;
    let cor = corestriction_projection(&restricted.a, &restricted.b, &BigRational::zero(), d)?;
    let passed = cor.is_split()?.split;
    Ok(DoublingCheck {
        beta: beta.to_string(),
        d,
        corestriction: cor.to_string(),
        passed,
    })
}

/// A 2-torsion Brauer class over ℚ, recorded by its ramification set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerClass2 {
    pub ramified: BTreeSet<Place>,
}

impl BrauerClass2 {
    pub fn of(q: &QuaternionClass) -> Result<Self, BrauerError> {
        Ok(Self {
            ramified: q.ramified_places()?.into_iter().collect(),
        })
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self {
            ramified: self.ramified.symmetric_difference(&other.ramified).copied().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ramified.is_empty()
    }
}
