//! Parametrized instances of the quaternion descent identities.
//!
//! For parameters `p, q, r ∈ ℚ×` and squarefree `d`, the target form is
//! `⟨1, −d, −p, q, r, −dpqr⟩` and the comparison form is the Albert form of
//! the pair `(p, d)`, `(dpq, dpr)`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::forms::{albert_form, forms_similar, FormInvariants, RationalQuadraticForm};
use super::local::{square_class, Place};
use super::quaternion::{check_quadratic_parameter, splits_over_quadratic, QuaternionClass};
use super::BrauerError;

/// Whether the biquaternion hypothesis holds for an Albert form: anisotropic
/// over ℚ and isotropic over `ℚ(√d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionHypothesis {
    pub anisotropic_over_q: bool,
    pub isotropic_over_l: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub p: String,
    pub q: String,
    pub r: String,
    pub d: i64,
    pub target_form: String,
    pub albert_pair: (String, String),
    pub albert: String,
    pub target_invariants: FormInvariants,
    pub albert_invariants: FormInvariants,
    pub similar: bool,
    pub scale: Option<String>,
    pub first_splits_over_l: bool,
    pub descended_class: String,
    pub descended_ramification: Vec<Place>,
    pub hypothesis: DivisionHypothesis,
    /// Similar, or the non-similarity is explained by the hypothesis failing.
    pub consistent: bool,
}

/// Isotropy over `ℚ(√d)` of a form with rational coefficients, for
/// dimension at least 5: over a number field only the real places can
/// obstruct, and `ℚ(√d)` has none when `d < 0`.
pub fn isotropic_over_quadratic(f: &RationalQuadraticForm, d: i64) -> Result<bool, BrauerError> {
    check_quadratic_parameter(d)?;
    if f.dim() < 5 {
        return Err(BrauerError::Unsupported(format!(
            "isotropy over a quadratic field needs dimension >= 5, got {}",
            f.dim()
        )));
    }
    Ok(d < 0 || f.is_locally_isotropic(Place::Real))
}

pub fn division_hypothesis(albert: &RationalQuadraticForm, d: i64) -> Result<DivisionHypothesis, BrauerError> {
    let anisotropic_over_q = !albert.is_isotropic().isotropic;
    let isotropic_over_l = isotropic_over_quadratic(albert, d)?;
    Ok(DivisionHypothesis {
        anisotropic_over_q,
        isotropic_over_l,
        holds: anisotropic_over_q && isotropic_over_l,
    })
}

pub fn verify_quaternion_descent_instance(
    p: &BigRational,
    q: &BigRational,
    r: &BigRational,
    d: i64,
) -> Result<DescentReport, BrauerError> {
    if p.is_zero() || q.is_zero() || r.is_zero() {
        return Err(BrauerError::Zero);
    }
    check_quadratic_parameter(d)?;
    let dq = BigRational::from_integer(d.into());
    let target = RationalQuadraticForm::new(vec![
        BigRational::one(),
        -dq.clone(),
        -p.clone(),
        q.clone(),
        r.clone(),
        -(&dq * p * q * r),
    ])?;
    let first = QuaternionClass::over_q(p.clone(), dq.clone())?;
    let second = QuaternionClass::over_q(&dq * p * q, &dq * p * r)?;
    let albert = albert_form(&first, &second)?;
    let sim = forms_similar(&target, &albert)?;
    let first_splits_over_l = splits_over_quadratic(&first, d)?;
    let hypothesis = division_hypothesis(&albert, d)?;
    let reduced = |x: &BigRational| square_class(x).map(|c| c.to_string());
    Ok(DescentReport {
        p: p.to_string(),
        q: q.to_string(),
        r: r.to_string(),
        d,
        target_form: target.to_string(),
        albert_pair: (first.to_string(), second.to_string()),
        albert: albert.to_string(),
        target_invariants: target.invariants(),
        albert_invariants: albert.invariants(),
        similar: sim.similar,
        scale: sim.scale,
        first_splits_over_l,
        descended_class: format!("({}, {})", reduced(&second.a)?, reduced(&second.b)?),
        descended_ramification: second.ramified_places()?,
        consistent: sim.similar || !hypothesis.holds,
        hypothesis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn reference_instance() {
        let rep = verify_quaternion_descent_instance(&q(3), &q(5), &q(7), 2).unwrap();
        assert_eq!(rep.target_form, "<1, -2, -3, 5, 7, -210>");
        assert_eq!(rep.albert, "<3, 2, -6, -30, -42, 35>");
        assert!(rep.similar);
        assert!(rep.first_splits_over_l);
        assert_eq!(rep.descended_class, "(30, 42)");
        assert!(rep.consistent);
        assert!(!rep.hypothesis.holds);
    }

    #[test]
    fn degenerate_and_imaginary() {
        let rep = verify_quaternion_descent_instance(&q(1), &q(1), &q(1), 2).unwrap();
        assert!(rep.similar && rep.first_splits_over_l);
        let rep = verify_quaternion_descent_instance(&q(2), &q(3), &q(5), -1).unwrap();
        assert!(rep.similar && rep.consistent);
        assert!(rep.hypothesis.isotropic_over_l);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(verify_quaternion_descent_instance(&q(0), &q(1), &q(1), 2).is_err());
        assert!(matches!(
            verify_quaternion_descent_instance(&q(1), &q(1), &q(1), 8),
            Err(BrauerError::NotSquarefree(8))
        ));
    }
}
