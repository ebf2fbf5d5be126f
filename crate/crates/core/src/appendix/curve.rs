use std::sync::Arc;

use serde::Serialize;

use super::modules::module_n;
use super::AppendixError;
use crate::algebra::{
    quotient_reduce, LaurentPolynomial, QuotientAlgebraElement, RingHomomorphism, VariableTable,
};

/// A curve in the affine base times `ℙ¹ × ℙ¹`, written over
/// `ℚ[s, t, α, β, γ^±1]` with the relation `t² = f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveData {
    pub gamma_exponent: i32,
    pub modulus: String,
    pub r: String,
    pub u: String,
    pub v: String,
    pub u_prime: String,
    pub v_prime: String,
    /// Names standing for `α, β, γ` in the relations `x₃ = αx₀` etc.
    pub parameters: [String; 3],
}

pub fn curve_table() -> Arc<VariableTable> {
    VariableTable::new([
        ("s", false),
        ("t", false),
        ("alpha", false),
        ("beta", false),
        ("gamma", true),
    ])
    .unwrap()
}

impl CurveData {
    /// The curve with parameters named `a`, `b`, `c` and `γ^e` in the last
    /// term of the modulus.
    pub fn with_parameters(gamma_exponent: i32, a: &str, b: &str, c: &str) -> Self {
        let e = gamma_exponent;
        Self {
            gamma_exponent,
            modulus: format!("1/16*(-s^4*{a}^2 - s^2*{b}^2 + s^2*{c}^2 + s^4*{a}^2*{b}^2*{c}^{e})"),
            r: "s".into(),
            u: format!("s^2*{a}*{b}*{c}^-1 + s^2*{a} + s*{b} + s*{c}"),
            v: "4*t".into(),
            u_prime: format!("s^2*{a}*{b}*{c}^-1 - s^2*{a} + s*{b} - s*{c}"),
            v_prime: "4*t".into(),
            parameters: [a.into(), b.into(), c.into()],
        }
    }

    pub fn printed(gamma_exponent: i32) -> Result<Self, AppendixError> {
        if gamma_exponent != -1 && gamma_exponent != -2 {
            return Err(AppendixError::GammaExponent(gamma_exponent));
        }
        Ok(Self::with_parameters(gamma_exponent, "alpha", "beta", "gamma"))
    }

    /// All three parameters set equal to `γ`.
    pub fn equal_parameters(gamma_exponent: i32) -> Self {
        Self::with_parameters(gamma_exponent, "gamma", "gamma", "gamma")
    }
}

/// Images of the generators of `N` along the curve, in printed order.
pub fn curve_coordinates(curve: &CurveData) -> Result<Vec<QuotientAlgebraElement>, AppendixError> {
    let table = curve_table();
    let parse = |s: &str| LaurentPolynomial::parse(s, &table);
    let f = parse(&curve.modulus)?;
    let t_index = table.index_of("t").unwrap();
    let n = module_n();
    let rst = VariableTable::polynomial(&["r", "s", "t"])?;
    let base = RingHomomorphism::from_pairs(
        &rst,
        &table,
        &[("r", parse(&curve.r)?), ("s", parse("s")?), ("t", parse("t")?)],
    )?;
    let forms = RingHomomorphism::from_pairs(
        super::biform::form_table(),
        &table,
        &[
            ("u", parse(&curve.u)?),
            ("v", parse(&curve.v)?),
            ("u'", parse(&curve.u_prime)?),
            ("v'", parse(&curve.v_prime)?),
        ],
    )?;
    let basis: Vec<LaurentPolynomial> = super::biform::BASIS_LABELS
        .iter()
        .map(|b| LaurentPolynomial::parse(b, super::biform::form_table()).and_then(|p| forms.apply(&p)))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(9);
    for j in 0..9 {
        let m = base.apply(&n.monomial(j).reembed(&rst)?)?;
        let mut w = LaurentPolynomial::zero(&table);
        for (i, c) in n.forms()[j].iter().enumerate() {
            if !num_traits::Zero::is_zero(c) {
                w = &w + &basis[i].scale(c);
            }
        }
        out.push(quotient_reduce(&(&m * &w), t_index, &f)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    /// e.g. `x3 = alpha*x0`.
    pub relation: String,
    pub holds: bool,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTrial {
    pub gamma_exponent: i32,
    /// Coordinate indices playing the roles of `x₀, x₃, x₄, x₅`.
    pub indices: [usize; 4],
    pub identities: Vec<IdentityCheck>,
    pub x0_nonzero: bool,
    pub passed: bool,
}

fn check_indices(
    curve: &CurveData,
    xs: &[QuotientAlgebraElement],
    indices: [usize; 4],
) -> Result<WitnessTrial, AppendixError> {
    let table = xs[0].table().clone();
    let t_index = table.index_of("t").unwrap();
    let x0 = &xs[indices[0]];
    let mut identities = Vec::new();
    for (k, name) in curve.parameters.iter().enumerate() {
        let p = LaurentPolynomial::parse(name, &table)?;
        let scaled = x0.mul(&quotient_reduce(&p, t_index, x0.modulus())?)?;
        let diff = xs[indices[k + 1]].sub(&scaled)?;
        identities.push(IdentityCheck {
            relation: format!("x{} = {}*x{}", indices[k + 1], name, indices[0]),
            holds: diff.is_zero(),
            residual: diff.lift().to_string(),
        });
    }
    let x0_nonzero = !x0.is_zero();
    let passed = x0_nonzero && identities.iter().all(|i| i.holds);
    Ok(WitnessTrial {
        gamma_exponent: curve.gamma_exponent,
        indices,
        identities,
        x0_nonzero,
        passed,
    })
}

/// Checks `x₃ = αx₀`, `x₄ = βx₀`, `x₅ = γx₀` in printed order.
pub fn witness_trial(curve: &CurveData) -> Result<WitnessTrial, AppendixError> {
    let xs = curve_coordinates(curve)?;
    check_indices(curve, &xs, [0, 3, 4, 5])
}

/// First index tuple, in lexicographic order, for which the three
/// relations hold with a nonzero base coordinate.
pub fn permutation_search(curve: &CurveData) -> Result<Option<WitnessTrial>, AppendixError> {
    let xs = curve_coordinates(curve)?;
    let table = xs[0].table().clone();
    let t_index = table.index_of("t").unwrap();
    let mut params = Vec::new();
    for name in &curve.parameters {
        let p = LaurentPolynomial::parse(name, &table)?;
        params.push(quotient_reduce(&p, t_index, xs[0].modulus())?);
    }
    for i0 in 0..9 {
        if xs[i0].is_zero() {
            continue;
        }
        // candidates for each relation, then pick distinct indices
        let mut matches: Vec<Vec<usize>> = Vec::new();
        for p in &params {
            let target = xs[i0].mul(p)?;
            matches.push((0..9).filter(|&i| i != i0 && xs[i] == target).collect());
        }
        for &i3 in &matches[0] {
            for &i4 in &matches[1] {
                for &i5 in &matches[2] {
                    if i3 != i4 && i3 != i5 && i4 != i5 {
                        return Ok(Some(check_indices(curve, &xs, [i0, i3, i4, i5])?));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessStatus {
    Pass,
    /// The identities hold only for an exponent other than the printed one.
    Attention,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonflatnessReport {
    /// `None` for automatic selection.
    pub requested: Option<i32>,
    pub trials: Vec<WitnessTrial>,
    pub permutation_fallback: Option<WitnessTrial>,
    pub gamma_exp_used: Option<i32>,
    pub specialization_holds: Option<bool>,
    pub x0: Option<String>,
    /// Relations of the trial that was used, or of the first trial.
    pub identities: Vec<IdentityCheck>,
    pub x0_nonzero: bool,
    pub status: WitnessStatus,
    pub note: String,
}

/// Exponent appearing in the printed modulus.
pub const PRINTED_GAMMA_EXPONENT: i32 = -1;

pub fn nonflatness_witness(requested: Option<i32>) -> Result<NonflatnessReport, AppendixError> {
    let exponents: Vec<i32> = match requested {
        Some(e) => {
            CurveData::printed(e)?;
            vec![e]
        }
        None => vec![-1, -2],
    };
    let mut trials = Vec::new();
    for &e in &exponents {
        trials.push(witness_trial(&CurveData::printed(e)?)?);
    }
    let mut permutation_fallback = None;
    let mut used = trials.iter().find(|t| t.passed).map(|t| t.gamma_exponent);
    if used.is_none() {
        for &e in &exponents {
            if let Some(t) = permutation_search(&CurveData::printed(e)?)? {
                used = Some(e);
                permutation_fallback = Some(t);
                break;
            }
        }
    }
    let (specialization_holds, x0) = match used {
        Some(e) => {
            let curve = CurveData::equal_parameters(e);
            let xs = curve_coordinates(&curve)?;
            let idx = permutation_fallback.as_ref().map(|t| t.indices).unwrap_or([0, 3, 4, 5]);
            // u' vanishes when α = β = γ, so only the relations are kept
            let held = check_indices(&curve, &xs, idx)?.identities.iter().all(|i| i.holds);
            let x0 = curve_coordinates(&CurveData::printed(e)?)?[idx[0]].lift().to_string();
            (Some(held), Some(x0))
        }
        None => (None, None),
    };
    let printed_holds = trials
        .iter()
        .any(|t| t.gamma_exponent == PRINTED_GAMMA_EXPONENT && t.passed);
    let (status, note) = match (used, requested) {
        (None, _) => (WitnessStatus::Fail, "no exponent or coordinate order satisfies the relations".to_string()),
        (Some(e), None) if !printed_holds => (
            WitnessStatus::Attention,
            format!("relations hold for gamma^{e} but fail for the printed gamma^{PRINTED_GAMMA_EXPONENT}"),
        ),
        (Some(e), _) => (WitnessStatus::Pass, format!("relations hold for gamma^{e}")),
    };
    let status = if specialization_holds == Some(false) {
        WitnessStatus::Fail
    } else {
        status
    };
    let chosen = permutation_fallback
        .as_ref()
        .or_else(|| trials.iter().find(|t| Some(t.gamma_exponent) == used))
        .unwrap_or(&trials[0]);
    let identities = chosen.identities.clone();
    let x0_nonzero = chosen.x0_nonzero;
    Ok(NonflatnessReport {
        requested,
        trials,
        permutation_fallback,
        gamma_exp_used: used,
        specialization_holds,
        x0,
        identities,
        x0_nonzero,
        status,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_minus_two_works() {
        let t = witness_trial(&CurveData::printed(-2).unwrap()).unwrap();
        assert!(t.passed, "{t:?}");
        let t = witness_trial(&CurveData::equal_parameters(-2)).unwrap();
        assert!(t.identities.iter().all(|i| i.holds));
        assert!(!t.x0_nonzero);
    }

    #[test]
    fn printed_exponent_fails() {
        let t = witness_trial(&CurveData::printed(-1).unwrap()).unwrap();
        assert!(!t.passed);
        assert!(t.identities.iter().any(|i| !i.holds && i.residual != "0"));
    }

    #[test]
    fn x0_before_reduction() {
        // r²s²·uvu'v' with r = s and v = v' = 4t
        let table = curve_table();
        let curve = CurveData::printed(-2).unwrap();
        let u = LaurentPolynomial::parse(&curve.u, &table).unwrap();
        let up = LaurentPolynomial::parse(&curve.u_prime, &table).unwrap();
        let expected = &LaurentPolynomial::parse("16*s^4*t^2", &table).unwrap() * &(&u * &up);
        let f = LaurentPolynomial::parse(&curve.modulus, &table).unwrap();
        let reduced = quotient_reduce(&expected, 1, &f).unwrap();
        assert_eq!(curve_coordinates(&curve).unwrap()[0], reduced);
    }

    #[test]
    fn corrupted_modulus_fails() {
        let mut curve = CurveData::printed(-2).unwrap();
        curve.modulus = "1/16*(-s^2*beta^2 + s^2*gamma^2 + s^4*alpha^2*beta^2*gamma^-2)".into();
        let t = witness_trial(&curve).unwrap();
        assert!(!t.passed);
    }

    #[test]
    fn report_statuses() {
        let auto = nonflatness_witness(None).unwrap();
        assert_eq!(auto.status, WitnessStatus::Attention);
        assert_eq!(auto.gamma_exp_used, Some(-2));
        assert_eq!(auto.specialization_holds, Some(true));
        assert_eq!(nonflatness_witness(Some(-2)).unwrap().status, WitnessStatus::Pass);
        assert!(matches!(nonflatness_witness(Some(3)), Err(AppendixError::GammaExponent(3))));
        let printed = nonflatness_witness(Some(-1)).unwrap();
        assert_eq!(printed.status, WitnessStatus::Fail);
        assert!(printed.permutation_fallback.is_none());
    }
}
