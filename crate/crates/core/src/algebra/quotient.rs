use std::fmt;
use std::sync::Arc;

use super::{AlgebraError, LaurentPolynomial, VariableTable};

/// Element `even + odd·t` of `R[t]/(t² − f)`, where `t` is a distinguished
/// variable of the table and neither part nor `f` involves `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAlgebraElement {
    pub even: LaurentPolynomial,
    pub odd: LaurentPolynomial,
    modulus: LaurentPolynomial,
    var: usize,
}

fn involves(p: &LaurentPolynomial, var: usize) -> bool {
    p.terms().any(|(e, _)| e[var] != 0)
}

/// Reduces `p` modulo `t² − f`, with `t` the variable at index `var`.
pub fn quotient_reduce(
    p: &LaurentPolynomial,
    var: usize,
    modulus: &LaurentPolynomial,
) -> Result<QuotientAlgebraElement, AlgebraError> {
    let table = Arc::clone(p.table());
    if !Arc::ptr_eq(&table, modulus.table()) && **modulus.table() != *table {
        return Err(AlgebraError::TableMismatch);
    }
    if involves(modulus, var) {
        return Err(AlgebraError::Dimension(format!(
            "modulus involves the distinguished variable `{}`",
            table.name(var)
        )));
    }
    let mut powers: Vec<LaurentPolynomial> = vec![LaurentPolynomial::one(&table)];
    let mut even = LaurentPolynomial::zero(&table);
    let mut odd = LaurentPolynomial::zero(&table);
    for (e, c) in p.terms() {
        let k = e[var];
        if k < 0 {
            return Err(AlgebraError::NegativeExponent(table.name(var).to_string()));
        }
        let half = (k / 2) as usize;
        while powers.len() <= half {
            let next = powers.last().unwrap() * modulus;
            powers.push(next);
        }
        let mut rest = e.clone();
        rest[var] = 0;
        let mono = LaurentPolynomial::monomial(&table, rest, c.clone())?;
        let contrib = &mono * &powers[half];
        if k % 2 == 0 {
            even = &even + &contrib;
        } else {
            odd = &odd + &contrib;
        }
    }
    Ok(QuotientAlgebraElement {
        even,
        odd,
        modulus: modulus.clone(),
        var,
    })
}

impl QuotientAlgebraElement {
    pub fn table(&self) -> &Arc<VariableTable> {
        self.even.table()
    }

    pub fn modulus(&self) -> &LaurentPolynomial {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    fn compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.var == other.var && self.modulus == other.modulus {
            Ok(())
        } else {
            Err(AlgebraError::TableMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        Ok(Self {
            even: self.even.checked_add(&other.even)?,
            odd: self.odd.checked_add(&other.odd)?,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        Ok(Self {
            even: self.even.checked_sub(&other.even)?,
            odd: self.odd.checked_sub(&other.odd)?,
            ..self.clone()
        })
    }

    /// `(a + bt)(c + dt) = (ac + bd·f) + (ad + bc)t`.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        let even = &(&self.even * &other.even) + &(&(&self.odd * &other.odd) * &self.modulus);
        let odd = &(&self.even * &other.odd) + &(&self.odd * &other.even);
        Ok(Self {
            even,
            odd,
            ..self.clone()
        })
    }

    /// Back to a polynomial `even + odd·t`.
    pub fn lift(&self) -> LaurentPolynomial {
        let t = {
            let mut e = vec![0; self.table().len()];
            e[self.var] = 1;
            LaurentPolynomial::monomial(self.table(), e, num_rational::BigRational::from_integer(1.into()))
                .unwrap()
        };
        &self.even + &(&self.odd * &t)
    }
}

impl fmt::Display for QuotientAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.table().name(self.var);
        write!(f, "({}) + ({})*{}", self.even, self.odd, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<VariableTable>, LaurentPolynomial) {
        let t = VariableTable::polynomial(&["a", "b", "s", "t"]).unwrap();
        let f = LaurentPolynomial::parse("s^3 - 2*s + 1/3", &t).unwrap();
        (t, f)
    }

    #[test]
    fn defining_relation() {
        let (tab, f) = setup();
        let t2 = LaurentPolynomial::parse("t^2", &tab).unwrap();
        let r = quotient_reduce(&t2, 3, &f).unwrap();
        assert_eq!(r.even, f);
        assert!(r.odd.is_zero());
        let t3 = LaurentPolynomial::parse("t^3", &tab).unwrap();
        let r = quotient_reduce(&t3, 3, &f).unwrap();
        assert!(r.even.is_zero());
        assert_eq!(r.odd, f);
    }

    #[test]
    fn norm_form() {
        let (tab, f) = setup();
        let p = LaurentPolynomial::parse("(a + b*t)*(a - b*t)", &tab).unwrap();
        let r = quotient_reduce(&p, 3, &f).unwrap();
        let expected = &LaurentPolynomial::parse("a^2", &tab).unwrap()
            - &(&LaurentPolynomial::parse("b^2", &tab).unwrap() * &f);
        assert_eq!(r.even, expected);
        assert!(r.odd.is_zero());
    }

    #[test]
    fn modulus_must_be_free_of_t() {
        let (tab, _) = setup();
        let bad = LaurentPolynomial::parse("t + 1", &tab).unwrap();
        assert!(quotient_reduce(&bad, 3, &bad).is_err());
    }
}
