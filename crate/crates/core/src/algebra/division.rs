use num_traits::Zero;

use super::poly::same_table;
use super::{AlgebraError, Exponent, LaurentPolynomial};

impl LaurentPolynomial {
    /// Exact quotient `self / den`, or an error if `den` does not divide `self`.
    ///
    /// Both operands are first shifted so that their minimal exponent at each
    /// invertible variable is zero. The shifted divisor is then coprime to
    /// those variables, so divisibility in the Laurent ring is equivalent to
    /// divisibility in the polynomial ring, which lexicographic long division
    /// decides.
    pub fn divide_exact(&self, den: &LaurentPolynomial) -> Result<LaurentPolynomial, AlgebraError> {
        if !same_table(self.table(), den.table()) {
            return Err(AlgebraError::TableMismatch);
        }
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let table = self.table();
        if let Some((de, dc)) = den.as_monomial() {
            let mut q = LaurentPolynomial::zero(table);
            let mut rem = LaurentPolynomial::zero(table);
            for (e, c) in self.terms() {
                let diff: Exponent = e.iter().zip(de).map(|(a, b)| a - b).collect();
                if table.admits(&diff) {
                    q.add_term(diff, c / dc);
                } else {
                    rem.add_term(e.clone(), c.clone());
                }
            }
            return if rem.is_zero() {
                Ok(q)
            } else {
                Err(AlgebraError::InexactDivision {
                    remainder: Some(rem.to_string()),
                })
            };
        }

        let n = table.len();
        let num_min = self.min_exponents().unwrap();
        let den_min = den.min_exponents().unwrap();
        let mut num_shift = vec![0; n];
        let mut den_shift = vec![0; n];
        for i in 0..n {
            if table.is_invertible(i) {
                num_shift[i] = -num_min[i];
                den_shift[i] = -den_min[i];
            }
        }
        let mut rem = self.shift(&num_shift)?;
        let den = den.shift(&den_shift)?;
        let (lead_e, lead_c) = {
            let (e, c) = den.leading_term().unwrap();
            (e.clone(), c.clone())
        };
        let mut quotient = LaurentPolynomial::zero(table);
        while let Some((e, c)) = rem.leading_term() {
            let diff: Exponent = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&x| x < 0) {
                return Err(AlgebraError::InexactDivision { remainder: None });
            }
            let coeff = c / &lead_c;
            debug_assert!(!coeff.is_zero());
            let step = LaurentPolynomial::monomial(table, diff, coeff)?;
            rem = &rem - &(&step * &den);
            quotient = &quotient + &step;
        }
        let back: Exponent = den_shift.iter().zip(&num_shift).map(|(d, s)| d - s).collect();
        quotient.shift(&back)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VariableTable;

    #[test]
    fn divide_by_monomial() {
        let t = VariableTable::new([("s1", true), ("A", false), ("B", false)]).unwrap();
        let p = LaurentPolynomial::parse("s1^2*A^2 - s1^2*B^2", &t).unwrap();
        let d = LaurentPolynomial::parse("s1^2", &t).unwrap();
        assert_eq!(p.divide_exact(&d).unwrap().to_string(), "A^2 - B^2");
        let one = LaurentPolynomial::one(&t);
        assert_eq!(p.divide_exact(&one).unwrap(), p);
    }

    #[test]
    fn inexact_monomial_division_reports_remainder() {
        let t = VariableTable::polynomial(&["A", "B"]).unwrap();
        let a2 = LaurentPolynomial::parse("A^2 + A*B", &t).unwrap();
        let b = LaurentPolynomial::parse("B", &t).unwrap();
        match a2.divide_exact(&b) {
            Err(AlgebraError::InexactDivision { remainder: Some(r) }) => assert_eq!(r, "A^2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn general_divisor() {
        let t = VariableTable::new([("x", true), ("y", false)]).unwrap();
        let a = LaurentPolynomial::parse("x^-1*y + 2 - y^3", &t).unwrap();
        let b = LaurentPolynomial::parse("x^3 - 5*x*y + 1/2", &t).unwrap();
        let ab = &a * &b;
        assert_eq!(ab.divide_exact(&b).unwrap(), a);
        assert_eq!(ab.divide_exact(&a).unwrap(), b);
        let c = LaurentPolynomial::parse("x + y", &t).unwrap();
        assert!(matches!(
            ab.divide_exact(&c),
            Err(AlgebraError::InexactDivision { .. })
        ));
        assert_eq!(
            a.divide_exact(&LaurentPolynomial::zero(&t)),
            Err(AlgebraError::DivisionByZero)
        );
    }
}
