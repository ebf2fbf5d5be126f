//! Polynomial text parser.
//!
//! Accepts sums of terms separated by `+`/`-`, where a term is a
//! `*`-separated product of rational literals (`p/q`) and variable powers
//! (`name^int`). Parenthesized subexpressions are also accepted, so that
//! factored forms like `(u^2+v^2)*(u'^2-v'^2)` can be written directly.
//! Whitespace is insignificant.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::table::is_identifier;
use super::{AlgebraError, LaurentPolynomial, VariableTable};

impl LaurentPolynomial {
    pub fn parse(text: &str, table: &Arc<VariableTable>) -> Result<Self, AlgebraError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            table,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a Arc<VariableTable>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPolynomial, AlgebraError> {
        let mut acc = LaurentPolynomial::zero(self.table);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial, AlgebraError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPolynomial, AlgebraError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer_literal()?;
                let value = if self.eat(b'/') {
                    let den = self.integer_literal()?;
                    if den == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(num)
                };
                if self.peek() == Some(b'^') {
                    return Err(self.error("exponent on a numeric literal"));
                }
                Ok(LaurentPolynomial::constant(self.table, value))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                match self.exponent()? {
                    None => Ok(inner),
                    Some(k) => inner.pow(k as i64).map_err(|e| match e {
                        AlgebraError::NonUnitNegativePower => AlgebraError::Syntax {
                            position: start,
                            message: "negative power of a non-unit group".into(),
                        },
                        other => other,
                    }),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.identifier();
                let idx = self
                    .table
                    .index_of(&name)
                    .ok_or_else(|| AlgebraError::UnknownVariable(name.clone()))?;
                let k = self.exponent()?.unwrap_or(1);
                if k < 0 && !self.table.is_invertible(idx) {
                    return Err(AlgebraError::NegativeExponent(name));
                }
                let mut e = vec![0; self.table.len()];
                e[idx] = k;
                LaurentPolynomial::monomial(self.table, e, BigRational::from_integer(1.into()))
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn exponent(&mut self) -> Result<Option<i32>, AlgebraError> {
        if !self.eat(b'^') {
            return Ok(None);
        }
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let n = self.integer_literal()?;
        let k = i32::try_from(n).map_err(|_| self.error("exponent out of range"))?;
        Ok(Some(if neg { -k } else { k }))
    }

    fn integer_literal(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(BigInt::from_str(s).unwrap())
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        debug_assert!(is_identifier(&s));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn base_quadric() {
        let t = VariableTable::polynomial(&["K", "L", "M", "N"]).unwrap();
        let p = LaurentPolynomial::parse("K^2 - L^2 + M^2 - N^2", &t).unwrap();
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.coefficient(&[2, 0, 0, 0]), q(1));
        assert_eq!(p.coefficient(&[0, 2, 0, 0]), q(-1));
        assert_eq!(p.coefficient(&[0, 0, 2, 0]), q(1));
        assert_eq!(p.coefficient(&[0, 0, 0, 2]), q(-1));
        assert_eq!(p.to_string(), "K^2 - L^2 + M^2 - N^2");
    }

    #[test]
    fn zero_and_laurent_monomial() {
        let t = VariableTable::new([("s", false), ("t", true)]).unwrap();
        assert!(LaurentPolynomial::parse("0", &t).unwrap().is_zero());
        let p = LaurentPolynomial::parse("t^-1 * s^2", &t).unwrap();
        let (e, c) = p.as_monomial().unwrap();
        assert_eq!(e, &vec![2, -1]);
        assert_eq!(c, &q(1));
    }

    #[test]
    fn errors() {
        let t = VariableTable::polynomial(&["x", "y"]).unwrap();
        assert!(matches!(
            LaurentPolynomial::parse("x^-1", &t),
            Err(AlgebraError::NegativeExponent(v)) if v == "x"
        ));
        assert!(matches!(
            LaurentPolynomial::parse("x + z", &t),
            Err(AlgebraError::UnknownVariable(v)) if v == "z"
        ));
        assert!(matches!(
            LaurentPolynomial::parse("x + * y", &t),
            Err(AlgebraError::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            LaurentPolynomial::parse("(x + y", &t),
            Err(AlgebraError::Syntax { .. })
        ));
        assert!(matches!(
            LaurentPolynomial::parse("x y", &t),
            Err(AlgebraError::Syntax { .. })
        ));
    }

    #[test]
    fn rationals_and_groups() {
        let t = VariableTable::polynomial(&["u", "v", "u'", "v'"]).unwrap();
        let p = LaurentPolynomial::parse("1/16*(u*v' - v*u')^2 - -3/2", &t);
        // "- -3/2" is not in the grammar: a sign must be followed by a term.
        assert!(p.is_err());
        let p = LaurentPolynomial::parse("1/4*(u*v' + v*u')^2 - 1/4*(u*v' - v*u')^2", &t).unwrap();
        assert_eq!(p.to_string(), "u*v*u'*v'");
    }
}
