use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;

use super::AppendixError;
use crate::algebra::{LaurentPolynomial, VariableTable};

/// Standard basis of (2,2)-biforms in `(u:v)`, `(u':v')`.
pub const BASIS_LABELS: [&str; 9] = [
    "u^2*u'^2",
    "u^2*u'*v'",
    "u^2*v'^2",
    "u*v*u'^2",
    "u*v*u'*v'",
    "u*v*v'^2",
    "v^2*u'^2",
    "v^2*u'*v'",
    "v^2*v'^2",
];

/// Exponents of `(u, u')` for basis element `i`; `v` and `v'` fill up to 2.
pub fn basis_exponents(i: usize) -> (i32, i32) {
    (2 - (i / 3) as i32, 2 - (i % 3) as i32)
}

pub(crate) fn form_table() -> &'static Arc<VariableTable> {
    static T: OnceLock<Arc<VariableTable>> = OnceLock::new();
    T.get_or_init(|| VariableTable::polynomial(&["u", "v", "u'", "v'"]).unwrap())
}

pub(crate) fn rst_table() -> &'static Arc<VariableTable> {
    static T: OnceLock<Arc<VariableTable>> = OnceLock::new();
    T.get_or_init(|| VariableTable::laurent(&["r", "s", "t"]).unwrap())
}

/// Coordinates of a constant biform, given as an expression in
/// `u, v, u', v'`, in the standard basis.
pub fn parse_constant_form(text: &str) -> Result<[BigRational; 9], AppendixError> {
    let p = LaurentPolynomial::parse(text, form_table())?;
    let mut out: [BigRational; 9] = std::array::from_fn(|_| BigRational::zero());
    for (e, c) in p.terms() {
        let (a, b) = (e[0], e[2]);
        if e[0] + e[1] != 2 || e[2] + e[3] != 2 {
            return Err(AppendixError::NotBihomogeneous(text.to_string()));
        }
        let i = (3 * (2 - a) + (2 - b)) as usize;
        out[i] = c.clone();
    }
    Ok(out)
}

/// A biform with Laurent polynomial coordinates in `r, s, t`, all three
/// inverted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiformVector {
    pub coords: Vec<LaurentPolynomial>,
}

impl BiformVector {
    pub fn zero() -> Self {
        Self {
            coords: vec![LaurentPolynomial::zero(rst_table()); 9],
        }
    }

    /// `monomial · form`, with `monomial` written in `r, s, t`.
    pub fn scaled_form(monomial: &str, form: &str) -> Result<Self, AppendixError> {
        let m = LaurentPolynomial::parse(monomial, rst_table())?;
        let w = parse_constant_form(form)?;
        Ok(Self::from_constant(&m, &w))
    }

    pub fn from_constant(m: &LaurentPolynomial, w: &[BigRational; 9]) -> Self {
        Self {
            coords: w.iter().map(|c| m.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale_by(&self, p: &LaurentPolynomial) -> Self {
        Self {
            coords: self.coords.iter().map(|a| a * p).collect(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn basis_order() {
        for (i, label) in BASIS_LABELS.iter().enumerate() {
            let w = parse_constant_form(label).unwrap();
            for (j, c) in w.iter().enumerate() {
                assert_eq!(*c, if i == j { q(1) } else { q(0) });
            }
            let p = LaurentPolynomial::parse(label, form_table()).unwrap();
            let (e, _) = p.as_monomial().unwrap();
            assert_eq!(basis_exponents(i), (e[0], e[2]));
        }
    }

    #[test]
    fn expansion() {
        let w = parse_constant_form("(u^2+v^2)*(u'^2+v'^2)").unwrap();
        let ones = [0, 2, 6, 8];
        for (i, c) in w.iter().enumerate() {
            assert_eq!(*c, if ones.contains(&i) { q(1) } else { q(0) });
        }
        let w = parse_constant_form("(u*v'-v*u')^2").unwrap();
        assert_eq!(w[2], q(1));
        assert_eq!(w[4], q(-2));
        assert_eq!(w[6], q(1));
        assert!(matches!(parse_constant_form("u^2*u'"), Err(AppendixError::NotBihomogeneous(_))));
    }
}
