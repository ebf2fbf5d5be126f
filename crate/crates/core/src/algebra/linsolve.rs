//! Fraction-free linear algebra over Laurent polynomial rings.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use super::{AlgebraError, LaurentPolynomial, VariableTable};

/// Row-major grid of polynomials over one table.
pub type PolyMatrix = Vec<Vec<LaurentPolynomial>>;

/// `numerator / denominator` in the fraction field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: LaurentPolynomial,
    pub denominator: LaurentPolynomial,
}

impl Fraction {
    /// Cancels common monomial and rational content, divides exactly when
    /// possible, and normalizes the denominator's leading coefficient to 1.
    pub fn reduced(numerator: LaurentPolynomial, denominator: LaurentPolynomial) -> Result<Self, AlgebraError> {
        if denominator.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let table = Arc::clone(denominator.table());
        if numerator.is_zero() {
            return Ok(Self {
                numerator,
                denominator: LaurentPolynomial::one(&table),
            });
        }
        if let Ok(q) = numerator.divide_exact(&denominator) {
            return Ok(Self {
                numerator: q,
                denominator: LaurentPolynomial::one(&table),
            });
        }
        let mut num = numerator;
        let mut den = denominator;
        // common monomial content
        let nmin = num.min_exponents().unwrap();
        let dmin = den.min_exponents().unwrap();
        let common: Vec<i32> = nmin
            .iter()
            .zip(&dmin)
            .enumerate()
            .map(|(i, (a, b))| {
                let m = (*a).min(*b);
                if table.is_invertible(i) {
                    m
                } else {
                    m.max(0)
                }
            })
            .collect();
        let back: Vec<i32> = common.iter().map(|x| -x).collect();
        num = num.shift(&back)?;
        den = den.shift(&back)?;
        let lead = den.leading_term().map(|(_, c)| c.clone()).unwrap();
        let inv = lead.recip();
        Ok(Self {
            numerator: num.scale(&inv),
            denominator: den.scale(&inv),
        })
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.as_constant().is_some_and(|c| c.is_one())
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

fn table_of(matrix: &PolyMatrix) -> Result<Arc<VariableTable>, AlgebraError> {
    matrix
        .first()
        .and_then(|r| r.first())
        .map(|p| Arc::clone(p.table()))
        .ok_or_else(|| AlgebraError::Dimension("empty matrix".into()))
}

/// Determinant by Bareiss fraction-free elimination; every division is exact.
pub fn determinant(matrix: &PolyMatrix) -> Result<LaurentPolynomial, AlgebraError> {
    let n = matrix.len();
    let table = table_of(matrix)?;
    if matrix.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::Dimension("determinant of a non-square matrix".into()));
    }
    let mut m = matrix.clone();
    let mut prev = LaurentPolynomial::one(&table);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(LaurentPolynomial::zero(&table));
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.divide_exact(&prev)?;
            }
            m[i][k] = LaurentPolynomial::zero(&table);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Rank over the fraction field.
pub fn rank(matrix: &PolyMatrix) -> Result<usize, AlgebraError> {
    if matrix.is_empty() {
        return Ok(0);
    }
    let cols = matrix[0].len();
    let mut m = matrix.clone();
    let rows = m.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            for j in c..cols {
                m[i][j] = &(&m[i][j] * &a) - &(&m[r][j] * &b);
            }
            strip_row_content(&mut m[i]);
        }
        r += 1;
    }
    Ok(r)
}

/// Divides a row by the monomial and rational content shared by its entries.
fn strip_row_content(row: &mut [LaurentPolynomial]) {
    let Some(first) = row.iter().find(|p| !p.is_zero()) else {
        return;
    };
    let table = Arc::clone(first.table());
    let mut common = first.min_exponents().unwrap();
    for p in row.iter().filter(|p| !p.is_zero()) {
        for (a, b) in common.iter_mut().zip(p.min_exponents().unwrap()) {
            *a = (*a).min(b);
        }
    }
    for (i, a) in common.iter_mut().enumerate() {
        if !table.is_invertible(i) {
            *a = (*a).max(0);
        }
    }
    let back: Vec<i32> = common.iter().map(|x| -x).collect();
    for p in row.iter_mut() {
        if !p.is_zero() {
            *p = p.shift(&back).expect("content shift stays in the ring");
        }
    }
    let mut content: Option<num_rational::BigRational> = None;
    for p in row.iter().filter(|p| !p.is_zero()) {
        let c = p.rational_content().abs();
        content = Some(match content {
            None => c,
            Some(acc) => {
                use num_integer::Integer;
                num_rational::BigRational::new(acc.numer().gcd(c.numer()), acc.denom().lcm(c.denom()))
            }
        });
    }
    if let Some(c) = content {
        let inv = c.recip();
        for p in row.iter_mut() {
            *p = p.scale(&inv);
        }
    }
}

/// Solves `matrix · x = rhs` over the fraction field by Cramer's rule with
/// fraction-free determinants.
pub fn solve_linear(matrix: &PolyMatrix, rhs: &[LaurentPolynomial]) -> Result<Vec<Fraction>, AlgebraError> {
    let n = matrix.len();
    if rhs.len() != n {
        return Err(AlgebraError::Dimension(format!(
            "{n} equations but {} right-hand sides",
            rhs.len()
        )));
    }
    let det = determinant(matrix)?;
    if det.is_zero() {
        return Err(AlgebraError::Singular);
    }
    (0..n)
        .map(|j| {
            let mut mj = matrix.clone();
            for (row, b) in mj.iter_mut().zip(rhs) {
                row[j] = b.clone();
            }
            Fraction::reduced(determinant(&mj)?, det.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &Arc<VariableTable>, s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(s, t).unwrap()
    }

    #[test]
    fn diagonal_solve() {
        let t = VariableTable::polynomial(&["s", "t"]).unwrap();
        let m = vec![vec![p(&t, "s"), p(&t, "0")], vec![p(&t, "0"), p(&t, "t")]];
        let x = solve_linear(&m, &[p(&t, "s^2"), p(&t, "t^3")]).unwrap();
        assert_eq!(x[0].to_string(), "s");
        assert_eq!(x[1].to_string(), "t^2");
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let t = VariableTable::polynomial(&["x"]).unwrap();
        let m = vec![vec![p(&t, "1"), p(&t, "0")], vec![p(&t, "0"), p(&t, "1")]];
        let rhs = [p(&t, "x^2 + 1"), p(&t, "-3/5*x")];
        let x = solve_linear(&m, &rhs).unwrap();
        for (xi, bi) in x.iter().zip(&rhs) {
            assert!(xi.is_polynomial());
            assert_eq!(&xi.numerator, bi);
        }
    }

    #[test]
    fn singular_matrix() {
        let t = VariableTable::polynomial(&["x"]).unwrap();
        let m = vec![vec![p(&t, "x"), p(&t, "x^2")], vec![p(&t, "1"), p(&t, "x")]];
        assert_eq!(determinant(&m).unwrap(), p(&t, "0"));
        assert_eq!(solve_linear(&m, &[p(&t, "1"), p(&t, "1")]), Err(AlgebraError::Singular));
        assert_eq!(rank(&m).unwrap(), 1);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let t = VariableTable::polynomial(&["x", "y"]).unwrap();
        let m = vec![
            vec![p(&t, "x"), p(&t, "y"), p(&t, "1")],
            vec![p(&t, "1"), p(&t, "x + y"), p(&t, "y^2")],
            vec![p(&t, "x*y"), p(&t, "0"), p(&t, "x - 1")],
        ];
        let cof = |a: &LaurentPolynomial, b: &LaurentPolynomial, c: &LaurentPolynomial, d: &LaurentPolynomial| {
            a * d - b * c
        };
        let expected = &m[0][0] * cof(&m[1][1], &m[1][2], &m[2][1], &m[2][2])
            - &m[0][1] * cof(&m[1][0], &m[1][2], &m[2][0], &m[2][2])
            + &m[0][2] * cof(&m[1][0], &m[1][1], &m[2][0], &m[2][1]);
        assert_eq!(determinant(&m).unwrap(), expected);
    }

    #[test]
    fn genuine_fraction() {
        let t = VariableTable::polynomial(&["x"]).unwrap();
        let m = vec![vec![p(&t, "x + 1")]];
        let x = solve_linear(&m, &[p(&t, "2*x")]).unwrap();
        assert_eq!(x[0].to_string(), "(2*x) / (x + 1)");
    }
}
