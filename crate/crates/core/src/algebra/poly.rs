use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, VariableTable};

/// Fixed-width exponent vector, one entry per table variable.
pub type Exponent = Vec<i32>;

/// Sparse Laurent polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration is in ascending
/// lexicographic order of exponent vectors and zero coefficients are never
/// stored.
#[derive(Clone, Debug)]
pub struct LaurentPolynomial {
    table: Arc<VariableTable>,
    terms: BTreeMap<Exponent, BigRational>,
}

impl PartialEq for LaurentPolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for LaurentPolynomial {}

pub(crate) fn same_table(a: &Arc<VariableTable>, b: &Arc<VariableTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LaurentPolynomial {
    pub fn zero(table: &Arc<VariableTable>) -> Self {
        Self {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<VariableTable>) -> Self {
        Self::constant(table, BigRational::one())
    }

    pub fn constant(table: &Arc<VariableTable>, c: BigRational) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(vec![0; table.len()], c);
        }
        p
    }

    pub fn from_int(table: &Arc<VariableTable>, c: i64) -> Self {
        Self::constant(table, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(table: &Arc<VariableTable>, name: &str) -> Result<Self, AlgebraError> {
        let i = table
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; table.len()];
        e[i] = 1;
        Self::monomial(table, e, BigRational::one())
    }

    pub fn monomial(
        table: &Arc<VariableTable>,
        exponents: Exponent,
        coeff: BigRational,
    ) -> Result<Self, AlgebraError> {
        if exponents.len() != table.len() {
            return Err(AlgebraError::Dimension(format!(
                "exponent vector of length {} over a table of {} variables",
                exponents.len(),
                table.len()
            )));
        }
        if let Some(i) = (0..table.len()).find(|&i| exponents[i] < 0 && !table.is_invertible(i)) {
            return Err(AlgebraError::NegativeExponent(table.name(i).to_string()));
        }
        let mut p = Self::zero(table);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        Ok(p)
    }

    /// Product of powers of named variables, e.g. `[("s", 2), ("t", -1)]`.
    pub fn monomial_named(
        table: &Arc<VariableTable>,
        powers: &[(&str, i32)],
    ) -> Result<Self, AlgebraError> {
        let mut e = vec![0; table.len()];
        for (name, k) in powers {
            let i = table
                .index_of(name)
                .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
            e[i] += k;
        }
        Self::monomial(table, e, BigRational::one())
    }

    /// Builds a polynomial from raw terms, summing duplicates.
    pub fn from_terms(
        table: &Arc<VariableTable>,
        terms: impl IntoIterator<Item = (Exponent, BigRational)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(table);
        for (e, c) in terms {
            if !table.admits(&e) {
                return Err(match e.len() == table.len() {
                    true => AlgebraError::NegativeExponent(
                        table.name(first_negative(table, &e)).to_string(),
                    ),
                    false => AlgebraError::Dimension("exponent vector width".into()),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[i32]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Single nonzero term.
    pub fn as_monomial(&self) -> Option<(&Exponent, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Units of a Laurent ring are the nonzero scalar multiples of monomials
    /// supported on invertible variables.
    pub fn is_unit(&self) -> bool {
        match self.as_monomial() {
            Some((e, _)) => e
                .iter()
                .enumerate()
                .all(|(i, &x)| x == 0 || self.table.is_invertible(i)),
            None => false,
        }
    }

    /// Leading term in lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum exponent over all terms (`None` for zero).
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let mut acc = it.next()?.clone();
        for e in it {
            for (a, &b) in acc.iter_mut().zip(e) {
                *a = (*a).min(b);
            }
        }
        Some(acc)
    }

    /// Componentwise maximum exponent over all terms (`None` for zero).
    pub fn max_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let mut acc = it.next()?.clone();
        for e in it {
            for (a, &b) in acc.iter_mut().zip(e) {
                *a = (*a).max(b);
            }
        }
        Some(acc)
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn support_variables(&self) -> Vec<usize> {
        (0..self.table.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .collect()
    }

    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    fn check_table(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(AlgebraError::TableMismatch)
        }
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_table(other)?;
        let mut out = Self::zero(&self.table);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Integer power; negative exponents are allowed only for units.
    pub fn pow(&self, k: i64) -> Result<Self, AlgebraError> {
        if k < 0 {
            let inv = self.unit_inverse().ok_or(AlgebraError::NonUnitNegativePower)?;
            return inv.pow(-k);
        }
        let mut result = Self::one(&self.table);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Inverse of a unit, `None` otherwise.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.as_monomial()?;
        let mut p = Self::zero(&self.table);
        p.terms.insert(e.iter().map(|x| -x).collect(), c.recip());
        Some(p)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Self {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`; fails if the result leaves the ring.
    pub fn shift(&self, shift: &[i32]) -> Result<Self, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()));
        Self::from_terms(&self.table, terms)
    }

    /// Re-expresses the polynomial over another table by matching variable
    /// names. Variables absent from `self.table` must not occur in `self`.
    pub fn reembed(&self, target: &Arc<VariableTable>) -> Result<Self, AlgebraError> {
        let map: Vec<Option<usize>> = self
            .table
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => ne[j] = x,
                    None => {
                        return Err(AlgebraError::UnknownVariable(self.table.name(i).to_string()))
                    }
                }
            }
            terms.push((ne, c.clone()));
        }
        Self::from_terms(target, terms)
    }

    /// Common rational content: the gcd of numerators over the lcm of
    /// denominators, signed so that the leading coefficient of the primitive
    /// part is positive.
    pub fn rational_content(&self) -> BigRational {
        use num_integer::Integer;
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        let content = BigRational::new(num, den);
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -content,
            _ => content,
        }
    }
}

fn first_negative(table: &VariableTable, e: &[i32]) -> usize {
    (0..e.len())
        .find(|&i| e[i] < 0 && !table.is_invertible(i))
        .unwrap_or(0)
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&-BigRational::one())
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPolynomial> for &LaurentPolynomial {
            type Output = LaurentPolynomial;
            /// Panics if the operands live over different tables; use the
            /// `checked_*` methods to get an error instead.
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$checked(rhs).expect("polynomial table mismatch")
            }
        }
        impl $trait<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPolynomial> for &LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

/// Canonical text: terms in descending lexicographic exponent order, reduced
/// fractions, explicit signs between terms, unit coefficients omitted.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mono = format_monomial(&self.table, e);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn format_monomial(table: &VariableTable, e: &[i32]) -> String {
    let mut parts = Vec::new();
    for (i, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 => parts.push(table.name(i).to_string()),
            _ => parts.push(format!("{}^{}", table.name(i), x)),
        }
    }
    parts.join("*")
}
