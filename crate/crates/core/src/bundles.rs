//! Diagonal quadric surface bundles over affine space.
//!
//! Each normal form is `c₀K² + c₁L² + c₂M² + c₃N²` with signed monomial
//! coefficients in `k[t₁,…,tₙ]`.

use std::sync::Arc;

use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, LaurentPolynomial, RingHomomorphism, VariableTable};

pub const PROJECTIVE_COORDS: [&str; 4] = ["K", "L", "M", "N"];

/// Coefficients of the eight normal forms as `(sign, [t-exponents])` per
/// projective coordinate, indexed by entry number minus one.
const NORMAL_FORMS: [[(i8, [i32; 3]); 4]; 8] = [
    [(1, [0, 0, 0]), (-1, [0, 0, 0]), (1, [0, 0, 0]), (-1, [0, 0, 0])],
    [(1, [1, 0, 0]), (-1, [0, 0, 0]), (1, [0, 0, 0]), (-1, [0, 0, 0])],
    [(1, [1, 0, 0]), (-1, [1, 0, 0]), (1, [0, 0, 0]), (-1, [0, 0, 0])],
    [(1, [1, 1, 0]), (-1, [0, 1, 0]), (1, [0, 0, 0]), (-1, [0, 0, 0])],
    [(1, [1, 0, 0]), (-1, [0, 0, 0]), (1, [0, 1, 0]), (-1, [0, 1, 0])],
    [(1, [1, 1, 0]), (-1, [1, 0, 0]), (1, [0, 0, 0]), (-1, [0, 1, 0])],
    [(1, [1, 1, 1]), (-1, [0, 1, 0]), (1, [0, 0, 0]), (-1, [0, 0, 1])],
    [(1, [1, 1, 0]), (-1, [0, 1, 1]), (1, [0, 0, 1]), (-1, [0, 0, 0])],
];

/// Smallest base dimension for which each entry makes sense.
const MIN_DIMENSION: [usize; 8] = [0, 1, 1, 2, 2, 2, 3, 3];

pub const ENTRY_COUNT: u8 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("entry must be between 1 and 8, got {0}")]
    NoSuchEntry(u8),
    #[error("entry {entry} requires n >= {min}, got n = {n}")]
    DimensionTooSmall { entry: u8, n: usize, min: usize },
    #[error("no Gram coefficient is a nonzero constant")]
    NoUnitCoefficient,
    #[error("stratum index {0} is outside 1..=n")]
    StratumIndex(usize),
    #[error("bundle coefficients must be nonzero polynomials in t1..tn")]
    BadCoefficient,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub fn minimum_dimension(entry: u8) -> Result<usize, BundleError> {
    match entry {
        1..=8 => Ok(MIN_DIMENSION[entry as usize - 1]),
        _ => Err(BundleError::NoSuchEntry(entry)),
    }
}

/// Table `t1, …, tn, K, L, M, N` with nothing inverted.
pub fn bundle_table(n: usize) -> Arc<VariableTable> {
    let mut names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    names.extend(PROJECTIVE_COORDS.iter().map(|s| s.to_string()));
    VariableTable::new(names.into_iter().map(|n| (n, false))).expect("valid names")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalQuadricBundle {
    entry: Option<u8>,
    n: usize,
    table: Arc<VariableTable>,
    coeffs: [LaurentPolynomial; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessCertificate {
    pub kind: &'static str,
    /// Position (0 = K², …, 3 = N²) of a nonzero constant Gram coefficient.
    pub index: usize,
    pub coefficient: String,
}

impl DiagonalQuadricBundle {
    /// The `entry`-th normal form over `𝔸ⁿ`.
    pub fn table_entry(entry: u8, n: usize) -> Result<Self, BundleError> {
        let min = minimum_dimension(entry)?;
        if n < min {
            return Err(BundleError::DimensionTooSmall { entry, n, min });
        }
        let table = bundle_table(n);
        let form = &NORMAL_FORMS[entry as usize - 1];
        let coeffs = std::array::from_fn(|j| {
            let (sign, texp) = form[j];
            let mut e = vec![0; table.len()];
            for (i, &k) in texp.iter().enumerate() {
                if k != 0 {
                    e[i] = k;
                }
            }
            LaurentPolynomial::monomial(&table, e, num_rational::BigRational::from_integer(sign.into()))
                .expect("nonnegative exponents")
        });
        Ok(Self {
            entry: Some(entry),
            n,
            table,
            coeffs,
        })
    }

    /// A bundle with arbitrary Gram diagonal, given as text in `t1..tn`.
    pub fn from_coefficients(n: usize, coeffs: [&str; 4]) -> Result<Self, BundleError> {
        let table = bundle_table(n);
        let mut parsed = Vec::with_capacity(4);
        for c in coeffs {
            let p = LaurentPolynomial::parse(c, &table)?;
            let touches_projective = p.support_variables().iter().any(|&i| i >= n);
            if p.is_zero() || touches_projective {
                return Err(BundleError::BadCoefficient);
            }
            parsed.push(p);
        }
        Ok(Self {
            entry: None,
            n,
            table,
            coeffs: parsed.try_into().unwrap(),
        })
    }

    pub fn entry(&self) -> Option<u8> {
        self.entry
    }

    pub fn base_dimension(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn coefficients(&self) -> &[LaurentPolynomial; 4] {
        &self.coeffs
    }

    /// The defining biform `Σ cⱼ Xⱼ²`.
    pub fn equation(&self) -> LaurentPolynomial {
        let mut eq = LaurentPolynomial::zero(&self.table);
        for (c, name) in self.coeffs.iter().zip(PROJECTIVE_COORDS) {
            let x = LaurentPolynomial::var(&self.table, name).unwrap();
            eq = &eq + &(c * &(&x * &x));
        }
        eq
    }

    /// Product of the Gram diagonal.
    pub fn discriminant(&self) -> LaurentPolynomial {
        self.coeffs
            .iter()
            .fold(LaurentPolynomial::one(&self.table), |acc, c| &acc * c)
    }

    /// The discriminant with even powers dropped from a monomial result.
    /// Non-monomial discriminants are returned unchanged.
    pub fn discriminant_square_class(&self) -> LaurentPolynomial {
        let d = self.discriminant();
        match d.as_monomial() {
            Some((e, c)) => {
                let reduced = e.iter().map(|k| k.rem_euclid(2)).collect();
                let sign = if c.is_negative() { -1 } else { 1 };
                LaurentPolynomial::monomial(&self.table, reduced, num_rational::BigRational::from_integer(sign.into()))
                    .unwrap()
            }
            None => d,
        }
    }

    /// Picks the first Gram coefficient that is a nonzero constant. Such a
    /// coefficient keeps the biform nonzero on every fiber.
    pub fn flatness_certificate(&self) -> Result<FlatnessCertificate, BundleError> {
        self.coeffs
            .iter()
            .enumerate()
            .find_map(|(i, c)| match c.as_constant() {
                Some(v) if !num_traits::Zero::is_zero(&v) => Some(FlatnessCertificate {
                    kind: if v.abs().is_one() { "unit-coefficient" } else { "constant-coefficient" },
                    index: i,
                    coefficient: v.to_string(),
                }),
                _ => None,
            })
            .ok_or(BundleError::NoUnitCoefficient)
    }

    /// Rank of the Gram matrix at a generic point of `{tᵢ = 0 : i ∈ zeroset}`
    /// (indices are 1-based).
    pub fn gram_rank_on_stratum(&self, zeroset: &[usize]) -> Result<usize, BundleError> {
        let hom = self.restriction_to_stratum(zeroset)?;
        let mut rank = 0;
        for c in &self.coeffs {
            if !c.substitute(&hom)?.is_zero() {
                rank += 1;
            }
        }
        Ok(rank)
    }

    fn restriction_to_stratum(&self, zeroset: &[usize]) -> Result<RingHomomorphism, BundleError> {
        let mut pairs = Vec::new();
        let names: Vec<String> = zeroset.iter().map(|i| format!("t{i}")).collect();
        for (&i, name) in zeroset.iter().zip(&names) {
            if i == 0 || i > self.n {
                return Err(BundleError::StratumIndex(i));
            }
            pairs.push((name.as_str(), LaurentPolynomial::zero(&self.table)));
        }
        Ok(RingHomomorphism::from_pairs(&self.table, &self.table, &pairs)?)
    }

    /// Indices (1-based) of the `tᵢ` that occur in some coefficient.
    pub fn occurring_base_variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .coeffs
            .iter()
            .flat_map(|c| c.support_variables())
            .filter(|&i| i < self.n)
            .map(|i| i + 1)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// All subsets of `{1..n}`, ordered by size and then lexicographically.
pub fn all_strata(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..(1 << n))
        .map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
