//! Diagonal quadratic forms over ℚ: classification invariants, isotropy via
//! the local-global principle, and similarity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::local::{hilbert_symbol_int, is_local_square, relevant_places, square_class, Place};
use super::quaternion::QuaternionClass;
use super::BrauerError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalQuadraticForm {
    diag: Vec<BigRational>,
}

impl fmt::Display for RationalQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diag.iter().map(|x| x.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub dim: usize,
    /// Squarefree representative of the product of the diagonal.
    pub discriminant: String,
    pub signature: (usize, usize),
    /// `∏_{i<j} (aᵢ, aⱼ)_v` at the real place, 2, and primes dividing entries.
    pub hasse: BTreeMap<Place, i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isotropy {
    pub isotropic: bool,
    /// A small integral zero, when the bounded search finds one.
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Similarity {
    pub similar: bool,
    /// Squarefree `c` with `c·f ≅ g`.
    pub scale: Option<String>,
}

impl RationalQuadraticForm {
    pub fn new(diag: Vec<BigRational>) -> Result<Self, BrauerError> {
        if diag.iter().any(|x| x.is_zero()) {
            return Err(BrauerError::Zero);
        }
        Ok(Self { diag })
    }

    pub fn from_ints(diag: &[i64]) -> Result<Self, BrauerError> {
        Self::new(diag.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn diag(&self) -> &[BigRational] {
        &self.diag
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Entries replaced by their squarefree square-class representatives.
    pub fn square_reduced(&self) -> Self {
        Self {
            diag: self
                .diag
                .iter()
                .map(|x| BigRational::from_integer(square_class(x).unwrap()))
                .collect(),
        }
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        Self {
            diag: self.diag.iter().map(|x| x * c).collect(),
        }
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        Self {
            diag: self.diag.iter().chain(&other.diag).cloned().collect(),
        }
    }

    fn reps(&self) -> Vec<BigInt> {
        self.diag.iter().map(|x| square_class(x).unwrap()).collect()
    }

    pub fn discriminant(&self) -> BigInt {
        let prod = self
            .diag
            .iter()
            .fold(BigRational::one(), |acc, x| acc * x);
        square_class(&prod).unwrap()
    }

    pub fn signature(&self) -> (usize, usize) {
        let pos = self.diag.iter().filter(|x| x.is_positive()).count();
        (pos, self.dim() - pos)
    }

    pub fn relevant_places(&self) -> BTreeSet<Place> {
        relevant_places(&self.diag)
    }

    pub fn hasse_at(&self, v: Place) -> i8 {
        let reps = self.reps();
        let mut h = 1;
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                h *= hilbert_symbol_int(&reps[i], &reps[j], v);
            }
        }
        h
    }

    pub fn invariants(&self) -> FormInvariants {
        self.invariants_at(&self.relevant_places())
    }

    fn invariants_at(&self, places: &BTreeSet<Place>) -> FormInvariants {
        FormInvariants {
            dim: self.dim(),
            discriminant: self.discriminant().to_string(),
            signature: self.signature(),
            hasse: places.iter().map(|&v| (v, self.hasse_at(v))).collect(),
        }
    }

    /// Isometry over ℚ: equal dimension, discriminant, signature and Hasse
    /// invariants at every place where either form can be nontrivial.
    pub fn isometric(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let places: BTreeSet<Place> = self.relevant_places().union(&other.relevant_places()).copied().collect();
        self.invariants_at(&places) == other.invariants_at(&places)
    }

    /// Local isotropy at one place, by the standard rank-by-rank criteria
    /// in terms of discriminant `d` and Hasse invariant `ε`.
    pub fn is_locally_isotropic(&self, v: Place) -> bool {
        let n = self.dim();
        if v == Place::Real {
            let (p, m) = self.signature();
            return n >= 2 && p > 0 && m > 0;
        }
        let d = BigRational::from_integer(self.discriminant());
        let eps = self.hasse_at(v);
        match n {
            0 | 1 => false,
            2 => is_local_square(&-d, v).unwrap(),
            3 => {
                let minus_d = square_class(&-d).unwrap();
                hilbert_symbol_int(&BigInt::from(-1), &minus_d, v) == eps
            }
            4 => {
                !is_local_square(&d, v).unwrap()
                    || eps == hilbert_symbol_int(&BigInt::from(-1), &BigInt::from(-1), v)
            }
            _ => true,
        }
    }

    /// Hasse–Minkowski.
    pub fn is_isotropic(&self) -> Isotropy {
        let isotropic = match self.dim() {
            0 | 1 => false,
            // binary forms: -a₁a₂ must be a rational square
            2 => self.discriminant() == BigInt::from(-1),
            3 | 4 => self.relevant_places().into_iter().all(|v| self.is_locally_isotropic(v)),
            _ => self.is_locally_isotropic(Place::Real),
        };
        let witness = if isotropic && self.dim() <= 4 {
            self.find_zero(6)
        } else {
            None
        };
        Isotropy {
            isotropic,
            witness: witness.map(|w| w.iter().map(|x| x.to_string()).collect()),
        }
    }

    /// Searches integer vectors with entries in `[-bound, bound]`, by
    /// increasing max-norm, for a nontrivial zero.
    pub fn find_zero(&self, bound: i64) -> Option<Vec<i64>> {
        let n = self.dim();
        let order: Vec<i64> = std::iter::once(0)
            .chain((1..=bound).flat_map(|k| [k, -k]))
            .collect();
        for norm in 1..=bound {
            let width = (2 * norm + 1) as usize;
            let mut idx = vec![0usize; n];
            loop {
                let v: Vec<i64> = idx.iter().map(|&i| order[i]).collect();
                if v.iter().map(|x| x.abs()).max() == Some(norm) {
                    let value = v
                        .iter()
                        .zip(&self.diag)
                        .fold(BigRational::zero(), |acc, (&x, a)| acc + a * BigRational::from_integer((x * x).into()));
                    if value.is_zero() {
                        return Some(v);
                    }
                }
                // odometer step, last coordinate fastest
                let mut k = n;
                let mut carried_out = true;
                while k > 0 {
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < width {
                        carried_out = false;
                        break;
                    }
                    idx[k] = 0;
                }
                if carried_out {
                    break;
                }
            }
        }
        None
    }
}

/// Candidate scalings: signed squarefree products of 2 and the primes
/// dividing the entries of either form.
fn scaling_candidates(f: &RationalQuadraticForm, g: &RationalQuadraticForm) -> Vec<BigInt> {
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    primes.insert(2);
    for p in f.relevant_places().into_iter().chain(g.relevant_places()) {
        if let Place::Prime(p) = p {
            primes.insert(p);
        }
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << primes.len()) {
        let mut c = BigInt::one();
        for (i, p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                c *= *p;
            }
        }
        out.push(c.clone());
        out.push(-c);
    }
    out
}

/// Decides whether `c·f ≅ g` for some `c ∈ ℚ×`. The ratio of the first
/// entries is tried first, then every candidate square class.
pub fn forms_similar(f: &RationalQuadraticForm, g: &RationalQuadraticForm) -> Result<Similarity, BrauerError> {
    if f.dim() != g.dim() {
        return Err(BrauerError::DimensionMismatch(f.dim(), g.dim()));
    }
    if f.dim() == 0 {
        return Ok(Similarity {
            similar: true,
            scale: Some("1".into()),
        });
    }
    let first = square_class(&(&g.diag[0] / &f.diag[0]))?;
    let mut candidates = vec![first];
    candidates.extend(scaling_candidates(f, g));
    for c in candidates {
        if f.scaled(&BigRational::from_integer(c.clone())).isometric(g) {
            return Ok(Similarity {
                similar: true,
                scale: Some(c.to_string()),
            });
        }
    }
    Ok(Similarity {
        similar: false,
        scale: None,
    })
}

/// `⟨a₁, b₁, −a₁b₁, −a₂, −b₂, a₂b₂⟩`, entries reduced to squarefree integers.
pub fn albert_form(q1: &QuaternionClass, q2: &QuaternionClass) -> Result<RationalQuadraticForm, BrauerError> {
    for q in [q1, q2] {
        if q.field != super::BaseField::Rationals {
            return Err(BrauerError::WrongField);
        }
    }
    let f = RationalQuadraticForm::new(vec![
        q1.a.clone(),
        q1.b.clone(),
        -(&q1.a * &q1.b),
        -q2.a.clone(),
        -q2.b.clone(),
        &q2.a * &q2.b,
    ])?;
    Ok(f.square_reduced())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(d: &[i64]) -> RationalQuadraticForm {
        RationalQuadraticForm::from_ints(d).unwrap()
    }

    #[test]
    fn invariants_of_small_forms() {
        let i = f(&[1, 1]).invariants();
        assert_eq!(i.discriminant, "1");
        assert_eq!(i.signature, (2, 0));
        assert!(i.hasse.values().all(|&h| h == 1));
        let h = f(&[1, -1]);
        assert_eq!(h.invariants().discriminant, "-1");
        assert!(h.is_isotropic().isotropic);
        let a = f(&[1, -2, -3, 5, 7, -210]);
        assert_eq!(a.invariants().discriminant, "-1");
    }

    #[test]
    fn isotropy() {
        let i = f(&[1, 1, -2]).is_isotropic();
        assert!(i.isotropic);
        assert_eq!(i.witness, Some(vec!["1".into(), "1".into(), "1".into()]));
        assert!(!f(&[1, 1, 1]).is_isotropic().isotropic);
        assert!(f(&[1, 1, 1, 1, -7]).is_isotropic().isotropic);
        assert!(!f(&[1, 1, 1, 1, 7]).is_isotropic().isotropic);
        // x² + y² + z² = 7w² has no rational solution
        assert!(!f(&[1, 1, 1, -7]).is_isotropic().isotropic);
        assert!(f(&[1, 1, 1, -3]).is_isotropic().isotropic);
        // 3x² + 5y² = 2z² ... anisotropic at 3 after reduction
        assert!(!f(&[1, 1, -3]).is_isotropic().isotropic);
    }

    #[test]
    fn similarity() {
        let s = forms_similar(&f(&[3, -7, 2]), &f(&[3, -7, 2])).unwrap();
        assert_eq!(s.scale.as_deref(), Some("1"));
        let s = forms_similar(&f(&[1, -1]), &f(&[2, -2])).unwrap();
        assert!(s.similar);
        assert_eq!(s.scale.as_deref(), Some("2"));
        assert!(!forms_similar(&f(&[1, 1]), &f(&[1, -1])).unwrap().similar);
        assert!(matches!(
            forms_similar(&f(&[1]), &f(&[1, 1])),
            Err(BrauerError::DimensionMismatch(1, 2))
        ));
    }

    #[test]
    fn albert_forms() {
        let a = albert_form(
            &QuaternionClass::from_ints(3, 2).unwrap(),
            &QuaternionClass::from_ints(30, 42).unwrap(),
        )
        .unwrap();
        assert_eq!(a, f(&[3, 2, -6, -30, -42, 35]));
        let s = albert_form(
            &QuaternionClass::from_ints(1, 1).unwrap(),
            &QuaternionClass::from_ints(1, 1).unwrap(),
        )
        .unwrap();
        assert_eq!(s, f(&[1, 1, -1, -1, -1, 1]));
        assert!(s.is_isotropic().isotropic);
    }
}
