use std::collections::HashMap;
use std::sync::Arc;

use super::poly::same_table;
use super::{AlgebraError, LaurentPolynomial, VariableTable};

/// Substitution homomorphism between Laurent rings, given by the image of
/// every source variable.
#[derive(Clone, Debug)]
pub struct RingHomomorphism {
    source: Arc<VariableTable>,
    target: Arc<VariableTable>,
    images: Vec<LaurentPolynomial>,
}

impl RingHomomorphism {
    pub fn new(
        source: &Arc<VariableTable>,
        target: &Arc<VariableTable>,
        images: Vec<LaurentPolynomial>,
    ) -> Result<Self, AlgebraError> {
        if images.len() != source.len() {
            return Err(AlgebraError::ImageCount {
                expected: source.len(),
                got: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if !same_table(img.table(), target) {
                return Err(AlgebraError::TableMismatch);
            }
            if source.is_invertible(i) && !img.is_unit() {
                return Err(AlgebraError::NonUnitImage(source.name(i).to_string()));
            }
        }
        Ok(Self {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
        })
    }

    /// Builds a homomorphism from explicit `(name, image)` pairs; every other
    /// source variable maps to the target variable of the same name.
    pub fn from_pairs(
        source: &Arc<VariableTable>,
        target: &Arc<VariableTable>,
        pairs: &[(&str, LaurentPolynomial)],
    ) -> Result<Self, AlgebraError> {
        let mut images = Vec::with_capacity(source.len());
        for name in source.names() {
            match pairs.iter().find(|(n, _)| n == name) {
                Some((_, img)) => images.push(img.clone()),
                None => images.push(LaurentPolynomial::var(target, name)?),
            }
        }
        for (n, _) in pairs {
            if source.index_of(n).is_none() {
                return Err(AlgebraError::UnknownVariable(n.to_string()));
            }
        }
        Self::new(source, target, images)
    }

    /// Like [`from_pairs`](Self::from_pairs) with images given as text over
    /// the target table.
    pub fn from_text(
        source: &Arc<VariableTable>,
        target: &Arc<VariableTable>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, AlgebraError> {
        let parsed = pairs
            .iter()
            .map(|(n, s)| Ok((*n, LaurentPolynomial::parse(s, target)?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Self::from_pairs(source, target, &parsed)
    }

    pub fn identity(table: &Arc<VariableTable>) -> Self {
        let images = table
            .names()
            .iter()
            .map(|n| LaurentPolynomial::var(table, n).unwrap())
            .collect();
        Self {
            source: Arc::clone(table),
            target: Arc::clone(table),
            images,
        }
    }

    pub fn source(&self) -> &Arc<VariableTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VariableTable> {
        &self.target
    }

    pub fn image(&self, var: usize) -> &LaurentPolynomial {
        &self.images[var]
    }

    pub fn apply(&self, p: &LaurentPolynomial) -> Result<LaurentPolynomial, AlgebraError> {
        if !same_table(p.table(), &self.source) {
            return Err(AlgebraError::TableMismatch);
        }
        let mut cache: HashMap<(usize, i32), LaurentPolynomial> = HashMap::new();
        let mut out = LaurentPolynomial::zero(&self.target);
        for (e, c) in p.terms() {
            let mut term = LaurentPolynomial::constant(&self.target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let power = match cache.get(&(i, k)) {
                    Some(pw) => pw.clone(),
                    None => {
                        let pw = self.images[i].pow(k as i64).map_err(|_| {
                            AlgebraError::NonUnitImage(self.source.name(i).to_string())
                        })?;
                        cache.insert((i, k), pw.clone());
                        pw
                    }
                };
                term = &term * &power;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &RingHomomorphism) -> Result<Self, AlgebraError> {
        let images = self
            .images
            .iter()
            .map(|img| other.apply(img))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&self.source, &other.target, images)
    }
}

impl LaurentPolynomial {
    pub fn substitute(&self, h: &RingHomomorphism) -> Result<Self, AlgebraError> {
        h.apply(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cover_pullback_of_single_term() {
        let base = VariableTable::polynomial(&["t1", "K"]).unwrap();
        let cover = VariableTable::new([("s1", true), ("K", false)]).unwrap();
        let h = RingHomomorphism::from_text(&base, &cover, &[("t1", "s1^2")]).unwrap();
        let p = LaurentPolynomial::parse("t1*K^2", &base).unwrap();
        assert_eq!(p.substitute(&h).unwrap().to_string(), "s1^2*K^2");
    }

    #[test]
    fn identity_is_identity() {
        let t = VariableTable::new([("x", true), ("y", false)]).unwrap();
        let p = LaurentPolynomial::parse("x^-2*y - 3/7*y^4 + 1", &t).unwrap();
        assert_eq!(p.substitute(&RingHomomorphism::identity(&t)).unwrap(), p);
    }

    #[test]
    fn invertible_variable_needs_unit_image() {
        let src = VariableTable::laurent(&["x"]).unwrap();
        let tgt = VariableTable::polynomial(&["y"]).unwrap();
        assert!(matches!(
            RingHomomorphism::from_text(&src, &tgt, &[("x", "y")]),
            Err(AlgebraError::NonUnitImage(_))
        ));
        let tgt = VariableTable::laurent(&["y"]).unwrap();
        assert!(RingHomomorphism::from_text(&src, &tgt, &[("x", "y + 1")]).is_err());
        let h = RingHomomorphism::from_text(&src, &tgt, &[("x", "-2*y^3")]).unwrap();
        let p = LaurentPolynomial::parse("x^-1", &src).unwrap();
        assert_eq!(p.substitute(&h).unwrap().to_string(), "-1/2*y^-3");
    }

    #[test]
    fn composition() {
        let a = VariableTable::polynomial(&["x"]).unwrap();
        let b = VariableTable::polynomial(&["y"]).unwrap();
        let c = VariableTable::polynomial(&["z"]).unwrap();
        let f = RingHomomorphism::from_text(&a, &b, &[("x", "y^2 + 1")]).unwrap();
        let g = RingHomomorphism::from_text(&b, &c, &[("y", "z - 1")]).unwrap();
        let fg = f.then(&g).unwrap();
        let p = LaurentPolynomial::parse("x^2", &a).unwrap();
        assert_eq!(
            p.substitute(&fg).unwrap(),
            p.substitute(&f).unwrap().substitute(&g).unwrap()
        );
    }
}
