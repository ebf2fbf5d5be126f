use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// Ordered variable names with per-variable invertibility flags.
///
/// A variable flagged invertible is a Laurent variable: polynomials over the
/// table may carry negative exponents at that position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
    invertible: Vec<bool>,
}

impl VariableTable {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = (S, bool)>,
    ) -> Result<Arc<Self>, AlgebraError> {
        let mut names = Vec::new();
        let mut invertible = Vec::new();
        for (name, inv) in vars {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(AlgebraError::InvalidVariableName(name));
            }
            if names.contains(&name) {
                return Err(AlgebraError::DuplicateVariable(name));
            }
            names.push(name);
            invertible.push(inv);
        }
        Ok(Arc::new(Self { names, invertible }))
    }

    /// A table of ordinary (non-invertible) polynomial variables.
    pub fn polynomial(names: &[&str]) -> Result<Arc<Self>, AlgebraError> {
        Self::new(names.iter().map(|n| (*n, false)))
    }

    /// A table in which every variable is invertible.
    pub fn laurent(names: &[&str]) -> Result<Arc<Self>, AlgebraError> {
        Self::new(names.iter().map(|n| (*n, true)))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_invertible(&self, index: usize) -> bool {
        self.invertible[index]
    }

    /// True if the exponent vector is admissible: nonnegative wherever the
    /// variable is not invertible.
    pub fn admits(&self, exponents: &[i32]) -> bool {
        exponents.len() == self.len()
            && exponents
                .iter()
                .zip(&self.invertible)
                .all(|(&e, &inv)| inv || e >= 0)
    }

    /// Same variables, all of them invertible.
    pub fn localized_everywhere(&self) -> Arc<Self> {
        Arc::new(Self {
            names: self.names.clone(),
            invertible: vec![true; self.len()],
        })
    }
}

impl fmt::Display for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[")?;
        for (i, (n, inv)) in self.names.iter().zip(&self.invertible).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *inv {
                write!(f, "{n},{n}^-1")?;
            } else {
                write!(f, "{n}")?;
            }
        }
        write!(f, "]")
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(matches!(
            VariableTable::polynomial(&["x", "x"]),
            Err(AlgebraError::DuplicateVariable(_))
        ));
        assert!(matches!(
            VariableTable::polynomial(&["1x"]),
            Err(AlgebraError::InvalidVariableName(_))
        ));
        assert!(VariableTable::polynomial(&["u'", "v'"]).is_ok());
    }

    #[test]
    fn admissibility_follows_flags() {
        let t = VariableTable::new([("r", true), ("s", false)]).unwrap();
        assert!(t.admits(&[-3, 0]));
        assert!(!t.admits(&[0, -1]));
        assert!(!t.admits(&[0]));
        assert_eq!(t.to_string(), "k[r,r^-1,s]");
    }
}
