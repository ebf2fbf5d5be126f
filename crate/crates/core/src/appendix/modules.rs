use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use super::biform::{parse_constant_form, rst_table, BiformVector};
use super::AppendixError;
use crate::algebra::{LaurentPolynomial, QMatrix, VariableTable};

/// Generators as `(monomial, constant biform)`; the first module inverts
/// `r, s`, the second `r, t`, the third `s, t`.
const M1: [(&str, &str); 9] = [
    ("t^2", "u^2*u'^2"),
    ("t", "u^2*u'*v'"),
    ("t^2", "u^2*v'^2"),
    ("t", "u*v*u'^2"),
    ("1", "u*v*u'*v'"),
    ("t", "u*v*v'^2"),
    ("t^2", "v^2*u'^2"),
    ("t", "v^2*u'*v'"),
    ("t^2", "v^2*v'^2"),
];

const M2: [(&str, &str); 9] = [
    ("s^2", "(u^2+v^2)*(u'^2+v'^2)"),
    ("s", "(u^2+v^2)*(u'^2-v'^2)"),
    ("s^2", "(u^2+v^2)*u'*v'"),
    ("s", "(u^2-v^2)*(u'^2+v'^2)"),
    ("1", "(u^2-v^2)*(u'^2-v'^2)"),
    ("s", "(u^2-v^2)*u'*v'"),
    ("s^2", "u*v*(u'^2+v'^2)"),
    ("s", "u*v*(u'^2-v'^2)"),
    ("s^2", "u*v*u'*v'"),
];

const M3: [(&str, &str); 9] = [
    ("r^2", "u^2*u'^2"),
    ("r^2", "(u*v'+v*u')^2"),
    ("1", "(u*v'-v*u')^2"),
    ("r^2", "v^2*v'^2"),
    ("r", "u*u'*(u*v'-v*u')"),
    ("r", "v*v'*(u*v'-v*u')"),
    ("r", "(u*v'+v*u')*(u*v'-v*u')"),
    ("r^2", "u*u'*(u*v'+v*u')"),
    ("r^2", "v*v'*(u*v'+v*u')"),
];

const N: [(&str, &str); 9] = [
    ("r^2*s^2", "u*v*u'*v'"),
    ("r^2*t^2", "(u^2-v^2)*(u'^2-v'^2)"),
    ("s^2*t^2", "(u*v'-v*u')^2"),
    ("r*s*t", "(u*u'+v*v')*(u*v'-v*u')"),
    ("r^2*s*t", "(u*u'-v*v')*(u*v'+v*u')"),
    ("r*s^2*t", "(u*u'-v*v')*(u*v'-v*u')"),
    ("r*s*t^2", "(u*v'+v*u')*(u*v'-v*u')"),
    ("r^2*s^2*t", "(u*u'+v*v')*(u*v'+v*u')"),
    ("r^2*s*t^2", "(u*u'-v*v')*(u*u'+v*v')"),
];

/// A free module `⊕ R · m_j w_j` with Laurent monomials `m_j` in `r, s, t`
/// and constant biforms `w_j` forming a basis of ℚ⁹.
#[derive(Clone, Debug)]
pub struct MonomialScaledModule {
    name: String,
    ring: Arc<VariableTable>,
    monomials: Vec<[i32; 3]>,
    forms: Vec<[BigRational; 9]>,
    /// Inverse of the matrix whose columns are the `w_j`.
    basis_inverse: QMatrix,
}

impl MonomialScaledModule {
    pub fn new(
        name: &str,
        ring: Arc<VariableTable>,
        gens: &[(&str, &str)],
    ) -> Result<Self, AppendixError> {
        if ring.names() != rst_table().names() {
            return Err(AppendixError::Ring(ring.to_string()));
        }
        if gens.len() != 9 {
            return Err(AppendixError::GeneratorCount(gens.len()));
        }
        let mut monomials = Vec::new();
        let mut forms = Vec::new();
        for (m, w) in gens {
            let p = LaurentPolynomial::parse(m, &ring)?;
            let e = match p.as_monomial() {
                Some((e, c)) if *c == BigRational::from_integer(1.into()) => [e[0], e[1], e[2]],
                _ => return Err(AppendixError::NotMonomial(m.to_string())),
            };
            monomials.push(e);
            forms.push(parse_constant_form(w)?);
        }
        let columns = QMatrix::from_rows(forms.iter().map(|w| w.to_vec()).collect(), 9)?.transpose();
        let basis_inverse = columns.inverse().map_err(|_| AppendixError::DependentForms(name.to_string()))?;
        Ok(Self {
            name: name.to_string(),
            ring,
            monomials,
            forms,
            basis_inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &Arc<VariableTable> {
        &self.ring
    }

    pub fn monomials(&self) -> &[[i32; 3]] {
        &self.monomials
    }

    pub fn forms(&self) -> &[[BigRational; 9]] {
        &self.forms
    }

    pub fn invertible(&self) -> [bool; 3] {
        [0, 1, 2].map(|i| self.ring.is_invertible(i))
    }

    pub fn monomial(&self, j: usize) -> LaurentPolynomial {
        let one = BigRational::from_integer(1.into());
        LaurentPolynomial::monomial(rst_table(), self.monomials[j].to_vec(), one).unwrap()
    }

    /// Generator `j` as a biform over the fully localized ring.
    pub fn generator(&self, j: usize) -> BiformVector {
        BiformVector::from_constant(&self.monomial(j), &self.forms[j])
    }

    pub fn generators(&self) -> Vec<BiformVector> {
        (0..9).map(|j| self.generator(j)).collect()
    }
}

fn ring(invert: [bool; 3]) -> Arc<VariableTable> {
    VariableTable::new(["r", "s", "t"].into_iter().zip(invert)).unwrap()
}

/// The three local modules, `i ∈ 1..=3`.
pub fn module_m(i: usize) -> Result<MonomialScaledModule, AppendixError> {
    match i {
        1 => MonomialScaledModule::new("M1", ring([true, true, false]), &M1),
        2 => MonomialScaledModule::new("M2", ring([true, false, true]), &M2),
        3 => MonomialScaledModule::new("M3", ring([false, true, true]), &M3),
        _ => Err(AppendixError::NoSuchModule(i)),
    }
}

/// The claimed intersection, over `k[r, s, t]`.
pub fn module_n() -> MonomialScaledModule {
    MonomialScaledModule::new("N", ring([false; 3]), &N).expect("N is well formed")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub module: String,
    pub member: bool,
    /// Coefficients `c_j` with `x = Σ c_j · gen_j` over the fraction field.
    pub coefficients: Vec<String>,
    /// Indices of coefficients outside the module's ring.
    pub outside: Vec<usize>,
}

/// Solves `x = Σ c_j m_j w_j` and checks each `c_j` against the ring.
pub fn coefficients(x: &BiformVector, module: &MonomialScaledModule) -> Result<Vec<LaurentPolynomial>, AppendixError> {
    let mut out = Vec::with_capacity(9);
    for j in 0..9 {
        let mut y = LaurentPolynomial::zero(rst_table());
        for i in 0..9 {
            let b = &module.basis_inverse[(j, i)];
            if !num_traits::Zero::is_zero(b) {
                y = &y + &x.coords[i].scale(b);
            }
        }
        let inv = module.monomial(j).unit_inverse().expect("monomial over a Laurent table");
        out.push(&y * &inv);
    }
    Ok(out)
}

pub fn membership(x: &BiformVector, module: &MonomialScaledModule) -> Result<Membership, AppendixError> {
    let cs = coefficients(x, module)?;
    let outside: Vec<usize> = cs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.terms().any(|(e, _)| !module.ring.admits(e)))
        .map(|(j, _)| j)
        .collect();
    Ok(Membership {
        module: module.name.clone(),
        member: outside.is_empty(),
        coefficients: cs.iter().map(|c| c.to_string()).collect(),
        outside,
    })
}
