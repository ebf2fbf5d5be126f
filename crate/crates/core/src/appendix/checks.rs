use num_rational::BigRational;
use serde::Serialize;

use super::modules::{membership, module_m, module_n, Membership, MonomialScaledModule};
use super::AppendixError;
use crate::algebra::{determinant, rank, LaurentPolynomial, PolyMatrix, QMatrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentCertificate {
    pub generator: usize,
    #[serde(flatten)]
    pub membership: Membership,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub certificates: Vec<ContainmentCertificate>,
    pub passed: usize,
    pub total: usize,
}

/// Every generator of `N` lies in each of the three local modules.
pub fn verify_intersection_contains_n() -> Result<ContainmentReport, AppendixError> {
    let n = module_n();
    let ms: Vec<MonomialScaledModule> = (1..=3).map(module_m).collect::<Result<_, _>>()?;
    let mut certificates = Vec::new();
    for j in 0..9 {
        let x = n.generator(j);
        for m in &ms {
            let membership = membership(&x, m)?;
            if !membership.member {
                return Err(AppendixError::MembershipFailed {
                    generator: j,
                    module: m.name().to_string(),
                    certificate: membership.coefficients.join(", "),
                });
            }
            certificates.push(ContainmentCertificate { generator: j, membership });
        }
    }
    let total = certificates.len();
    Ok(ContainmentReport {
        passed: total,
        total,
        certificates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub determinant: String,
    pub monomial_product: String,
    pub constant_determinant: String,
    /// `det = ∏ m_j · det(w_1 … w_9)`.
    pub factorization_matches: bool,
    /// Rank of each 9×8 submatrix obtained by dropping one generator.
    pub drop_one_ranks: Vec<usize>,
    /// Determinant after replacing the last generator by the first.
    pub duplicate_control_determinant: String,
    pub passed: bool,
}

fn generator_matrix(module: &MonomialScaledModule, columns: &[usize]) -> PolyMatrix {
    let gens = module.generators();
    (0..9)
        .map(|i| columns.iter().map(|&j| gens[j].coords[i].clone()).collect())
        .collect()
}

pub fn verify_n_free_rank9() -> Result<FreenessReport, AppendixError> {
    let n = module_n();
    let all: Vec<usize> = (0..9).collect();
    let det = determinant(&generator_matrix(&n, &all))?;
    let product = (0..9).fold(LaurentPolynomial::one(n.monomial(0).table()), |acc, j| &acc * &n.monomial(j));
    let columns = QMatrix::from_rows(n.forms().iter().map(|w| w.to_vec()).collect(), 9)?.transpose();
    let cdet = columns.determinant()?;
    let factorization_matches = det == product.scale(&cdet);
    let mut drop_one_ranks = Vec::new();
    for skip in 0..9 {
        let cols: Vec<usize> = all.iter().copied().filter(|&j| j != skip).collect();
        drop_one_ranks.push(rank(&generator_matrix(&n, &cols))?);
    }
    let mut dup = all.clone();
    dup[8] = 0;
    let dup_det = determinant(&generator_matrix(&n, &dup))?;
    let passed = !det.is_zero() && factorization_matches && drop_one_ranks.iter().all(|&r| r == 8) && dup_det.is_zero();
    Ok(FreenessReport {
        determinant: det.to_string(),
        monomial_product: product.to_string(),
        constant_determinant: cdet.to_string(),
        factorization_matches,
        drop_one_ranks,
        duplicate_control_determinant: dup_det.to_string(),
        passed,
    })
}

/// Degree-`m` component of a monomial-scaled module: the span of the `w_j`
/// whose monomial divides `m` in the ring, i.e. `m_j ≤ m` in every
/// non-inverted variable.
pub fn graded_component(module: &MonomialScaledModule, m: [i32; 3]) -> Subspace {
    let inv = module.invertible();
    let vectors: Vec<Vec<BigRational>> = module
        .monomials()
        .iter()
        .zip(module.forms())
        .filter(|(mj, _)| (0..3).all(|k| inv[k] || mj[k] <= m[k]))
        .map(|(_, w)| w.to_vec())
        .collect();
    Subspace::span(9, &vectors)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedMismatch {
    pub exponent: [i32; 3],
    pub intersection_basis: Vec<Vec<String>>,
    pub n_basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedReport {
    pub window: i32,
    pub checked: usize,
    pub mismatches: Vec<GradedMismatch>,
    /// Components agree one step beyond the window in each direction.
    pub saturated: bool,
    /// `W_m ⊆ W_{mr} ∩ W_{ms} ∩ W_{mt}` for the intersection.
    pub monotone: bool,
    /// Components with a negative exponent vanish for both sides.
    pub negative_layer_zero: bool,
    /// Dimension of each intersection component, keyed by `r^a*s^b*t^c`.
    pub dimensions: std::collections::BTreeMap<String, usize>,
    pub passed: bool,
}

struct Graded {
    ms: Vec<MonomialScaledModule>,
    n: MonomialScaledModule,
}

impl Graded {
    fn intersection(&self, m: [i32; 3]) -> Subspace {
        let parts: Vec<Subspace> = self.ms.iter().map(|x| graded_component(x, m)).collect();
        Subspace::intersect_all(9, &parts)
    }

    fn n(&self, m: [i32; 3]) -> Subspace {
        graded_component(&self.n, m)
    }
}

fn basis_strings(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn step(m: [i32; 3], k: usize, by: i32) -> [i32; 3] {
    let mut out = m;
    out[k] += by;
    out
}

/// Compares the graded components of `M1 ∩ M2 ∩ M3` and `N` for every
/// exponent in `0..=window` per variable.
pub fn verify_intersection_equals_n(window: i32) -> Result<GradedReport, AppendixError> {
    if window < 4 {
        return Err(AppendixError::WindowTooSmall(window));
    }
    let g = Graded {
        ms: (1..=3).map(module_m).collect::<Result<_, _>>()?,
        n: module_n(),
    };
    let mut mismatches = Vec::new();
    let mut checked = 0;
    let mut saturated = true;
    let mut monotone = true;
    let mut dimensions = std::collections::BTreeMap::new();
    for a in 0..=window {
        for b in 0..=window {
            for c in 0..=window {
                let m = [a, b, c];
                let wi = g.intersection(m);
                let wn = g.n(m);
                checked += 1;
                dimensions.insert(format!("r^{a}*s^{b}*t^{c}"), wi.dim());
                if wi != wn {
                    mismatches.push(GradedMismatch {
                        exponent: m,
                        intersection_basis: basis_strings(&wi),
                        n_basis: basis_strings(&wn),
                    });
                }
                for k in 0..3 {
                    let up = step(m, k, 1);
                    let wu = g.intersection(up);
                    if !wi.is_subspace_of(&wu) {
                        monotone = false;
                    }
                    if m[k] == window && (wu != wi || g.n(up) != wn) {
                        saturated = false;
                    }
                }
            }
        }
    }
    let mut negative_layer_zero = true;
    for k in 0..3 {
        for a in 0..=window {
            for b in 0..=window {
                let mut m = [window; 3];
                m[k] = -1;
                m[(k + 1) % 3] = a;
                m[(k + 2) % 3] = b;
                if g.intersection(m).dim() != 0 || g.n(m).dim() != 0 {
                    negative_layer_zero = false;
                }
            }
        }
    }
    let passed = mismatches.is_empty() && saturated && monotone && negative_layer_zero;
    Ok(GradedReport {
        window,
        checked,
        mismatches,
        saturated,
        monotone,
        negative_layer_zero,
        dimensions,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::super::biform::parse_constant_form;
    use super::*;

    #[test]
    fn containment() {
        let rep = verify_intersection_contains_n().unwrap();
        assert_eq!(rep.total, 27);
        assert_eq!(rep.passed, 27);
        let x2_m3 = &rep.certificates[2 * 3 + 2].membership;
        assert_eq!(x2_m3.coefficients[2], "s^2*t^2");
    }

    #[test]
    fn freeness() {
        let rep = verify_n_free_rank9().unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.monomial_product, "r^13*s^12*t^12");
        assert_eq!(rep.duplicate_control_determinant, "0");
    }

    #[test]
    fn graded_examples() {
        let g = Graded {
            ms: (1..=3).map(|i| module_m(i).unwrap()).collect(),
            n: module_n(),
        };
        assert_eq!(g.intersection([0, 0, 0]).dim(), 0);
        assert_eq!(g.n([0, 0, 0]).dim(), 0);
        let line = parse_constant_form("u*v*u'*v'").unwrap().to_vec();
        assert!(g.intersection([2, 2, 0]).contains(&line));
        assert!(g.n([2, 2, 0]).contains(&line));
        assert_eq!(g.intersection([5, 5, 5]).dim(), 9);
        assert_eq!(g.n([5, 5, 5]).dim(), 9);
    }

    #[test]
    fn graded_equality() {
        let rep = verify_intersection_equals_n(4).unwrap();
        assert_eq!(rep.checked, 125);
        assert!(rep.passed, "{:?}", rep.mismatches);
        assert!(matches!(verify_intersection_equals_n(3), Err(AppendixError::WindowTooSmall(3))));
    }
}
