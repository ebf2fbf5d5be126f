use proptest::prelude::*;
use qbundle_core::algebra::{BigRational, LaurentPolynomial};
use qbundle_core::appendix::{coefficients, membership, module_m, module_n, BiformVector};

/// A coefficient in the module's ring: monomials with exponents allowed to go
/// negative only on inverted variables.
fn coeffs(invertible: [bool; 3]) -> impl Strategy<Value = Vec<Vec<([i32; 3], i64)>>> {
    let lo = invertible.map(|inv| if inv { -2 } else { 0 });
    let term = ((lo[0]..=2, lo[1]..=2, lo[2]..=2), -4i64..=4).prop_map(|((a, b, c), k)| ([a, b, c], k));
    prop::collection::vec(prop::collection::vec(term, 0..3), 9)
}

fn build(module: &qbundle_core::appendix::MonomialScaledModule, cs: &[Vec<([i32; 3], i64)>]) -> (BiformVector, Vec<LaurentPolynomial>) {
    let table = module.monomial(0).table().clone();
    let mut x = BiformVector::zero();
    let mut polys = Vec::new();
    for (j, terms) in cs.iter().enumerate() {
        let c = LaurentPolynomial::from_terms(
            &table,
            terms.iter().map(|(e, k)| (e.to_vec(), BigRational::from_integer((*k).into()))).collect::<Vec<_>>(),
        )
        .unwrap();
        x = x.add(&module.generator(j).scale_by(&c));
        polys.push(c);
    }
    (x, polys)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_back_substitute((i, cs) in (1usize..=3).prop_flat_map(|i| {
        let inv = module_m(i).unwrap().invertible();
        (Just(i), coeffs(inv))
    })) {
        let m = module_m(i).unwrap();
        let (x, polys) = build(&m, &cs);
        prop_assert!(membership(&x, &m).unwrap().member);
        prop_assert_eq!(coefficients(&x, &m).unwrap(), polys);
    }

    #[test]
    fn n_combinations_lie_in_every_local_module(cs in coeffs([false; 3])) {
        let n = module_n();
        let (x, _) = build(&n, &cs);
        for i in 1..=3 {
            prop_assert!(membership(&x, &module_m(i).unwrap()).unwrap().member);
        }
    }
}
