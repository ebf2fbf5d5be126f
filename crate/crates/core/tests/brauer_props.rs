use proptest::prelude::*;
use qbundle_core::algebra::BigRational;
use qbundle_core::brauer::{
    albert_form, forms_similar, hilbert_symbol, oracle::solubility_symbol, relevant_places, res_cor_doubling_check,
    Place, QuaternionClass, RationalQuadraticForm,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (prop_oneof![-40i64..=-1, 1i64..=40], 1i64..=9).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Real),
        Just(Place::Prime(2)),
        Just(Place::Prime(3)),
        Just(Place::Prime(5)),
        Just(Place::Prime(7)),
        Just(Place::Prime(13)),
    ]
}

fn small_int() -> impl Strategy<Value = i64> {
    prop_oneof![-12i64..=-1, 1i64..=12]
}

fn form(dim: usize) -> impl Strategy<Value = RationalQuadraticForm> {
    prop::collection::vec(small_int(), dim).prop_map(|d| RationalQuadraticForm::from_ints(&d).unwrap())
}

proptest! {
    #[test]
    fn symbol_matches_oracle(a in rational(), b in rational(), v in place()) {
        prop_assert_eq!(hilbert_symbol(&a, &b, v).unwrap(), solubility_symbol(&a, &b, v).unwrap());
    }

    #[test]
    fn symmetric_and_square_invariant(a in rational(), b in rational(), c in rational(), v in place()) {
        let h = hilbert_symbol(&a, &b, v).unwrap();
        prop_assert_eq!(h, hilbert_symbol(&b, &a, v).unwrap());
        prop_assert_eq!(h, hilbert_symbol(&(&a * &c * &c), &b, v).unwrap());
    }

    #[test]
    fn bimultiplicative(a in rational(), b in rational(), c in rational(), v in place()) {
        let left = hilbert_symbol(&a, &(&b * &c), v).unwrap();
        let right = hilbert_symbol(&a, &b, v).unwrap() * hilbert_symbol(&a, &c, v).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_formula(a in rational(), b in rational()) {
        let prod: i8 = relevant_places([&a, &b]).into_iter().map(|v| hilbert_symbol(&a, &b, v).unwrap()).product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn splitting_matches_isotropy(a in small_int(), b in small_int()) {
        let split = QuaternionClass::from_ints(a, b).unwrap().is_split().unwrap();
        prop_assert_eq!(split.ramified.len() % 2, 0);
        let f = RationalQuadraticForm::from_ints(&[a, b, -1]).unwrap();
        prop_assert_eq!(split.split, f.is_isotropic().isotropic);
    }

    #[test]
    fn doubling_always_passes(a in small_int(), b in small_int(), d in prop_oneof![Just(-7i64), Just(-1), Just(2), Just(3), Just(5), Just(-15)]) {
        prop_assert!(res_cor_doubling_check(&QuaternionClass::from_ints(a, b).unwrap(), d).unwrap().passed);
    }

    #[test]
    fn albert_of_equal_pair_is_isotropic(a in small_int(), b in small_int()) {
        let q = QuaternionClass::from_ints(a, b).unwrap();
        prop_assert!(albert_form(&q, &q).unwrap().is_isotropic().isotropic);
    }

    #[test]
    fn similarity_is_an_equivalence(f in form(3), g in form(3), h in form(3)) {
        prop_assert!(forms_similar(&f, &f).unwrap().similar);
        let fg = forms_similar(&f, &g).unwrap().similar;
        prop_assert_eq!(fg, forms_similar(&g, &f).unwrap().similar);
        if fg && forms_similar(&g, &h).unwrap().similar {
            prop_assert!(forms_similar(&f, &h).unwrap().similar);
        }
    }

    #[test]
    fn similar_even_forms_share_discriminant(f in form(4), c in small_int()) {
        let g = f.scaled(&BigRational::from_integer(c.into()));
        let s = forms_similar(&f, &g).unwrap();
        prop_assert!(s.similar);
        prop_assert_eq!(f.discriminant(), g.discriminant());
    }
}
