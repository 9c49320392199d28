use num_traits::Zero;
use proptest::prelude::*;

use cayley_cr::cr::{dirac_matrix, jacobian, reshuffle, residual_form_j, Form, Variant};
use cayley_cr::expr::{evaluate, lower, parse, Expr};
use cayley_cr::{structure_tensor, Element, Rational};

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn dim() -> impl Strategy<Value = usize> {
    prop_oneof![Just(1usize), Just(2), Just(4), Just(8)]
}

fn element_coeffs(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small_rational(), n)
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Variable),
        (0usize..8).prop_map(Expr::BasisConst),
        small_rational()
            .prop_filter("nonnegative literal", |r| *r >= rat(0))
            .prop_map(Expr::ScalarConst),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Conjugate(Box::new(e))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Product(Box::new(a), Box::new(b))),
            (inner.clone(), 1u32..=3).prop_map(|(a, k)| Expr::Power(Box::new(a), k)),
            (inner.clone(), 0usize..8).prop_map(|(a, i)| Expr::CoordProj(Box::new(a), i)),
            proptest::collection::vec((any::<bool>(), inner), 1..3).prop_map(Expr::Sum),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn norm_is_multiplicative((n, a, b) in dim().prop_flat_map(|n| (Just(n), element_coeffs(n), element_coeffs(n)))) {
        let alg = structure_tensor(n).unwrap();
        let x = Element::new(&alg, a).unwrap();
        let y = Element::new(&alg, b).unwrap();
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(xy.inner(&xy).unwrap(), x.inner(&x).unwrap() * y.inner(&y).unwrap());
    }

    #[test]
    fn conjugation_is_an_anti_involution((n, a, b) in dim().prop_flat_map(|n| (Just(n), element_coeffs(n), element_coeffs(n)))) {
        let alg = structure_tensor(n).unwrap();
        let x = Element::new(&alg, a).unwrap();
        let y = Element::new(&alg, b).unwrap();
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        prop_assert_eq!(x.multiply(&y).unwrap().conjugate(), y.conjugate().multiply(&x.conjugate()).unwrap());
        let n_x = x.multiply(&x.conjugate()).unwrap();
        prop_assert!(n_x.coeffs()[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn octonions_are_alternative(a in element_coeffs(8), b in element_coeffs(8)) {
        let alg = structure_tensor(8).unwrap();
        let x = Element::new(&alg, a).unwrap();
        let y = Element::new(&alg, b).unwrap();
        let xx = x.multiply(&x).unwrap();
        prop_assert_eq!(xx.multiply(&y).unwrap(), x.multiply(&x.multiply(&y).unwrap()).unwrap());
        prop_assert_eq!(y.multiply(&xx).unwrap(), y.multiply(&x).unwrap().multiply(&x).unwrap());
    }

    #[test]
    fn printing_reparses(e in expr_strategy()) {
        let alg = structure_tensor(8).unwrap();
        let once = parse(&e.to_string()).unwrap();
        prop_assert_eq!(lower(&once, &alg).unwrap(), lower(&e, &alg).unwrap());
        let text = once.to_string();
        prop_assert_eq!(parse(&text).unwrap().to_string(), text);
    }

    #[test]
    fn lowering_commutes_with_evaluation(e in expr_strategy(), p in element_coeffs(8)) {
        let alg = structure_tensor(8).unwrap();
        let u = lower(&e, &alg).unwrap();
        let x = Element::new(&alg, p).unwrap();
        prop_assert_eq!(u.eval_at(&x).unwrap(), evaluate(&e, &x).unwrap());
    }

    #[test]
    fn block_forms_match_real_form(e in expr_strategy(), p in element_coeffs(8)) {
        let alg = structure_tensor(8).unwrap();
        let u = lower(&e, &alg).unwrap();
        let x = Element::new(&alg, p).unwrap();
        let j = jacobian(&u, &x).unwrap();
        let real = residual_form_j(&Form::Real(Variant::Analytic), &alg, &j).unwrap();
        for form in [Form::Quaternionic(Variant::Analytic), Form::Complex(Variant::Analytic), Form::Vector, Form::Kappa(rat(2))] {
            let m = reshuffle(&form, &alg, Variant::Analytic).unwrap();
            let got = residual_form_j(&form, &alg, &j).unwrap();
            prop_assert_eq!(got, m.apply(&real), "{}", form);
        }
    }

    #[test]
    fn dirac_apply_matches_jacobian(e in expr_strategy(), p in element_coeffs(8)) {
        let alg = structure_tensor(8).unwrap();
        let u = lower(&e, &alg).unwrap();
        let x = Element::new(&alg, p.clone()).unwrap();
        for v in [Variant::Analytic, Variant::Antianalytic] {
            let sym = dirac_matrix(8, v).unwrap().apply(&u).unwrap().eval(&p).unwrap();
            let pointwise = residual_form_j(&Form::Real(v), &alg, &jacobian(&u, &x).unwrap()).unwrap();
            prop_assert_eq!(sym, pointwise);
        }
    }
}
