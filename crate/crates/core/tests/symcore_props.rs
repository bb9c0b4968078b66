use givental_core::symcore::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn vars() -> VarSet {
    VarSet::triangle(3).unwrap()
}

fn scalar(a: i64, b: i64, c: i64) -> ParamScalar {
    let mu = ParamScalar::param(Param::Mu(1)).scale(&GaussRat::int(b));
    let ih = ParamScalar::param_pow(Param::Hbar, -1).scale(&GaussRat::new(Rat::zero(), Rat::from_int(c)));
    &(&ParamScalar::int(a) + &mu) + &ih
}

prop_compose! {
    fn expoly()(terms in prop::collection::vec((prop::collection::vec(-2i32..=2, 3), -3i64..=3, -2i64..=2, -1i64..=1), 0..4)) -> ExpPolynomial {
        let mut f = ExpPolynomial::zero(vars());
        for (e, a, b, c) in terms {
            f = &f + &ExpPolynomial::monomial(vars(), ExpVec::from_vec(e), scalar(a, b, c));
        }
        f
    }
}

prop_compose! {
    fn first_order()(fs in prop::collection::vec(expoly(), 4)) -> DifferentialOperator {
        let mut d = DifferentialOperator::multiplication(fs[0].clone());
        for (v, f) in fs[1..].iter().enumerate() {
            d = &d + &DifferentialOperator::partial_at(vars(), v).left_mul(f).unwrap();
        }
        d
    }
}

prop_compose! {
    fn ansatz()(lin in prop::collection::vec(-3i64..=3, 3), e in expoly()) -> WhittakerAnsatz {
        WhittakerAnsatz::new(lin.into_iter().map(|c| scalar(c, 1, 0)).collect(), e).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in expoly(), b in expoly(), c in expoly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &ExpPolynomial::one(vars()), a.clone());
    }

    #[test]
    fn jacobi_identity(d1 in first_order(), d2 in first_order(), d3 in first_order()) {
        let j = &(&d1.commutator(&d2).unwrap().commutator(&d3).unwrap()
            + &d2.commutator(&d3).unwrap().commutator(&d1).unwrap())
            + &d3.commutator(&d1).unwrap().commutator(&d2).unwrap();
        prop_assert!(j.is_zero(), "{}", j);
    }

    #[test]
    fn commutator_matches_composition(d1 in first_order(), d2 in first_order()) {
        let slow = &d1.compose(&d2).unwrap() - &d2.compose(&d1).unwrap();
        prop_assert_eq!(d1.commutator(&d2).unwrap(), slow);
    }

    #[test]
    fn transpose_reverses_products(d1 in first_order(), d2 in first_order()) {
        let prod = d1.compose(&d2).unwrap();
        prop_assert_eq!(prod.transpose(), d2.transpose().compose(&d1.transpose()).unwrap());
        prop_assert_eq!(prod.transpose().transpose(), prod);
    }

    #[test]
    fn conjugation_agrees_with_action(
        d in first_order(),
        psi in ansatz(),
        shift in -2i64..=2,
        phi in expoly(),
    ) {
        let s = Substitution::shifts(vars(), &[(Var::T(2, 1), vec![(Var::T(1, 1), shift)])]).unwrap();
        let m = CompositeMap::new(vars(), vec![
            PrimitiveMap::Substitute(s),
            PrimitiveMap::Multiply(WhittakerAnsatz::exp(phi)),
        ]).unwrap();
        // (M^{-1} D M) psi = M^{-1} (D (M psi))
        let image = m.apply(&psi).unwrap();
        let pre = image.apply(&d).unwrap();
        let (back_pre, back) = m.inverse().apply_dressed(&pre, &image).unwrap();
        prop_assert_eq!(back, psi.clone());
        prop_assert_eq!(back_pre, psi.apply(&m.conjugate(&d).unwrap()).unwrap());
        // conjugating back is the identity
        prop_assert_eq!(m.inverse().conjugate(&m.conjugate(&d).unwrap()).unwrap(), d);
    }

    #[test]
    fn evaluation_is_multiplicative(a in expoly(), b in expoly(), p in prop::collection::vec(-1.0f64..1.0, 3)) {
        let params = ParamValues::new()
            .with(Param::Mu(1), Complex64::new(-0.5, -2.0))
            .with(Param::Hbar, Complex64::new(0.8, 0.0));
        let lhs = (&a * &b).evaluate(&p, &params).unwrap();
        let rhs = a.evaluate(&p, &params).unwrap() * b.evaluate(&p, &params).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn param_conjugate_is_involution(d in first_order(), rank in 2usize..=5) {
        prop_assert_eq!(d.param_conjugate(rank).param_conjugate(rank), d);
    }
}

#[test]
fn canonical_text_is_stable() {
    let v = VarSet::chain(2, 0);
    let f = &ExpPolynomial::exp_of(v, &[(Var::X(1), 1), (Var::X(2), -1)], ParamScalar::one()).unwrap()
        + &ExpPolynomial::constant(v, ParamScalar::ratio(1, 2));
    let d = DifferentialOperator::partial(v, Var::X(1)).unwrap().left_mul(&f).unwrap();
    assert_eq!(f.to_string(), GOLDEN_F);
    assert_eq!(d.to_string(), GOLDEN_D);
    // same value, different construction order
    let g = &ExpPolynomial::constant(v, ParamScalar::ratio(1, 2))
        + &ExpPolynomial::exp_of(v, &[(Var::X(2), -1), (Var::X(1), 1)], ParamScalar::one()).unwrap();
    assert_eq!(g.to_string(), GOLDEN_F);
}

const GOLDEN_F: &str = "(1/2) + (1)*e^(x1-x2)";
const GOLDEN_D: &str = "[(1/2) + (1)*e^(x1-x2)]*D(x1)";
