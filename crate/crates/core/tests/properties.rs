use proptest::prelude::*;

use chazy_core::algebra::{embed_complex, q, qi, Monomial, MpComplex, MultiPoly, Scalar, WeightedDegree};
use chazy_core::algebra::cyclo::DEGREE;
use chazy_core::fields::PolyVectorField;
use chazy_core::{CycloNumber, Rational, Registry};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

/// Sparse elements: up to four nonzero coordinates in the power basis.
fn cyclo() -> impl Strategy<Value = CycloNumber> {
    prop::collection::vec((0..DEGREE, rational()), 0..=4).prop_map(|terms| {
        let mut c = vec![qi(0); DEGREE];
        for (i, r) in terms {
            c[i] = r;
        }
        CycloNumber::from_coeffs(&c)
    })
}

fn nonzero_cyclo() -> impl Strategy<Value = CycloNumber> {
    cyclo().prop_filter("nonzero", |c| !c.is_zero())
}

fn reg() -> Registry {
    Registry::new(&["x", "y", "z"])
}

/// Small polynomials in x, y, z with rational coefficients.
fn poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 3), -4i64..=4), 0..=max_terms).prop_map(|terms| {
        MultiPoly::from_terms(&reg(), terms.into_iter().map(|(e, c)| (Monomial(e), CycloNumber::from_int(c))))
    })
}

fn field() -> impl Strategy<Value = PolyVectorField> {
    (poly(3, 2), poly(3, 2), poly(3, 2)).prop_map(|(a, b, c)| PolyVectorField::new(&reg(), vec![a, b, c]).unwrap())
}

fn close(a: &MpComplex, b: &MpComplex) -> bool {
    a.sub(b).abs_f64() <= 1e-30 * (1.0 + a.abs_f64().max(b.abs_f64()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplication_is_associative(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn inverse_is_two_sided(a in nonzero_cyclo()) {
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert!((&inv * &a).is_one());
    }

    #[test]
    fn ring_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_is_a_homomorphism(a in cyclo(), b in cyclo()) {
        let p = 128;
        let (ea, eb) = (embed_complex(&a, p), embed_complex(&b, p));
        prop_assert!(close(&embed_complex(&(&a + &b), p), &ea.add(&eb)));
        prop_assert!(close(&embed_complex(&(&a * &b), p), &ea.mul(&eb)));
    }

    #[test]
    fn exact_divide_round_trip(a in poly(4, 3), b in poly(3, 2)) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_divide(&b).unwrap(), Ok(a.clone()));
        let (q, r) = (&prod + &MultiPoly::int(&reg(), 1)).divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, &prod + &MultiPoly::int(&reg(), 1));
    }

    #[test]
    fn weighted_degree_is_additive(a in poly(4, 3), b in poly(4, 3)) {
        let w = [1, 2, 3];
        if let (WeightedDegree::Homogeneous(da), WeightedDegree::Homogeneous(db)) = (a.weighted_degree(&w), b.weighted_degree(&w)) {
            prop_assert_eq!((&a * &b).weighted_degree(&w), WeightedDegree::Homogeneous(da + db));
        }
        for (m, _) in a.terms() {
            let single = MultiPoly::monomial(&reg(), &m.0, CycloNumber::one());
            prop_assert_eq!(single.weighted_degree(&w), WeightedDegree::Homogeneous(m.weight(&w)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_identity(x in field(), y in field(), z in field()) {
        let a = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let b = y.bracket(&z.bracket(&x).unwrap()).unwrap();
        let c = z.bracket(&x.bracket(&y).unwrap()).unwrap();
        prop_assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule(v in field(), f in poly(3, 2), g in poly(3, 2)) {
        let lhs = v.lie_derivative(&(&f * &g)).unwrap();
        let rhs = &(&v.lie_derivative(&f).unwrap() * &g) + &(&f * &v.lie_derivative(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_a_commutator_of_derivations(x in field(), y in field(), f in poly(3, 2)) {
        let lhs = x.bracket(&y).unwrap().lie_derivative(&f).unwrap();
        let xy = x.lie_derivative(&y.lie_derivative(&f).unwrap()).unwrap();
        let yx = y.lie_derivative(&x.lie_derivative(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, &xy - &yx);
    }
}
