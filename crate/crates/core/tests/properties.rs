use msforms::classify::{orbit_type, structure_extract};
use msforms::sampling::random_unimodular;
use msforms::{representative, KForm, LinMap, MultiIndex, OrbitType, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn form(k: usize) -> impl Strategy<Value = KForm> {
    let n = MultiIndex::all(k).len();
    proptest::collection::vec(-3i64..=3, n).prop_map(move |cs| {
        let mut f = KForm::zero(k);
        for (m, c) in MultiIndex::all(k).into_iter().zip(cs) {
            f.add_term(m, &Scalar::from_int(c));
        }
        f
    })
}

fn vector() -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(-4i64..=4, 6).prop_map(|v| v.into_iter().map(Scalar::from_int).collect())
}

fn unimodular() -> impl Strategy<Value = LinMap> {
    any::<u64>().prop_map(|seed| random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn small_map() -> impl Strategy<Value = LinMap> {
    proptest::collection::vec(-2i64..=2, 36).prop_map(|v| {
        let cols: Vec<Vec<Scalar>> = v.chunks(6).map(|c| c.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        LinMap::from_columns(&cols)
    })
}

fn surd() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9).prop_map(|(a, b, c, d)| {
        let r = |n: i64, m: i64| BigRational::new(BigInt::from(n), BigInt::from(m));
        Scalar::with_surd(r(a, b), r(c, d), BigInt::from(3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pullback_commutes_with_wedge(a in form(2), b in form(3), g in unimodular()) {
        let lhs = a.wedge(&b).unwrap().pullback(&g);
        let rhs = a.pullback(&g).wedge(&b.pullback(&g)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_is_contravariant(a in form(3), g in small_map(), h in small_map()) {
        prop_assert_eq!(a.pullback(&g.compose(&h)), a.pullback(&g).pullback(&h));
        prop_assert_eq!(a.pullback(&LinMap::identity()), a);
    }

    #[test]
    fn contractions_anticommute(a in form(3), v in vector(), w in vector()) {
        let vw = a.interior(&w).unwrap().interior(&v).unwrap();
        let wv = a.interior(&v).unwrap().interior(&w).unwrap();
        prop_assert!(vw.add(&wv).is_zero());
        prop_assert!(a.interior(&v).unwrap().interior(&v).unwrap().is_zero());
    }

    #[test]
    fn contraction_is_antiderivation(a in form(2), b in form(3), v in vector()) {
        let lhs = a.wedge(&b).unwrap().interior(&v).unwrap();
        let rhs = a.interior(&v).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&b.interior(&v).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_of_top_degree_product(alpha in form(1), t in form(5), v in vector()) {
        // ι_v(α∧θ') = α(v)θ' − α∧ι_vθ'
        let alpha_v: Scalar = MultiIndex::all(1)
            .into_iter()
            .map(|m| &alpha.coeff(m) * &v[m.slots().next().unwrap()])
            .sum();
        let lhs = alpha.wedge(&t).unwrap().interior(&v).unwrap();
        let rhs = t.scale(&alpha_v).sub(&alpha.wedge(&t.interior(&v).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_anticommutativity(a in form(1), b in form(3), c in form(2)) {
        prop_assert!(a.wedge(&b).unwrap().add(&b.wedge(&a).unwrap()).is_zero());
        prop_assert_eq!(c.wedge(&b).unwrap(), b.wedge(&c).unwrap());
    }

    #[test]
    fn wedge_is_associative(a in form(1), b in form(2), c in form(2)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn quadratic_field_axioms(x in surd(), y in surd(), z in surd()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert!((&x + &(-&x)).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
        prop_assert_eq!((&x * &y).signum(), x.signum() * y.signum());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn orbit_is_invariant(g in unimodular(), which in 0usize..3) {
        let orbit = [OrbitType::Product, OrbitType::Complex, OrbitType::Tangent][which];
        let w = representative(orbit).unwrap().pullback(&g);
        prop_assert_eq!(orbit_type(&w), orbit);
    }

    #[test]
    fn structure_transports(g in unimodular(), which in 0usize..3) {
        let orbit = [OrbitType::Product, OrbitType::Complex, OrbitType::Tangent][which];
        let rep = representative(orbit).unwrap();
        let base = structure_extract(&rep).unwrap().structure;
        let moved = structure_extract(&rep.pullback(&g)).unwrap().structure;
        let transported = g.inverse().unwrap().compose(&base).compose(&g);
        let ratio = moved.ratio_to(&transported);
        prop_assert!(ratio.is_some());
        let ratio = ratio.unwrap();
        if orbit == OrbitType::Tangent {
            prop_assert!(!ratio.is_zero());
        } else {
            prop_assert!(ratio == Scalar::one() || ratio == Scalar::from_int(-1));
        }
    }
}

#[test]
fn scalar_sum_two_ways_is_exact() {
    let a = Scalar::ratio(1, 3);
    let b = Scalar::ratio(2, 7);
    let direct = &a + &b;
    let cross = Scalar::ratio(7 + 6, 21);
    assert_eq!(direct, cross);
    assert_eq!(direct.to_string(), "13/21");
}
