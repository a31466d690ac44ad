use branchlocus::field::{Field, FieldElement};
use branchlocus::mobius::MobiusMap;
use branchlocus::moduli::{act_scale, milnor_coordinates};
use branchlocus::poly::{determinant, poly_gcd, resultant, sturm_roots_in_interval, sylvester_matrix, Poly};
use branchlocus::ratmap::{make_map, RationalMap};
use branchlocus::symmetry::{commutes_with_rotation, CyclicCase, CyclicFamily};
use num_rational::BigRational;
use proptest::prelude::*;

fn cyclo(n: u32, coeffs: &[i64]) -> FieldElement {
    let f = Field::cyclotomic(n);
    let z = f.root_of_unity(n, 1).unwrap();
    let mut acc = f.zero();
    let mut pw = f.one();
    for &c in coeffs {
        acc = &acc + &(&pw * &FieldElement::from_int(c));
        pw = &pw * &z;
    }
    acc
}

fn element(n: u32) -> impl Strategy<Value = FieldElement> {
    prop::collection::vec(-6i64..=6, 4).prop_map(move |v| cyclo(n, &v))
}

fn int_poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1)
}

fn int_map() -> impl Strategy<Value = RationalMap> {
    (int_poly(3), int_poly(3)).prop_filter_map("degenerate", |(p, q)| {
        make_map(&Poly::from_ints(&p), &Poly::from_ints(&q)).ok().filter(|m| m.degree() >= 2)
    })
}

fn mobius() -> impl Strategy<Value = MobiusMap> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4).prop_filter_map("singular", |(a, b, c, d)| MobiusMap::from_ints(a, b, c, d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cyclotomic_ring_laws(a in element(12), b in element(12), c in element(12)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn inverse_and_conjugation(n in prop::sample::select(vec![3u32, 5, 7, 12]), v in prop::collection::vec(-6i64..=6, 4)) {
        let a = cyclo(n, &v);
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
        let c = a.complex_conjugate().unwrap();
        prop_assert_eq!(c.complex_conjugate().unwrap(), a.clone());
        prop_assert!((&a * &c).is_real());
    }

    #[test]
    fn conjugation_is_multiplicative(a in element(7), b in element(7)) {
        let lhs = (&a * &b).complex_conjugate().unwrap();
        let rhs = &a.complex_conjugate().unwrap() * &b.complex_conjugate().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_agrees_with_sylvester(f in int_poly(4), g in int_poly(4), extra in 0usize..2) {
        let (f, g) = (Poly::from_ints(&f), Poly::from_ints(&g));
        let m = f.degree().unwrap_or(0) + extra;
        let n = g.degree().unwrap_or(0);
        prop_assert_eq!(resultant(&f, &g, m, n), determinant(sylvester_matrix(&f, &g, m, n)));
    }

    #[test]
    fn gcd_divides_and_resultant_detects_it(f in int_poly(3), g in int_poly(3), h in int_poly(2)) {
        let (f, g, h) = (Poly::from_ints(&f), Poly::from_ints(&g), Poly::from_ints(&h));
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let (fh, gh) = (f.mul(&h), g.mul(&h));
        let d = poly_gcd(&fh, &gh).unwrap();
        prop_assert!(fh.rem(&d).unwrap().is_zero() && gh.rem(&d).unwrap().is_zero());
        if h.degree().unwrap() > 0 {
            let (m, n) = (fh.degree().unwrap(), gh.degree().unwrap());
            prop_assert!(resultant(&fh, &gh, m, n).is_zero());
        }
    }

    #[test]
    fn sturm_counts_planted_roots(roots in prop::collection::btree_set(-20i64..=20, 1..5)) {
        let mut p = Poly::from_ints(&[1]);
        for &r in &roots {
            p = p.mul(&Poly::from_ints(&[-r, 2]));
        }
        let q = |x: i64| BigRational::from_integer(x.into());
        let inside = roots.iter().filter(|&&r| r > -6 && r <= 10).count();
        prop_assert_eq!(sturm_roots_in_interval(&p, &q(-3), &q(5)), inside);
    }

    #[test]
    fn conjugation_round_trip(m in int_map(), t in mobius()) {
        prop_assert_eq!(m.conjugate(&t).conjugate(&t.inverse()), m.clone());
        let s = MobiusMap::from_ints(1, 1, 0, 1).unwrap();
        let lhs = m.conjugate(&t).conjugate(&s);
        prop_assert_eq!(lhs, m.conjugate(&s.compose(&t)));
    }

    #[test]
    fn compose_matches_pointwise(m in int_map(), k in int_map(), z in -7i64..=7) {
        let c = m.compose(&k);
        let x = FieldElement::from_int(z);
        let direct = k.eval(&x).unwrap();
        let via = m.eval_proj(&direct).unwrap();
        prop_assert_eq!(c.eval(&x).unwrap(), via);
        prop_assert!(c.degree() == m.degree() * k.degree());
    }

    #[test]
    fn families_commute_with_rotation(n in 2u32..=5, r in 1usize..=3, seed in any::<u64>(), l in 1i64..=4) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for case in [CyclicCase::A, CyclicCase::B, CyclicCase::C] {
            if case.degree(n, r) < 2 {
                continue;
            }
            let f = CyclicFamily::sample(n, r, case, &Field::Rational, &mut rng);
            let map = f.build().unwrap();
            prop_assert!(commutes_with_rotation(&map, n));
            let lam = FieldElement::from_int(l);
            prop_assert_eq!(act_scale(&f, &lam).unwrap().build().unwrap(), map.conjugate(&MobiusMap::scaling(lam)));
        }
    }

    #[test]
    fn milnor_is_conjugation_invariant(p in int_poly(2), q in int_poly(2), t in mobius()) {
        let Ok(m) = make_map(&Poly::from_ints(&p), &Poly::from_ints(&q)) else { return Ok(()) };
        prop_assume!(m.degree() == 2);
        prop_assert_eq!(milnor_coordinates(&m.conjugate(&t)).unwrap(), milnor_coordinates(&m).unwrap());
    }
}
