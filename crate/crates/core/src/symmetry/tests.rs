use super::*;
use crate::mobius::{group_closure, standard_generators};

fn map(p: &[i64], q: &[i64]) -> RationalMap {
    make_map(&Poly::from_ints(p), &Poly::from_ints(q)).unwrap()
}

#[test]
fn cyclic_admissibility_examples() {
    assert!(cyclic_admissible(7, 5).is_empty());
    assert_eq!(cyclic_admissible(2, 3), vec![(CyclicCase::C, 1)]);
    assert_eq!(cyclic_admissible(3, 2), vec![(CyclicCase::A, 1), (CyclicCase::C, 2)]);
    assert_eq!(cyclic_admissible(4, 2), vec![(CyclicCase::B, 2)]);
}

#[test]
fn dihedral_and_platonic_admissibility_examples() {
    assert!(dihedral_admissible(9, 3).is_empty());
    assert_eq!(dihedral_admissible(7, 3), vec![(DihedralCase::I, 2)]);
    assert_eq!(dihedral_admissible(2, 3), vec![(DihedralCase::II, 1)]);
    assert!(platonic_admissible(11, GroupSpec::A5));
    assert!(platonic_admissible(7, GroupSpec::S4));
    assert!(!platonic_admissible(4, GroupSpec::A4));
}

#[test]
fn orders_bounded_by_degree_plus_one() {
    for d in 2..=40 {
        for n in 2..=100u32 {
            if !cyclic_admissible(d, n).is_empty() {
                assert!(n as usize <= d + 1, "d={d} n={n}");
            }
        }
    }
}

#[test]
fn build_cyclic_examples() {
    let f = CyclicFamily::from_ints(3, 1, CyclicCase::A, &[2, 1], &[1, 0]).unwrap();
    let m = build_cyclic(&f).unwrap();
    assert_eq!(m, map(&[0, 2, 0, 0, 1], &[1]));
    assert_eq!(m.degree(), 4);
    let f = CyclicFamily::from_ints(3, 1, CyclicCase::C, &[1, 0], &[0, 1]).unwrap();
    assert_eq!(build_cyclic(&f).unwrap(), map(&[1], &[0, 0, 1]));
    let f = CyclicFamily::from_ints(2, 1, CyclicCase::B, &[1, 1], &[0, 1]).unwrap();
    let m = build_cyclic(&f).unwrap();
    assert_eq!(m, map(&[1, 0, 1], &[0, 1]));
    assert_eq!(m.degree(), 2);
}

#[test]
fn invalid_families_are_rejected() {
    // case A with b_0 = 0
    assert!(matches!(
        CyclicFamily::from_ints(3, 1, CyclicCase::A, &[2, 1], &[0, 1]),
        Err(SymmetryError::CoefficientConditionViolated(_))
    ));
    // common factor u + 1
    assert!(CyclicFamily::from_ints(2, 2, CyclicCase::A, &[1, 2, 1], &[1, 1, 0]).is_err());
    // case C with a_0 = 0 as well: u divides both, so coprimality already forces a_0 ≠ 0
    assert!(CyclicFamily::from_ints(3, 2, CyclicCase::C, &[0, 1, 0], &[0, 1, 1]).is_err());
    assert!(CyclicFamily::from_ints(3, 2, CyclicCase::C, &[1, 2, 0], &[0, 1, 1]).is_ok());
}

#[test]
fn build_dihedral_examples() {
    let f = DihedralFamily::from_ints(2, 1, 1, DihedralCase::I, &[2, 1]).unwrap();
    let m = build_dihedral(&f).unwrap();
    assert_eq!(m, map(&[0, 2, 0, 1], &[1, 0, 2]));
    let one = ProjPoint::finite(FieldElement::from_int(1));
    let minus = ProjPoint::finite(FieldElement::from_int(-1));
    assert_eq!(m.eval_proj(&one).unwrap(), one);
    assert_eq!(m.eval_proj(&minus).unwrap(), minus);

    let f = DihedralFamily::from_ints(3, 1, 1, DihedralCase::II, &[1, 0]).unwrap();
    assert_eq!(build_dihedral(&f).unwrap(), map(&[1], &[0, 0, 1]));

    let f = DihedralFamily::from_ints(2, 1, -1, DihedralCase::I, &[2, 1]).unwrap();
    assert_eq!(build_dihedral(&f).unwrap().eval_proj(&one).unwrap(), minus);
}

#[test]
fn remark_table_for_even_n() {
    use PairAction::*;
    let cases = [
        (DihedralCase::I, 1, vec![2, 1], (Fixes, Fixes)),
        (DihedralCase::I, -1, vec![2, 1], (Fixes, Permutes)),
        (DihedralCase::II, 1, vec![1, 0], (Permutes, Fixes)),
        (DihedralCase::II, -1, vec![1, 0], (Permutes, Permutes)),
        (DihedralCase::II, -1, vec![1, 3, 0], (Permutes, Permutes)),
    ];
    for (case, sign, a, (rot, inv)) in cases {
        let r = a.len() - 1;
        let fam = DihedralFamily::from_ints(2, r, sign, case, &a).unwrap();
        let b = check_remark_behavior(&fam).unwrap();
        assert_eq!((b.rotation_fixed_points, b.involution_fixed_points), (rot, inv), "{case} {sign}");
    }
    // n odd, r even behaves as in the table too
    let fam = DihedralFamily::from_ints(3, 2, -1, DihedralCase::I, &[1, 5, 2]).unwrap();
    assert!(check_remark_behavior(&fam).is_ok());
}

#[test]
fn remark_table_fails_for_odd_n_and_odd_r() {
    // 1/z²: φ(−1) = 1, so {±1} is neither fixed nor swapped
    let fam = DihedralFamily::from_ints(3, 1, 1, DihedralCase::II, &[1, 0]).unwrap();
    assert!(matches!(check_remark_behavior(&fam), Err(SymmetryError::BehaviorMismatch(_))));
}

#[test]
fn lemma_witness_examples() {
    let w = lemma_witness(3, 4).unwrap();
    assert_eq!(w.map, map(&[0, 2, 0, 0, 1], &[1, 0, 0, 2]));
    let mut orders: Vec<u32> = w.verified_autos.iter().map(|a| a.order).collect();
    orders.sort();
    assert_eq!(orders, vec![2, 3]);

    let w = lemma_witness(3, 2).unwrap();
    assert_eq!(w.map, map(&[1], &[0, 0, 1]));
    assert_eq!(w.group_claim, GroupSpec::Dihedral(3));

    let w = lemma_witness(5, 10).unwrap();
    assert_eq!(w.family, CyclicFamily::from_ints(5, 2, CyclicCase::B, &[1, 0, 1], &[0, 0, 1]).unwrap());
    assert!(w.map.is_automorphism(&MobiusMap::from_ints(-1, 0, 0, 1).unwrap()));
    assert_eq!(w.group_claim, GroupSpec::Cyclic(10));
}

#[test]
fn tetrahedral_witness_for_odd_multiples_of_three() {
    for d in [3, 9] {
        let w = lemma_witness(3, d).unwrap();
        assert_eq!(w.group_claim, GroupSpec::A4);
        assert_eq!(w.map.degree(), d);
        w.verify().unwrap();
    }
}

#[test]
fn no_witness_for_odd_multiples_of_larger_primes() {
    assert!(matches!(lemma_witness(5, 5), Err(SymmetryError::NoWitness(_))));
    assert!(matches!(lemma_witness(5, 7), Err(SymmetryError::NotAdmissible { .. })));
}

#[test]
fn tampered_witness_fails_verification() {
    let mut w = lemma_witness(3, 4).unwrap();
    w.verified_autos[1].order = 4;
    assert!(w.verify().is_err());
}

#[test]
fn normalizer_search_examples() {
    let inv_sq = map(&[1], &[0, 0, 1]);
    let autos = aut_in_normalizer(&inv_sq, 3);
    assert_eq!(autos.len(), 6);
    assert_eq!(group_closure(&autos, 200).unwrap().len(), 6);

    let m = map(&[0, 2, 0, 0, 1], &[1]);
    let autos = aut_in_normalizer(&m, 3);
    assert_eq!(autos.len(), 3);
    assert!(autos.iter().all(|t| t.b().is_zero() && t.c().is_zero()));

    let cube = map(&[0, 0, 0, 1], &[1]);
    let autos = aut_in_normalizer(&cube, 2);
    assert_eq!(autos.len(), 4);
}

#[test]
fn recognize_round_trip_and_case_iii() {
    let f = CyclicFamily::from_ints(3, 2, CyclicCase::B, &[1, 2, 3], &[0, 1, 1]).unwrap();
    let rec = recognize_cyclic(&f.build().unwrap(), 3).unwrap();
    assert!(!rec.inverted);
    assert_eq!(rec.family.build().unwrap(), f.build().unwrap());

    // d = nr with a_r = 0, b_0 ≠ 0: φ = z(1 + 2z³)/(1 + z³ + z⁶)
    let m = map(&[0, 1, 0, 0, 2], &[1, 0, 0, 1, 0, 0, 1]);
    let rec = recognize_cyclic(&m, 3).unwrap();
    assert!(rec.inverted);
    assert_eq!(rec.family.case(), CyclicCase::B);
    assert_eq!(rec.family.build().unwrap(), m.conjugate(&MobiusMap::inversion()));
}

#[test]
fn dihedral_closure_orders() {
    for n in 2..=12 {
        let g = group_closure(&standard_generators(GroupSpec::Dihedral(n)), 200).unwrap();
        assert_eq!(g.len(), 2 * n as usize);
    }
}

#[test]
fn sampling_is_deterministic() {
    use rand::SeedableRng;
    let mut r1 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut r2 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let f1 = CyclicFamily::sample(3, 2, CyclicCase::C, &Field::Rational, &mut r1);
    let f2 = CyclicFamily::sample(3, 2, CyclicCase::C, &Field::Rational, &mut r2);
    assert_eq!(f1, f2);
    assert_eq!(f1.build().unwrap().degree(), 5);
}
