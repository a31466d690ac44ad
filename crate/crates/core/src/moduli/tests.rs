use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::path::segment_norm;
use super::*;
use crate::field::{Field, Rational};
use crate::mobius::MobiusMap;
use crate::poly::{sturm_roots_in_interval, Poly};
use crate::ratmap::make_map;

fn fam(n: u32, r: usize, case: CyclicCase, a: &[i64], b: &[i64]) -> CyclicFamily {
    CyclicFamily::from_ints(n, r, case, a, b).unwrap()
}

fn map(p: &[i64], q: &[i64]) -> crate::ratmap::RationalMap {
    make_map(&Poly::from_ints(p), &Poly::from_ints(q)).unwrap()
}

#[test]
fn dimension_examples() {
    assert_eq!(dim_cyclic_case(3, 2, CyclicCase::A).unwrap().dimension, 2);
    assert_eq!(dim_cyclic(6, 3).unwrap().dimension, 3);
    assert_eq!(dim_cyclic(5, 3).unwrap().dimension, 2);
    assert_eq!(dim_dihedral(7, 3).unwrap().dimension, 2);
    assert_eq!(dim_dihedral(5, 3).unwrap().dimension, 1);
    assert_eq!(dim_dihedral(2, 3).unwrap().dimension, 0);
    assert!(matches!(dim_cyclic(7, 5), Err(ModuliError::NotAdmissible { .. })));
    assert!(matches!(dim_dihedral(9, 3), Err(ModuliError::NotAdmissible { .. })));
}

#[test]
fn dimension_identities() {
    for d in 2..=30 {
        for n in 2..=(d as u32 + 1) {
            for rep in dim_cyclic_all(d, n).unwrap_or_default() {
                assert_eq!(family_parameters(&rep) - 2, rep.dimension, "{rep:?}");
            }
            for rep in dim_dihedral_all(d, n).unwrap_or_default() {
                assert_eq!(family_parameters(&rep) - 1, rep.dimension, "{rep:?}");
            }
        }
    }
}

#[test]
fn act_scale_examples() {
    let cube = fam(2, 1, CyclicCase::A, &[0, 1], &[1, 0]);
    let scaled = act_scale(&cube, &FieldElement::from_int(2)).unwrap();
    assert_eq!(scaled.build().unwrap(), map(&[0, 0, 0, 1], &[4]));
    assert_eq!(act_scale(&cube, &FieldElement::from_int(1)).unwrap(), cube);

    let f = fam(3, 2, CyclicCase::A, &[1, 2, 3], &[1, 0, 5]);
    let (l, m) = (FieldElement::from_int(2), FieldElement::from_ratio(-1, 3));
    let twice = act_scale(&act_scale(&f, &l).unwrap(), &m).unwrap();
    assert_eq!(twice, act_scale(&f, &(&l * &m)).unwrap());
    let lhs = act_scale(&f, &l).unwrap().build().unwrap();
    assert_eq!(lhs, f.build().unwrap().conjugate(&MobiusMap::scaling(l)));
}

#[test]
fn act_invert_examples() {
    let f = fam(3, 2, CyclicCase::A, &[1, 2, 3], &[1, 0, 5]);
    let inv = act_invert(&f).unwrap();
    assert_eq!(act_invert(&inv).unwrap(), f);
    assert_eq!(inv.build().unwrap(), f.build().unwrap().conjugate(&MobiusMap::inversion()));

    let inv_sq = fam(3, 1, CyclicCase::C, &[1, 0], &[0, 1]);
    assert_eq!(act_invert(&inv_sq).unwrap(), inv_sq);
    let cube = fam(2, 1, CyclicCase::A, &[0, 1], &[1, 0]);
    assert_eq!(act_invert(&cube).unwrap().build().unwrap(), cube.build().unwrap());

    let b = fam(2, 2, CyclicCase::B, &[1, 0, 1], &[0, 3, 1]);
    assert_eq!(act_invert(&b).unwrap(), b);
}

#[test]
fn straight_segment_is_sturm_certified() {
    let f0 = fam(2, 1, CyclicCase::A, &[2, 1], &[1, 0]);
    let f1 = fam(2, 1, CyclicCase::A, &[3, 1], &[1, 0]);
    let cert = build_path(&f0, &f1, &PathOptions::default()).unwrap();
    assert_eq!(cert.segments.len(), 1);
    assert!(matches!(cert.segments[0].proof, SegmentProof::Sturm(_)));
    cert.validate().unwrap();
    let cert = build_path(&f0, &f1, &PathOptions { strategy: Strategy::Interval, ..Default::default() }).unwrap();
    assert!(matches!(cert.segments[0].proof, SegmentProof::Interval(_)));
    cert.validate().unwrap();
}

#[test]
fn equal_endpoints_give_empty_path() {
    let f0 = fam(2, 1, CyclicCase::A, &[2, 1], &[1, 0]);
    let cert = build_path(&f0, &f0, &PathOptions::default()).unwrap();
    assert!(cert.segments.is_empty());
    cert.validate().unwrap();
}

#[test]
fn degenerate_segment_is_rerouted() {
    // the midpoint is (1 + u)/(1 + u)
    let f0 = fam(2, 1, CyclicCase::A, &[1, 3], &[1, 2]);
    let f1 = fam(2, 1, CyclicCase::A, &[1, -1], &[1, 0]);
    let norm = segment_norm(&f0, &f1).unwrap();
    assert!(sturm_roots_in_interval(&norm, &Rational::from_integer(0.into()), &Rational::from_integer(1.into())) >= 1);
    let cert = build_path(&f0, &f1, &PathOptions::default()).unwrap();
    assert_eq!(cert.segments.len(), 2);
    assert!(cert.failed_attempts >= 1);
    assert_eq!(cert.field, Field::cyclotomic(4));
    cert.validate().unwrap();
}

#[test]
fn mismatched_families_are_refused() {
    let f0 = fam(2, 1, CyclicCase::A, &[2, 1], &[1, 0]);
    let f1 = fam(2, 2, CyclicCase::C, &[1, 1, 0], &[0, 0, 1]);
    assert!(matches!(build_path(&f0, &f1, &PathOptions::default()), Err(ModuliError::FamilyMismatch(_))));
}

#[test]
fn tampered_path_fails_validation() {
    let f0 = fam(3, 1, CyclicCase::A, &[2, 1], &[1, 0]);
    let f1 = fam(3, 1, CyclicCase::A, &[5, 1], &[1, 7]);
    let mut cert = build_path(&f0, &f1, &PathOptions::default()).unwrap();
    cert.validate().unwrap();
    cert.segments[0].end[0] = FieldElement::from_int(6);
    assert!(cert.validate().is_err());
}

#[test]
fn path_json_round_trip() {
    let f0 = fam(2, 1, CyclicCase::A, &[1, 3], &[1, 2]);
    let f1 = fam(2, 1, CyclicCase::A, &[1, -1], &[1, 0]);
    let cert = build_path(&f0, &f1, &PathOptions::default()).unwrap();
    let s = serde_json::to_string(&cert).unwrap();
    let back: PathCertificate = serde_json::from_str(&s).unwrap();
    assert_eq!(back, cert);
    back.validate().unwrap();
}

#[test]
fn milnor_examples() {
    let p = milnor_coordinates(&map(&[1], &[0, 0, 1])).unwrap();
    assert_eq!((p.sigma1.clone(), p.sigma2.clone()), (FieldElement::from_int(-6), FieldElement::from_int(12)));
    assert!(fujimura_cubic(&p).is_zero());
    let p = milnor_coordinates(&map(&[0, 0, 1], &[1])).unwrap();
    assert_eq!((p.sigma1.clone(), p.sigma2.clone()), (FieldElement::from_int(2), FieldElement::from_int(0)));
    assert!(fujimura_cubic(&p).is_zero());
    let origin = MilnorPoint { sigma1: FieldElement::from_int(0), sigma2: FieldElement::from_int(0) };
    assert_eq!(fujimura_cubic(&origin), FieldElement::from_int(-36));
    assert!(matches!(milnor_coordinates(&map(&[0, 0, 0, 1], &[1])), Err(ModuliError::NotDegreeTwo(3))));
}

#[test]
fn milnor_invariance_and_holomorphic_index_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let phi = map(&[1, 2, 3], &[-1, 0, 2]);
    let base = milnor_coordinates(&phi).unwrap();
    for _ in 0..20 {
        use rand::Rng;
        let mut e = || rng.gen_range(-5i64..=5);
        let Ok(t) = MobiusMap::from_ints(e(), e(), e(), e()) else { continue };
        let conj = phi.conjugate(&t);
        assert_eq!(milnor_coordinates(&conj).unwrap(), base);
        let [s1, _, s3] = milnor::multiplier_sigmas(&conj).unwrap();
        assert!((&(&s3 - &s1) + &FieldElement::from_int(2)).is_zero());
    }
}

#[test]
fn connectivity_through_lemma_witness() {
    let w0 = Endpoint::Family(fam(3, 1, CyclicCase::A, &[1, 1], &[3, 0]));
    let w1 = Endpoint::Family(fam(2, 2, CyclicCase::B, &[1, 0, 2], &[0, 1, 1]));
    let cert = connectivity_certificate(&w0, &w1, &PathOptions::default()).unwrap();
    assert_eq!(cert.legs.len(), 3);
    assert!(cert.is_gap_free());
    cert.validate().unwrap();
}

#[test]
fn connectivity_trivial_and_gap_cases() {
    let f = fam(3, 1, CyclicCase::A, &[1, 1], &[3, 0]);
    let cert = connectivity_certificate(&Endpoint::Family(f.clone()), &Endpoint::Family(f), &PathOptions::default()).unwrap();
    assert_eq!(cert.legs.len(), 1);
    cert.validate().unwrap();

    let a = fam(2, 1, CyclicCase::A, &[2, 1], &[1, 0]);
    let c = fam(2, 2, CyclicCase::C, &[1, 1, 0], &[0, 0, 1]);
    let cert = connectivity_certificate(&Endpoint::Family(a), &Endpoint::Family(c), &PathOptions::default()).unwrap();
    assert!(!cert.is_gap_free());
    cert.validate().unwrap();
}
