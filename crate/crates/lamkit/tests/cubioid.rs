//! Membership, tuning and witnesses on small named laminations.

use num_rational::BigRational;

use lamkit::canonical::canonical_quadratic;
use lamkit::circle::{Angle, Chord};
use lamkit::cubioid::{
    car_membership, is_cubioid_member, main_theorem_witness, project_lamination, tune, CertifiedSlice,
    CubioidDiagnostic,
};
use lamkit::lamination::{check_unlinked, Generator, LaminationSlice};
use lamkit::quad_gaps::QuadGap;
use lamkit::rotational::build_rotational_set;

fn a(s: &str) -> Angle {
    s.parse().unwrap()
}

fn bare(chords: &[&str]) -> CertifiedSlice {
    let v: Vec<Chord> = chords.iter().map(|s| s.parse().unwrap()).collect();
    let slice = LaminationSlice::from_chords(3, 4, v.clone(), v.into_iter().map(Generator::Leaf).collect());
    CertifiedSlice { slice, metadata: vec![] }
}

#[test]
fn certified_json_keeps_metadata() {
    let s = CertifiedSlice::canonical_quadgap(&QuadGap::periodic(a("3/4"), a("1/8")).unwrap(), 4).unwrap();
    let back = CertifiedSlice::from_json(&s.to_json()).unwrap();
    assert_eq!(back.slice, s.slice);
    assert_eq!(back.metadata, s.metadata);
    assert!(is_cubioid_member(&back).unwrap().member);
}

#[test]
fn empty_slice_is_member() {
    let v = is_cubioid_member(&bare(&[])).unwrap();
    assert!(v.member);
    assert_eq!(v.diagnostic, CubioidDiagnostic::Empty);
}

#[test]
fn rotational_triangle_is_member() {
    let o = vec![vec![a("1/26"), a("3/26"), a("9/26")]];
    let g = build_rotational_set(3, &o).unwrap();
    let s = CertifiedSlice::canonical_rotational(&g, 4).unwrap();
    let v = is_cubioid_member(&s).unwrap();
    assert!(v.member, "{}", v.diagnostic);
    assert!(matches!(v.diagnostic, CubioidDiagnostic::Member { rotational_sets: 1, .. }));
}

#[test]
fn verdict_serialises_with_tag() {
    let v = is_cubioid_member(&bare(&["1/8-3/8", "5/8-7/8"])).unwrap();
    let j = serde_json::to_value(&v).unwrap();
    assert_eq!(j["member"], false);
    assert_eq!(j["diagnostic"], "too_many_rotational");
}

#[test]
fn tuning_by_basilica_is_member_and_projects_back() {
    let half = BigRational::new(1.into(), 2.into());
    let q = canonical_quadratic(Some(&half), 5).unwrap();
    let u = QuadGap::fa();
    let t = tune(&u, &q, 5).unwrap();
    assert!(check_unlinked(&t.slice).ok());
    assert!(is_cubioid_member(&t).unwrap().member);
    let p = project_lamination(&u, &t).unwrap();
    assert_eq!(p.chord_set(), q.chord_set());
    assert!(car_membership(&p).unwrap());
}

#[test]
fn witness_for_canonical_gap_is_the_gap() {
    let u = QuadGap::periodic(a("3/4"), a("1/8")).unwrap();
    let s = CertifiedSlice::canonical_quadgap(&u, 4).unwrap();
    let w = main_theorem_witness(&s).unwrap();
    assert!(w.gap == u || u.special_partner() == Some(w.gap.clone()));
    assert!(car_membership(&w.projected).unwrap());
}
