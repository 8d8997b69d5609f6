use super::build::{cyclic, exterior, product, truncated};
use super::*;
use crate::error::RingError;
use crate::linalg::Measure;

fn parse(json: &str) -> Result<GradedRing, RingError> {
    GradedRing::from_json(json)
}

fn elem(r: &GradedRing, degree: i64, coeffs: &[i64]) -> RingElement {
    let c = r.coeffs();
    r.element(degree, coeffs.iter().map(|&a| c.from_int(a)).collect())
}

fn f3_periodic_exterior() -> GradedRing {
    parse(
        r#"{"characteristic": 3,
            "basis": [{"name": "one", "degree": 0}, {"name": "x", "degree": 1}],
            "periodicity": {"unit": "y", "degree": 2}}"#,
    )
    .unwrap()
}

fn f2xy() -> GradedRing {
    parse(
        r#"{"characteristic": 2,
            "basis": [{"name": "one", "degree": 0}, {"name": "x", "degree": 0}, {"name": "y", "degree": 0}]}"#,
    )
    .unwrap()
}

#[test]
fn z4_structure() {
    let r = cyclic(4).unwrap();
    assert!(r.is_local().unwrap());
    assert_eq!(r.idempotents().unwrap().len(), 2);
    let m = r.maximal_ideal().unwrap();
    let two = elem(&r, 0, &[2]);
    assert!(m.same_as(&Ideal::generated(&r, std::slice::from_ref(&two))));
    assert_eq!(r.residue_field().unwrap().slice_size(0), Some(2));
    assert!(r
        .annihilator(&two)
        .same_as(&Ideal::generated(&r, std::slice::from_ref(&two))));
    assert_eq!(r.socle().unwrap().measure(&r), Measure::Card(2));
    assert!(r.is_quasi_frobenius().unwrap());
    assert!(r.double_annihilator_holds().unwrap().holds);
    assert_eq!(r.characteristic(), 4);
}

#[test]
fn z6_idempotents_and_factors() {
    let r = cyclic(6).unwrap();
    let mut idem: Vec<i64> = r
        .idempotents()
        .unwrap()
        .iter()
        .map(|e| *e.coeffs[0].numer())
        .collect();
    idem.sort();
    assert_eq!(idem, vec![0, 1, 3, 4]);
    assert!(!r.is_local().unwrap());
    assert!(matches!(r.maximal_ideal(), Err(RingError::NotLocal)));
    let mut chars: Vec<u64> = r
        .decompose_product()
        .unwrap()
        .iter()
        .map(|f| f.characteristic())
        .collect();
    chars.sort();
    assert_eq!(chars, vec![2, 3]);
}

#[test]
fn f2_times_f2_has_four_idempotents() {
    let f2 = cyclic(2).unwrap();
    let r = product(&[f2.clone(), f2]).unwrap();
    assert_eq!(r.idempotents().unwrap().len(), 4);
    assert_eq!(r.decompose_product().unwrap().len(), 2);
}

#[test]
fn mixed_orders_split() {
    let r = product(&[cyclic(2).unwrap(), cyclic(4).unwrap()]).unwrap();
    assert_eq!(r.coeffs().modulus(), 4);
    assert_eq!(r.idempotents().unwrap().len(), 4);
    let mut sizes: Vec<_> = r
        .decompose_product()
        .unwrap()
        .iter()
        .map(|f| f.slice_size(0).unwrap())
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 4]);
}

#[test]
fn field_times_exterior() {
    let r = product(&[cyclic(2).unwrap(), exterior(2, 0, None).unwrap()]).unwrap();
    let mut sizes: Vec<_> = r
        .decompose_product()
        .unwrap()
        .iter()
        .map(|f| f.slice_size(0).unwrap())
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 4]);
    assert!(r.is_quasi_frobenius().unwrap());
}

#[test]
fn sign_rule_is_enforced() {
    let err = parse(
        r#"{"characteristic": 3,
            "basis": [{"name": "one", "degree": 0}, {"name": "x", "degree": 1},
                      {"name": "y", "degree": 1}, {"name": "xy", "degree": 2}],
            "products": [{"left": "x", "right": "y", "terms": [{"coeff": 1, "basis": "xy"}]},
                         {"left": "y", "right": "x", "terms": [{"coeff": 1, "basis": "xy"}]}]}"#,
    )
    .unwrap_err();
    assert_eq!(err, RingError::CommutativityViolation(1, 2));
}

#[test]
fn associativity_is_enforced() {
    let err = parse(
        r#"{"characteristic": 2,
            "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 0}],
            "products": [{"left": "a", "right": "a", "terms": [{"coeff": 1, "basis": "b"}]},
                         {"left": "a", "right": "b", "terms": [{"coeff": 1, "basis": "a"}]},
                         {"left": "b", "right": "a", "terms": [{"coeff": 1, "basis": "a"}]}]}"#,
    )
    .unwrap_err();
    assert!(matches!(err, RingError::AssociativityViolation(..)));
}

#[test]
fn degree_and_unit_errors() {
    let err = parse(
        r#"{"characteristic": 2,
            "basis": [{"name": "one", "degree": 0}, {"name": "x", "degree": 1}],
            "products": [{"left": "x", "right": "x", "terms": [{"coeff": 1, "basis": "x"}]}]}"#,
    )
    .unwrap_err();
    assert!(matches!(
        err,
        RingError::DegreeMismatch {
            left: 1,
            right: 1,
            ..
        }
    ));
    let err = parse(r#"{"characteristic": 2, "basis": [{"name": "a", "degree": 0}]}"#).unwrap_err();
    assert_eq!(err, RingError::NoUnit);
}

#[test]
fn unit_is_solved_when_not_named() {
    let r = parse(
        r#"{"characteristic": 5,
            "basis": [{"name": "a", "degree": 0}],
            "products": [{"left": "a", "right": "a", "terms": [{"coeff": 2, "basis": "a"}]}]}"#,
    )
    .unwrap();
    // 2a * a' = a' forces 1 = 3a
    assert_eq!(r.one(), elem(&r, 0, &[3]));
}

#[test]
fn periodic_exterior_over_f3() {
    let r = f3_periodic_exterior();
    assert!(r.is_local().unwrap());
    let x = r.basis_element(1);
    assert!(r
        .maximal_ideal()
        .unwrap()
        .same_as(&Ideal::generated(&r, std::slice::from_ref(&x))));
    let k = r.residue_field().unwrap();
    assert_eq!(k.n(), 1);
    assert!(k.is_periodic());
    assert!(r.has_unit_in_degree(4).unwrap());
    assert!(!r.has_unit_in_degree(3).unwrap());
    assert!(r.has_unit_in_degree(0).unwrap());
    assert!(r.is_quasi_frobenius().unwrap());
    assert!(r.double_annihilator_holds().unwrap().holds);
}

#[test]
fn truncated_f5_annihilators() {
    let r = truncated(5, 3, 0, None).unwrap();
    let x = r.basis_element(1);
    let x2 = r.basis_element(2);
    assert!(r
        .annihilator(&x)
        .same_as(&Ideal::generated(&r, std::slice::from_ref(&x2))));
    assert!(r
        .annihilator(&x2)
        .same_as(&Ideal::generated(&r, std::slice::from_ref(&x))));
    assert!(r.double_annihilator_holds().unwrap().holds);
    assert!(r.socle().unwrap().same_as(&Ideal::generated(&r, &[x2])));
    assert!(r.is_quasi_frobenius().unwrap());
}

#[test]
fn exterior_f2_annihilator() {
    let r = exterior(2, 0, None).unwrap();
    let x = r.basis_element(1);
    assert!(r.annihilator(&x).same_as(&Ideal::generated(&r, &[x])));
}

#[test]
fn f2xy_fails_double_annihilator() {
    let r = f2xy();
    let res = r.double_annihilator_holds().unwrap();
    assert!(!res.holds);
    assert_eq!(res.witness, Some(r.basis_element(1)));
    let soc = r.socle().unwrap();
    assert_eq!(soc.measure(&r), Measure::Card(4));
    assert!(!r.is_quasi_frobenius().unwrap());
}

#[test]
fn rational_exterior() {
    let r = exterior(0, 0, None).unwrap();
    assert!(r.is_local().unwrap());
    assert_eq!(r.radical().unwrap().measure(&r), Measure::Dim(1));
    assert!(r.is_quasi_frobenius().unwrap());
    let q2 = product(&[cyclic(0).unwrap(), cyclic(0).unwrap()]).unwrap();
    assert!(matches!(
        q2.idempotents(),
        Err(RingError::UnsupportedCoefficients(_))
    ));
}

#[test]
fn large_prime_algebra_without_enumeration() {
    let r = truncated(3, 27, 0, None).unwrap();
    assert!(r.is_local().unwrap());
    assert_eq!(
        r.radical().unwrap().measure(&r),
        Measure::Card(3u128.pow(26))
    );
}

#[test]
fn spec_round_trip() {
    for r in [
        f3_periodic_exterior(),
        f2xy(),
        product(&[cyclic(2).unwrap(), cyclic(4).unwrap()]).unwrap(),
    ] {
        let back = GradedRing::from_json(&r.to_spec().to_json()).unwrap();
        assert_eq!(back, r);
    }
}
