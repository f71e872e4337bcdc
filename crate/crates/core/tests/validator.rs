use std::time::{Duration, Instant};

use krasner::corpus;
use krasner::{validate, Axiom, Candidate, ElementId, HyperringError, Subset};

const Z: ElementId = ElementId(0);
const ONE: ElementId = ElementId(1);
const U: ElementId = ElementId(2);

fn three() -> Candidate {
    corpus::three_element_example().to_candidate()
}

fn expect_violation(c: Candidate, axiom: Axiom) {
    let start = Instant::now();
    let report = validate(&c).unwrap();
    assert!(start.elapsed() < Duration::from_secs(1));
    let v = report.violated(axiom).unwrap_or_else(|| panic!("{axiom} not reported: {report}"));
    assert!(!v.witness.is_empty());
    assert!(v.describe(c.names()).starts_with(axiom.name()));
    match c.build() {
        Err(HyperringError::Invalid(r)) => assert!(r.violated(axiom).is_some()),
        other => panic!("build accepted a broken table: {other:?}"),
    }
}

#[test]
fn corpus_members_validate() {
    for h in corpus::base_members() {
        let report = validate(&h.to_candidate()).unwrap();
        assert!(report.is_ok(), "{}: {report}", h.name());
    }
}

#[test]
fn broken_inverse() {
    let mut c = three();
    c.set_f_exact(&[U, U], Subset::singleton(3, U)).unwrap();
    expect_violation(c, Axiom::UniqueInverse);
}

#[test]
fn broken_distributivity() {
    let mut c = three();
    c.set_g_exact(&[U, U], U).unwrap();
    expect_violation(c, Axiom::Distributivity);
}

#[test]
fn broken_identity() {
    let mut c = three();
    c.set_g_exact(&[ONE, U], Z).unwrap();
    c.set_g_exact(&[U, ONE], Z).unwrap();
    expect_violation(c, Axiom::ScalarIdentity);
}

#[test]
fn broken_commutativity_in_one_cell() {
    let mut c = corpus::ring_zk(4).to_candidate();
    c.set_g_exact(&[ElementId(2), ElementId(3)], ElementId(1)).unwrap();
    expect_violation(c, Axiom::MultiplicativeCommutativity);
}

#[test]
fn empty_hypervalue() {
    let mut c = three();
    c.set_f_exact(&[ONE, U], Subset::empty(3)).unwrap();
    expect_violation(c, Axiom::NonemptyHypervalue);
}

#[test]
fn missing_cells_are_malformed() {
    let c = Candidate::new("partial", 2, 2, vec!["0".into(), "1".into()], Z, ONE).unwrap();
    assert!(matches!(validate(&c), Err(HyperringError::Malformed(_))));
}
