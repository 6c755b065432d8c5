use hennings::diagrams::library;
use hennings::Error;
use hennings_py::*;

#[test]
fn invariant_records() {
    let r = invariant_record("dbz", 3, &library::unknot(1), None).unwrap();
    assert_eq!((r.value.as_str(), r.sigma, r.h, r.integral), ("1", 1, 1, true));
    let r = invariant_record("A", 3, &library::unknot(5), None).unwrap();
    assert_eq!(r.value, "-1");
}

#[test]
fn errors_are_classified() {
    let e = invariant_record("dbz", 3, "closed; cup 1", None).unwrap_err();
    assert_eq!(classify(&e), ErrorKind::Value);
    let e = invariant_record("nope", 3, "closed", None).unwrap_err();
    assert_eq!(classify(&e), ErrorKind::Value);
    let e = invariant_record("A", 5, &library::unknot(5), Some(2)).unwrap_err();
    assert!(matches!(e, Error::Resource(_)));
    assert_eq!(classify(&e), ErrorKind::Resource);
    assert_eq!(classify(&Error::Verify("x".into())), ErrorKind::Verify);
}

#[test]
fn suites_and_balance() {
    let out = suite_outcomes("lie-table", 3, None, 4).unwrap();
    assert!(out.iter().all(|o| o.pass));
    assert!(suite_outcomes("bogus", 3, None, 4).is_err());
    let b = balance_report("A2", 3, 1).unwrap();
    assert_eq!((b.rho_tau, b.w), (8, Some(1)));
}
