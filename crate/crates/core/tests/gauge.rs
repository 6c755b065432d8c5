use std::sync::Arc;

use hennings::algebras::*;
use hennings::gauge::*;
use hennings::hopf::*;

#[test]
fn sl2_twist_identities_at_3() {
    let h = dbz(3).unwrap();
    let (tw, rep) = sl2_twist(&h).unwrap();
    assert!(rep.pass(), "{rep}");
    assert_eq!(tw.z, h.unit(1));
    assert_eq!(tw.x, sl2_x_f(3).unwrap());
}

#[test]
fn twist_without_given_inverse() {
    let h = dbz(3).unwrap();
    let (f, f_inv) = sl2_twist_element(3).unwrap();
    let (tw, rep) = make_twist(&h, f, None).unwrap();
    assert!(rep.pass(), "{rep}");
    assert_eq!(tw.f_inv, f_inv);
}

#[test]
fn trivial_twist() {
    let h = borel(3).unwrap();
    let (tw, rep) = make_twist(&h, h.unit(2), None).unwrap();
    assert!(rep.pass(), "{rep}");
    assert_eq!(tw.x, h.unit(1));
    let (fa, rep) = higher_twist(&h, &tw, 3, Coverage::Exhaustive);
    assert!(rep.pass(), "{rep}");
    assert_eq!(fa, h.unit(4));
}

#[test]
fn coboundary_twist() {
    // F_c = (c⁻¹⊗c⁻¹)Δ(c) for c = 1 + e in B
    let h = borel(3).unwrap();
    let c = h.unit(1).add(&h.basis_el(3));
    let ci = h.inverse(&c).unwrap();
    let f = h.mul(&ci.tensor(&ci), &h.comul(&c, 0));
    let (tw, rep) = make_twist(&h, f, None).unwrap();
    assert!(rep.pass(), "{rep}");
    let sc = h.antipode(&c, 0);
    let expect = h.mul(&ci, &h.inverse(&sc).unwrap());
    assert_eq!(tw.x, expect);
}

#[test]
fn twisted_double_at_3() {
    let h = Arc::new(dbz(3).unwrap());
    let (tw, _) = sl2_twist(&h).unwrap();
    let mut hf = twist_hopf(h.clone(), &tw);
    let cov = Coverage::Sample { count: 400, seed: 3 };
    let rep = verify_hopf_axioms(&hf, cov);
    assert!(rep.pass(), "{rep}");
    let q = hf.quasi.clone().unwrap();
    let rep = verify_quasitriangular(&hf, &q, Coverage::Exhaustive);
    assert!(rep.pass(), "{rep}");
    let (rib, data) = twisted_special_elements(&h, &tw).unwrap();
    assert_eq!(rib.u, h.ribbon.as_ref().unwrap().u);
    assert_eq!(data.lambda, h.integrals.as_ref().unwrap().lambda);
    let rep = verify_ribbon(&hf, &q, &rib, Coverage::Exhaustive);
    assert!(rep.pass(), "{rep}");
    hf.ribbon = Some(rib);
    let rep = verify_integrals(&hf, &data, Coverage::Exhaustive);
    assert!(rep.pass(), "{rep}");
    // Δ_F(E) = E⊗1 + K⊗E
    let ef = efkz_basis(3).unwrap();
    let e = ef.to_pbw(&Element::basis(vec![3 * 3], hennings::ring::Sl2Field::new(3).unwrap().one()));
    let k = ef.to_pbw(&Element::basis(vec![3], hennings::ring::Sl2Field::new(3).unwrap().one()));
    let lhs = hf.comul(&e, 0);
    let rhs = e.tensor(&h.unit(1)).add(&k.tensor(&e));
    assert_eq!(lhs, rhs);
}

#[test]
fn higher_twist_and_nat_iso_at_3() {
    let h = dbz(3).unwrap();
    let (tw, _) = sl2_twist(&h).unwrap();
    for n in 1..=3 {
        let (_, rep) = higher_twist(&h, &tw, n, Coverage::Sample { count: 10, seed: n as u64 });
        assert!(rep.pass(), "{rep}");
    }
    for x in (0..81).step_by(5) {
        let b = h.basis_el(x);
        let g = nat_iso(&h, &tw, &b);
        assert_eq!(g, h.mul(&h.mul(&tw.x, &b), &tw.x_inv));
    }
    let v = h.basis_el(7).tensor(&h.basis_el(40));
    let g = nat_iso(&h, &tw, &v);
    let c = |y: &Element| h.mul(&h.mul(&tw.x, y), &tw.x_inv);
    assert_eq!(g, c(&h.basis_el(7)).tensor(&c(&h.basis_el(40))));
    // γ(E) = E·Z⁻¹
    let ef = efkz_basis(3).unwrap();
    let one = hennings::ring::Sl2Field::new(3).unwrap().one();
    let e = ef.to_pbw(&Element::basis(vec![9], one.clone()));
    let ez = ef.to_pbw(&Element::basis(vec![9 + 2], one));
    assert_eq!(nat_iso(&h, &tw, &e), ez);
    assert_eq!(chi_hat(&ef, &e), ef.to_efkz(&ez));
}
