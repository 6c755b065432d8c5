use std::sync::Arc;

use hennings::algebras::*;
use hennings::hopf::*;
use hennings::ring::Sl2Field;

fn proportional(a: &Lin, b: &Lin) -> bool {
    let a: Lin = a.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
    let b: Lin = b.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
    if a.len() != b.len() || a.is_empty() {
        return a.len() == b.len();
    }
    let r = &b[0].1 * &a[0].1.inv().unwrap();
    a.iter().zip(&b).all(|((i, x), (j, y))| i == j && &(x * &r) == y)
}

fn exhaustive() -> Coverage {
    Coverage::Exhaustive
}

#[test]
fn borel_axioms_and_integrals() {
    let b = borel(3).unwrap();
    let rep = verify_hopf_axioms(&b, exhaustive());
    assert!(rep.pass(), "{rep}");
    let data = b.integrals.clone().unwrap();
    let rep = verify_integrals(&b, &data, exhaustive());
    assert!(rep.pass(), "{rep}");
    let found = find_integrals(&b).unwrap();
    assert!(proportional(&found.cointegral.to_lin(), &data.cointegral.to_lin()));
    let lf: Lin = found.lambda.iter().cloned().enumerate().map(|(i, c)| (i as u32, c)).collect();
    let ld: Lin = data.lambda.iter().cloned().enumerate().map(|(i, c)| (i as u32, c)).collect();
    assert!(proportional(&lf, &ld));
    assert_eq!(found.alpha, data.alpha);
}

#[test]
fn dual_borel_matches_transposed_borel() {
    for ell in [3, 5] {
        let hand = dual_borel(ell).unwrap();
        let generic = FiniteHopf::new(Arc::new(DualOf::new(Arc::new(borel(ell).unwrap()))));
        let rep = compare_structures(&hand, &generic, exhaustive());
        assert!(rep.pass(), "ℓ={ell}: {rep}");
    }
}

#[test]
fn dbz_matches_generic_double_at_3() {
    let generic = drinfeld_double(Arc::new(borel(3).unwrap()));
    let hand = dbz(3).unwrap();
    let rep = compare_structures(&hand, &generic, exhaustive());
    assert!(rep.pass(), "{rep}");
    assert_eq!(hand.quasi.as_ref().unwrap().r, generic.quasi.as_ref().unwrap().r);
}

#[test]
fn dbz_axioms_at_3() {
    let h = dbz(3).unwrap();
    let rep = verify_hopf_axioms(&h, Coverage::Sample { count: 2000, seed: 1 });
    assert!(rep.pass(), "{rep}");
    let q = h.quasi.clone().unwrap();
    let rep = verify_quasitriangular(&h, &q, exhaustive());
    assert!(rep.pass(), "{rep}");
    let rep = verify_ribbon(&h, &q, h.ribbon.as_ref().unwrap(), exhaustive());
    assert!(rep.pass(), "{rep}");
    let rep = verify_integrals(&h, h.integrals.as_ref().unwrap(), exhaustive());
    assert!(rep.pass(), "{rep}");
}

#[test]
fn a_and_u_at_3() {
    for h in [algebra_A(3).unwrap(), u_zeta(3).unwrap()] {
        let rep = verify_hopf_axioms(&h, exhaustive());
        assert!(rep.pass(), "{rep}");
        let q = h.quasi.clone().unwrap();
        let rep = verify_quasitriangular(&h, &q, exhaustive());
        assert!(rep.pass(), "{rep}");
        let rep = verify_ribbon(&h, &q, h.ribbon.as_ref().unwrap(), exhaustive());
        assert!(rep.pass(), "{rep}");
        let rep = verify_integrals(&h, h.integrals.as_ref().unwrap(), exhaustive());
        assert!(rep.pass(), "{rep}");
    }
}

#[test]
fn dbz_phase() {
    let f = Sl2Field::new(3).unwrap();
    let h = dbz(3).unwrap();
    let lam = &h.integrals.as_ref().unwrap().lambda;
    let rib = h.ribbon.as_ref().unwrap();
    assert_eq!(h.eval_form(lam, &rib.ribbon), f.one());
    assert_eq!(h.eval_form(lam, &rib.ribbon_inv), f.one());
}

#[test]
fn dbz_phase_at_5_and_7() {
    for ell in [5u32, 7] {
        let f = Sl2Field::new(ell).unwrap();
        let h = dbz(ell).unwrap();
        let lam = &h.integrals.as_ref().unwrap().lambda;
        let rib = h.ribbon.as_ref().unwrap();
        let w = (ell as i64 - 3) / 2;
        assert_eq!(h.eval_form(lam, &rib.ribbon), f.zeta(w), "ℓ={ell}");
        assert_eq!(h.eval_form(lam, &rib.ribbon_inv), f.zeta(-w), "ℓ={ell}");
        let big = &h.integrals.as_ref().unwrap().cointegral;
        assert!(h.eval_form(lam, big).is_one());
        assert_eq!(&h.antipode(big, 0), big);
    }
}

#[test]
fn modularity_at_3() {
    for h in [dbz(3).unwrap(), algebra_A(3).unwrap()] {
        let m = modularity_check(&h, h.quasi.as_ref().unwrap(), h.integrals.as_ref().unwrap());
        assert!(m.pass(), "{}: {m:?}", h.name());
    }
}

#[test]
fn efkz_round_trip_and_algebra_map() {
    let ell = 3;
    let ef = efkz_basis(ell).unwrap();
    let d = dbz(ell).unwrap();
    let (ua, _) = u_zeta_times_a(ell).unwrap();
    for x in 0..d.dim() as u32 {
        let b = d.basis_el(x);
        assert_eq!(ef.to_pbw(&ef.to_efkz(&b)), b);
    }
    for x in 0..d.dim() as u32 {
        for y in (0..d.dim() as u32).step_by(7) {
            let (bx, by) = (d.basis_el(x), d.basis_el(y));
            let lhs = ef.to_efkz(&d.mul(&bx, &by));
            let rhs = ua.mul(&ef.to_efkz(&bx), &ef.to_efkz(&by));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn twisted_r_factorizes() {
    for ell in [3u32, 5] {
        let ef = efkz_basis(ell).unwrap();
        let (ua, _) = u_zeta_times_a(ell).unwrap();
        let d = dbz(ell).unwrap();
        let (tw, tw_inv) = sl2_twist_element(ell).unwrap();
        let tw_e = ef.to_efkz(&tw);
        let r_e = ef.to_efkz(&d.quasi.as_ref().unwrap().r);
        let tw_inv = ef.to_efkz(&tw_inv);
        assert_eq!(ua.mul(&tw_e, &tw_inv), ua.unit(2));
        let rf = ua.mul(&ua.mul(&tw_e.flip(), &r_e), &tw_inv);
        assert_eq!(rf, ua.quasi.as_ref().unwrap().r, "ℓ={ell}");
    }
}

#[test]
fn dbz_matches_generic_double_at_5() {
    let generic = drinfeld_double(Arc::new(borel(5).unwrap()));
    let hand = dbz(5).unwrap();
    let rep = compare_structures(&hand, &generic, exhaustive());
    assert!(rep.pass(), "{rep}");
}

#[test]
fn modularity_at_5() {
    for h in [dbz(5).unwrap(), algebra_A(5).unwrap()] {
        let m = modularity_check(&h, h.quasi.as_ref().unwrap(), h.integrals.as_ref().unwrap());
        assert!(m.pass(), "{}: {m:?}", h.name());
    }
}

#[test]
fn sampled_axioms_at_5() {
    let cov = Coverage::Sample { count: 500, seed: 5 };
    for h in [borel(5).unwrap(), dual_borel(5).unwrap(), dbz(5).unwrap(), algebra_A(5).unwrap(), u_zeta(5).unwrap()] {
        let rep = verify_hopf_axioms(&h, cov);
        assert!(rep.pass(), "{rep}");
        if let Some(q) = h.quasi.clone() {
            let rep = verify_quasitriangular(&h, &q, cov);
            assert!(rep.pass(), "{rep}");
            let rep = verify_ribbon(&h, &q, h.ribbon.as_ref().unwrap(), cov);
            assert!(rep.pass(), "{rep}");
        }
    }
}
