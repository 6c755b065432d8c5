//! The twelve acceptance criteria, each printed as one pass/fail line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use hennings::algebras::*;
use hennings::diagrams::{library, load};
use hennings::hennings::{evaluate_closed, invariant_with_limit};
use hennings::hopf::*;
use hennings::ring::{jacobi, Sl2Field};
use hennings::suites::{run_suite, Suite, SuiteConfig};

type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report(r: Report) -> Check {
    ensure(r.pass(), || r.to_string())
}

fn suite(s: Suite, ell: u32, algebra: Option<&str>) -> Check {
    let cfg = SuiteConfig { algebra: algebra.map(str::to_string), ell, max_rank: 8 };
    let out = run_suite(s, &cfg).map_err(|e| e.to_string())?;
    match out.into_iter().find(|o| !o.pass) {
        None => Ok(()),
        Some(o) => Err(o.to_text()),
    }
}

fn axioms(h: &FiniteHopf, cov: Coverage) -> Check {
    report(verify_hopf_axioms(h, cov))?;
    if let Some(ints) = &h.integrals {
        report(verify_integrals(h, ints, cov))?;
    }
    if let Some(q) = &h.quasi {
        report(verify_quasitriangular(h, q, cov))?;
        report(verify_ribbon(h, q, h.ribbon.as_ref().ok_or("quasitriangular without ribbon")?, cov))?;
    }
    Ok(())
}

fn c1_axiom_suites() -> Check {
    let t = Instant::now();
    for h in [borel(3), dual_borel(3), dbz(3), algebra_A(3), u_zeta(3)] {
        axioms(&h.map_err(|e| e.to_string())?, Coverage::Exhaustive)?;
    }
    ensure(t.elapsed().as_secs() < 60, || format!("ℓ=3 took {:?}", t.elapsed()))?;
    let t = Instant::now();
    for h in [borel(5), dual_borel(5), dbz(5), algebra_A(5), u_zeta(5)] {
        axioms(&h.map_err(|e| e.to_string())?, Coverage::Sample { count: 500, seed: 11 })?;
    }
    ensure(t.elapsed().as_secs() < 600, || format!("ℓ=5 took {:?}", t.elapsed()))
}

fn c2_double_oracle() -> Check {
    for ell in [3, 5] {
        let generic = drinfeld_double(Arc::new(borel(ell).map_err(|e| e.to_string())?));
        let hand = dbz(ell).map_err(|e| e.to_string())?;
        report(compare_structures(&hand, &generic, Coverage::Exhaustive))?;
        ensure(hand.quasi.as_ref().map(|q| &q.r) == generic.quasi.as_ref().map(|q| &q.r), || {
            format!("R differs at ℓ={ell}")
        })?;
    }
    Ok(())
}

fn c3_integral_identities() -> Check {
    for ell in [3u32, 5, 7] {
        let f = Sl2Field::new(ell).map_err(|e| e.to_string())?;
        let h = dbz(ell).map_err(|e| e.to_string())?;
        let ints = h.integrals.as_ref().ok_or("no integrals")?;
        let rib = h.ribbon.as_ref().ok_or("no ribbon")?;
        let w = (ell as i64 - 3) / 2;
        ensure(h.eval_form(&ints.lambda, &rib.ribbon) == f.zeta(w), || format!("λ(r) at ℓ={ell}"))?;
        ensure(h.eval_form(&ints.lambda, &rib.ribbon_inv) == f.zeta(-w), || format!("λ(r⁻¹) at ℓ={ell}"))?;
        ensure(h.eval_form(&ints.lambda, &ints.cointegral).is_one(), || format!("λ(Λ) at ℓ={ell}"))?;
        ensure(h.antipode(&ints.cointegral, 0) == ints.cointegral, || format!("S(Λ) at ℓ={ell}"))?;
    }
    Ok(())
}

fn c4_modularity() -> Check {
    for ell in [3, 5] {
        for alg in ["dbz", "A"] {
            suite(Suite::Modularity, ell, Some(alg))?;
        }
    }
    Ok(())
}

fn c5_calibration() -> Check {
    for h in [dbz(3), algebra_A(3), u_zeta(3), u_zeta_times_a(3).map(|x| x.0)] {
        let h = h.map_err(|e| e.to_string())?;
        let lambda = &h.integrals.as_ref().ok_or("no integrals")?.lambda;
        let rib = h.ribbon.as_ref().ok_or("no ribbon")?;
        let minus = evaluate_closed(&load(&library::unknot(-1)).unwrap(), &h).map_err(|e| e.to_string())?;
        let plus = evaluate_closed(&load(&library::unknot(1)).unwrap(), &h).map_err(|e| e.to_string())?;
        ensure(minus == h.eval_form(lambda, &rib.ribbon), || format!("(−1)-unknot [{}]", h.name()))?;
        ensure(plus == h.eval_form(lambda, &rib.ribbon_inv), || format!("(+1)-unknot [{}]", h.name()))?;
    }
    Ok(())
}

fn c6_kirby() -> Check {
    for alg in ["dbz", "A"] {
        let cfg = SuiteConfig { algebra: Some(alg.into()), ell: 3, max_rank: 8 };
        let out = run_suite(Suite::Kirby, &cfg).map_err(|e| e.to_string())?;
        if let Some(o) = out.iter().find(|o| !o.pass) {
            return Err(o.to_text());
        }
        let slides = out.iter().find(|o| o.check.starts_with("T2")).map_or(0, |o| o.checked);
        ensure(slides >= 20, || format!("only {slides} slides for {alg}"))?;
    }
    Ok(())
}

fn c7_normalizations() -> Check {
    for ell in [3u32, 5] {
        let f = Sl2Field::new(ell).map_err(|e| e.to_string())?;
        let (db, a) = (dbz(ell).map_err(|e| e.to_string())?, algebra_A(ell).map_err(|e| e.to_string())?);
        let inv = |w: &str, h: &FiniteHopf| invariant_with_limit(&load(w).unwrap(), h, None).unwrap();
        for h in [&db, &a] {
            ensure(inv("closed", h).is_one(), || format!("empty link [{}] ℓ={ell}", h.name()))?;
            ensure(inv(&library::unknot(1), h).is_one(), || format!("(+1)-unknot [{}] ℓ={ell}", h.name()))?;
        }
        ensure(inv(&library::unknot(0), &db).is_zero(), || format!("H_D(S¹×S²) at ℓ={ell}"))?;
        ensure(inv(&library::unknot(0), &a) == f.sqrt_ell(), || format!("H_A(S¹×S²) at ℓ={ell}"))?;
    }
    Ok(())
}

fn c8_moo_jacobi() -> Check {
    for ell in [3u32, 5] {
        let a = algebra_A(ell).map_err(|e| e.to_string())?;
        for p in (2..=7i64).filter(|p| p % ell as i64 != 0) {
            let v = invariant_with_limit(&load(&library::unknot(p)).unwrap(), &a, None).map_err(|e| e.to_string())?;
            let j = jacobi(p, ell as i64).map_err(|e| e.to_string())?;
            ensure(v == a.order().int(j as i64), || format!("L({p},1) at ℓ={ell}: {v}"))?;
        }
    }
    Ok(())
}

fn c9_gauge() -> Check {
    suite(Suite::Gauge, 3, None)?;
    suite(Suite::Gauge, 5, None)
}

fn c10_factorization() -> Check {
    let t = Instant::now();
    suite(Suite::Factorize, 3, None)?;
    ensure(t.elapsed().as_secs() < 300, || format!("ℓ=3 took {:?}", t.elapsed()))?;
    let t = Instant::now();
    suite(Suite::Factorize, 5, None)?;
    ensure(t.elapsed().as_secs() < 1800, || format!("ℓ=5 took {:?}", t.elapsed()))
}

fn c11_integrality() -> Check {
    for ell in [3u32, 5] {
        let db = dbz(ell).map_err(|e| e.to_string())?;
        for (name, w) in library::corpus() {
            let v = invariant_with_limit(&load(&w).unwrap(), &db, None).map_err(|e| format!("{name}: {e}"))?;
            ensure(v.is_integral(), || format!("{name} at ℓ={ell}: {v}"))?;
        }
    }
    Ok(())
}

fn c12_lie_table() -> Check {
    suite(Suite::LieTable, 3, None)
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("axiom suites", c1_axiom_suites),
        ("double oracle", c2_double_oracle),
        ("integral identities", c3_integral_identities),
        ("modularity", c4_modularity),
        ("calibration", c5_calibration),
        ("kirby invariance", c6_kirby),
        ("normalizations", c7_normalizations),
        ("MOO equals Jacobi", c8_moo_jacobi),
        ("gauge suite", c9_gauge),
        ("factorization", c10_factorization),
        ("integrality", c11_integrality),
        ("lie table", c12_lie_table),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({secs:.1}s)", i + 1),
            Err(e) => {
                println!("criterion {:>2} {name}: FAIL ({secs:.1}s) {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
