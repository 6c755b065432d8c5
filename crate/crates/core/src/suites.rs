//! Named verification suites, shared by the command line and the bindings.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebras::{algebra_A, borel, dbz, dual_borel, efkz_basis, sl2_twist, sl2_twist_element, u_zeta, u_zeta_times_a};
use crate::diagrams::{kirby_move, library, load, KirbyMove};
use crate::error::{Error, Result};
use crate::hennings::{crossing_limit, evaluate_closed, factorization_check_with, invariant_with_limit, naturality_check, twisted_algebra};
use crate::hopf::{
    compare_structures, drinfeld_double, modularity_check, verify_hopf_axioms, verify_integrals, verify_quasitriangular,
    verify_ribbon, Coverage, FiniteHopf, Report,
};
use crate::lie;

/// Algebra names accepted on the command line.
pub const ALGEBRAS: [&str; 6] = ["borel", "dual_borel", "dbz", "A", "uzeta", "uzeta_a"];

pub fn algebra_by_name(name: &str, ell: u32) -> Result<FiniteHopf> {
    if ell.is_multiple_of(2) || ell < 3 {
        return Err(Error::Domain(format!("ℓ must be odd and at least 3, got {ell}")));
    }
    match name {
        "borel" => borel(ell),
        "dual_borel" => dual_borel(ell),
        "dbz" => dbz(ell),
        "A" => algebra_A(ell),
        "uzeta" => u_zeta(ell),
        "uzeta_a" | "uzeta⊗A" => Ok(u_zeta_times_a(ell)?.0),
        _ => Err(Error::Domain(format!("unknown algebra {name:?}; expected one of {}", ALGEBRAS.join(", ")))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Hopf,
    Ribbon,
    Modularity,
    Kirby,
    Gauge,
    Factorize,
    LieTable,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Hopf, Suite::Ribbon, Suite::Modularity, Suite::Kirby, Suite::Gauge, Suite::Factorize, Suite::LieTable];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Ribbon => "ribbon",
            Suite::Modularity => "modularity",
            Suite::Kirby => "kirby",
            Suite::Gauge => "gauge",
            Suite::Factorize => "factorize",
            Suite::LieTable => "lie-table",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub algebra: Option<String>,
    pub ell: u32,
    pub max_rank: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { algebra: None, ell: 3, max_rank: 8 }
    }
}

/// One line of suite output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub suite: String,
    pub check: String,
    pub checked: usize,
    pub pass: bool,
    pub failure: Option<String>,
}

impl Outcome {
    fn from_report(suite: Suite, r: Report) -> Self {
        Outcome { suite: suite.name().into(), pass: r.pass(), check: r.name, checked: r.checked, failure: r.failure }
    }

    pub fn to_text(&self) -> String {
        match &self.failure {
            None => format!("{} {}: pass ({} checks)", self.suite, self.check, self.checked),
            Some(f) => format!("{} {}: FAIL after {} checks: {}", self.suite, self.check, self.checked, f),
        }
    }
}

fn algebras_for(cfg: &SuiteConfig, default: &[&str]) -> Result<Vec<FiniteHopf>> {
    match &cfg.algebra {
        Some(a) => Ok(vec![algebra_by_name(a, cfg.ell)?]),
        None => default.iter().map(|a| algebra_by_name(a, cfg.ell)).collect(),
    }
}

fn need_quasi(h: &FiniteHopf) -> Result<()> {
    if h.quasi.is_none() || h.ribbon.is_none() {
        return Err(Error::Domain(format!("{} carries no ribbon structure", h.name())));
    }
    Ok(())
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Outcome>> {
    let reports = match suite {
        Suite::Hopf => hopf_suite(cfg)?,
        Suite::Ribbon => ribbon_suite(cfg)?,
        Suite::Modularity => modularity_suite(cfg)?,
        Suite::Kirby => kirby_suite(cfg)?,
        Suite::Gauge => gauge_suite(cfg.ell)?,
        Suite::Factorize => factorize_suite(cfg.ell)?,
        Suite::LieTable => lie_suite(cfg.max_rank)?,
    };
    Ok(reports.into_iter().map(|r| Outcome::from_report(suite, r)).collect())
}

fn hopf_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for h in algebras_for(cfg, &["borel", "dual_borel", "dbz", "A", "uzeta"])? {
        let cov = Coverage::auto(h.dim());
        out.push(verify_hopf_axioms(&h, cov));
        if let Some(ints) = &h.integrals {
            out.push(verify_integrals(&h, ints, cov));
        }
    }
    if cfg.algebra.as_deref().is_none_or(|a| a == "dbz") {
        let ell = cfg.ell;
        let generic = drinfeld_double(Arc::new(borel(ell)?));
        let mut r = compare_structures(&dbz(ell)?, &generic, Coverage::Exhaustive);
        r.name = format!("D(borel) = dbz at ℓ={ell}");
        out.push(r);
    }
    Ok(out)
}

fn ribbon_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for h in algebras_for(cfg, &["dbz", "A", "uzeta"])? {
        need_quasi(&h)?;
        let cov = Coverage::auto(h.dim());
        let q = h.quasi.as_ref().expect("checked");
        out.push(verify_quasitriangular(&h, q, cov));
        out.push(verify_ribbon(&h, q, h.ribbon.as_ref().expect("checked"), cov));
    }
    Ok(out)
}

fn modularity_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for h in algebras_for(cfg, &["dbz", "A"])? {
        need_quasi(&h)?;
        let ints = h.integrals.as_ref().ok_or_else(|| Error::Domain(format!("{} has no integrals", h.name())))?;
        let m = modularity_check(&h, h.quasi.as_ref().expect("checked"), ints);
        let mut r = Report::new(&format!("modularity [{}]", h.name()));
        r.check(m.q_equals_cointegral, || "Q differs from the cointegral".into());
        r.check(m.injective(), || format!("monodromy map has rank {} < {}", m.rank, m.dim));
        out.push(r);
    }
    Ok(out)
}

fn kirby_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let limit = crossing_limit(cfg.ell)?;
    let fits = |d: &crate::diagrams::Diagram| limit.is_none_or(|m| d.crossing_count() <= m);
    let mut out = Vec::new();
    for h in algebras_for(cfg, &["dbz", "A"])? {
        need_quasi(&h)?;
        let lambda = &h.integrals.as_ref().expect("ribbon algebras carry integrals").lambda;
        let rib = h.ribbon.as_ref().expect("checked");
        let mut cal = Report::new(&format!("calibration [{}]", h.name()));
        let minus = evaluate_closed(&load(&library::unknot(-1))?, &h)?;
        let plus = evaluate_closed(&load(&library::unknot(1))?, &h)?;
        cal.check(minus == h.eval_form(lambda, &rib.ribbon), || "(−1)-unknot is not λ(r)".into());
        cal.check(plus == h.eval_form(lambda, &rib.ribbon_inv), || "(+1)-unknot is not λ(r⁻¹)".into());
        out.push(cal);

        let mut t1 = Report::new(&format!("T1 [{}]", h.name()));
        let mut t2 = Report::new(&format!("T2 [{}]", h.name()));
        for (name, w) in library::corpus() {
            let d = load(&w)?;
            let e = kirby_move(&d, KirbyMove::T1AddPair)?;
            if !fits(&e) {
                continue;
            }
            let v = invariant_with_limit(&d, &h, None)?;
            t1.check(invariant_with_limit(&e, &h, None)? == v, || format!("{name}: pair insertion changes the value"));
            let n = d.components.len();
            for a in 0..n {
                for b in (0..n).filter(|b| *b != a) {
                    let s = kirby_move(&d, KirbyMove::T2Slide { a, b })?;
                    if s.dirs.iter().map(Vec::len).max().unwrap_or(0) > 6 || !fits(&s) {
                        continue;
                    }
                    t2.check(invariant_with_limit(&s, &h, None)? == v, || format!("{name}: sliding {a} over {b}"));
                }
            }
        }
        out.push(t1);
        out.push(t2);
    }
    Ok(out)
}

fn gauge_suite(ell: u32) -> Result<Vec<Report>> {
    let h = Arc::new(algebra_by_name("dbz", ell)?);
    let (tw, mut rep) = sl2_twist(&h)?;
    rep.name = format!("twist identities at ℓ={ell}");
    rep.check(tw.z == h.unit(1), || "z_F is not 1".into());
    let mut out = vec![rep];

    let ef = efkz_basis(ell)?;
    let (ua, _) = u_zeta_times_a(ell)?;
    let (f, f_inv) = sl2_twist_element(ell)?;
    let (fe, fe_inv) = (ef.to_efkz(&f), ef.to_efkz(&f_inv));
    let re = ef.to_efkz(&h.quasi.as_ref().expect("dbz is quasitriangular").r);
    let mut fact = Report::new(&format!("R factorization at ℓ={ell}"));
    let rf = ua.mul(&ua.mul(&fe.flip(), &re), &fe_inv);
    fact.check(rf == ua.quasi.as_ref().expect("U⊗A is quasitriangular").r, || "R_F differs from R_U·R_A".into());
    out.push(fact);

    if ell == 3 {
        let hf = twisted_algebra(&h, &tw)?;
        let cov = Coverage::Sample { count: 400, seed: 3 };
        out.push(verify_hopf_axioms(&hf, cov));
        let q = hf.quasi.as_ref().expect("twisted R");
        out.push(verify_quasitriangular(&hf, q, Coverage::Exhaustive));
        out.push(verify_ribbon(&hf, q, hf.ribbon.as_ref().expect("twisted ribbon"), Coverage::Exhaustive));
        out.push(verify_integrals(&hf, hf.integrals.as_ref().expect("twisted integrals"), Coverage::Exhaustive));
        let clasp = load("tangle 1 1; cup 3; xp 2; xp 2; cap 1")?;
        out.push(naturality_check(&h, &tw, &clasp, Coverage::Sample { count: 12, seed: 9 })?);
    }
    Ok(out)
}

/// Closed presentations used by the factorization suite at a given ℓ.
pub fn factorization_manifolds(ell: u32) -> Vec<(String, String)> {
    let mut v = vec![("S3".to_string(), "closed".to_string())];
    let ps: &[i64] = if ell == 3 { &[0, 2, 3, 5, 7] } else { &[2, 3] };
    for &p in ps {
        v.push((if p == 0 { "S1xS2".into() } else { format!("L({p},1)") }, library::unknot(p)));
    }
    if ell == 3 {
        v.push(("hopf(0,1)".into(), library::hopf(0, 1)));
        v.push(("hopf(0,-1)".into(), library::hopf(0, -1)));
    }
    v
}

fn factorize_suite(ell: u32) -> Result<Vec<Report>> {
    let (db, u, a) = (dbz(ell)?, u_zeta(ell)?, algebra_A(ell)?);
    let mut rep = Report::new(&format!("H_D = H_U·H_A at ℓ={ell}"));
    for (name, w) in factorization_manifolds(ell) {
        let r = factorization_check_with(&load(&w)?, (&db, &u, &a), None)?;
        rep.check(r.pass, || format!("{name}: {} vs {}·{}", r.dbz, r.uzeta, r.a));
    }
    Ok(vec![rep])
}

fn lie_suite(max_rank: usize) -> Result<Vec<Report>> {
    let mut table = Report::new(&format!("closed forms vs direct, rank ≤ {max_rank}"));
    let bad = lie::verify_table(max_rank, 3..=16, &[1, 2])?;
    let cases = lie::CartanType::all_up_to(max_rank).len() * 14 * 2;
    table.checked = cases.saturating_sub(1);
    table.check(bad.is_none(), || bad.clone().unwrap_or_default());

    let mut anomaly = Report::new("A1 anomaly");
    for ell in (3..=11).step_by(2) {
        let b = lie::balance(lie::CartanType::new(lie::LieType::A, 1)?, ell, 1)?;
        anomaly.check(b.w == Some((-(ell + 1) / 2).rem_euclid(ell)), || format!("ℓ={ell}: w = {:?}", b.w));
    }

    let mut clauses = Report::new("balancing clauses");
    for t in lie::CartanType::all_up_to(max_rank) {
        for c in [1, 2] {
            for ell in 2..=16 {
                let b = lie::balance(t, ell, c)?;
                clauses.check(b.clauses.is_empty() || b.w.is_some(), || format!("{t} ℓ={ell} c={c} should balance"));
            }
        }
    }
    Ok(vec![table, anomaly, clauses])
}
