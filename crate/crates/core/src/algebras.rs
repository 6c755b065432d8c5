//! The sl2 family at an odd root of unity ζ: the Borel part B, its dual, the
//! double D(B), the group algebra 𝒜, restricted U_ζ, and the EFKZ coordinates
//! relating D(B) to U_ζ ⊗ 𝒜.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Result;
use crate::hopf::{
    compute_u, compute_u_inv, find_integrals, lin2_mul, lin2_pow, lin_mul, lin_prod, lin_scale, Element, FiniteHopf,
    IntegralData, Lin, Lin2, QuasiTriData, RibbonData, Structure, TensorProduct,
};
use crate::ring::{CyclotomicOrder, RingElem, Sl2Field};

/// Powers of ζ and q-binomials shared by the presentations.
#[derive(Clone)]
struct Consts {
    f: Sl2Field,
    ell: i64,
    pows: Vec<RingElem>,
    qb: Vec<Vec<RingElem>>,
    gb2: Vec<Vec<RingElem>>,
}

impl Consts {
    fn new(ell: u32) -> Result<Self> {
        let f = Sl2Field::new(ell)?;
        let l = ell as i64;
        let pows = (0..l).map(|k| f.zeta(k)).collect();
        let qb = (0..2 * ell as usize).map(|n| (0..=n).map(|k| f.qbinom(n, k)).collect()).collect();
        let gb2 = (0..ell as usize).map(|n| (0..=n).map(|k| f.gauss_binom(2, n, k)).collect()).collect();
        Ok(Consts { f, ell: l, pows, qb, gb2 })
    }

    fn z(&self, k: i64) -> RingElem {
        self.pows[k.rem_euclid(self.ell) as usize].clone()
    }

    fn m(&self, k: i64) -> u32 {
        k.rem_euclid(self.ell) as u32
    }

    fn ord(&self) -> CyclotomicOrder {
        self.f.ord
    }

    fn one(&self) -> RingElem {
        self.f.one()
    }
}

fn mono(parts: &[(&str, u32)]) -> String {
    let s: Vec<String> = parts
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
        .collect();
    if s.is_empty() {
        "1".into()
    } else {
        s.join(" ")
    }
}

fn merge(ord: CyclotomicOrder, terms: Vec<(u32, RingElem)>) -> Lin {
    let mut acc: BTreeMap<u32, RingElem> = BTreeMap::new();
    for (k, v) in terms {
        let e = acc.entry(k).or_insert_with(|| ord.zero());
        *e += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn merge2(ord: CyclotomicOrder, terms: Vec<((u32, u32), RingElem)>) -> Lin2 {
    let mut acc: BTreeMap<(u32, u32), RingElem> = BTreeMap::new();
    for (k, v) in terms {
        let e = acc.entry(k).or_insert_with(|| ord.zero());
        *e += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn neg(l: &Lin) -> Lin {
    l.iter().map(|(k, v)| (*k, -v)).collect()
}

fn lin_to_el(l: &Lin) -> Element {
    Element::from_lin(l)
}

// ---------------------------------------------------------------- B

/// B: basis eⁱkʲ at index i·ℓ + j, with kek⁻¹ = ζe, Δe = e⊗1 + k²⊗e.
pub struct Borel {
    c: Consts,
}

impl Borel {
    pub fn new(ell: u32) -> Result<Self> {
        Ok(Borel { c: Consts::new(ell)? })
    }

    pub fn idx(&self, i: i64, j: i64) -> u32 {
        self.c.m(i) * self.c.ell as u32 + self.c.m(j)
    }

    fn split(&self, x: u32) -> (i64, i64) {
        let l = self.c.ell as u32;
        ((x / l) as i64, (x % l) as i64)
    }

    fn gen(&self, i: i64, j: i64) -> Lin {
        vec![(self.idx(i, j), self.c.one())]
    }
}

impl Structure for Borel {
    fn name(&self) -> String {
        "borel".into()
    }
    fn dim(&self) -> usize {
        (self.c.ell * self.c.ell) as usize
    }
    fn order(&self) -> CyclotomicOrder {
        self.c.ord()
    }
    fn label(&self, x: u32) -> String {
        let (i, j) = self.split(x);
        mono(&[("e", i as u32), ("k", j as u32)])
    }
    fn unit(&self) -> Lin {
        self.gen(0, 0)
    }
    fn mul(&self, x: u32, y: u32) -> Lin {
        let ((a, b), (c, d)) = (self.split(x), self.split(y));
        if a + c >= self.c.ell {
            return Vec::new();
        }
        vec![(self.idx(a + c, b + d), self.c.z(b * c))]
    }
    fn comul(&self, x: u32) -> Lin2 {
        let (n, j) = self.split(x);
        (0..=n)
            .map(|s| ((self.idx(s, 2 * (n - s) + j), self.idx(n - s, j)), self.c.gb2[n as usize][s as usize].clone()))
            .collect()
    }
    fn counit(&self, x: u32) -> RingElem {
        if self.split(x).0 == 0 {
            self.c.one()
        } else {
            self.c.f.zero()
        }
    }
    fn antipode(&self, x: u32) -> Lin {
        // k^{-j} (−k^{-2}e)^n
        let (n, j) = self.split(x);
        let se = neg(&lin_mul(self, &self.gen(0, -2), &self.gen(1, 0)));
        let mut f = vec![self.gen(0, -j)];
        f.extend(std::iter::repeat_n(se, n as usize));
        lin_prod(self, &f)
    }
    fn antipode_inv(&self, x: u32) -> Option<Lin> {
        let (n, j) = self.split(x);
        let se = neg(&self.gen(1, -2));
        let mut f = vec![self.gen(0, -j)];
        f.extend(std::iter::repeat_n(se, n as usize));
        Some(lin_prod(self, &f))
    }
}

/// Balancing pair for B: β(eⁱkʲ) = δ_{i0}ζ^{j(1−ℓ)/2} and l = k⁻¹.
pub fn borel_balancing(ell: u32) -> Result<(Vec<RingElem>, Element)> {
    let b = Borel::new(ell)?;
    let l = b.c.ell;
    let beta = (0..b.dim() as u32)
        .map(|x| {
            let (i, j) = b.split(x);
            if i == 0 {
                b.c.z(j * (1 - l) / 2)
            } else {
                b.c.f.zero()
            }
        })
        .collect();
    Ok((beta, Element::basis(vec![b.idx(0, -1)], b.c.one())))
}

/// B with its right integral, cointegral and moduli.
pub fn borel(ell: u32) -> Result<FiniteHopf> {
    let b = Borel::new(ell)?;
    let c = b.c.clone();
    let l = c.ell;
    let lambda = (0..b.dim() as u32)
        .map(|x| if b.split(x) == (l - 1, 0) { c.one() } else { c.f.zero() })
        .collect();
    // Λ = (Σ kʲ) e^{ℓ−1}
    let ks: Lin = (0..l).map(|j| (b.idx(0, j), c.one())).collect();
    let big = lin_mul(&b, &ks, &b.gen(l - 1, 0));
    let alpha = (0..b.dim() as u32)
        .map(|x| {
            let (i, j) = b.split(x);
            if i == 0 {
                c.z(j)
            } else {
                c.f.zero()
            }
        })
        .collect();
    let g = Element::basis(vec![b.idx(0, -2)], c.one());
    let mut h = FiniteHopf::new(Arc::new(b));
    h.integrals = Some(IntegralData { lambda, cointegral: lin_to_el(&big), g: Some(g), alpha: Some(alpha) });
    Ok(h)
}

// ---------------------------------------------------------------- B*

/// B*: basis f^(m)ω_i at index m·ℓ + i, dual to e^m k^i.
pub struct DualBorel {
    c: Consts,
}

impl DualBorel {
    pub fn new(ell: u32) -> Result<Self> {
        Ok(DualBorel { c: Consts::new(ell)? })
    }

    pub fn idx(&self, m: i64, i: i64) -> u32 {
        self.c.m(m) * self.c.ell as u32 + self.c.m(i)
    }

    fn split(&self, x: u32) -> (i64, i64) {
        let l = self.c.ell as u32;
        ((x / l) as i64, (x % l) as i64)
    }

    /// f^(m)α^p as a combination of f^(m)ω_i.
    fn f_alpha(&self, m: i64, p: i64) -> Lin {
        (0..self.c.ell).map(|i| (self.idx(m, i), self.c.z(p * i))).collect()
    }
}

impl Structure for DualBorel {
    fn name(&self) -> String {
        "dual_borel".into()
    }
    fn dim(&self) -> usize {
        (self.c.ell * self.c.ell) as usize
    }
    fn order(&self) -> CyclotomicOrder {
        self.c.ord()
    }
    fn label(&self, x: u32) -> String {
        let (m, i) = self.split(x);
        let f = if m == 0 { String::new() } else { format!("f({m}) ") };
        format!("{f}w{i}")
    }
    fn unit(&self) -> Lin {
        (0..self.c.ell).map(|i| (self.idx(0, i), self.c.one())).collect()
    }
    fn mul(&self, x: u32, y: u32) -> Lin {
        let ((m, i), (n, j)) = (self.split(x), self.split(y));
        if m + n >= self.c.ell || self.c.m(i - 2 * n) != j as u32 {
            return Vec::new();
        }
        let c = &self.c.z(m * n) * &self.c.qb[(m + n) as usize][m as usize];
        vec![(self.idx(m + n, j), c)]
    }
    fn comul(&self, x: u32) -> Lin2 {
        let (n, j) = self.split(x);
        let mut out = Vec::new();
        for a1 in 0..=n {
            for b1 in 0..self.c.ell {
                out.push(((self.idx(a1, b1), self.idx(n - a1, j - b1)), self.c.z(b1 * (n - a1))));
            }
        }
        out
    }
    fn counit(&self, x: u32) -> RingElem {
        if x == 0 {
            self.c.one()
        } else {
            self.c.f.zero()
        }
    }
    fn antipode(&self, x: u32) -> Lin {
        // S(f^(n)ω_j) = S(ω_j)S(f^(n)), S(ω_j) = ω_{−j}, S(f^(n)) = (−1)ⁿζ^{−n(n+1)} f^(n)α^{−n}
        let (n, j) = self.split(x);
        let sign = if n % 2 == 0 { self.c.one() } else { -&self.c.one() };
        let sf = lin_scale(&self.f_alpha(n, -n), &(&sign * &self.c.z(-n * (n + 1))));
        lin_mul(self, &[(self.idx(0, -j), self.c.one())].to_vec(), &sf)
    }
    fn antipode_inv(&self, x: u32) -> Option<Lin> {
        let (n, j) = self.split(x);
        let sign = if n % 2 == 0 { self.c.one() } else { -&self.c.one() };
        let sf = lin_scale(&self.f_alpha(n, -n), &(&sign * &self.c.z(-n * (n - 1))));
        Some(lin_mul(self, &[(self.idx(0, -j), self.c.one())].to_vec(), &sf))
    }
}

pub fn dual_borel(ell: u32) -> Result<FiniteHopf> {
    Ok(FiniteHopf::new(Arc::new(DualBorel::new(ell)?)))
}

// ---------------------------------------------------------------- D(B)

/// D(B): basis f^(m)ω_i eⁿkʲ at index ((m·ℓ + i)·ℓ + n)·ℓ + j.
pub struct Dbz {
    c: Consts,
    borel: Borel,
    dual: DualBorel,
}

impl Dbz {
    pub fn new(ell: u32) -> Result<Self> {
        Ok(Dbz { c: Consts::new(ell)?, borel: Borel::new(ell)?, dual: DualBorel::new(ell)? })
    }

    pub fn idx(&self, m: i64, i: i64, n: i64, j: i64) -> u32 {
        let l = self.c.ell as u32;
        ((self.c.m(m) * l + self.c.m(i)) * l + self.c.m(n)) * l + self.c.m(j)
    }

    pub fn split(&self, x: u32) -> (i64, i64, i64, i64) {
        let l = self.c.ell as u32;
        ((x / (l * l * l)) as i64, (x / (l * l) % l) as i64, (x / l % l) as i64, (x % l) as i64)
    }

    fn act_k(&self, y: Lin, d: i64) -> Lin {
        y.into_iter()
            .map(|(x, v)| {
                let (m, i, n, j) = self.split(x);
                (self.idx(m, i, n, j + d), &v * &self.c.z(d * (n - m)))
            })
            .collect()
    }

    fn act_w(&self, y: Lin, s: i64) -> Lin {
        y.into_iter()
            .filter(|(x, _)| {
                let (m, i, _, _) = self.split(*x);
                self.c.m(s - 2 * m) == i as u32
            })
            .collect()
    }

    fn act_e(&self, y: Lin) -> Lin {
        let l = self.c.ell;
        let mut out = Vec::new();
        for (x, v) in y {
            let (m, i, n, j) = self.split(x);
            if n + 1 < l {
                out.push((self.idx(m, i - 2, n + 1, j), v.clone()));
            }
            if m >= 1 {
                out.push((self.idx(m - 1, i, n, j), &v * &self.c.z(i)));
                out.push((self.idx(m - 1, i, n, j + 2), -&(&v * &self.c.z(-2 * (m - 1) + 2 * n))));
            }
        }
        merge(self.c.ord(), out)
    }

    fn act_f(&self, y: Lin, a: i64) -> Lin {
        y.into_iter()
            .filter_map(|(x, v)| {
                let (m, i, n, j) = self.split(x);
                if a + m >= self.c.ell {
                    return None;
                }
                let c = &self.c.z(a * m) * &self.c.qb[(a + m) as usize][a as usize];
                Some((self.idx(a + m, i, n, j), &v * &c))
            })
            .collect()
    }

    /// kᵖ
    pub fn k(&self, p: i64) -> Lin {
        (0..self.c.ell).map(|i| (self.idx(0, i, 0, p), self.c.one())).collect()
    }

    pub fn e(&self) -> Lin {
        (0..self.c.ell).map(|i| (self.idx(0, i, 1, 0), self.c.one())).collect()
    }

    pub fn f_div(&self, m: i64) -> Lin {
        (0..self.c.ell).map(|i| (self.idx(m, i, 0, 0), self.c.one())).collect()
    }

    pub fn omega(&self, s: i64) -> Lin {
        vec![(self.idx(0, s, 0, 0), self.c.one())]
    }

    /// αᵖ = Σ_s ζ^{ps} ω_s
    pub fn alpha(&self, p: i64) -> Lin {
        (0..self.c.ell).map(|s| (self.idx(0, s, 0, 0), self.c.z(p * s))).collect()
    }

    fn sign(&self, n: i64) -> RingElem {
        if n % 2 == 0 {
            self.c.one()
        } else {
            -&self.c.one()
        }
    }

    fn anti(&self, x: u32, inverse: bool) -> Lin {
        let (m, i, n, j) = self.split(x);
        let se = if inverse {
            neg(&lin_mul(self, &self.e(), &self.k(-2)))
        } else {
            neg(&lin_mul(self, &self.k(-2), &self.e()))
        };
        let ex = if inverse { -m * (m + 1) } else { -m * (m - 1) };
        let sf = lin_scale(&lin_mul(self, &self.f_div(m), &self.alpha(-m)), &(&self.sign(m) * &self.c.z(ex)));
        let mut f = vec![self.k(-j)];
        f.extend(std::iter::repeat_n(se, n as usize));
        f.push(self.omega(-i));
        f.push(sf);
        lin_prod(self, &f)
    }
}

impl Structure for Dbz {
    fn name(&self) -> String {
        "dbz".into()
    }
    fn dim(&self) -> usize {
        self.c.ell.pow(4) as usize
    }
    fn order(&self) -> CyclotomicOrder {
        self.c.ord()
    }
    fn label(&self, x: u32) -> String {
        let (m, i, n, j) = self.split(x);
        let f = if m == 0 { String::new() } else { format!("f({m}) ") };
        let rest = mono(&[("e", n as u32), ("k", j as u32)]);
        if rest == "1" {
            format!("{f}w{i}")
        } else {
            format!("{f}w{i} {rest}")
        }
    }
    fn unit(&self) -> Lin {
        self.k(0)
    }
    fn mul(&self, x: u32, y: u32) -> Lin {
        let (a, b, c, d) = self.split(x);
        let mut v: Lin = vec![(y, self.c.one())];
        v = self.act_k(v, d);
        for _ in 0..c {
            v = self.act_e(v);
        }
        v = self.act_w(v, b);
        self.act_f(v, a)
    }
    fn comul(&self, x: u32) -> Lin2 {
        let (m, i, n, j) = self.split(x);
        let l = self.c.ell as u32;
        let dd = self.dual.comul(self.dual.idx(m, i));
        let db = self.borel.comul(self.borel.idx(n, j));
        let mut out = Vec::with_capacity(dd.len() * db.len());
        for ((p1, p2), c1) in &dd {
            for ((x1, x2), c2) in &db {
                // the dual factor enters with the opposite coproduct
                out.push(((p2 * l * l + x1, p1 * l * l + x2), c1 * c2));
            }
        }
        merge2(self.c.ord(), out)
    }
    fn counit(&self, x: u32) -> RingElem {
        let (m, i, n, _) = self.split(x);
        if m == 0 && i == 0 && n == 0 {
            self.c.one()
        } else {
            self.c.f.zero()
        }
    }
    fn antipode(&self, x: u32) -> Lin {
        self.anti(x, false)
    }
    fn antipode_inv(&self, x: u32) -> Option<Lin> {
        Some(self.anti(x, true))
    }
}

/// D(B) with canonical R, ribbon data and normalized integrals.
pub fn dbz(ell: u32) -> Result<FiniteHopf> {
    let d = Dbz::new(ell)?;
    let c = d.c.clone();
    let l = c.ell;
    let hh = c.f.half();
    // R = Σ e^m kⁱ ⊗ f^(m)ω_i
    let mut r = Element::zero(2);
    for m in 0..l {
        for i in 0..l {
            for j in 0..l {
                r.add_term(vec![d.idx(0, j, m, i), d.idx(m, i, 0, 0)], c.one());
            }
        }
    }
    // κ = α^{½}k⁻¹
    let kappa = lin_to_el(&lin_mul(&d, &d.alpha(hh), &d.k(-1)));
    let kappa_inv = lin_to_el(&lin_mul(&d, &d.alpha(-hh), &d.k(1)));
    let lambda = (0..d.dim() as u32)
        .map(|x| {
            let (m, i, n, j) = d.split(x);
            if m == l - 1 && n == l - 1 && j == 0 {
                c.z(1 - i)
            } else {
                c.f.zero()
            }
        })
        .collect();
    // Λ_D = ζ ω₀ (Σ kⁱ) f^(ℓ−1) e^{ℓ−1}
    let ks: Lin = (0..l).flat_map(|p| d.k(p)).collect();
    let ks = merge(c.ord(), ks);
    let big = lin_scale(&lin_prod(&d, &[d.omega(0), ks, d.f_div(l - 1), lin_prod(&d, &vec![d.e(); (l - 1) as usize])]), &c.z(1));
    let mut h = FiniteHopf::new(Arc::new(d));
    let r_inv = h.antipode(&r, 0);
    let u = compute_u(&h, &r);
    let u_inv = compute_u_inv(&h, &r);
    let ribbon = h.mul(&u, &kappa_inv);
    let ribbon_inv = h.mul(&kappa, &u_inv);
    h.quasi = Some(QuasiTriData { r, r_inv });
    h.ribbon = Some(RibbonData { u, u_inv, kappa, kappa_inv, ribbon, ribbon_inv });
    h.integrals = Some(IntegralData { lambda, cointegral: lin_to_el(&big), g: None, alpha: None });
    Ok(h)
}

// ---------------------------------------------------------------- 𝒜

/// 𝒜: the group algebra of z with z^ℓ = 1.
pub struct GroupZ {
    c: Consts,
}

impl GroupZ {
    pub fn new(ell: u32) -> Result<Self> {
        Ok(GroupZ { c: Consts::new(ell)? })
    }
}

impl Structure for GroupZ {
    fn name(&self) -> String {
        "A".into()
    }
    fn dim(&self) -> usize {
        self.c.ell as usize
    }
    fn order(&self) -> CyclotomicOrder {
        self.c.ord()
    }
    fn label(&self, x: u32) -> String {
        mono(&[("z", x)])
    }
    fn unit(&self) -> Lin {
        vec![(0, self.c.one())]
    }
    fn mul(&self, x: u32, y: u32) -> Lin {
        vec![(self.c.m(x as i64 + y as i64), self.c.one())]
    }
    fn comul(&self, x: u32) -> Lin2 {
        vec![((x, x), self.c.one())]
    }
    fn counit(&self, _x: u32) -> RingElem {
        self.c.one()
    }
    fn antipode(&self, x: u32) -> Lin {
        vec![(self.c.m(-(x as i64)), self.c.one())]
    }
    fn antipode_inv(&self, x: u32) -> Option<Lin> {
        Some(self.antipode(x))
    }
}

/// 𝒜 with R = (1/ℓ)Σ ζ^{−2ij} zⁱ⊗zʲ, κ = 1, r = u.
#[allow(non_snake_case)]
pub fn algebra_A(ell: u32) -> Result<FiniteHopf> {
    let g = GroupZ::new(ell)?;
    let c = g.c.clone();
    let l = c.ell;
    let inv_l = c.f.ratio(1, l);
    let mut r = Element::zero(2);
    let mut r_inv = Element::zero(2);
    for i in 0..l {
        for j in 0..l {
            r.add_term(vec![i as u32, j as u32], &inv_l * &c.z(-2 * i * j));
            r_inv.add_term(vec![i as u32, j as u32], &inv_l * &c.z(2 * i * j));
        }
    }
    let sq = c.f.sqrt_ell();
    let lambda = (0..l).map(|a| if a == 0 { sq.clone() } else { c.f.zero() }).collect();
    let sq_inv = sq.inv()?;
    let big = (0..l).map(|a| (a as u32, sq_inv.clone())).collect::<Lin>();
    let mut h = FiniteHopf::new(Arc::new(g));
    let u = compute_u(&h, &r);
    let u_inv = compute_u_inv(&h, &r);
    let one = h.unit(1);
    h.quasi = Some(QuasiTriData { r, r_inv });
    h.ribbon = Some(RibbonData {
        u: u.clone(),
        u_inv: u_inv.clone(),
        kappa: one.clone(),
        kappa_inv: one,
        ribbon: u,
        ribbon_inv: u_inv,
    });
    h.integrals = Some(IntegralData { lambda, cointegral: lin_to_el(&big), g: Some(h.unit(1)), alpha: None });
    Ok(h)
}

// ---------------------------------------------------------------- U_ζ

/// Restricted U_ζ(sl2): basis FᵃEᵇKᶜ at index (a·ℓ + b)·ℓ + c.
pub struct UZeta {
    c: Consts,
    /// 1/(ζ − ζ⁻¹)
    inv_d: RingElem,
}

impl UZeta {
    pub fn new(ell: u32) -> Result<Self> {
        let c = Consts::new(ell)?;
        let inv_d = (&c.z(1) - &c.z(-1)).inv()?;
        Ok(UZeta { c, inv_d })
    }

    pub fn idx(&self, a: i64, b: i64, k: i64) -> u32 {
        let l = self.c.ell as u32;
        (self.c.m(a) * l + self.c.m(b)) * l + self.c.m(k)
    }

    pub fn split(&self, x: u32) -> (i64, i64, i64) {
        let l = self.c.ell as u32;
        ((x / (l * l)) as i64, (x / l % l) as i64, (x % l) as i64)
    }

    pub fn gen_e(&self) -> Lin {
        vec![(self.idx(0, 1, 0), self.c.one())]
    }

    pub fn gen_f(&self) -> Lin {
        vec![(self.idx(1, 0, 0), self.c.one())]
    }

    pub fn gen_k(&self, p: i64) -> Lin {
        vec![(self.idx(0, 0, p), self.c.one())]
    }

    fn act_k(&self, y: Lin, d: i64) -> Lin {
        y.into_iter()
            .map(|(x, v)| {
                let (a, b, k) = self.split(x);
                (self.idx(a, b, k + d), &v * &self.c.z(d * (2 * b - 2 * a)))
            })
            .collect()
    }

    fn act_f(&self, y: Lin) -> Lin {
        y.into_iter()
            .filter_map(|(x, v)| {
                let (a, b, k) = self.split(x);
                (a + 1 < self.c.ell).then(|| (self.idx(a + 1, b, k), v))
            })
            .collect()
    }

    /// E·FᵃEᵇKᵏ
    fn e_on(&self, a: i64, b: i64, k: i64) -> Lin {
        if a == 0 {
            return if b + 1 < self.c.ell { vec![(self.idx(0, b + 1, k), self.c.one())] } else { Vec::new() };
        }
        let mut out = self.act_f(self.e_on(a - 1, b, k));
        // [E, F] = (K − K⁻¹)/(ζ − ζ⁻¹) acting on F^{a−1}EᵇKᵏ
        let w = 2 * b - 2 * (a - 1);
        out.push((self.idx(a - 1, b, k + 1), &self.c.z(w) * &self.inv_d));
        out.push((self.idx(a - 1, b, k - 1), -&(&self.c.z(-w) * &self.inv_d)));
        merge(self.c.ord(), out)
    }

    fn act_e(&self, y: Lin) -> Lin {
        let mut out = Vec::new();
        for (x, v) in y {
            let (a, b, k) = self.split(x);
            for (z, c) in self.e_on(a, b, k) {
                out.push((z, &v * &c));
            }
        }
        merge(self.c.ord(), out)
    }

    fn tensor_gen(&self, terms: &[(u32, u32)]) -> Lin2 {
        terms.iter().map(|k| (*k, self.c.one())).collect()
    }
}

impl Structure for UZeta {
    fn name(&self) -> String {
        "uzeta".into()
    }
    fn dim(&self) -> usize {
        self.c.ell.pow(3) as usize
    }
    fn order(&self) -> CyclotomicOrder {
        self.c.ord()
    }
    fn label(&self, x: u32) -> String {
        let (a, b, k) = self.split(x);
        mono(&[("F", a as u32), ("E", b as u32), ("K", k as u32)])
    }
    fn unit(&self) -> Lin {
        self.gen_k(0)
    }
    fn mul(&self, x: u32, y: u32) -> Lin {
        let (a, b, k) = self.split(x);
        let mut v: Lin = vec![(y, self.c.one())];
        v = self.act_k(v, k);
        for _ in 0..b {
            v = self.act_e(v);
        }
        for _ in 0..a {
            v = self.act_f(v);
        }
        v
    }
    fn comul(&self, x: u32) -> Lin2 {
        let (a, b, k) = self.split(x);
        let one = self.idx(0, 0, 0);
        let (e, f) = (self.idx(0, 1, 0), self.idx(1, 0, 0));
        let (kk, ki) = (self.idx(0, 0, 1), self.idx(0, 0, -1));
        let df = self.tensor_gen(&[(f, ki), (one, f)]);
        let de = self.tensor_gen(&[(e, one), (kk, e)]);
        let dk = vec![((self.idx(0, 0, k), self.idx(0, 0, k)), self.c.one())];
        let p = lin2_mul(self, &lin2_pow(self, &df, a as usize), &lin2_pow(self, &de, b as usize));
        lin2_mul(self, &p, &dk)
    }
    fn counit(&self, x: u32) -> RingElem {
        let (a, b, _) = self.split(x);
        if a == 0 && b == 0 {
            self.c.one()
        } else {
            self.c.f.zero()
        }
    }
    fn antipode(&self, x: u32) -> Lin {
        // K^{−k} S(E)ᵇ S(F)ᵃ with S(E) = −K⁻¹E, S(F) = −FK
        let (a, b, k) = self.split(x);
        let se = neg(&lin_mul(self, &self.gen_k(-1), &self.gen_e()));
        let sf = neg(&lin_mul(self, &self.gen_f(), &self.gen_k(1)));
        let mut f = vec![self.gen_k(-k)];
        f.extend(std::iter::repeat_n(se, b as usize));
        f.extend(std::iter::repeat_n(sf, a as usize));
        lin_prod(self, &f)
    }
    fn antipode_inv(&self, x: u32) -> Option<Lin> {
        // S⁻¹(E) = −EK⁻¹, S⁻¹(F) = −KF
        let (a, b, k) = self.split(x);
        let se = neg(&lin_mul(self, &self.gen_e(), &self.gen_k(-1)));
        let sf = neg(&lin_mul(self, &self.gen_k(1), &self.gen_f()));
        let mut f = vec![self.gen_k(-k)];
        f.extend(std::iter::repeat_n(se, b as usize));
        f.extend(std::iter::repeat_n(sf, a as usize));
        Some(lin_prod(self, &f))
    }
}

/// τ_m = (ζ⁻¹ − ζ)^m / (ζ^{m(m−1)/2}[m]!)
fn tau(c: &Consts, m: i64) -> Result<RingElem> {
    let d = &c.z(-1) - &c.z(1);
    let num = d.pow(m)?;
    let den = &c.z(m * (m - 1) / 2) * &c.f.qfact(m);
    Ok(&num * &den.inv()?)
}

/// U_ζ with R = (Σ τ_m E^m⊗F^m)·(1/ℓ)Σ ζ^{2ij}Kⁱ⊗Kʲ, κ = K⁻¹ and the right integral.
pub fn u_zeta(ell: u32) -> Result<FiniteHopf> {
    let u = UZeta::new(ell)?;
    let c = u.c.clone();
    let l = c.ell;
    let inv_l = c.f.ratio(1, l);
    let mut theta = Element::zero(2);
    for m in 0..l {
        theta.add_term(vec![u.idx(0, m, 0), u.idx(m, 0, 0)], tau(&c, m)?);
    }
    let mut dd = Element::zero(2);
    for i in 0..l {
        for j in 0..l {
            dd.add_term(vec![u.idx(0, 0, i), u.idx(0, 0, j)], &inv_l * &c.z(2 * i * j));
        }
    }
    let kappa = Element::basis(vec![u.idx(0, 0, -1)], c.one());
    let kappa_inv = Element::basis(vec![u.idx(0, 0, 1)], c.one());
    // λ(F^{ℓ−1}E^{ℓ−1}K^{ℓ−1}) = [ℓ−1]!√ℓ/(ζ−ζ⁻¹)^{ℓ−1}
    let top = &(&c.f.qfact(l - 1) * &c.f.sqrt_ell()) * &u.inv_d.pow(l - 1)?;
    let lambda: Vec<RingElem> = (0..u.dim() as u32)
        .map(|x| if u.split(x) == (l - 1, l - 1, l - 1) { top.clone() } else { c.f.zero() })
        .collect();
    let mut h = FiniteHopf::new(Arc::new(u));
    let r = h.mul(&theta, &dd);
    let r_inv = h.antipode(&r, 0);
    let uu = compute_u(&h, &r);
    let uu_inv = compute_u_inv(&h, &r);
    let ribbon = h.mul(&uu, &kappa_inv);
    let ribbon_inv = h.mul(&kappa, &uu_inv);
    // cointegral from the left-cointegral equations, scaled so that λ(Λ) = 1
    let found = find_integrals(&h)?;
    let s = h.eval_form(&lambda, &found.cointegral).inv()?;
    let cointegral = found.cointegral.scale(&s);
    h.quasi = Some(QuasiTriData { r, r_inv });
    h.ribbon = Some(RibbonData { u: uu, u_inv: uu_inv, kappa, kappa_inv, ribbon, ribbon_inv });
    h.integrals = Some(IntegralData { lambda, cointegral, g: None, alpha: None });
    Ok(h)
}

// ---------------------------------------------------------------- U_ζ ⊗ 𝒜

/// U_ζ ⊗ 𝒜 with the product R-matrix R_{U,13}R_{𝒜,24}, product ribbon data and integrals.
pub fn u_zeta_times_a(ell: u32) -> Result<(FiniteHopf, Arc<TensorProduct>)> {
    let u = Arc::new(u_zeta(ell)?);
    let a = Arc::new(algebra_A(ell)?);
    let tp = Arc::new(TensorProduct { a: u.clone(), b: a.clone() });
    let mut h = FiniteHopf::new(tp.clone());
    let (qu, qa) = (u.quasi.as_ref().expect("R"), a.quasi.as_ref().expect("R"));
    let (ru, ra) = (u.ribbon.as_ref().expect("ribbon"), a.ribbon.as_ref().expect("ribbon"));
    let pair2 = |x: &Element, y: &Element| -> Element {
        // (x₁⊗x₂),(y₁⊗y₂) ↦ (x₁⊗y₁)⊗(x₂⊗y₂)
        let mut out = Element::zero(2);
        for (kx, vx) in x.iter() {
            for (ky, vy) in y.iter() {
                out.add_term(vec![tp.join(kx[0], ky[0]), tp.join(kx[1], ky[1])], vx * vy);
            }
        }
        out
    };
    let quasi = QuasiTriData { r: pair2(&qu.r, &qa.r), r_inv: pair2(&qu.r_inv, &qa.r_inv) };
    let ribbon = RibbonData {
        u: tp.pair(&ru.u, &ra.u),
        u_inv: tp.pair(&ru.u_inv, &ra.u_inv),
        kappa: tp.pair(&ru.kappa, &ra.kappa),
        kappa_inv: tp.pair(&ru.kappa_inv, &ra.kappa_inv),
        ribbon: tp.pair(&ru.ribbon, &ra.ribbon),
        ribbon_inv: tp.pair(&ru.ribbon_inv, &ra.ribbon_inv),
    };
    let (iu, ia) = (u.integrals.as_ref().expect("integrals"), a.integrals.as_ref().expect("integrals"));
    let lambda = (0..h.dim() as u32)
        .map(|x| {
            let (p, q) = tp.split(x);
            &iu.lambda[p as usize] * &ia.lambda[q as usize]
        })
        .collect();
    let cointegral = tp.pair(&iu.cointegral, &ia.cointegral);
    h.quasi = Some(quasi);
    h.ribbon = Some(ribbon);
    h.integrals = Some(IntegralData { lambda, cointegral, g: None, alpha: None });
    Ok((h, tp))
}

// ---------------------------------------------------------------- EFKZ

/// Mutually inverse changes of coordinates between the PBW basis of D(B)
/// and the basis FᵃEᵇKᶜZᵈ, the latter indexed as in U_ζ ⊗ 𝒜.
pub struct Efkz {
    pub ell: u32,
    pub forward: Vec<Lin>,
    pub backward: Vec<Lin>,
}

impl Efkz {
    /// Applies forward to every slot.
    pub fn to_efkz(&self, x: &Element) -> Element {
        map_all(x, &self.forward)
    }

    pub fn to_pbw(&self, x: &Element) -> Element {
        map_all(x, &self.backward)
    }
}

/// Applies a basis map to every tensor slot.
pub fn map_all(x: &Element, table: &[Lin]) -> Element {
    let mut y = x.clone();
    for s in 0..x.deg() {
        y = y.map_slot(s, |i| table[i as usize].clone());
    }
    y
}

/// Builds both coordinate changes.
///
/// e = (ζ−ζ⁻¹)ZE, k = K^{½}Z^{½}, α = K⁻¹Z, f = −F one way;
/// E = α^{−½}k⁻¹e/(ζ−ζ⁻¹), F = −f, K = α^{−½}k, Z = α^{½}k the other.
pub fn efkz_basis(ell: u32) -> Result<Efkz> {
    let d = Dbz::new(ell)?;
    let u = Arc::new(FiniteHopf::new(Arc::new(UZeta::new(ell)?)));
    let a = Arc::new(FiniteHopf::new(Arc::new(GroupZ::new(ell)?)));
    let tp = TensorProduct { a: u, b: a };
    let c = d.c.clone();
    let l = c.ell;
    let hh = c.f.half();
    let ud = UZeta::new(ell)?;
    let ua = |x: u32, z: i64| tp.join(x, c.m(z));
    let dz = &c.z(1) - &c.z(-1);
    let sign = |n: i64| if n % 2 == 0 { c.one() } else { -&c.one() };

    let fe: Lin = vec![(ua(ud.idx(0, 1, 0), 1), dz.clone())];
    let fk: Lin = vec![(ua(ud.idx(0, 0, hh), hh), c.one())];
    let fomega = |i: i64| -> Lin {
        (0..l).map(|p| (ua(ud.idx(0, 0, -p), p), &c.f.ratio(1, l) * &c.z(-p * i))).collect()
    };
    let mut forward = Vec::with_capacity(d.dim());
    for x in 0..d.dim() as u32 {
        let (m, i, n, j) = d.split(x);
        let fm = &sign(m) * &(&c.z(m * (m - 1) / 2) * &c.f.qfact(m)).inv()?;
        let mut f = vec![vec![(ua(ud.idx(m, 0, 0), 0), fm)], fomega(i)];
        f.extend(std::iter::repeat_n(fe.clone(), n as usize));
        f.extend(std::iter::repeat_n(fk.clone(), j as usize));
        forward.push(merge(c.ord(), lin_prod(&tp, &f)));
    }

    let dz_inv = dz.inv()?;
    let be = lin_scale(&lin_prod(&d, &[d.alpha(-hh), d.k(-1), d.e()]), &dz_inv);
    let bf = neg(&d.f_div(1));
    let bk = lin_mul(&d, &d.alpha(-hh), &d.k(1));
    let bz = lin_mul(&d, &d.alpha(hh), &d.k(1));
    let mut backward = Vec::with_capacity(tp.dim());
    for x in 0..tp.dim() as u32 {
        let (p, zd) = tp.split(x);
        let (a_, b_, k_) = ud.split(p);
        let mut f = Vec::new();
        f.extend(std::iter::repeat_n(bf.clone(), a_ as usize));
        f.extend(std::iter::repeat_n(be.clone(), b_ as usize));
        f.extend(std::iter::repeat_n(bk.clone(), k_ as usize));
        f.extend(std::iter::repeat_n(bz.clone(), zd as usize));
        backward.push(merge(c.ord(), lin_prod(&d, &f)));
    }
    Ok(Efkz { ell, forward, backward })
}

/// The twist F = (1/ℓ)Σ ζ^{−2ij} Kⁱ⊗Zʲ and its inverse, in the PBW basis of D(B).
pub fn sl2_twist_element(ell: u32) -> Result<(Element, Element)> {
    let d = Dbz::new(ell)?;
    let c = d.c.clone();
    let l = c.ell;
    let hh = c.f.half();
    let kp: Vec<Lin> = (0..l).map(|i| lin_mul(&d, &d.alpha(-hh * i), &d.k(i))).collect();
    let zp: Vec<Lin> = (0..l).map(|j| lin_mul(&d, &d.alpha(hh * j), &d.k(j))).collect();
    let inv_l = c.f.ratio(1, l);
    let build = |sign: i64| {
        let mut out = Element::zero(2);
        for i in 0..l {
            for j in 0..l {
                let s = &inv_l * &c.z(-2 * sign * i * j);
                for (x, cx) in &kp[i as usize] {
                    for (y, cy) in &zp[j as usize] {
                        out.add_term(vec![*x, *y], &s * &(cx * cy));
                    }
                }
            }
        }
        out
    };
    Ok((build(1), build(-1)))
}

/// χ̂ on EFKZ coordinates: FᵃEᵇKᶜZᵈ ↦ FᵃEᵇKᶜ ⊗ Z^{d+a−b}.
pub fn chi_hat_index(ell: u32, x: u32) -> u32 {
    let l = ell;
    let (p, d) = (x / l, x % l);
    let (a, b) = (p / (l * l), p / l % l);
    let nd = (d as i64 + a as i64 - b as i64).rem_euclid(l as i64) as u32;
    p * l + nd
}

/// χ̂ applied to an element of D(B) given in PBW coordinates.
pub fn chi_hat(efkz: &Efkz, x: &Element) -> Element {
    let y = efkz.to_efkz(x);
    let l = efkz.ell;
    let one = Sl2Field::new(l).expect("odd ℓ").one();
    let mut out = y;
    for s in 0..out.deg() {
        out = out.map_slot(s, |i| vec![(chi_hat_index(l, i), one.clone())]);
    }
    out
}

/// The sl2 twist on D(B) as a checked gauge transformation.
pub fn sl2_twist(h: &FiniteHopf) -> Result<(crate::gauge::GaugeTwist, crate::hopf::Report)> {
    let ell = (h.dim() as f64).sqrt().sqrt().round() as u32;
    let (f, f_inv) = sl2_twist_element(ell)?;
    crate::gauge::make_twist(h, f, Some(f_inv))
}

/// x_F = Σ K⁻ʲP_j in PBW coordinates, with P_j = (1/ℓ)Σ_i ζ^{−2ij}Zⁱ.
pub fn sl2_x_f(ell: u32) -> Result<Element> {
    let ef = efkz_basis(ell)?;
    let c = Consts::new(ell)?;
    let l = c.ell;
    let u = UZeta::new(ell)?;
    let inv_l = c.f.ratio(1, l);
    let mut x = Element::zero(1);
    for j in 0..l {
        for i in 0..l {
            x.add_term(vec![u.idx(0, 0, -j) * ell + c.m(i)], &inv_l * &c.z(-2 * i * j));
        }
    }
    Ok(ef.to_pbw(&x))
}

/// Algebra generators used for adjoint-invariance checks; all basis vectors when the
/// algebra is not one of the named presentations.
pub fn generators(h: &FiniteHopf) -> Vec<Element> {
    let ell = crate::hennings::ell_of(h);
    let name = h.name();
    let built = match name.as_str() {
        "dbz" => Dbz::new(ell).ok().map(|d| {
            [d.k(1), d.e(), d.f_div(1), d.alpha(1)].iter().map(lin_to_el).collect::<Vec<_>>()
        }),
        "uzeta" => UZeta::new(ell)
            .ok()
            .map(|u| [u.gen_e(), u.gen_f(), u.gen_k(1)].iter().map(lin_to_el).collect::<Vec<_>>()),
        "A" if h.dim() > 1 => Some(vec![h.basis_el(1)]),
        "uzeta⊗A" => UZeta::new(ell).ok().map(|u| {
            let l = ell;
            let lift = |x: Lin| lin_to_el(&x.into_iter().map(|(i, c)| (i * l, c)).collect::<Lin>());
            vec![lift(u.gen_e()), lift(u.gen_f()), lift(u.gen_k(1)), h.basis_el(1)]
        }),
        _ => None,
    };
    built.unwrap_or_else(|| (0..h.dim() as u32).map(|i| h.basis_el(i)).collect())
}
