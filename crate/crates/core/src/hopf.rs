//! Finite-rank Hopf algebras given by basis oracles, tensor elements, the
//! standard verifiers, integrals, and the Drinfeld double.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::lin::{Echelon, ModP, Row};
use crate::ring::{CyclotomicOrder, RingElem};

/// Linear combination of basis vectors.
pub type Lin = Vec<(u32, RingElem)>;
/// Linear combination of basis pairs.
pub type Lin2 = Vec<((u32, u32), RingElem)>;

/// Structure-constant oracles on basis vectors.
pub trait Structure: Send + Sync {
    fn name(&self) -> String;
    fn dim(&self) -> usize;
    fn order(&self) -> CyclotomicOrder;
    fn label(&self, i: u32) -> String {
        format!("b{i}")
    }
    fn unit(&self) -> Lin;
    fn mul(&self, i: u32, j: u32) -> Lin;
    fn comul(&self, i: u32) -> Lin2;
    fn counit(&self, i: u32) -> RingElem;
    fn antipode(&self, i: u32) -> Lin;
    fn antipode_inv(&self, _i: u32) -> Option<Lin> {
        None
    }
}

/// Vector in H^⊗k with sparse coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    deg: usize,
    terms: BTreeMap<Vec<u32>, RingElem>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element<{}>{{", self.deg)?;
        for (k, v) in &self.terms {
            write!(f, " {k:?}: {v};")?;
        }
        write!(f, " }}")
    }
}

impl Element {
    pub fn zero(deg: usize) -> Self {
        Element { deg, terms: BTreeMap::new() }
    }

    pub fn scalar(c: RingElem) -> Self {
        let mut e = Element::zero(0);
        e.add_term(vec![], c);
        e
    }

    pub fn basis(idx: Vec<u32>, c: RingElem) -> Self {
        let mut e = Element::zero(idx.len());
        e.add_term(idx, c);
        e
    }

    pub fn from_lin(l: &Lin) -> Self {
        let mut e = Element::zero(1);
        for (i, c) in l {
            e.add_term(vec![*i], c.clone());
        }
        e
    }

    pub fn from_lin2(l: &Lin2) -> Self {
        let mut e = Element::zero(2);
        for ((i, j), c) in l {
            e.add_term(vec![*i, *j], c.clone());
        }
        e
    }

    pub fn to_lin(&self) -> Lin {
        assert_eq!(self.deg, 1);
        self.terms.iter().map(|(k, v)| (k[0], v.clone())).collect()
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &RingElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[u32]) -> Option<&RingElem> {
        self.terms.get(idx)
    }

    /// Scalar value of a degree-0 element.
    pub fn as_scalar(&self, ord: CyclotomicOrder) -> RingElem {
        assert_eq!(self.deg, 0);
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(|| ord.zero())
    }

    pub fn add_term(&mut self, idx: Vec<u32>, c: RingElem) {
        debug_assert_eq!(idx.len(), self.deg);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.deg, other.deg);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element { deg: self.deg, terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    pub fn scale(&self, c: &RingElem) -> Element {
        let mut out = Element::zero(self.deg);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn tensor(&self, other: &Element) -> Element {
        let mut out = Element::zero(self.deg + other.deg);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut k = a.clone();
                k.extend_from_slice(b);
                out.add_term(k, x * y);
            }
        }
        out
    }

    /// Slot i of the result is slot perm[i] of self.
    pub fn permute(&self, perm: &[usize]) -> Element {
        assert_eq!(perm.len(), self.deg);
        let mut out = Element::zero(self.deg);
        for (k, v) in &self.terms {
            out.add_term(perm.iter().map(|&p| k[p]).collect(), v.clone());
        }
        out
    }

    pub fn flip(&self) -> Element {
        self.permute(&[1, 0])
    }

    /// Applies a linear map on one tensor slot.
    pub fn map_slot(&self, slot: usize, f: impl Fn(u32) -> Lin) -> Element {
        let mut cache: HashMap<u32, Lin> = HashMap::new();
        let mut out = Element::zero(self.deg);
        for (k, v) in &self.terms {
            let img = cache.entry(k[slot]).or_insert_with(|| f(k[slot]));
            for (j, c) in img.iter() {
                let mut nk = k.clone();
                nk[slot] = *j;
                out.add_term(nk, v * c);
            }
        }
        out
    }

    /// Contracts one slot with a linear form.
    pub fn contract_slot(&self, slot: usize, form: impl Fn(u32) -> RingElem) -> Element {
        let mut out = Element::zero(self.deg - 1);
        for (k, v) in &self.terms {
            let c = form(k[slot]);
            if c.is_zero() {
                continue;
            }
            let mut nk = k.clone();
            nk.remove(slot);
            out.add_term(nk, v * &c);
        }
        out
    }
}

/// Outcome of one verification suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub failure: Option<String>,
}

impl Report {
    pub fn new(name: &str) -> Self {
        Report { name: name.to_string(), checked: 0, failure: None }
    }

    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one check; keeps only the first failure.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        if self.failure.is_none() {
            self.failure = other.failure.map(|f| format!("{}: {}", other.name, f));
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{}: pass ({} checks)", self.name, self.checked),
            Some(m) => write!(f, "{}: FAIL after {} checks: {}", self.name, self.checked, m),
        }
    }
}

/// Which basis tuples a verifier visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

impl Coverage {
    /// Exhaustive for small dimensions, sampled otherwise.
    pub fn auto(dim: usize) -> Coverage {
        if dim <= 125 {
            Coverage::Exhaustive
        } else {
            Coverage::Sample { count: 500, seed: 7 }
        }
    }

    pub fn tuples(&self, dim: usize, arity: usize) -> Vec<Vec<u32>> {
        match *self {
            Coverage::Exhaustive => {
                let mut out = vec![vec![]];
                for _ in 0..arity {
                    out = out
                        .into_iter()
                        .flat_map(|t| {
                            (0..dim as u32).map(move |i| {
                                let mut t = t.clone();
                                t.push(i);
                                t
                            })
                        })
                        .collect();
                }
                out
            }
            Coverage::Sample { count, seed } => {
                let mut rng = StdRng::seed_from_u64(seed ^ (arity as u64) << 32);
                (0..count).map(|_| (0..arity).map(|_| rng.gen_range(0..dim as u32)).collect()).collect()
            }
        }
    }

    pub fn singles(&self, dim: usize) -> Vec<u32> {
        match *self {
            Coverage::Exhaustive => (0..dim as u32).collect(),
            Coverage::Sample { count, .. } if count >= dim => (0..dim as u32).collect(),
            _ => self.tuples(dim, 1).into_iter().map(|t| t[0]).collect(),
        }
    }
}

/// R-matrix with its inverse.
#[derive(Debug, Clone)]
pub struct QuasiTriData {
    pub r: Element,
    pub r_inv: Element,
}

/// Balancing data: u, κ and the ribbon element r = uκ⁻¹, with inverses.
#[derive(Debug, Clone)]
pub struct RibbonData {
    pub u: Element,
    pub u_inv: Element,
    pub kappa: Element,
    pub kappa_inv: Element,
    pub ribbon: Element,
    pub ribbon_inv: Element,
}

/// Right integral, cointegral and moduli.
#[derive(Debug, Clone)]
pub struct IntegralData {
    pub lambda: Vec<RingElem>,
    pub cointegral: Element,
    pub g: Option<Element>,
    pub alpha: Option<Vec<RingElem>>,
}

type Cache<K, V> = RwLock<HashMap<K, Arc<V>>>;

fn cached<K: std::hash::Hash + Eq + Copy, V>(c: &Cache<K, V>, k: K, f: impl FnOnce() -> V) -> Arc<V> {
    if let Some(v) = c.read().expect("cache poisoned").get(&k) {
        return v.clone();
    }
    let v = Arc::new(f());
    c.write().expect("cache poisoned").entry(k).or_insert(v).clone()
}

/// A finite-rank Hopf algebra with memoized structure maps and optional extra data.
pub struct FiniteHopf {
    s: Arc<dyn Structure>,
    ord: CyclotomicOrder,
    dim: usize,
    unit: Lin,
    counits: Vec<RingElem>,
    mul_c: Cache<(u32, u32), Lin>,
    comul_c: Cache<u32, Lin2>,
    anti_c: Cache<u32, Lin>,
    anti_inv_c: Cache<u32, Lin>,
    pub quasi: Option<QuasiTriData>,
    pub ribbon: Option<RibbonData>,
    pub integrals: Option<IntegralData>,
}

impl fmt::Debug for FiniteHopf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteHopf({}, dim {}, order {})", self.name(), self.dim, self.ord.n())
    }
}

impl FiniteHopf {
    pub fn new(s: Arc<dyn Structure>) -> Self {
        let dim = s.dim();
        let ord = s.order();
        let unit = s.unit();
        let counits = (0..dim as u32).map(|i| s.counit(i)).collect();
        FiniteHopf {
            s,
            ord,
            dim,
            unit,
            counits,
            mul_c: RwLock::default(),
            comul_c: RwLock::default(),
            anti_c: RwLock::default(),
            anti_inv_c: RwLock::default(),
            quasi: None,
            ribbon: None,
            integrals: None,
        }
    }

    pub fn structure(&self) -> &Arc<dyn Structure> {
        &self.s
    }

    pub fn name(&self) -> String {
        self.s.name()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> CyclotomicOrder {
        self.ord
    }

    pub fn label(&self, i: u32) -> String {
        self.s.label(i)
    }

    pub fn unit_lin(&self) -> &Lin {
        &self.unit
    }

    pub fn basis_mul(&self, i: u32, j: u32) -> Arc<Lin> {
        cached(&self.mul_c, (i, j), || self.s.mul(i, j))
    }

    pub fn basis_comul(&self, i: u32) -> Arc<Lin2> {
        cached(&self.comul_c, i, || self.s.comul(i))
    }

    pub fn basis_counit(&self, i: u32) -> &RingElem {
        &self.counits[i as usize]
    }

    pub fn basis_antipode(&self, i: u32) -> Arc<Lin> {
        cached(&self.anti_c, i, || self.s.antipode(i))
    }

    pub fn basis_antipode_inv(&self, i: u32) -> Arc<Lin> {
        if let Some(v) = self.anti_inv_c.read().expect("cache poisoned").get(&i) {
            return v.clone();
        }
        if let Some(l) = self.s.antipode_inv(i) {
            return cached(&self.anti_inv_c, i, || l);
        }
        if let Some(rib) = &self.ribbon {
            // S⁻¹(x) = S(κ⁻¹ x κ)
            let x = Element::basis(vec![i], self.ord.one());
            let c = self.mul(&self.mul(&rib.kappa_inv, &x), &rib.kappa);
            let l = self.antipode(&c, 0).to_lin();
            return cached(&self.anti_inv_c, i, || l);
        }
        self.fill_antipode_inverse().expect("antipode must be invertible");
        self.anti_inv_c.read().expect("cache poisoned")[&i].clone()
    }

    /// Inverts the antipode matrix by elimination and fills the cache.
    fn fill_antipode_inverse(&self) -> Result<()> {
        let n = self.dim;
        // rows of [S | I]; after reduction the row with pivot j holds row j of S⁻¹
        let mut rows: Vec<Row> = vec![BTreeMap::new(); n];
        for j in 0..n as u32 {
            for (k, c) in self.basis_antipode(j).iter() {
                rows[*k as usize].insert(j as usize, c.clone());
            }
        }
        for (k, r) in rows.iter_mut().enumerate() {
            r.insert(n + k, self.ord.one());
        }
        let mut ech = Echelon::new(2 * n);
        for r in rows {
            ech.insert(r);
        }
        if (0..n).any(|j| ech.row(j).is_none()) {
            return Err(Error::Domain("antipode is singular".into()));
        }
        let mut inv: Vec<Lin> = vec![Vec::new(); n];
        for j in 0..n {
            for (col, c) in ech.row(j).expect("pivot") {
                if *col >= n {
                    inv[col - n].push((j as u32, c.clone()));
                }
            }
        }
        let mut w = self.anti_inv_c.write().expect("cache poisoned");
        for (k, l) in inv.into_iter().enumerate() {
            w.entry(k as u32).or_insert_with(|| Arc::new(l));
        }
        Ok(())
    }

    pub fn unit(&self, deg: usize) -> Element {
        let mut e = Element::scalar(self.ord.one());
        let u = Element::from_lin(&self.unit);
        for _ in 0..deg {
            e = e.tensor(&u);
        }
        e
    }

    pub fn basis_el(&self, i: u32) -> Element {
        Element::basis(vec![i], self.ord.one())
    }

    /// Componentwise product in H^⊗k.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        assert_eq!(a.deg, b.deg, "degree mismatch in product");
        let mut out = Element::zero(a.deg);
        for (ka, va) in &a.terms {
            for (kb, vb) in &b.terms {
                let c = va * vb;
                let mut partial: Vec<(Vec<u32>, RingElem)> = vec![(Vec::with_capacity(a.deg), c)];
                for s in 0..a.deg {
                    let p = self.basis_mul(ka[s], kb[s]);
                    let mut next = Vec::with_capacity(partial.len() * p.len());
                    for (idx, cc) in &partial {
                        for (j, pc) in p.iter() {
                            let mut ni = idx.clone();
                            ni.push(*j);
                            next.push((ni, cc * pc));
                        }
                    }
                    partial = next;
                }
                for (idx, c) in partial {
                    out.add_term(idx, c);
                }
            }
        }
        out
    }

    pub fn mul_all(&self, xs: &[&Element]) -> Element {
        let mut acc = self.unit(xs[0].deg);
        for x in xs {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn pow(&self, x: &Element, n: usize) -> Element {
        let mut acc = self.unit(x.deg);
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Applies Δ to one slot, splitting it into two adjacent slots.
    pub fn comul(&self, a: &Element, slot: usize) -> Element {
        let mut out = Element::zero(a.deg + 1);
        for (k, v) in &a.terms {
            for ((i, j), c) in self.basis_comul(k[slot]).iter() {
                let mut nk = Vec::with_capacity(a.deg + 1);
                nk.extend_from_slice(&k[..slot]);
                nk.push(*i);
                nk.push(*j);
                nk.extend_from_slice(&k[slot + 1..]);
                out.add_term(nk, v * c);
            }
        }
        out
    }

    /// Iterated coproduct H → H^⊗n.
    pub fn comul_n(&self, a: &Element, n: usize) -> Element {
        let mut x = a.clone();
        for _ in 1..n {
            let last = x.deg - 1;
            x = self.comul(&x, last);
        }
        x
    }

    pub fn counit(&self, a: &Element, slot: usize) -> Element {
        a.contract_slot(slot, |i| self.counits[i as usize].clone())
    }

    pub fn antipode(&self, a: &Element, slot: usize) -> Element {
        a.map_slot(slot, |i| (*self.basis_antipode(i)).clone())
    }

    pub fn antipode_inv(&self, a: &Element, slot: usize) -> Element {
        a.map_slot(slot, |i| (*self.basis_antipode_inv(i)).clone())
    }

    /// S^k on one slot, k of either sign.
    pub fn antipode_pow(&self, a: &Element, slot: usize, k: i32) -> Element {
        let mut x = a.clone();
        for _ in 0..k.unsigned_abs() {
            x = if k > 0 { self.antipode(&x, slot) } else { self.antipode_inv(&x, slot) };
        }
        x
    }

    pub fn apply_form(&self, a: &Element, slot: usize, form: &[RingElem]) -> Element {
        a.contract_slot(slot, |i| form[i as usize].clone())
    }

    /// Value of a linear form on a degree-one element.
    pub fn eval_form(&self, form: &[RingElem], x: &Element) -> RingElem {
        self.apply_form(x, 0, form).as_scalar(self.ord)
    }

    /// Places a degree-k element into H^⊗n at the given slots, with 1 elsewhere.
    pub fn place(&self, a: &Element, n: usize, slots: &[usize]) -> Element {
        assert_eq!(a.deg, slots.len());
        let rest: Vec<usize> = (0..n).filter(|s| !slots.contains(s)).collect();
        let t = a.tensor(&self.unit(rest.len()));
        // slot s of result takes position p in t where t = a ⊗ units
        let mut perm = vec![0usize; n];
        for (p, &s) in slots.iter().enumerate() {
            perm[s] = p;
        }
        for (p, &s) in rest.iter().enumerate() {
            perm[s] = slots.len() + p;
        }
        t.permute(&perm)
    }

    /// Multiplies slot i+1 into slot i from the right, lowering the degree by one.
    pub fn merge_slots(&self, a: &Element, i: usize) -> Element {
        let mut out = Element::zero(a.deg - 1);
        for (k, v) in &a.terms {
            for (m, c) in self.basis_mul(k[i], k[i + 1]).iter() {
                let mut nk = Vec::with_capacity(a.deg - 1);
                nk.extend_from_slice(&k[..i]);
                nk.push(*m);
                nk.extend_from_slice(&k[i + 2..]);
                out.add_term(nk, v * c);
            }
        }
        out
    }

    /// Multiplies all slots into one, left to right.
    pub fn multiply_out(&self, a: &Element) -> Element {
        let mut out = Element::zero(1);
        for (k, v) in &a.terms {
            let mut acc: Lin = vec![(k[0], v.clone())];
            for &j in &k[1..] {
                let mut next: BTreeMap<u32, RingElem> = BTreeMap::new();
                for (i, c) in &acc {
                    for (m, mc) in self.basis_mul(*i, j).iter() {
                        let e = next.entry(*m).or_insert_with(|| self.ord.zero());
                        *e += &(c * mc);
                    }
                }
                acc = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            }
            for (i, c) in acc {
                out.add_term(vec![i], c);
            }
        }
        out
    }

    /// Solves x·y = 1 by elimination (small dimensions only).
    pub fn inverse(&self, x: &Element) -> Result<Element> {
        let n = self.dim;
        if n > 700 {
            return Err(Error::Resource(format!("inverse by elimination in dimension {n}")));
        }
        // unknown y = Σ y_j h_j; equations: Σ_j y_j [x h_j]_k = [1]_k for each k
        let mut cols: Vec<Lin> = Vec::with_capacity(n);
        for j in 0..n as u32 {
            cols.push(self.mul(x, &self.basis_el(j)).to_lin());
        }
        let mut rows: Vec<Row> = vec![BTreeMap::new(); n];
        for (j, col) in cols.iter().enumerate() {
            for (k, c) in col {
                rows[*k as usize].insert(j, c.clone());
            }
        }
        for (k, c) in &self.unit {
            rows[*k as usize].insert(n, -c);
        }
        let mut ech = Echelon::new(n + 1);
        for r in rows {
            ech.insert(r);
        }
        let ns = ech.nullspace(self.ord);
        let sol = ns
            .into_iter()
            .find(|v| !v[n].is_zero())
            .ok_or_else(|| Error::Domain("element is not invertible".into()))?;
        let s = sol[n].inv()?;
        let mut y = Element::zero(1);
        for (j, c) in sol[..n].iter().enumerate() {
            y.add_term(vec![j as u32], c * &s);
        }
        if self.mul(x, &y) != self.unit(1) {
            return Err(Error::Domain("element is not invertible".into()));
        }
        Ok(y)
    }

    /// Matrix of the dual-basis pairing of a form with the basis, as an element of H*.
    pub fn form_of(&self, f: impl Fn(u32) -> RingElem) -> Vec<RingElem> {
        (0..self.dim as u32).map(f).collect()
    }

    /// λ∘S as a form.
    pub fn form_compose_antipode(&self, form: &[RingElem]) -> Vec<RingElem> {
        self.form_of(|i| {
            let mut s = self.ord.zero();
            for (j, c) in self.basis_antipode(i).iter() {
                s += &(c * &form[*j as usize]);
            }
            s
        })
    }

    /// Sparse text dump of all structure constants.
    pub fn dump(&self, out: &mut impl std::fmt::Write) -> fmt::Result {
        writeln!(out, "algebra {}", self.name())?;
        writeln!(out, "dim {}", self.dim)?;
        writeln!(out, "order {}", self.ord.n())?;
        let render = |l: &Lin| -> String {
            l.iter().map(|(k, c)| format!("({k}, {c})")).collect::<Vec<_>>().join(", ")
        };
        for i in 0..self.dim as u32 {
            for j in 0..self.dim as u32 {
                let p = self.basis_mul(i, j);
                if !p.is_empty() {
                    writeln!(out, "mul {i} {j} -> [{}]", render(&p))?;
                }
            }
        }
        for i in 0..self.dim as u32 {
            let d = self.basis_comul(i);
            let s: Vec<String> = d.iter().map(|((a, b), c)| format!("(({a},{b}), {c})")).collect();
            writeln!(out, "comul {i} -> [{}]", s.join(", "))?;
        }
        for i in 0..self.dim as u32 {
            writeln!(out, "S {i} -> [{}]", render(&self.basis_antipode(i)))?;
        }
        Ok(())
    }
}

fn show(h: &FiniteHopf, idx: &[u32]) -> String {
    idx.iter().map(|&i| h.label(i)).collect::<Vec<_>>().join(" ⊗ ")
}

/// Unit, associativity, coassociativity, counit, antipode, bialgebra compatibility.
pub fn verify_hopf_axioms(h: &FiniteHopf, cov: Coverage) -> Report {
    let mut rep = Report::new(&format!("hopf axioms [{}]", h.name()));
    let n = h.dim();
    let one = h.unit(1);
    let one2 = h.unit(2);
    rep.check(h.comul(&one, 0) == one2, || "Δ(1) ≠ 1⊗1".into());
    rep.check(h.counit(&one, 0).as_scalar(h.order()).is_one(), || "ε(1) ≠ 1".into());
    for x in cov.singles(n) {
        let b = h.basis_el(x);
        rep.check(h.mul(&one, &b) == b && h.mul(&b, &one) == b, || format!("unit fails on {}", h.label(x)));
        let d = h.comul(&b, 0);
        let l = h.comul(&d, 0);
        let r = h.comul(&d, 1);
        rep.check(l == r, || format!("coassociativity fails on {}", h.label(x)));
        rep.check(h.counit(&d, 0) == b && h.counit(&d, 1) == b, || format!("counit fails on {}", h.label(x)));
        let eps = h.basis_counit(x).clone();
        let target = one.scale(&eps);
        let left = h.multiply_out(&h.antipode(&d, 0));
        let right = h.multiply_out(&h.antipode(&d, 1));
        rep.check(left == target && right == target, || format!("antipode axiom fails on {}", h.label(x)));
        let s = h.antipode(&b, 0);
        rep.check(h.antipode_inv(&s, 0) == b, || format!("S⁻¹S ≠ id on {}", h.label(x)));
    }
    for t in cov.tuples(n, 2) {
        let (x, y) = (h.basis_el(t[0]), h.basis_el(t[1]));
        let xy = h.mul(&x, &y);
        let lhs = h.comul(&xy, 0);
        let rhs = h.mul(&h.comul(&x, 0), &h.comul(&y, 0));
        rep.check(lhs == rhs, || format!("Δ(xy) ≠ Δ(x)Δ(y) at {}", show(h, &t)));
        let e = h.counit(&xy, 0).as_scalar(h.order());
        rep.check(e == h.basis_counit(t[0]) * h.basis_counit(t[1]), || format!("ε not multiplicative at {}", show(h, &t)));
    }
    for t in cov.tuples(n, 3) {
        let (x, y, z) = (h.basis_el(t[0]), h.basis_el(t[1]), h.basis_el(t[2]));
        let l = h.mul(&h.mul(&x, &y), &z);
        let r = h.mul(&x, &h.mul(&y, &z));
        rep.check(l == r, || format!("associativity fails at {}", show(h, &t)));
    }
    rep
}

/// The three quasi-triangularity identities plus R·R⁻¹ = 1.
pub fn verify_quasitriangular(h: &FiniteHopf, q: &QuasiTriData, cov: Coverage) -> Report {
    let mut rep = Report::new(&format!("quasi-triangular [{}]", h.name()));
    let r = &q.r;
    rep.check(h.mul(r, &q.r_inv) == h.unit(2), || "R·R⁻¹ ≠ 1⊗1".into());
    let r13 = h.place(r, 3, &[0, 2]);
    let r23 = h.place(r, 3, &[1, 2]);
    let r12 = h.place(r, 3, &[0, 1]);
    rep.check(h.comul(r, 0) == h.mul(&r13, &r23), || "(Δ⊗id)R ≠ R13 R23".into());
    rep.check(h.comul(r, 1) == h.mul(&r13, &r12), || "(id⊗Δ)R ≠ R13 R12".into());
    for x in cov.singles(h.dim()) {
        let d = h.comul(&h.basis_el(x), 0);
        let ok = h.mul(r, &d) == h.mul(&d.flip(), r);
        rep.check(ok, || format!("RΔ(x) ≠ Δ'(x)R at {}", h.label(x)));
    }
    rep
}

/// u = Σ S(f_i) e_i.
pub fn compute_u(h: &FiniteHopf, r: &Element) -> Element {
    let t = h.antipode(&r.flip(), 0);
    h.multiply_out(&t)
}

/// Σ f_i S²(e_i), the inverse of u.
pub fn compute_u_inv(h: &FiniteHopf, r: &Element) -> Element {
    let t = h.antipode_pow(r, 0, 2).flip();
    h.multiply_out(&t)
}

/// Ribbon and balancing identities.
pub fn verify_ribbon(h: &FiniteHopf, q: &QuasiTriData, rib: &RibbonData, cov: Coverage) -> Report {
    let mut rep = Report::new(&format!("ribbon [{}]", h.name()));
    let one = h.unit(1);
    let (k, ki, r, ri) = (&rib.kappa, &rib.kappa_inv, &rib.ribbon, &rib.ribbon_inv);
    let u = compute_u(h, &q.r);
    rep.check(u == rib.u, || "u differs from Σ S(f_i)e_i".into());
    rep.check(h.mul(&rib.u, &rib.u_inv) == one, || "u·u⁻¹ ≠ 1".into());
    rep.check(h.mul(k, ki) == one, || "κ·κ⁻¹ ≠ 1".into());
    rep.check(h.mul(r, ri) == one, || "r·r⁻¹ ≠ 1".into());
    rep.check(h.comul(k, 0) == k.tensor(k), || "κ not group-like".into());
    rep.check(h.mul(&rib.u, ki) == *r, || "r ≠ uκ⁻¹".into());
    let su = h.antipode(&rib.u, 0);
    rep.check(h.mul(&h.mul(k, k), &su) == rib.u, || "κ² ≠ uS(u)⁻¹".into());
    rep.check(h.antipode(r, 0) == *r, || "S(r) ≠ r".into());
    let m = h.mul(&q.r.flip(), &q.r);
    let rr = r.tensor(r);
    rep.check(m == h.mul(&rr, &h.comul(ri, 0)), || "R21 R ≠ (r⊗r)Δ(r⁻¹)".into());
    let mr2 = h.multiply_out(&h.antipode(&m, 1));
    rep.check(mr2 == h.mul(r, r), || "m(id⊗S)(R21R) ≠ r²".into());
    for x in cov.singles(h.dim()) {
        let b = h.basis_el(x);
        rep.check(h.mul(r, &b) == h.mul(&b, r), || format!("r not central at {}", h.label(x)));
        let s2 = h.antipode_pow(&b, 0, 2);
        rep.check(h.mul(&h.mul(k, &b), ki) == s2, || format!("S² ≠ Ad(κ) at {}", h.label(x)));
        rep.check(h.mul(&rib.u, &b) == h.mul(&s2, &rib.u), || format!("uxu⁻¹ ≠ S²(x) at {}", h.label(x)));
    }
    rep
}

/// Right integral and cointegral equations, moduli, normalization.
pub fn verify_integrals(h: &FiniteHopf, data: &IntegralData, cov: Coverage) -> Report {
    let mut rep = Report::new(&format!("integrals [{}]", h.name()));
    let ord = h.order();
    let lam = &data.lambda;
    let big = &data.cointegral;
    rep.check(h.eval_form(lam, big).is_one(), || "λ(Λ) ≠ 1".into());
    for x in cov.singles(h.dim()) {
        let b = h.basis_el(x);
        let d = h.comul(&b, 0);
        let left = h.apply_form(&d, 0, lam);
        rep.check(left == h.unit(1).scale(&lam[x as usize]), || format!("right integral fails at {}", h.label(x)));
        let eps = h.basis_counit(x);
        rep.check(h.mul(&b, big) == big.scale(eps), || format!("left cointegral fails at {}", h.label(x)));
        if let Some(alpha) = &data.alpha {
            rep.check(h.mul(big, &b) == big.scale(&alpha[x as usize]), || format!("Λx ≠ α(x)Λ at {}", h.label(x)));
        }
        if let Some(g) = &data.g {
            let right = h.apply_form(&d, 1, lam);
            rep.check(right == g.scale(&lam[x as usize]), || format!("(id⊗λ)Δ ≠ λ·g at {}", h.label(x)));
        }
    }
    let _ = ord;
    rep
}

/// Solves the integral and cointegral equations by exact elimination.
pub fn find_integrals(h: &FiniteHopf) -> Result<IntegralData> {
    let n = h.dim();
    let ord = h.order();
    if n > 256 {
        return Err(Error::Resource(format!("integral search in dimension {n}")));
    }
    // right integral: Σ_(x) λ(x')[x'']_z − λ(x)[1]_z = 0
    let mut ech = Echelon::new(n);
    let unit: BTreeMap<u32, RingElem> = h.unit_lin().iter().cloned().collect();
    for x in 0..n as u32 {
        let mut rows: BTreeMap<u32, Row> = BTreeMap::new();
        for ((a, b), c) in h.basis_comul(x).iter() {
            let e = rows.entry(*b).or_default().entry(*a as usize).or_insert_with(|| ord.zero());
            *e += c;
        }
        for (z, c) in &unit {
            let e = rows.entry(*z).or_default().entry(x as usize).or_insert_with(|| ord.zero());
            *e -= c;
        }
        for (_, mut r) in rows {
            r.retain(|_, v| !v.is_zero());
            ech.insert(r);
        }
    }
    let ns = ech.nullspace(ord);
    if ns.len() != 1 {
        return Err(Error::Domain(format!("right integral space has rank {}", ns.len())));
    }
    let mut lambda = ns.into_iter().next().expect("one vector");
    // left cointegral: Σ_y Λ_y [h_x h_y]_z − ε(h_x) Λ_z = 0
    let mut ech = Echelon::new(n);
    for x in 0..n as u32 {
        let mut rows: BTreeMap<u32, Row> = BTreeMap::new();
        for y in 0..n as u32 {
            for (z, c) in h.basis_mul(x, y).iter() {
                let e = rows.entry(*z).or_default().entry(y as usize).or_insert_with(|| ord.zero());
                *e += c;
            }
        }
        let eps = h.basis_counit(x);
        if !eps.is_zero() {
            for z in 0..n as u32 {
                let e = rows.entry(z).or_default().entry(z as usize).or_insert_with(|| ord.zero());
                *e -= eps;
            }
        }
        for (_, mut r) in rows {
            r.retain(|_, v| !v.is_zero());
            ech.insert(r);
        }
    }
    let ns = ech.nullspace(ord);
    if ns.len() != 1 {
        return Err(Error::Domain(format!("left cointegral space has rank {}", ns.len())));
    }
    let mut big = Element::zero(1);
    for (i, c) in ns[0].iter().enumerate() {
        big.add_term(vec![i as u32], c.clone());
    }
    let pairing = h.eval_form(&lambda, &big);
    if !pairing.is_zero() {
        let s = pairing.inv()?;
        lambda = lambda.iter().map(|c| c * &s).collect();
    }
    // moduli
    let mut alpha = Vec::with_capacity(n);
    let (piv, pc) = big.iter().next().map(|(k, v)| (k.clone(), v.clone())).expect("nonzero cointegral");
    let pinv = pc.inv()?;
    for x in 0..n as u32 {
        let p = h.mul(&big, &h.basis_el(x));
        alpha.push(p.coeff(&piv).map(|c| c * &pinv).unwrap_or_else(|| ord.zero()));
    }
    let mut g = None;
    for x in 0..n as u32 {
        if !lambda[x as usize].is_zero() {
            let d = h.comul(&h.basis_el(x), 0);
            g = Some(h.apply_form(&d, 1, &lambda).scale(&lambda[x as usize].inv()?));
            break;
        }
    }
    Ok(IntegralData { lambda, cointegral: big, g, alpha: Some(alpha) })
}

/// Outcome of the modularity criteria.
#[derive(Debug, Clone)]
pub struct ModularityReport {
    pub q_equals_cointegral: bool,
    pub rank: usize,
    pub dim: usize,
    pub prime: u64,
}

impl ModularityReport {
    pub fn injective(&self) -> bool {
        self.rank == self.dim
    }

    pub fn pass(&self) -> bool {
        self.injective() && self.q_equals_cointegral
    }
}

/// Q = (id⊗λ∘S)(R21 R).
pub fn compute_q(h: &FiniteHopf, q: &QuasiTriData, lambda: &[RingElem]) -> Element {
    let m = h.mul(&q.r.flip(), &q.r);
    let ls = h.form_compose_antipode(lambda);
    h.apply_form(&m, 1, &ls)
}

/// Rank of l ↦ (l⊗id)(R21 R), certified modulo a split prime.
pub fn monodromy_rank(h: &FiniteHopf, q: &QuasiTriData) -> (usize, u64) {
    let m = h.mul(&q.r.flip(), &q.r);
    let n = h.dim();
    let mp = ModP::new(h.order().n(), 1 << 20);
    let mut mat = vec![vec![0u64; n]; n];
    let mut exact_needed = false;
    for (k, c) in m.iter() {
        match mp.reduce(c) {
            Some(v) => {
                let e = &mut mat[k[0] as usize][k[1] as usize];
                *e = (*e + v) % mp.p;
            }
            None => exact_needed = true,
        }
    }
    let r = mp.rank(mat);
    if r == n || !exact_needed && n > 125 {
        return (r, mp.p);
    }
    if n <= 125 {
        let mut rows: Vec<Row> = vec![BTreeMap::new(); n];
        for (k, c) in m.iter() {
            rows[k[0] as usize].insert(k[1] as usize, c.clone());
        }
        return (crate::lin::rank(rows, n), 0);
    }
    (r, mp.p)
}

pub fn modularity_check(h: &FiniteHopf, q: &QuasiTriData, data: &IntegralData) -> ModularityReport {
    let qe = compute_q(h, q, &data.lambda);
    let (rank, prime) = monodromy_rank(h, q);
    ModularityReport { q_equals_cointegral: qe == data.cointegral, rank, dim: h.dim(), prime }
}

/// λ(xy) = λ(S²(y)x) and S(Λ) = Λ.
pub fn verify_unimodular(h: &FiniteHopf, data: &IntegralData, cov: Coverage) -> Report {
    let mut rep = Report::new(&format!("unimodular [{}]", h.name()));
    rep.check(h.antipode(&data.cointegral, 0) == data.cointegral, || "S(Λ) ≠ Λ".into());
    for t in cov.tuples(h.dim(), 2) {
        let (x, y) = (h.basis_el(t[0]), h.basis_el(t[1]));
        let a = h.eval_form(&data.lambda, &h.mul(&x, &y));
        let b = h.eval_form(&data.lambda, &h.mul(&h.antipode_pow(&y, 0, 2), &x));
        rep.check(a == b, || format!("λ(xy) ≠ λ(S²(y)x) at {}", show(h, &t)));
    }
    rep
}

/// A structure identical to another except for the antipode on a few basis vectors.
pub struct AntipodeOverride {
    pub inner: Arc<dyn Structure>,
    pub overrides: HashMap<u32, Lin>,
}

impl Structure for AntipodeOverride {
    fn name(&self) -> String {
        format!("{}*", self.inner.name())
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn order(&self) -> CyclotomicOrder {
        self.inner.order()
    }
    fn label(&self, i: u32) -> String {
        self.inner.label(i)
    }
    fn unit(&self) -> Lin {
        self.inner.unit()
    }
    fn mul(&self, i: u32, j: u32) -> Lin {
        self.inner.mul(i, j)
    }
    fn comul(&self, i: u32) -> Lin2 {
        self.inner.comul(i)
    }
    fn counit(&self, i: u32) -> RingElem {
        self.inner.counit(i)
    }
    fn antipode(&self, i: u32) -> Lin {
        self.overrides.get(&i).cloned().unwrap_or_else(|| self.inner.antipode(i))
    }
    fn antipode_inv(&self, i: u32) -> Option<Lin> {
        self.inner.antipode_inv(i)
    }
}

/// D(H) = H*^cop ⊗ H on the basis h^a ⊗ h_x, indexed a·dim + x.
pub struct Double {
    h: Arc<FiniteHopf>,
    /// h^a h^b = Σ_c coeff h^c
    dual_mul: HashMap<(u32, u32), Lin>,
    /// coefficient lists m^c_{ab} = [h_a h_b]_c grouped by c
    by_product: Vec<Lin2>,
    /// cross[x][b] = (1⊗h_x)(h^b⊗1) as (d, y) pairs
    cross: Cache<u32, Vec<Lin2>>,
}

impl Double {
    pub fn new(h: Arc<FiniteHopf>) -> Self {
        let n = h.dim() as u32;
        let mut dual_mul: HashMap<(u32, u32), Lin> = HashMap::new();
        for c in 0..n {
            for ((a, b), v) in h.basis_comul(c).iter() {
                dual_mul.entry((*a, *b)).or_default().push((c, v.clone()));
            }
        }
        let mut by_product: Vec<Lin2> = vec![Vec::new(); n as usize];
        for a in 0..n {
            for b in 0..n {
                for (c, v) in h.basis_mul(a, b).iter() {
                    by_product[*c as usize].push(((a, b), v.clone()));
                }
            }
        }
        Double { h, dual_mul, by_product, cross: RwLock::default() }
    }

    pub fn base(&self) -> &Arc<FiniteHopf> {
        &self.h
    }

    fn split(&self, i: u32) -> (u32, u32) {
        let n = self.h.dim() as u32;
        (i / n, i % n)
    }

    fn join(&self, a: u32, x: u32) -> u32 {
        a * self.h.dim() as u32 + x
    }

    fn cross_of(&self, x: u32) -> Arc<Vec<Lin2>> {
        cached(&self.cross, x, || {
            let h = &self.h;
            let n = h.dim();
            let ord = h.order();
            let d3 = h.comul_n(&h.basis_el(x), 3);
            let mut acc: Vec<BTreeMap<(u32, u32), RingElem>> = vec![BTreeMap::new(); n];
            for (k, c) in d3.iter() {
                let s3 = h.antipode_inv(&h.basis_el(k[2]), 0);
                let x1 = h.basis_el(k[0]);
                for d in 0..n as u32 {
                    let y = h.mul(&h.mul(&s3, &h.basis_el(d)), &x1);
                    for (b, cb) in y.iter() {
                        let e = acc[b[0] as usize].entry((d, k[1])).or_insert_with(|| ord.zero());
                        *e += &(c * cb);
                    }
                }
            }
            acc.into_iter()
                .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect()
        })
    }
}

impl Structure for Double {
    fn name(&self) -> String {
        format!("D({})", self.h.name())
    }
    fn dim(&self) -> usize {
        self.h.dim() * self.h.dim()
    }
    fn order(&self) -> CyclotomicOrder {
        self.h.order()
    }
    fn label(&self, i: u32) -> String {
        let (a, x) = self.split(i);
        format!("[{}]*⊗{}", self.h.label(a), self.h.label(x))
    }
    fn unit(&self) -> Lin {
        let h = &self.h;
        let mut out = Vec::new();
        for c in 0..h.dim() as u32 {
            let e = h.basis_counit(c);
            if e.is_zero() {
                continue;
            }
            for (u, cu) in h.unit_lin() {
                out.push((self.join(c, *u), e * cu));
            }
        }
        out
    }
    fn mul(&self, i: u32, j: u32) -> Lin {
        let (p, x) = self.split(i);
        let (b, y) = self.split(j);
        let h = &self.h;
        let ord = h.order();
        let cross = self.cross_of(x);
        let mut acc: BTreeMap<u32, RingElem> = BTreeMap::new();
        for ((d, x2), c) in &cross[b as usize] {
            let Some(pd) = self.dual_mul.get(&(p, *d)) else { continue };
            let xy = h.basis_mul(*x2, y);
            for (q, cq) in pd {
                let cc = c * cq;
                for (z, cz) in xy.iter() {
                    let e = acc.entry(self.join(*q, *z)).or_insert_with(|| ord.zero());
                    *e += &(&cc * cz);
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
    fn comul(&self, i: u32) -> Lin2 {
        let (c, x) = self.split(i);
        let dx = self.h.basis_comul(x);
        let mut out = Vec::new();
        for ((a, b), m) in &self.by_product[c as usize] {
            for ((x1, x2), cx) in dx.iter() {
                out.push(((self.join(*b, *x1), self.join(*a, *x2)), m * cx));
            }
        }
        let mut acc: BTreeMap<(u32, u32), RingElem> = BTreeMap::new();
        for (k, v) in out {
            let e = acc.entry(k).or_insert_with(|| self.h.order().zero());
            *e += &v;
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
    fn counit(&self, i: u32) -> RingElem {
        let (a, x) = self.split(i);
        let h = &self.h;
        let one_a = h.unit_lin().iter().find(|(k, _)| *k == a).map(|(_, c)| c.clone());
        match one_a {
            Some(c) => &c * h.basis_counit(x),
            None => h.order().zero(),
        }
    }
    fn antipode(&self, i: u32) -> Lin {
        // S(f⊗x) = (ε⊗S(x))(f∘S⁻¹⊗1)
        let (a, x) = self.split(i);
        let h = &self.h;
        let ord = h.order();
        let n = h.dim() as u32;
        let mut left: Lin = Vec::new();
        for (y, cy) in h.basis_antipode(x).iter() {
            for c in 0..n {
                let e = h.basis_counit(c);
                if !e.is_zero() {
                    left.push((self.join(c, *y), e * cy));
                }
            }
        }
        let mut right: Lin = Vec::new();
        for b in 0..n {
            if let Some((_, cb)) = h.basis_antipode_inv(b).iter().find(|(k, _)| *k == a) {
                for (u, cu) in h.unit_lin() {
                    right.push((self.join(b, *u), cb * cu));
                }
            }
        }
        let mut acc: BTreeMap<u32, RingElem> = BTreeMap::new();
        for (l, cl) in &left {
            for (r, cr) in &right {
                let cc = cl * cr;
                for (z, cz) in self.mul(*l, *r) {
                    let e = acc.entry(z).or_insert_with(|| ord.zero());
                    *e += &(&cc * &cz);
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// The canonical R = Σ_a (ε⊗h_a) ⊗ (h^a⊗1) of a double built by [`drinfeld_double`].
pub fn double_r(h: &FiniteHopf, dbl: &FiniteHopf) -> Element {
    let n = h.dim() as u32;
    let mut r = Element::zero(2);
    for a in 0..n {
        for c in 0..n {
            let e = h.basis_counit(c);
            if e.is_zero() {
                continue;
            }
            for (u, cu) in h.unit_lin() {
                r.add_term(vec![c * n + a, a * n + *u], e * cu);
            }
        }
    }
    let _ = dbl;
    r
}

/// Drinfeld double with its canonical R-matrix; R⁻¹ = (S⊗id)R.
pub fn drinfeld_double(h: Arc<FiniteHopf>) -> FiniteHopf {
    let d = Double::new(h.clone());
    let mut dbl = FiniteHopf::new(Arc::new(d));
    let r = double_r(&h, &dbl);
    let r_inv = dbl.antipode(&r, 0);
    dbl.quasi = Some(QuasiTriData { r, r_inv });
    dbl
}

/// λ_D(f⊗x) = β(l)⁻² f(Λ)λ(x) and Λ_D = β(l)² S*(λ)⊗S(Λ), in the double's basis.
pub fn double_integrals(h: &FiniteHopf, data: &IntegralData, beta: &[RingElem], l: &Element) -> Result<IntegralData> {
    let n = h.dim() as u32;
    let bl = h.eval_form(beta, l);
    let bl2 = &bl * &bl;
    let bl2_inv = bl2.inv()?;
    let lam_big: BTreeMap<u32, RingElem> = data.cointegral.iter().map(|(k, v)| (k[0], v.clone())).collect();
    let mut lambda = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        for x in 0..n {
            let v = match lam_big.get(&a) {
                Some(c) => &(c * &data.lambda[x as usize]) * &bl2_inv,
                None => h.order().zero(),
            };
            lambda.push(v);
        }
    }
    let ls = h.form_compose_antipode(&data.lambda);
    let s_big = h.antipode(&data.cointegral, 0);
    let mut big = Element::zero(1);
    for a in 0..n {
        if ls[a as usize].is_zero() {
            continue;
        }
        for (k, v) in s_big.iter() {
            big.add_term(vec![a * n + k[0]], &(&ls[a as usize] * v) * &bl2);
        }
    }
    Ok(IntegralData { lambda, cointegral: big, g: None, alpha: None })
}

/// Checks that two algebras on the same index set have equal structure constants.
pub fn compare_structures(a: &FiniteHopf, b: &FiniteHopf, cov: Coverage) -> Report {
    let mut rep = Report::new(&format!("structure constants {} vs {}", a.name(), b.name()));
    rep.check(a.dim() == b.dim(), || "dimensions differ".into());
    if !rep.pass() {
        return rep;
    }
    let norm = |l: &Lin| -> BTreeMap<u32, RingElem> { l.iter().cloned().collect() };
    let norm2 = |l: &Lin2| -> BTreeMap<(u32, u32), RingElem> { l.iter().cloned().collect() };
    rep.check(norm(a.unit_lin()) == norm(b.unit_lin()), || "units differ".into());
    for x in cov.singles(a.dim()) {
        rep.check(norm2(&a.basis_comul(x)) == norm2(&b.basis_comul(x)), || format!("Δ differs at {}", a.label(x)));
        rep.check(a.basis_counit(x) == b.basis_counit(x), || format!("ε differs at {}", a.label(x)));
        rep.check(norm(&a.basis_antipode(x)) == norm(&b.basis_antipode(x)), || format!("S differs at {}", a.label(x)));
    }
    for t in cov.tuples(a.dim(), 2) {
        let ok = norm(&a.basis_mul(t[0], t[1])) == norm(&b.basis_mul(t[0], t[1]));
        rep.check(ok, || format!("product differs at {} · {}", a.label(t[0]), a.label(t[1])));
    }
    rep
}

fn collect(ord: CyclotomicOrder, it: impl IntoIterator<Item = (u32, RingElem)>) -> Lin {
    let mut acc: BTreeMap<u32, RingElem> = BTreeMap::new();
    for (k, v) in it {
        let e = acc.entry(k).or_insert_with(|| ord.zero());
        *e += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn collect2(ord: CyclotomicOrder, it: impl IntoIterator<Item = ((u32, u32), RingElem)>) -> Lin2 {
    let mut acc: BTreeMap<(u32, u32), RingElem> = BTreeMap::new();
    for (k, v) in it {
        let e = acc.entry(k).or_insert_with(|| ord.zero());
        *e += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Sum of linear combinations with like terms merged.
pub fn lin_sum(ord: CyclotomicOrder, parts: &[Lin]) -> Lin {
    collect(ord, parts.iter().flat_map(|l| l.iter().cloned()))
}

pub fn lin_scale(a: &Lin, c: &RingElem) -> Lin {
    a.iter().map(|(k, v)| (*k, v * c)).filter(|(_, v)| !v.is_zero()).collect()
}

/// Product of two combinations using a structure's basis product.
pub fn lin_mul(s: &dyn Structure, a: &Lin, b: &Lin) -> Lin {
    let mut out = Vec::new();
    for (i, x) in a {
        for (j, y) in b {
            let c = x * y;
            for (k, z) in s.mul(*i, *j) {
                out.push((k, &c * &z));
            }
        }
    }
    collect(s.order(), out)
}

/// Product of a list of combinations, left to right.
pub fn lin_prod(s: &dyn Structure, factors: &[Lin]) -> Lin {
    let mut acc = s.unit();
    for f in factors {
        acc = lin_mul(s, &acc, f);
    }
    acc
}

pub fn lin_pow(s: &dyn Structure, a: &Lin, n: usize) -> Lin {
    let mut acc = s.unit();
    for _ in 0..n {
        acc = lin_mul(s, &acc, a);
    }
    acc
}

/// Product in H⊗H of two combinations of basis pairs.
pub fn lin2_mul(s: &dyn Structure, a: &Lin2, b: &Lin2) -> Lin2 {
    let mut out = Vec::new();
    for ((i1, i2), x) in a {
        for ((j1, j2), y) in b {
            let c = x * y;
            let p1 = s.mul(*i1, *j1);
            if p1.is_empty() {
                continue;
            }
            let p2 = s.mul(*i2, *j2);
            for (k1, z1) in &p1 {
                let c1 = &c * z1;
                for (k2, z2) in &p2 {
                    out.push(((*k1, *k2), &c1 * z2));
                }
            }
        }
    }
    collect2(s.order(), out)
}

pub fn lin2_pow(s: &dyn Structure, a: &Lin2, n: usize) -> Lin2 {
    let u = s.unit();
    let mut acc: Lin2 = Vec::new();
    for (i, x) in &u {
        for (j, y) in &u {
            acc.push(((*i, *j), x * y));
        }
    }
    for _ in 0..n {
        acc = lin2_mul(s, &acc, a);
    }
    acc
}

/// Tensor product algebra A⊗B on indices a·dim(B) + b.
pub struct TensorProduct {
    pub a: Arc<FiniteHopf>,
    pub b: Arc<FiniteHopf>,
}

impl TensorProduct {
    pub fn split(&self, i: u32) -> (u32, u32) {
        let n = self.b.dim() as u32;
        (i / n, i % n)
    }

    pub fn join(&self, x: u32, y: u32) -> u32 {
        x * self.b.dim() as u32 + y
    }

    /// x⊗y for elements of the factors.
    pub fn pair(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero(x.deg());
        for (kx, vx) in x.iter() {
            for (ky, vy) in y.iter() {
                let idx = kx.iter().zip(ky).map(|(a, b)| self.join(*a, *b)).collect();
                out.add_term(idx, vx * vy);
            }
        }
        out
    }
}

impl Structure for TensorProduct {
    fn name(&self) -> String {
        format!("{}⊗{}", self.a.name(), self.b.name())
    }
    fn dim(&self) -> usize {
        self.a.dim() * self.b.dim()
    }
    fn order(&self) -> CyclotomicOrder {
        self.a.order()
    }
    fn label(&self, i: u32) -> String {
        let (x, y) = self.split(i);
        format!("{}⊗{}", self.a.label(x), self.b.label(y))
    }
    fn unit(&self) -> Lin {
        let mut out = Vec::new();
        for (x, cx) in self.a.unit_lin() {
            for (y, cy) in self.b.unit_lin() {
                out.push((self.join(*x, *y), cx * cy));
            }
        }
        out
    }
    fn mul(&self, i: u32, j: u32) -> Lin {
        let (x1, y1) = self.split(i);
        let (x2, y2) = self.split(j);
        let mut out = Vec::new();
        let pb = self.b.basis_mul(y1, y2);
        for (x, cx) in self.a.basis_mul(x1, x2).iter() {
            for (y, cy) in pb.iter() {
                out.push((self.join(*x, *y), cx * cy));
            }
        }
        out
    }
    fn comul(&self, i: u32) -> Lin2 {
        let (x, y) = self.split(i);
        let db = self.b.basis_comul(y);
        let mut out = Vec::new();
        for ((x1, x2), cx) in self.a.basis_comul(x).iter() {
            for ((y1, y2), cy) in db.iter() {
                out.push(((self.join(*x1, *y1), self.join(*x2, *y2)), cx * cy));
            }
        }
        out
    }
    fn counit(&self, i: u32) -> RingElem {
        let (x, y) = self.split(i);
        self.a.basis_counit(x) * self.b.basis_counit(y)
    }
    fn antipode(&self, i: u32) -> Lin {
        let (x, y) = self.split(i);
        let sb = self.b.basis_antipode(y);
        let mut out = Vec::new();
        for (p, cp) in self.a.basis_antipode(x).iter() {
            for (q, cq) in sb.iter() {
                out.push((self.join(*p, *q), cp * cq));
            }
        }
        out
    }
    fn antipode_inv(&self, i: u32) -> Option<Lin> {
        let (x, y) = self.split(i);
        let sb = self.b.basis_antipode_inv(y);
        let mut out = Vec::new();
        for (p, cp) in self.a.basis_antipode_inv(x).iter() {
            for (q, cq) in sb.iter() {
                out.push((self.join(*p, *q), cp * cq));
            }
        }
        Some(out)
    }
}

/// Dual Hopf algebra H* on the positional dual basis.
pub struct DualOf {
    h: Arc<FiniteHopf>,
    dual_mul: HashMap<(u32, u32), Lin>,
    by_product: Vec<Lin2>,
}

impl DualOf {
    pub fn new(h: Arc<FiniteHopf>) -> Self {
        let n = h.dim() as u32;
        let mut dual_mul: HashMap<(u32, u32), Lin> = HashMap::new();
        for c in 0..n {
            for ((a, b), v) in h.basis_comul(c).iter() {
                dual_mul.entry((*a, *b)).or_default().push((c, v.clone()));
            }
        }
        let mut by_product: Vec<Lin2> = vec![Vec::new(); n as usize];
        for a in 0..n {
            for b in 0..n {
                for (c, v) in h.basis_mul(a, b).iter() {
                    by_product[*c as usize].push(((a, b), v.clone()));
                }
            }
        }
        DualOf { h, dual_mul, by_product }
    }
}

impl Structure for DualOf {
    fn name(&self) -> String {
        format!("{}*", self.h.name())
    }
    fn dim(&self) -> usize {
        self.h.dim()
    }
    fn order(&self) -> CyclotomicOrder {
        self.h.order()
    }
    fn label(&self, i: u32) -> String {
        format!("[{}]*", self.h.label(i))
    }
    fn unit(&self) -> Lin {
        (0..self.h.dim() as u32)
            .map(|c| (c, self.h.basis_counit(c).clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
    fn mul(&self, i: u32, j: u32) -> Lin {
        self.dual_mul.get(&(i, j)).cloned().unwrap_or_default()
    }
    fn comul(&self, i: u32) -> Lin2 {
        self.by_product[i as usize].clone()
    }
    fn counit(&self, i: u32) -> RingElem {
        let ord = self.h.order();
        self.h.unit_lin().iter().find(|(k, _)| *k == i).map(|(_, c)| c.clone()).unwrap_or_else(|| ord.zero())
    }
    fn antipode(&self, i: u32) -> Lin {
        (0..self.h.dim() as u32)
            .filter_map(|b| self.h.basis_antipode(b).iter().find(|(k, _)| *k == i).map(|(_, c)| (b, c.clone())))
            .collect()
    }
    fn antipode_inv(&self, i: u32) -> Option<Lin> {
        Some(
            (0..self.h.dim() as u32)
                .filter_map(|b| self.h.basis_antipode_inv(b).iter().find(|(k, _)| *k == i).map(|(_, c)| (b, c.clone())))
                .collect(),
        )
    }
}
