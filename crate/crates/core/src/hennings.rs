//! Hennings evaluation of Morse-sliced diagrams: crossing decorations, collection of
//! labels along components, the right integral, framing normalization, open-tangle
//! maps, the adjoint action, and the D(B) factorization check.
//!
//! Conventions. Time runs downward. An `xn` crossing is the braiding c: the strand
//! entering on the left carries the first tensor factor of R and the one entering on
//! the right the second. An `xp` crossing is c⁻¹, labelled by R⁻¹ = (S⊗id)R with S(e)
//! on the strand entering on the right and f on the one entering on the left.
//! Along a component, labels are multiplied in traversal order with later factors on
//! the left; a label met on an upward strand contributes S of itself; a
//! counterclockwise cap contributes κ and a clockwise cup κ⁻¹. A closed component with
//! word w evaluates to λ(κw), which is a trace.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::diagrams::{linking, ComponentKind, Diagram, Dir, SliceKind};
use crate::error::{Error, Result};
use crate::gauge::{nat_iso, twist_hopf, twisted_special_elements, GaugeTwist};
use crate::hopf::{Coverage, Element, FiniteHopf, Lin, Report};
use crate::lin::{Echelon, ModP, Row};
use crate::ring::RingElem;

/// Environment variable overriding the crossing guard.
pub const MAX_CROSSINGS_ENV: &str = "HENNINGS_MAX_CROSSINGS";

/// Largest number of simultaneous terms the sweep will hold before giving up.
pub const MAX_TERMS: usize = 3_000_000;

fn need_r(h: &FiniteHopf) -> Result<&crate::hopf::QuasiTriData> {
    h.quasi.as_ref().ok_or_else(|| Error::Domain(format!("{} has no R-matrix", h.name())))
}

fn need_ribbon(h: &FiniteHopf) -> Result<&crate::hopf::RibbonData> {
    h.ribbon.as_ref().ok_or_else(|| Error::Domain(format!("{} has no ribbon data", h.name())))
}

fn need_lambda(h: &FiniteHopf) -> Result<&[RingElem]> {
    h.integrals
        .as_ref()
        .map(|i| i.lambda.as_slice())
        .ok_or_else(|| Error::Domain(format!("{} has no integral", h.name())))
}

/// c·x for a fixed c, on one slot.
fn left_mul(h: &FiniteHopf, x: &Element, slot: usize, c: &Element) -> Element {
    x.map_slot(slot, |i| {
        let mut acc: BTreeMap<u32, RingElem> = BTreeMap::new();
        for (k, v) in c.iter() {
            for (m, mc) in h.basis_mul(k[0], i).iter() {
                let e = acc.entry(*m).or_insert_with(|| h.order().zero());
                *e += &(v * mc);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    })
}

/// The form x ↦ λ(c·x).
fn shifted_form(h: &FiniteHopf, lambda: &[RingElem], c: &Element) -> Vec<RingElem> {
    h.form_of(|i| h.eval_form(lambda, &h.mul(c, &h.basis_el(i))))
}

// ---------------------------------------------------------------- labeled curves

/// A point on a strand: `level` 0 is the top boundary line, level k+1 the line just
/// below slice k; `pos` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Marking {
    pub level: usize,
    pub pos: usize,
}

/// A flattened diagram with labels at markings; the label has one slot per marking.
#[derive(Debug, Clone)]
pub struct LabeledCurve {
    pub diagram: Diagram,
    pub markings: Vec<Marking>,
    pub label: Element,
}

impl LabeledCurve {
    pub fn new(diagram: Diagram, markings: Vec<Marking>, label: Element) -> Result<Self> {
        if label.deg() != markings.len() {
            return Err(Error::Domain(format!(
                "{} markings but a label of degree {}",
                markings.len(),
                label.deg()
            )));
        }
        let lines = diagram.word.slices.len() + 1;
        for m in &markings {
            let width = if m.level == 0 { diagram.top_dirs.len() } else { diagram.dirs[m.level - 1].len() };
            if m.level >= lines || m.pos == 0 || m.pos > width {
                return Err(Error::Domain(format!("marking {m:?} is off the diagram")));
            }
        }
        Ok(LabeledCurve { diagram, markings, label })
    }
}

/// Markings placed just below a crossing: (strand that entered left, strand that entered right).
fn crossing_marks(k: usize, pos: usize) -> (Marking, Marking) {
    (Marking { level: k + 1, pos: pos + 1 }, Marking { level: k + 1, pos })
}

/// The two-slot label of a crossing, slot 0 on the strand entering left.
fn crossing_label(h: &FiniteHopf, kind: SliceKind) -> Result<Element> {
    let q = need_r(h)?;
    Ok(match kind {
        SliceKind::Xn => q.r.clone(),
        SliceKind::Xp => q.r_inv.flip(),
        _ => unreachable!("not a crossing"),
    })
}

/// Replaces every crossing by a pair of markings carrying the R-matrix terms.
pub fn decorate(d: &Diagram, h: &FiniteHopf) -> Result<LabeledCurve> {
    let mut markings = Vec::new();
    let mut label = Element::scalar(h.order().one());
    for (k, s) in d.word.slices.iter().enumerate() {
        if s.kind.is_crossing() {
            let (a, b) = crossing_marks(k, s.pos);
            markings.push(a);
            markings.push(b);
            label = label.tensor(&crossing_label(h, s.kind)?);
        }
    }
    LabeledCurve::new(d.clone(), markings, label)
}

// ---------------------------------------------------------------- the sweep

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tag {
    Piece(usize),
    Mark(usize),
}

#[derive(Debug, Clone)]
struct Piece {
    comp: usize,
    anchors: u8,
}

enum Source<'c> {
    /// Decorate crossings on the fly.
    Lazy(Element, Element),
    /// Labels already present, one slot per marking.
    Given(&'c [Marking]),
}

/// Time sweep keeping one slot per partial path of the current level.
struct Sweep<'a> {
    h: &'a FiniteHopf,
    kappa: Element,
    kappa_inv: Element,
    state: Element,
    tags: Vec<Tag>,
    at: Vec<usize>,
    pieces: Vec<Piece>,
    /// λ(κ·) and λ(κ²·) for closing components on the spot
    forms: Option<(Vec<RingElem>, Vec<RingElem>)>,
    /// finished closed components (kept when not contracting)
    closed: Vec<usize>,
    peak: usize,
    dim: usize,
    table: Vec<Option<Arc<Lin>>>,
}

impl<'a> Sweep<'a> {
    fn guard(&mut self) -> Result<()> {
        self.peak = self.peak.max(self.state.len());
        if self.state.len() > MAX_TERMS {
            return Err(Error::Resource(format!("evaluation state exceeds {MAX_TERMS} terms")));
        }
        Ok(())
    }

    fn mul(&mut self, a: u32, b: u32) -> Arc<Lin> {
        let i = a as usize * self.dim + b as usize;
        if let Some(x) = &self.table[i] {
            return x.clone();
        }
        let x = self.h.basis_mul(a, b);
        self.table[i] = Some(x.clone());
        x
    }

    fn slot(&self, t: Tag) -> usize {
        self.tags.iter().position(|x| *x == t).expect("live slot")
    }

    fn new_piece(&mut self, comp: usize, anchors: u8, label: &Element) -> usize {
        let id = self.pieces.len();
        self.pieces.push(Piece { comp, anchors });
        self.state = self.state.tensor(label);
        self.tags.push(Tag::Piece(id));
        id
    }

    /// Multiplies slot `from` into slot `into` (on the left of it when `from_left`) and drops `from`.
    fn fold(&mut self, from: usize, into: usize, from_left: bool) {
        let state = std::mem::take(&mut self.state);
        let mut out = Element::zero(state.deg() - 1);
        for (k, v) in state.iter() {
            let (a, b) = if from_left { (k[from], k[into]) } else { (k[into], k[from]) };
            for (m, c) in self.mul(a, b).iter() {
                let mut nk = k.clone();
                nk[into] = *m;
                nk.remove(from);
                out.add_term(nk, v * c);
            }
        }
        self.state = out;
        self.tags.remove(from);
    }

    /// Absorbs a two-slot crossing label into the pieces at two positions in one pass.
    fn absorb_crossing(&mut self, x: &Element, (pa, da): (usize, Dir), (pb, db): (usize, Dir)) {
        let mut x = x.clone();
        for (slot, d) in [(0, da), (1, db)] {
            if d == Dir::Up {
                x = self.h.antipode(&x, slot);
            }
        }
        let sa = self.slot(Tag::Piece(self.at[pa - 1]));
        let sb = self.slot(Tag::Piece(self.at[pb - 1]));
        let state = std::mem::take(&mut self.state);
        let mut out = Element::zero(state.deg());
        for (k, v) in state.iter() {
            for (kx, c) in x.iter() {
                let vc = v * c;
                let p1 = if da == Dir::Down { self.mul(kx[0], k[sa]) } else { self.mul(k[sa], kx[0]) };
                for (m1, c1) in p1.iter() {
                    let mut nk = k.clone();
                    nk[sa] = *m1;
                    let cur = nk[sb];
                    let p2 = if db == Dir::Down { self.mul(kx[1], cur) } else { self.mul(cur, kx[1]) };
                    let vc1 = &vc * c1;
                    for (m2, c2) in p2.iter() {
                        let mut nk2 = nk.clone();
                        nk2[sb] = *m2;
                        out.add_term(nk2, &vc1 * c2);
                    }
                }
            }
        }
        self.state = out;
    }

    fn absorb_mark(&mut self, mark: usize, pos: usize, dir: Dir) {
        let piece = self.at[pos - 1];
        let ms = self.slot(Tag::Mark(mark));
        if dir == Dir::Up {
            self.state = self.h.antipode(&self.state, ms);
        }
        let ps = self.slot(Tag::Piece(piece));
        self.fold(ms, ps, dir == Dir::Down);
    }

    fn cup(&mut self, pos: usize, left: Dir, comp: usize) {
        let label = if left == Dir::Down { self.h.unit(1) } else { self.kappa_inv.clone() };
        let id = self.new_piece(comp, 0, &label);
        self.at.insert(pos - 1, id);
        self.at.insert(pos - 1, id);
    }

    fn cap(&mut self, pos: usize, left: Dir) {
        let (p, q) = (self.at[pos - 1], self.at[pos]);
        self.at.drain(pos - 1..=pos);
        if p == q {
            let s = self.slot(Tag::Piece(p));
            match &self.forms {
                Some((mu, mu2)) => {
                    let form = if left == Dir::Down { mu2 } else { mu };
                    self.state = self.state.contract_slot(s, |i| form[i as usize].clone());
                    self.tags.remove(s);
                }
                None => {
                    if left == Dir::Down {
                        self.state = left_mul(self.h, &self.state, s, &self.kappa);
                    }
                    self.closed.push(p);
                }
            }
            return;
        }
        let (first, second) = if left == Dir::Down { (p, q) } else { (q, p) };
        let fs = self.slot(Tag::Piece(first));
        if left == Dir::Down {
            self.state = left_mul(self.h, &self.state, fs, &self.kappa);
        }
        let ss = self.slot(Tag::Piece(second));
        self.fold(fs, ss, false);
        for x in self.at.iter_mut() {
            if *x == first {
                *x = second;
            }
        }
        self.pieces[second].anchors += self.pieces[first].anchors;
    }
}

/// Labels per component after a sweep, with the component index of each slot.
struct SweepOut {
    state: Element,
    comps: Vec<usize>,
    closed: Vec<usize>,
}

fn run_sweep(d: &Diagram, h: &FiniteHopf, source: Source<'_>, init: Element, contract: bool) -> Result<SweepOut> {
    let rib = need_ribbon(h)?;
    let forms = if contract {
        let lambda = need_lambda(h)?;
        let mu = shifted_form(h, lambda, &rib.kappa);
        let mu2 = shifted_form(h, lambda, &h.mul(&rib.kappa, &rib.kappa));
        Some((mu, mu2))
    } else {
        None
    };
    let mut sw = Sweep {
        h,
        kappa: rib.kappa.clone(),
        kappa_inv: rib.kappa_inv.clone(),
        tags: (0..init.deg()).map(Tag::Mark).collect(),
        state: init,
        at: Vec::new(),
        pieces: Vec::new(),
        forms,
        closed: Vec::new(),
        peak: 0,
        dim: h.dim(),
        table: vec![None; h.dim() * h.dim()],
    };
    let mut by_level: HashMap<usize, Vec<(usize, Marking)>> = HashMap::new();
    if let Source::Given(ms) = &source {
        for (i, m) in ms.iter().enumerate() {
            by_level.entry(m.level).or_default().push((i, *m));
        }
    }
    let one = h.unit(1);
    for (j, pair) in d.top_dirs.chunks(2).enumerate() {
        debug_assert_eq!(pair, [Dir::Up, Dir::Down]);
        let comp = d.top_owners[2 * j];
        let a = sw.new_piece(comp, 1, &one);
        let b = sw.new_piece(comp, 1, &one);
        sw.at.push(a);
        sw.at.push(b);
    }
    for &(i, m) in by_level.get(&0).into_iter().flatten() {
        sw.absorb_mark(i, m.pos, d.top_dirs[m.pos - 1]);
    }
    for (k, s) in d.word.slices.iter().enumerate() {
        let below = &d.dirs[k];
        match s.kind {
            SliceKind::Cup => sw.cup(s.pos, below[s.pos - 1], d.owners[k][s.pos - 1]),
            SliceKind::Cap => sw.cap(s.pos, d.dirs_above(k)[s.pos - 1]),
            SliceKind::Xp | SliceKind::Xn => {
                sw.at.swap(s.pos - 1, s.pos);
                if let Source::Lazy(xp, xn) = &source {
                    let x = if s.kind == SliceKind::Xp { xp } else { xn };
                    if sw.state.len() * x.len() > 16 * MAX_TERMS {
                        return Err(Error::Resource(format!("evaluation state exceeds {MAX_TERMS} terms")));
                    }
                    let (ma, mb) = crossing_marks(k, s.pos);
                    sw.absorb_crossing(x, (ma.pos, below[ma.pos - 1]), (mb.pos, below[mb.pos - 1]));
                }
            }
        }
        sw.guard()?;
        for &(i, m) in by_level.get(&(k + 1)).into_iter().flatten() {
            sw.absorb_mark(i, m.pos, below[m.pos - 1]);
        }
    }
    let comps = sw
        .tags
        .iter()
        .map(|t| match t {
            Tag::Piece(p) => sw.pieces[*p].comp,
            Tag::Mark(_) => unreachable!("every marking is absorbed"),
        })
        .collect();
    let closed = sw.closed.iter().map(|p| sw.pieces[*p].comp).collect();
    if std::env::var_os("HENNINGS_TRACE").is_some() {
        eprintln!("sweep peak {} terms", sw.peak);
    }
    Ok(SweepOut { state: sw.state, comps, closed })
}

/// A labeled curve in normal form: one label slot per component, in component order.
///
/// A closed component's slot holds its word w (value λ(κw)); an arc's slot holds the
/// product along the arc in traversal order.
#[derive(Debug, Clone)]
pub struct Collected {
    pub diagram: Diagram,
    pub label: Element,
}

/// Slides all labels of each component to one base point.
pub fn collect(c: &LabeledCurve, h: &FiniteHopf) -> Result<Collected> {
    let out = run_sweep(&c.diagram, h, Source::Given(&c.markings), c.label.clone(), false)?;
    debug_assert_eq!(out.closed.len(), c.diagram.closed_components().len());
    // slot i holds component comps[i]; reorder to component order
    let n = out.comps.len();
    let mut perm = vec![0usize; n];
    for (slot, comp) in out.comps.iter().enumerate() {
        perm[*comp] = slot;
    }
    Ok(Collected { diagram: c.diagram.clone(), label: out.state.permute(&perm) })
}

/// The map of an open tangle: n top arcs in, m bottom arcs out.
///
/// `b` has the m output slots (s₁…s_m) followed by the n input slots (t₁…t_n); the map
/// is x₁⊗…⊗x_n ↦ Σ Π_k λ(S(x_k)t_k) · s₁⊗…⊗s_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TqftMap {
    pub n: usize,
    pub m: usize,
    pub b: Element,
}

/// Cache of λ(S(b_i)b_j).
struct Pairing<'a> {
    h: &'a FiniteHopf,
    lambda: &'a [RingElem],
    cache: HashMap<(u32, u32), RingElem>,
}

impl<'a> Pairing<'a> {
    fn new(h: &'a FiniteHopf) -> Result<Self> {
        Ok(Pairing { h, lambda: need_lambda(h)?, cache: HashMap::new() })
    }

    fn get(&mut self, x: u32, t: u32) -> RingElem {
        let (h, lambda) = (self.h, self.lambda);
        self.cache
            .entry((x, t))
            .or_insert_with(|| {
                let p = h.mul(&h.antipode(&h.basis_el(x), 0), &h.basis_el(t));
                h.eval_form(lambda, &p)
            })
            .clone()
    }
}

impl TqftMap {
    /// Image of a degree-n element.
    pub fn apply(&self, h: &FiniteHopf, x: &Element) -> Result<Element> {
        if x.deg() != self.n {
            return Err(Error::Domain(format!("input of degree {} for a map from genus {}", x.deg(), self.n)));
        }
        let mut pair = Pairing::new(h)?;
        let mut out = Element::zero(self.m);
        for (kb, vb) in self.b.iter() {
            let (s, t) = kb.split_at(self.m);
            let mut c = h.order().zero();
            for (kx, vx) in x.iter() {
                let mut p = vx.clone();
                for (xi, ti) in kx.iter().zip(t) {
                    p = &p * &pair.get(*xi, *ti);
                    if p.is_zero() {
                        break;
                    }
                }
                c += &p;
            }
            if !c.is_zero() {
                out.add_term(s.to_vec(), vb * &c);
            }
        }
        Ok(out)
    }

    /// Sparse matrix: (input basis tensor, output element) for every input with nonzero image.
    pub fn matrix(&self, h: &FiniteHopf) -> Result<Vec<(Vec<u32>, Element)>> {
        let dim = h.dim() as u32;
        let mut out = Vec::new();
        let mut idx = vec![0u32; self.n];
        loop {
            let y = self.apply(h, &Element::basis(idx.clone(), h.order().one()))?;
            if !y.is_zero() {
                out.push((idx.clone(), y));
            }
            let mut i = self.n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < dim {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    /// self ∘ first.
    pub fn compose(&self, h: &FiniteHopf, first: &TqftMap) -> Result<TqftMap> {
        if first.m != self.n {
            return Err(Error::Domain("genus mismatch in composition".into()));
        }
        let mut b = Element::zero(self.m + first.n);
        for (k, v) in first.b.iter() {
            let (s, t) = k.split_at(first.m);
            let img = self.apply(h, &Element::basis(s.to_vec(), v.clone()))?;
            b = b.add(&img.tensor(&Element::basis(t.to_vec(), h.order().one())));
        }
        Ok(TqftMap { n: first.n, m: self.m, b })
    }
}

/// Evaluates a collected curve: circles by λ(κ·), bottom arcs to s = S⁻¹(κw), top arcs to forms.
pub fn evaluate_collected(c: &Collected, h: &FiniteHopf) -> Result<TqftMap> {
    let lambda = need_lambda(h)?;
    let rib = need_ribbon(h)?;
    let mu = shifted_form(h, lambda, &rib.kappa);
    finish(&c.diagram, h, c.label.clone(), (0..c.diagram.components.len()).collect(), &mu, &rib.kappa)
}

fn finish(
    d: &Diagram,
    h: &FiniteHopf,
    mut state: Element,
    mut comps: Vec<usize>,
    mu: &[RingElem],
    kappa: &Element,
) -> Result<TqftMap> {
    // contract closed components first
    let mut s = 0;
    while s < comps.len() {
        if d.components[comps[s]].kind == ComponentKind::Closed {
            state = state.contract_slot(s, |i| mu[i as usize].clone());
            comps.remove(s);
        } else {
            s += 1;
        }
    }
    let (mut bottoms, mut tops) = (Vec::new(), Vec::new());
    for (slot, c) in comps.iter().enumerate() {
        match d.components[*c].kind {
            ComponentKind::Bottom(k) => bottoms.push((k, slot)),
            ComponentKind::Top(j) => tops.push((j, slot)),
            ComponentKind::Closed => unreachable!(),
        }
    }
    for &(_, slot) in &bottoms {
        state = h.antipode_inv(&left_mul(h, &state, slot, kappa), slot);
    }
    bottoms.sort();
    tops.sort();
    let perm: Vec<usize> = bottoms.iter().chain(&tops).map(|x| x.1).collect();
    Ok(TqftMap { n: tops.len(), m: bottoms.len(), b: state.permute(&perm) })
}

fn lazy_sweep(d: &Diagram, h: &FiniteHopf) -> Result<TqftMap> {
    let rib = need_ribbon(h)?;
    let src = Source::Lazy(crossing_label(h, SliceKind::Xp)?, crossing_label(h, SliceKind::Xn)?);
    let out = run_sweep(d, h, src, Element::scalar(h.order().one()), true)?;
    let lambda = need_lambda(h)?;
    let mu = shifted_form(h, lambda, &rib.kappa);
    finish(d, h, out.state, out.comps, &mu, &rib.kappa)
}

/// The scalar of a closed diagram, contracting each component as soon as it closes.
pub fn evaluate_closed(d: &Diagram, h: &FiniteHopf) -> Result<RingElem> {
    if !d.is_closed() {
        return Err(Error::Domain("diagram has open arcs".into()));
    }
    Ok(lazy_sweep(d, h)?.b.as_scalar(h.order()))
}

/// The linear map of an admissible tangle.
pub fn tangle_map(d: &Diagram, h: &FiniteHopf) -> Result<TqftMap> {
    lazy_sweep(d, h)
}

// ---------------------------------------------------------------- invariant

/// Crossing limit in force for a given ℓ: the environment override, else 8 for ℓ ≥ 5.
pub fn crossing_limit(ell: u32) -> Result<Option<usize>> {
    match std::env::var(MAX_CROSSINGS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::Domain(format!("{MAX_CROSSINGS_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(if ell >= 5 { Some(8) } else { None }),
    }
}

/// ℓ for the sl2 family, read off the cyclotomic order 4ℓ.
pub fn ell_of(h: &FiniteHopf) -> u32 {
    let n = h.order().n();
    if n.is_multiple_of(4) {
        n / 4
    } else {
        n
    }
}

/// λ(r)^σ times the evaluation, with an explicit crossing limit.
pub fn invariant_with_limit(d: &Diagram, h: &FiniteHopf, limit: Option<usize>) -> Result<RingElem> {
    if let Some(max) = limit {
        if d.crossing_count() > max {
            return Err(Error::Resource(format!(
                "{} crossings exceeds the limit of {max} (set {MAX_CROSSINGS_ENV} to override)",
                d.crossing_count()
            )));
        }
    }
    let lk = linking(d)?;
    let rib = need_ribbon(h)?;
    let lambda = need_lambda(h)?;
    let lr = h.eval_form(lambda, &rib.ribbon);
    let value = evaluate_closed(d, h)?;
    Ok(&lr.pow(lk.sigma)? * &value)
}

/// The framing-normalized invariant of the surgery manifold.
pub fn invariant(d: &Diagram, h: &FiniteHopf) -> Result<RingElem> {
    invariant_with_limit(d, h, crossing_limit(ell_of(h))?)
}

/// One computed invariant, as printed by the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub algebra: String,
    pub ell: u32,
    pub file: String,
    pub sigma: i64,
    pub h: u64,
    /// cyclotomic order of the ring the value lives in
    pub order: u32,
    pub value: String,
    pub integral: bool,
}

impl InvariantRecord {
    pub fn compute(d: &Diagram, h: &FiniteHopf, algebra: &str, ell: u32, file: &str, limit: Option<usize>) -> Result<Self> {
        let value = invariant_with_limit(d, h, limit)?;
        Ok(InvariantRecord {
            algebra: algebra.to_string(),
            ell,
            file: file.to_string(),
            sigma: linking(d)?.sigma,
            h: crate::diagrams::h_of_m(d)?,
            integral: value.is_integral(),
            order: h.order().n(),
            value: value.to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        format!(
            "algebra={} ell={} file={} sigma={} h={} order={} value={} integral={}",
            self.algebra, self.ell, self.file, self.sigma, self.h, self.order, self.value, self.integral
        )
    }
}

// ---------------------------------------------------------------- adjoint action

/// The g-fold tensor power of the adjoint action x ▷ b = Σ x'bS(x'').
pub struct AdjointRep<'a> {
    pub h: &'a FiniteHopf,
    pub g: usize,
    single: HashMap<u32, Vec<Lin>>,
}

impl<'a> AdjointRep<'a> {
    pub fn new(h: &'a FiniteHopf, g: usize) -> Self {
        AdjointRep { h, g, single: HashMap::new() }
    }

    /// ad(b_y) on every basis vector.
    fn single(&mut self, y: u32) -> &Vec<Lin> {
        let h = self.h;
        self.single.entry(y).or_insert_with(|| {
            let d = h.antipode(&h.comul(&h.basis_el(y), 0), 1);
            (0..h.dim() as u32)
                .map(|b| {
                    let mut acc = Element::zero(1);
                    for (k, v) in d.iter() {
                        let p = h.mul(&h.mul(&h.basis_el(k[0]), &h.basis_el(b)), &h.basis_el(k[1]));
                        acc = acc.add(&p.scale(v));
                    }
                    acc.to_lin()
                })
                .collect()
        })
    }

    /// ad(x)^⊗g applied to v.
    pub fn act(&mut self, x: &Element, v: &Element) -> Element {
        assert_eq!(v.deg(), self.g);
        if self.g == 0 {
            return v.scale(&self.h.counit(x, 0).as_scalar(self.h.order()));
        }
        let dx = self.h.comul_n(x, self.g);
        let mut out = Element::zero(self.g);
        for (kx, cx) in dx.iter() {
            for (kv, cv) in v.iter() {
                let mut partial: Vec<(Vec<u32>, RingElem)> = vec![(Vec::new(), cx * cv)];
                for s in 0..self.g {
                    let img = self.single(kx[s])[kv[s] as usize].clone();
                    let mut next = Vec::new();
                    for (idx, c) in &partial {
                        for (j, jc) in &img {
                            let mut ni = idx.clone();
                            ni.push(*j);
                            next.push((ni, c * jc));
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
}

pub fn adjoint_rep(h: &FiniteHopf, g: usize) -> AdjointRep<'_> {
    AdjointRep::new(h, g)
}

/// Checks T∘ad(x)^⊗n = ad(x)^⊗m∘T on the algebra generators and sampled basis inputs.
pub fn check_equivariance(t: &TqftMap, h: &FiniteHopf, cov: Coverage) -> Result<Report> {
    let mut rep = Report::new(&format!("equivariance {}→{} [{}]", t.n, t.m, h.name()));
    let mut ad_in = AdjointRep::new(h, t.n);
    let mut ad_out = AdjointRep::new(h, t.m);
    let inputs = cov.tuples(h.dim(), t.n);
    for (gi, x) in crate::algebras::generators(h).iter().enumerate() {
        for idx in &inputs {
            let v = Element::basis(idx.clone(), h.order().one());
            let lhs = t.apply(h, &ad_in.act(x, &v))?;
            let rhs = ad_out.act(x, &t.apply(h, &v)?);
            rep.check(lhs == rhs, || format!("generator {gi} on input {idx:?}"));
            if !rep.pass() {
                return Ok(rep);
            }
        }
    }
    Ok(rep)
}

/// Largest tensor power dimension accepted by `invariance_rank`.
pub const INVARIANCE_DIM_LIMIT: usize = 10_000;

/// Dimension of {v ∈ H^⊗g : ad(x)^⊗g v = ε(x)v for all generators x}.
///
/// Generators acting diagonally on basis tensors cut the space down first; the rest
/// is an exact rank when small and a rank modulo two large split primes otherwise.
pub fn invariance_rank(h: &FiniteHopf, g: usize) -> Result<usize> {
    if g == 0 {
        return Ok(1);
    }
    let dim = h.dim();
    let total = dim.checked_pow(g as u32).filter(|t| *t <= INVARIANCE_DIM_LIMIT).ok_or_else(|| {
        Error::Resource(format!("invariants in {}^⊗{g} exceed {INVARIANCE_DIM_LIMIT} coordinates", h.name()))
    })?;
    let ord = h.order();
    let mut ad = AdjointRep::new(h, g);
    let unflatten = |mut c: usize| -> Vec<u32> {
        let mut idx = vec![0u32; g];
        for s in (0..g).rev() {
            idx[s] = (c % dim) as u32;
            c /= dim;
        }
        idx
    };
    let flatten = |idx: &[u32]| idx.iter().fold(0usize, |acc, i| acc * dim + *i as usize);
    // columns of (ad(x) − ε(x)) per generator
    let mut maps: Vec<Vec<Vec<(usize, RingElem)>>> = Vec::new();
    for x in crate::algebras::generators(h) {
        let eps = h.counit(&x, 0).as_scalar(ord);
        let cols = (0..total)
            .map(|c| {
                let v = Element::basis(unflatten(c), ord.one());
                let img = ad.act(&x, &v).sub(&v.scale(&eps));
                img.iter().map(|(k, val)| (flatten(k), val.clone())).collect()
            })
            .collect();
        maps.push(cols);
    }
    let diagonal = |cols: &Vec<Vec<(usize, RingElem)>>| {
        cols.iter().enumerate().all(|(c, col)| col.iter().all(|(r, _)| *r == c))
    };
    let (diag, rest): (Vec<_>, Vec<_>) = maps.into_iter().partition(diagonal);
    let allowed: Vec<usize> = (0..total).filter(|c| diag.iter().all(|m| m[*c].is_empty())).collect();
    let mut entries: Vec<(usize, usize, RingElem)> = Vec::new();
    let mut row_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (gi, m) in rest.iter().enumerate() {
        for (ci, c) in allowed.iter().enumerate() {
            for (r, v) in &m[*c] {
                let n = row_ids.len();
                let rid = *row_ids.entry((gi, *r)).or_insert(n);
                entries.push((rid, ci, v.clone()));
            }
        }
    }
    let ncols = allowed.len();
    let rank = if ncols <= 100 {
        let mut rows: Vec<Row> = vec![BTreeMap::new(); row_ids.len()];
        for (r, c, v) in entries {
            rows[r].insert(c, v);
        }
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e.rank()
    } else {
        let mut best = 0;
        for floor in [1u64 << 40, 1u64 << 41] {
            let p = ModP::new(ord.n(), floor);
            let mut m = vec![vec![0u64; ncols]; row_ids.len()];
            let mut ok = true;
            for (r, c, v) in &entries {
                match p.reduce(v) {
                    Some(x) => m[*r][*c] = x,
                    None => ok = false,
                }
            }
            if ok {
                best = best.max(p.rank(m));
            }
        }
        best
    };
    Ok(ncols - rank)
}

// ---------------------------------------------------------------- factorization

/// Values of the three invariants and whether H_{D(B)} = H_U·H_𝒜 holds exactly.
#[derive(Debug, Clone)]
pub struct FactorizationReport {
    pub ell: u32,
    pub dbz: RingElem,
    pub uzeta: RingElem,
    pub a: RingElem,
    pub pass: bool,
}

/// Computes H over D(B), U_ζ and 𝒜 separately and compares.
pub fn factorization_check(d: &Diagram, ell: u32, limit: Option<usize>) -> Result<FactorizationReport> {
    if ell.is_multiple_of(2) {
        return Err(Error::Domain(format!("factorization needs odd ℓ, got {ell}")));
    }
    let dbz = invariant_with_limit(d, &crate::algebras::dbz(ell)?, limit)?;
    let uzeta = invariant_with_limit(d, &crate::algebras::u_zeta(ell)?, limit)?;
    let a = invariant_with_limit(d, &crate::algebras::algebra_A(ell)?, limit)?;
    let pass = dbz == &uzeta * &a;
    Ok(FactorizationReport { ell, dbz, uzeta, a, pass })
}

/// Same check with algebras already built, for repeated use.
pub fn factorization_check_with(
    d: &Diagram,
    algebras: (&FiniteHopf, &FiniteHopf, &FiniteHopf),
    limit: Option<usize>,
) -> Result<FactorizationReport> {
    let (db, u, a) = algebras;
    let dbz = invariant_with_limit(d, db, limit)?;
    let uzeta = invariant_with_limit(d, u, limit)?;
    let av = invariant_with_limit(d, a, limit)?;
    let pass = dbz == &uzeta * &av;
    Ok(FactorizationReport { ell: ell_of(db), dbz, uzeta, a: av, pass })
}

// ---------------------------------------------------------------- gauge naturality

/// H_F with twisted R, ribbon data and integrals.
pub fn twisted_algebra(h: &Arc<FiniteHopf>, tw: &GaugeTwist) -> Result<FiniteHopf> {
    let mut hf = twist_hopf(h.clone(), tw);
    let (rib, ints) = twisted_special_elements(h, tw)?;
    hf.ribbon = Some(rib);
    hf.integrals = Some(ints);
    Ok(hf)
}

/// Compares γ_F(m)∘Ê_H(T) with Ê_{H_F}(T)∘γ_F(n) on sampled basis inputs.
pub fn naturality_check(h: &Arc<FiniteHopf>, tw: &GaugeTwist, d: &Diagram, cov: Coverage) -> Result<Report> {
    let hf = twisted_algebra(h, tw)?;
    let t = tangle_map(d, h)?;
    let tf = tangle_map(d, &hf)?;
    let mut rep = Report::new(&format!("naturality {}→{} [{}]", t.n, t.m, h.name()));
    for idx in cov.tuples(h.dim(), t.n) {
        let v = Element::basis(idx.clone(), h.order().one());
        let lhs = nat_iso(h, tw, &t.apply(h, &v)?);
        let rhs = tf.apply(&hf, &nat_iso(h, tw, &v))?;
        rep.check(lhs == rhs, || format!("input {idx:?}"));
        if !rep.pass() {
            break;
        }
    }
    Ok(rep)
}
