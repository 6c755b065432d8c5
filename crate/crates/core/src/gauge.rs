//! Gauge transformations with trivial associator: cocycle checks, the elements
//! x_F and z_F, twisted Hopf structures, F^(n) and the induced natural isomorphism.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{Coverage, Element, FiniteHopf, IntegralData, Lin, Lin2, QuasiTriData, Report, RibbonData, Structure};
use crate::ring::{CyclotomicOrder, RingElem};

/// A twist F with its inverse and derived elements.
#[derive(Debug, Clone)]
pub struct GaugeTwist {
    pub f: Element,
    pub f_inv: Element,
    pub x: Element,
    pub x_inv: Element,
    pub z: Element,
}

/// J(a⊗b) = Σ a'⊗a''S(b)
pub fn jay(h: &FiniteHopf, t: &Element) -> Element {
    let y = h.antipode(&h.comul(t, 0), 2);
    h.merge_slots(&y, 1)
}

/// J⁻¹(a⊗b) = Σ a'⊗S⁻¹(b)a''
pub fn jay_inv(h: &FiniteHopf, t: &Element) -> Element {
    let y = h.antipode_inv(&h.comul(t, 0), 2).permute(&[0, 2, 1]);
    h.merge_slots(&y, 1)
}

/// J̄(a⊗b) = Σ S(a)b'⊗b''
pub fn jay_bar(h: &FiniteHopf, t: &Element) -> Element {
    let y = h.antipode(&h.comul(t, 1), 0);
    h.merge_slots(&y, 0)
}

/// J̄⁻¹(a⊗b) = Σ b'S⁻¹(a)⊗b''
pub fn jay_bar_inv(h: &FiniteHopf, t: &Element) -> Element {
    let y = h.antipode_inv(&h.comul(t, 1), 0).permute(&[1, 0, 2]);
    h.merge_slots(&y, 0)
}

/// Builds the twist data and checks the cocycle, counit and x_F identities.
///
/// Without an explicit inverse, F⁻¹ is taken as J(F)(1⊗x_F⁻¹) and then checked.
pub fn make_twist(h: &FiniteHopf, f: Element, f_inv: Option<Element>) -> Result<(GaugeTwist, Report)> {
    let mut rep = Report::new(&format!("gauge twist [{}]", h.name()));
    let one = h.unit(1);
    let one2 = h.unit(2);
    let x = h.multiply_out(&h.antipode(&f, 1));
    let (f_inv, x_inv) = match f_inv {
        Some(fi) => {
            let xb = h.multiply_out(&h.antipode(&fi, 0));
            (fi, xb)
        }
        None => {
            let xi = h.inverse(&x)?;
            (h.mul(&jay(h, &f), &one.tensor(&xi)), xi)
        }
    };
    rep.check(h.mul(&f, &f_inv) == one2 && h.mul(&f_inv, &f) == one2, || "F·F⁻¹ ≠ 1⊗1".into());
    let lhs = h.mul(&f.tensor(&one), &h.comul(&f, 0));
    let rhs = h.mul(&one.tensor(&f), &h.comul(&f, 1));
    if lhs != rhs {
        return Err(Error::Verify(format!(
            "cocycle fails: (F⊗1)(Δ⊗id)F has {} terms, (1⊗F)(id⊗Δ)F has {} terms, difference {:?}",
            lhs.len(),
            rhs.len(),
            lhs.sub(&rhs)
        )));
    }
    rep.check(h.counit(&f, 0) == one && h.counit(&f, 1) == one, || "counit condition fails".into());
    // x̄_F = x_F⁻¹
    rep.check(h.mul(&x, &x_inv) == one && h.mul(&x_inv, &x) == one, || "x̄_F ≠ x_F⁻¹".into());
    // Σ C x S(D) = 1 = Σ S(A) x̄ B
    let w1 = {
        let t = h.antipode(&f_inv, 1);
        let spread = t.tensor(&one).permute(&[0, 2, 1]);
        let mid = h.place(&x, 3, &[1]);
        h.multiply_out(&h.mul(&spread, &mid))
    };
    rep.check(w1 == one, || "Σ C x_F S(D) ≠ 1".into());
    let w2 = {
        let t = h.antipode(&f, 0);
        let spread = t.tensor(&one).permute(&[0, 2, 1]);
        let mid = h.place(&x_inv, 3, &[1]);
        h.multiply_out(&h.mul(&spread, &mid))
    };
    rep.check(w2 == one, || "Σ S(A) x̄_F B ≠ 1".into());
    let s_inv_x = h.antipode_inv(&x, 0);
    let s_inv_xi = h.antipode_inv(&x_inv, 0);
    rep.check(h.mul(&jay(h, &f), &one.tensor(&x_inv)) == f_inv, || "F⁻¹ ≠ J(F)(1⊗x⁻¹)".into());
    rep.check(h.mul(&jay_bar_inv(h, &f), &s_inv_xi.tensor(&one)) == f_inv, || "F⁻¹ ≠ J̄⁻¹(F)(S⁻¹(x⁻¹)⊗1)".into());
    rep.check(h.mul(&x.tensor(&one), &jay_bar(h, &f_inv)) == f, || "F ≠ (x⊗1)J̄(F⁻¹)".into());
    rep.check(h.mul(&one.tensor(&s_inv_x), &jay_inv(h, &f_inv)) == f, || "F ≠ (1⊗S⁻¹(x))J⁻¹(F⁻¹)".into());
    let dagger = dagger(h, &f_inv);
    let alt = h.mul(&h.mul(&x_inv.tensor(&x_inv), &f), &h.comul(&x, 0));
    rep.check(dagger == alt, || "F† ≠ (x⁻¹⊗x⁻¹)FΔ(x)".into());
    // z_F = x_F S(x_F)⁻¹ = x_F S(x_F⁻¹)
    let z = h.mul(&x, &h.antipode(&x_inv, 0));
    Ok((GaugeTwist { f, f_inv, x, x_inv, z }, rep))
}

/// F† = (S⊗S)τ(F⁻¹)
pub fn dagger(h: &FiniteHopf, f_inv: &Element) -> Element {
    h.antipode(&h.antipode(&f_inv.flip(), 0), 1)
}

/// Same algebra, coproduct FΔF⁻¹, antipode x_F S x_F⁻¹.
pub struct Twisted {
    base: Arc<FiniteHopf>,
    tw: GaugeTwist,
}

impl Structure for Twisted {
    fn name(&self) -> String {
        format!("{}_F", self.base.name())
    }
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn order(&self) -> CyclotomicOrder {
        self.base.order()
    }
    fn label(&self, i: u32) -> String {
        self.base.label(i)
    }
    fn unit(&self) -> Lin {
        self.base.unit_lin().clone()
    }
    fn mul(&self, i: u32, j: u32) -> Lin {
        (*self.base.basis_mul(i, j)).clone()
    }
    fn comul(&self, i: u32) -> Lin2 {
        let h = &self.base;
        let d = h.comul(&h.basis_el(i), 0);
        let t = h.mul(&h.mul(&self.tw.f, &d), &self.tw.f_inv);
        t.iter().map(|(k, v)| ((k[0], k[1]), v.clone())).collect()
    }
    fn counit(&self, i: u32) -> RingElem {
        self.base.basis_counit(i).clone()
    }
    fn antipode(&self, i: u32) -> Lin {
        let h = &self.base;
        let s = h.antipode(&h.basis_el(i), 0);
        h.mul(&h.mul(&self.tw.x, &s), &self.tw.x_inv).to_lin()
    }
    fn antipode_inv(&self, i: u32) -> Option<Lin> {
        let h = &self.base;
        let c = h.mul(&h.mul(&self.tw.x_inv, &h.basis_el(i)), &self.tw.x);
        Some(h.antipode_inv(&c, 0).to_lin())
    }
}

/// H_F with R_F = F₂₁RF⁻¹ when H carries an R-matrix.
pub fn twist_hopf(h: Arc<FiniteHopf>, tw: &GaugeTwist) -> FiniteHopf {
    let quasi = h.quasi.as_ref().map(|q| {
        let r = h.mul(&h.mul(&tw.f.flip(), &q.r), &tw.f_inv);
        let r_inv = h.mul(&h.mul(&tw.f, &q.r_inv), &tw.f_inv.flip());
        QuasiTriData { r, r_inv }
    });
    let mut out = FiniteHopf::new(Arc::new(Twisted { base: h, tw: tw.clone() }));
    out.quasi = quasi;
    out
}

/// u_F = z_F u, κ_F = z_F κ, r_F = r, λ_F = λ(z_F⁻¹ ·), Λ_F = Λ.
pub fn twisted_special_elements(h: &FiniteHopf, tw: &GaugeTwist) -> Result<(RibbonData, IntegralData)> {
    let rib = h.ribbon.as_ref().ok_or_else(|| Error::Domain("algebra has no ribbon data".into()))?;
    let data = h.integrals.as_ref().ok_or_else(|| Error::Domain("algebra has no integrals".into()))?;
    let z_inv = h.mul(&h.antipode(&tw.x, 0), &tw.x_inv);
    let new_rib = RibbonData {
        u: h.mul(&tw.z, &rib.u),
        u_inv: h.mul(&rib.u_inv, &z_inv),
        kappa: h.mul(&tw.z, &rib.kappa),
        kappa_inv: h.mul(&rib.kappa_inv, &z_inv),
        ribbon: rib.ribbon.clone(),
        ribbon_inv: rib.ribbon_inv.clone(),
    };
    let lambda = (0..h.dim() as u32).map(|i| h.eval_form(&data.lambda, &h.mul(&z_inv, &h.basis_el(i)))).collect();
    let new_data = IntegralData { lambda, cointegral: data.cointegral.clone(), g: None, alpha: None };
    Ok((new_rib, new_data))
}

/// Applies ∇ = F·Δ (or Δ·F⁻¹ when `bar`) at slot i.
fn nabla(h: &FiniteHopf, tw: &GaugeTwist, t: &Element, i: usize, bar: bool) -> Element {
    let d = h.comul(t, i);
    let n = d.deg();
    if bar {
        h.mul(&d, &h.place(&tw.f_inv, n, &[i, i + 1]))
    } else {
        h.mul(&h.place(&tw.f, n, &[i, i + 1]), &d)
    }
}

/// F^(n) ∈ H^⊗(n+1) from the insertion sequence (i_1, …, i_n), 0-based with i_k < k.
pub fn higher_twist_seq(h: &FiniteHopf, tw: &GaugeTwist, seq: &[usize], bar: bool) -> Element {
    let mut t = h.unit(1);
    for &i in seq {
        t = nabla(h, tw, &t, i, bar);
    }
    t
}

/// F^(n) of degree n+1 by leftmost insertion, checked against rightmost insertion,
/// its inverse, the counit contractions and intertwining on a sample.
pub fn higher_twist(h: &FiniteHopf, tw: &GaugeTwist, n: usize, cov: Coverage) -> (Element, Report) {
    let mut rep = Report::new(&format!("higher twist F^({n})"));
    let left: Vec<usize> = vec![0; n];
    let right: Vec<usize> = (0..n).collect();
    let a = higher_twist_seq(h, tw, &left, false);
    let b = higher_twist_seq(h, tw, &right, false);
    rep.check(a == b, || "F^(n) depends on the insertion sequence".into());
    let abar = higher_twist_seq(h, tw, &left, true);
    rep.check(h.mul(&a, &abar) == h.unit(n + 1), || "F̄^(n) is not the inverse".into());
    if n >= 1 {
        let prev = higher_twist_seq(h, tw, &left[..n - 1], false);
        for s in 0..=n {
            rep.check(h.counit(&a, s) == prev, || format!("ε in slot {s} does not give F^(n-1)"));
        }
    }
    let twisted = TwistedView { h, tw };
    for x in cov.singles(h.dim()) {
        let b = h.basis_el(x);
        let dn = h.comul_n(&b, n + 1);
        let df = twisted.comul_n(&b, n + 1);
        rep.check(h.mul(&a, &dn) == h.mul(&df, &a), || format!("intertwining fails at {}", h.label(x)));
    }
    (a, rep)
}

struct TwistedView<'a> {
    h: &'a FiniteHopf,
    tw: &'a GaugeTwist,
}

impl TwistedView<'_> {
    fn comul(&self, t: &Element, slot: usize) -> Element {
        let d = self.h.comul(t, slot);
        let n = d.deg();
        let f = self.h.place(&self.tw.f, n, &[slot, slot + 1]);
        let fi = self.h.place(&self.tw.f_inv, n, &[slot, slot + 1]);
        self.h.mul(&self.h.mul(&f, &d), &fi)
    }

    fn comul_n(&self, a: &Element, n: usize) -> Element {
        let mut x = a.clone();
        for _ in 1..n {
            let last = x.deg() - 1;
            x = self.comul(&x, last);
        }
        x
    }
}

/// γ_F(g)(b₁⊗…⊗b_g) = Σ F₁b₁S(F₂)x⁻¹ ⊗ … ⊗ F_{2g−1}b_gS(F_{2g})x⁻¹ with F^(2g−1) of degree 2g.
pub fn nat_iso(h: &FiniteHopf, tw: &GaugeTwist, v: &Element) -> Element {
    let g = v.deg();
    if g == 0 {
        return v.clone();
    }
    let fa = higher_twist_seq(h, tw, &vec![0; 2 * g - 1], false);
    let mut out = Element::zero(g);
    for (kf, cf) in fa.iter() {
        for (kv, cv) in v.iter() {
            let mut acc = Element::scalar(cf * cv);
            for s in 0..g {
                let left = h.basis_el(kf[2 * s]);
                let right = h.antipode(&h.basis_el(kf[2 * s + 1]), 0);
                let piece = h.mul(&h.mul(&h.mul(&left, &h.basis_el(kv[s])), &right), &tw.x_inv);
                acc = acc.tensor(&piece);
            }
            out = out.add(&acc);
        }
    }
    out
}
