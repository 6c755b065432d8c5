//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)−1} with a common
//! positive denominator. Every value is kept reduced modulo Φ_N, so equality
//! is coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use dashu_int::ops::Gcd;
use dashu_int::IBig;

use crate::error::{Error, Result};

/// Reduction data for one cyclotomic order.
#[derive(Debug)]
pub struct Cyclotomic {
    n: u32,
    deg: usize,
    /// ζ^k reduced to the power basis, for 0 ≤ k < N.
    pow: Vec<Vec<i64>>,
    units: Vec<u32>,
}

/// Order N of the root of unity ζ_N generating the field.
#[derive(Clone, Copy)]
pub struct CyclotomicOrder(&'static Cyclotomic);

impl PartialEq for CyclotomicOrder {
    fn eq(&self, other: &Self) -> bool {
        self.0.n == other.0.n
    }
}
impl Eq for CyclotomicOrder {}

impl fmt::Debug for CyclotomicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order={}", self.0.n)
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Integer coefficients of Φ_n, lowest degree first.
fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_poly(d);
            p = poly_div_exact(&p, &q);
        }
    }
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = r[i + dd];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            r[i + j] -= c * dj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

impl Cyclotomic {
    fn build(n: u32) -> Cyclotomic {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        let mut pow = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..n {
            pow.push(cur.clone());
            // multiply by x
            let top = cur[deg - 1];
            for j in (1..deg).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..deg {
                    cur[j] -= top * phi[j];
                }
            }
        }
        let units = (1..=n.max(1)).filter(|&t| gcd_u64(t as u64, n as u64) == 1).map(|t| t % n.max(1)).collect();
        Cyclotomic { n, deg, pow, units }
    }
}

impl CyclotomicOrder {
    /// The field Q(ζ_n). Contexts are built once per order and shared.
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("cyclotomic order must be positive".into()));
        }
        static REG: OnceLock<Mutex<HashMap<u32, &'static Cyclotomic>>> = OnceLock::new();
        let reg = REG.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = reg.lock().expect("cyclotomic registry poisoned");
        let ctx = *guard.entry(n).or_insert_with(|| Box::leak(Box::new(Cyclotomic::build(n))));
        Ok(CyclotomicOrder(ctx))
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    /// φ(N), the dimension of the power basis.
    pub fn degree(&self) -> usize {
        self.0.deg
    }

    pub fn zero(&self) -> RingElem {
        RingElem { ord: *self, num: vec![IBig::ZERO; self.0.deg], den: IBig::ONE }
    }

    pub fn one(&self) -> RingElem {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> RingElem {
        let mut e = self.zero();
        e.num[0] = IBig::from(v);
        e
    }

    pub fn ratio(&self, p: i64, q: i64) -> Result<RingElem> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut e = self.zero();
        e.num[0] = IBig::from(p);
        e.den = IBig::from(q);
        e.normalize();
        Ok(e)
    }

    /// ζ_N^k for any integer k.
    pub fn zeta(&self, k: i64) -> RingElem {
        let n = self.0.n as i64;
        let idx = k.rem_euclid(n) as usize;
        RingElem {
            ord: *self,
            num: self.0.pow[idx].iter().map(|&c| IBig::from(c)).collect(),
            den: IBig::ONE,
        }
    }

    pub fn from_coeffs(&self, num: Vec<IBig>, den: IBig) -> Result<RingElem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.len() > self.0.deg {
            // reduce higher powers
            let mut out = self.zero();
            out.den = den;
            for (k, c) in num.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let p = &self.0.pow[k % self.0.n as usize];
                for (j, &pj) in p.iter().enumerate() {
                    if pj != 0 {
                        out.num[j] += &c * IBig::from(pj);
                    }
                }
            }
            out.normalize();
            return Ok(out);
        }
        let mut num = num;
        num.resize(self.0.deg, IBig::ZERO);
        let mut e = RingElem { ord: *self, num, den };
        e.normalize();
        Ok(e)
    }
}

/// An element of Q(ζ_N) in canonical form.
#[derive(Clone)]
pub struct RingElem {
    ord: CyclotomicOrder,
    num: Vec<IBig>,
    den: IBig,
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.ord == other.ord && self.den == other.den && self.num == other.num
    }
}
impl Eq for RingElem {}

impl std::hash::Hash for RingElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ord.n().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl RingElem {
    pub fn order(&self) -> CyclotomicOrder {
        self.ord
    }

    /// Power-basis numerators over the common denominator.
    pub fn numerators(&self) -> &[IBig] {
        &self.num
    }

    pub fn denominator(&self) -> &IBig {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// True iff every power-basis coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational number p/q if it lies in Q.
    pub fn as_rational(&self) -> Option<(IBig, IBig)> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some((self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_one() {
            return;
        }
        if self.den < IBig::ZERO {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.is_zero() {
            self.den = IBig::ONE;
            return;
        }
        let mut g = IBig::from(self.den.clone().gcd(&self.num[0]));
        for c in &self.num[1..] {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = IBig::from(g.gcd(c));
            }
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for c in self.num.iter_mut() {
                if !c.is_zero() {
                    *c = &*c / &g;
                }
            }
        }
    }

    fn check(&self, other: &RingElem) -> Result<()> {
        if self.ord != other.ord {
            return Err(Error::OrderMismatch(self.ord.n(), other.ord.n()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(self.mul_unchecked(&inv))
    }

    fn add_unchecked(&self, other: &RingElem, negate: bool) -> RingElem {
        let mut out = self.clone();
        out.add_into(other, negate);
        out
    }

    fn add_into(&mut self, other: &RingElem, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.den == other.den {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                if negate {
                    *a -= b;
                } else {
                    *a += b;
                }
            }
            if !self.den.is_one() {
                self.normalize();
            }
            return;
        }
        let den = &self.den * &other.den;
        for (a, b) in self.num.iter_mut().zip(&other.num) {
            let t = b * &self.den;
            *a *= &other.den;
            if negate {
                *a -= t;
            } else {
                *a += t;
            }
        }
        self.den = den;
        self.normalize();
    }

    fn mul_unchecked(&self, other: &RingElem) -> RingElem {
        let ctx = self.ord.0;
        let d = ctx.deg;
        if d == 1 {
            let mut e = RingElem { ord: self.ord, num: vec![&self.num[0] * &other.num[0]], den: &self.den * &other.den };
            e.normalize();
            return e;
        }
        let mut prod = vec![IBig::ZERO; 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<IBig> = prod.drain(..d).collect();
        let n = ctx.n as usize;
        for (off, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &ctx.pow[(d + off) % n];
            for (j, &pj) in p.iter().enumerate() {
                match pj {
                    0 => {}
                    1 => num[j] += &c,
                    -1 => num[j] -= &c,
                    _ => num[j] += &c * IBig::from(pj),
                }
            }
        }
        let mut e = RingElem { ord: self.ord, num, den: &self.den * &other.den };
        e.normalize();
        e
    }

    /// Galois automorphism ζ ↦ ζ^t (t coprime to N).
    pub fn galois(&self, t: i64) -> RingElem {
        let ctx = self.ord.0;
        let n = ctx.n as i64;
        let mut out = self.ord.zero();
        out.den = self.den.clone();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &ctx.pow[((i as i64) * t).rem_euclid(n) as usize];
            for (j, &pj) in p.iter().enumerate() {
                if pj != 0 {
                    out.num[j] += c * IBig::from(pj);
                }
            }
        }
        out.normalize();
        out
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> RingElem {
        self.galois(-1)
    }

    /// Multiplicative inverse via the product of Galois conjugates.
    pub fn inv(&self) -> Result<RingElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((p, q)) = self.as_rational() {
            let mut e = self.ord.zero();
            e.num[0] = q;
            e.den = p;
            e.normalize();
            return Ok(e);
        }
        let mut cof = self.ord.one();
        for &t in &self.ord.0.units {
            if t != 1 {
                cof = cof.mul_unchecked(&self.galois(t as i64));
            }
        }
        let norm = self.mul_unchecked(&cof);
        let (p, q) = norm.as_rational().expect("norm lies in Q");
        let mut s = self.ord.zero();
        s.num[0] = q;
        s.den = p;
        s.normalize();
        Ok(cof.mul_unchecked(&s))
    }

    pub fn pow(&self, e: i64) -> Result<RingElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.ord.one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc)
    }

    /// Image under Q(ζ_m) → Q(ζ_N), ζ_m ↦ ζ_N^{N/m}, for m | N.
    pub fn embed(&self, target: CyclotomicOrder) -> Result<RingElem> {
        let m = self.ord.n();
        let n = target.n();
        if !n.is_multiple_of(m) {
            return Err(Error::Domain(format!("cannot embed order {m} into order {n}")));
        }
        let step = (n / m) as usize;
        let mut num = vec![IBig::ZERO; step * self.num.len()];
        for (i, c) in self.num.iter().enumerate() {
            num[i * step] = c.clone();
        }
        target.from_coeffs(num, self.den.clone())
    }

    pub fn scale_int(&self, k: i64) -> RingElem {
        let mut e = self.clone();
        let k = IBig::from(k);
        for c in e.num.iter_mut() {
            *c *= &k;
        }
        e.normalize();
        e
    }

    /// Header plus coefficient line, the canonical text form.
    pub fn to_text(&self) -> String {
        format!("order={}\n{}", self.ord.n(), self)
    }

    pub fn parse_text(text: &str) -> Result<RingElem> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
        let n: u32 = head
            .strip_prefix("order=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse { line: 1, msg: format!("expected order=<N>, got {head:?}") })?;
        let body = lines.next().unwrap_or("0");
        parse_body(CyclotomicOrder::new(n)?, body)
    }
}

fn parse_body(ord: CyclotomicOrder, body: &str) -> Result<RingElem> {
    let err = |msg: String| Error::Parse { line: 2, msg };
    let s: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty expression".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut acc = ord.zero();
    for t in terms {
        let (neg, t) = match t.as_bytes()[0] {
            b'+' => (false, &t[1..]),
            b'-' => (true, &t[1..]),
            _ => (false, t),
        };
        let (coef, power) = if let Some(pos) = t.find('z') {
            let c = t[..pos].trim_end_matches('*');
            let rest = &t[pos + 1..];
            let k: i64 = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').and_then(|r| r.parse().ok()).ok_or_else(|| err(format!("bad exponent in {t:?}")))?
            };
            (if c.is_empty() { "1" } else { c }, k)
        } else {
            (t, 0)
        };
        let (p, q) = match coef.split_once('/') {
            Some((p, q)) => (p, q),
            None => (coef, "1"),
        };
        let p = IBig::from_str(p).map_err(|_| err(format!("bad coefficient {coef:?}")))?;
        let q = IBig::from_str(q).map_err(|_| err(format!("bad coefficient {coef:?}")))?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut c = ord.zero();
        c.num[0] = if neg { -p } else { p };
        c.den = q;
        c.normalize();
        acc += &(&c * &ord.zeta(power));
    }
    Ok(acc)
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < IBig::ZERO;
            let mag = if neg { -c } else { c.clone() };
            let g = IBig::from(mag.clone().gcd(&self.den));
            let (p, q) = (&mag / &g, &self.den / &g);
            let coef = if q.is_one() { format!("{p}") } else { format!("{p}/{q}") };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mono = match i {
                0 => coef,
                _ => {
                    let z = if i == 1 { "z".to_string() } else { format!("z^{i}") };
                    if coef == "1" {
                        z
                    } else {
                        format!("{coef}*{z}")
                    }
                }
            };
            write!(f, "{sep}{mono}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.ord.n(), self)
    }
}

impl<'a> Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        assert!(self.ord == rhs.ord, "order mismatch");
        self.add_unchecked(rhs, false)
    }
}

impl<'a> Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        assert!(self.ord == rhs.ord, "order mismatch");
        self.add_unchecked(rhs, true)
    }
}

impl<'a> Mul<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        assert!(self.ord == rhs.ord, "order mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        let mut e = self.clone();
        for c in e.num.iter_mut() {
            *c = -&*c;
        }
        e
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        assert!(self.ord == rhs.ord, "order mismatch");
        self.add_into(rhs, false);
    }
}

impl SubAssign<&RingElem> for RingElem {
    fn sub_assign(&mut self, rhs: &RingElem) {
        assert!(self.ord == rhs.ord, "order mismatch");
        self.add_into(rhs, true);
    }
}

/// Binary field operation selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &RingElem, b: &RingElem, op: ArithOp) -> Result<RingElem> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

pub fn zeta(n: u32, k: i64) -> Result<RingElem> {
    Ok(CyclotomicOrder::new(n)?.zeta(k))
}

pub fn conj(a: &RingElem) -> RingElem {
    a.conj()
}

pub fn is_integral(a: &RingElem) -> bool {
    a.is_integral()
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: i64) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::Domain(format!("jacobi symbol needs odd positive modulus, got {n}")));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

fn check_odd(ell: u32) -> Result<()> {
    if ell < 3 || ell.is_multiple_of(2) {
        return Err(Error::Domain(format!("ℓ must be odd and at least 3, got {ell}")));
    }
    Ok(())
}

/// Q(ζ_{4ℓ}) together with the distinguished ℓ-th root ζ = ζ_{4ℓ}⁴.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sl2Field {
    pub ell: u32,
    pub ord: CyclotomicOrder,
}

impl Sl2Field {
    pub fn new(ell: u32) -> Result<Self> {
        check_odd(ell)?;
        Ok(Sl2Field { ell, ord: CyclotomicOrder::new(4 * ell)? })
    }

    /// ζ^k for the primitive ℓ-th root ζ.
    pub fn zeta(&self, k: i64) -> RingElem {
        self.ord.zeta(4 * k)
    }

    /// The inverse of 2 modulo ℓ, (ℓ+1)/2.
    pub fn half(&self) -> i64 {
        (self.ell as i64 + 1) / 2
    }

    pub fn sqrt_minus_one(&self) -> RingElem {
        self.ord.zeta(self.ell as i64)
    }

    pub fn one(&self) -> RingElem {
        self.ord.one()
    }

    pub fn zero(&self) -> RingElem {
        self.ord.zero()
    }

    pub fn int(&self, v: i64) -> RingElem {
        self.ord.int(v)
    }

    pub fn ratio(&self, p: i64, q: i64) -> RingElem {
        self.ord.ratio(p, q).expect("nonzero denominator")
    }

    /// Symmetric quantum integer [n] = (ζⁿ − ζ⁻ⁿ)/(ζ − ζ⁻¹).
    pub fn qint(&self, n: i64) -> RingElem {
        // ζ^{n-1} + ζ^{n-3} + … + ζ^{1-n}, no division needed
        let mut acc = self.zero();
        if n == 0 {
            return acc;
        }
        let m = n.abs();
        for j in 0..m {
            acc += &self.zeta(m - 1 - 2 * j);
        }
        if n < 0 {
            -&acc
        } else {
            acc
        }
    }

    pub fn qfact(&self, n: i64) -> RingElem {
        (1..=n).fold(self.one(), |acc, i| &acc * &self.qint(i))
    }

    /// Symmetric q-binomial built by Pascal recursion.
    pub fn qbinom(&self, n: usize, k: usize) -> RingElem {
        if k > n {
            return self.zero();
        }
        // [n k] = ζ^{n-k}[n-1, k-1] + ζ^{-k}[n-1, k]
        let mut row = vec![self.one()];
        for m in 1..=n {
            let mut next = vec![self.zero(); m + 1];
            for j in 0..=m {
                let mut v = self.zero();
                if j >= 1 {
                    v += &(&self.zeta((m - j) as i64) * &row[j - 1]);
                }
                if j < m {
                    v += &(&self.zeta(-(j as i64)) * &row[j]);
                }
                next[j] = v;
            }
            row = next;
        }
        row[k].clone()
    }

    /// Gaussian binomial in q = ζ^s, the coefficient in (x + y)ⁿ when yx = qxy.
    pub fn gauss_binom(&self, s: i64, n: usize, k: usize) -> RingElem {
        if k > n {
            return self.zero();
        }
        let mut row = vec![self.one()];
        for m in 1..=n {
            let mut next = vec![self.zero(); m + 1];
            for j in 0..=m {
                let mut v = self.zero();
                if j >= 1 {
                    v += &row[j - 1];
                }
                if j < m {
                    v += &(&self.zeta(s * j as i64) * &row[j]);
                }
                next[j] = v;
            }
            row = next;
        }
        row[k].clone()
    }

    pub fn gauss_sum(&self) -> RingElem {
        let h = self.half();
        let ell = self.ell as i64;
        (0..ell).fold(self.zero(), |acc, m| &acc + &self.zeta(-h * m * m))
    }

    /// The square root of ℓ singled out by the Gauss sum.
    pub fn sqrt_ell(&self) -> RingElem {
        let ell = self.ell as i64;
        let p = (-self.half()).rem_euclid(ell);
        let sign = jacobi(p, ell).expect("odd modulus");
        let mut s = self.gauss_sum().scale_int(sign as i64);
        if ell % 4 == 3 {
            // divide by √−1
            s = &s * &self.sqrt_minus_one().conj();
        }
        debug_assert!(&s * &s == self.int(ell));
        s
    }
}

pub fn gauss_sum(ell: u32) -> Result<RingElem> {
    Ok(Sl2Field::new(ell)?.gauss_sum())
}

pub fn sqrt_ell(ell: u32) -> Result<RingElem> {
    let f = Sl2Field::new(ell)?;
    let s = f.sqrt_ell();
    if &s * &s != f.int(ell as i64) {
        return Err(Error::Domain(format!("square root post-check failed for ℓ={ell}")));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn render_parse() {
        let o = CyclotomicOrder::new(12).unwrap();
        let x = &o.int(1) + &o.zeta(1).scale_int(2);
        assert_eq!(x.to_string(), "1 + 2*z");
        assert_eq!(RingElem::parse_text(&x.to_text()).unwrap(), x);
        let y = &o.ratio(-1, 3).unwrap() * &o.zeta(3);
        assert_eq!(RingElem::parse_text(&y.to_text()).unwrap(), y);
    }
}
