//! Root systems of the simple types, the lattice vector τ = Σ(ℓ_α − 1)α, the pairing
//! (ρ, τ) both directly and by closed forms, and the double-balancing decision.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{CyclotomicOrder, RingElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A type letter with its rank, written like "G2" or "A5".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub ty: LieType,
    pub rank: usize,
}

impl CartanType {
    pub fn new(ty: LieType, rank: usize) -> Result<Self> {
        let ok = match ty {
            LieType::A => rank >= 1,
            LieType::B | LieType::C => rank >= 2,
            LieType::D => rank >= 4,
            LieType::E => (6..=8).contains(&rank),
            LieType::F => rank == 4,
            LieType::G => rank == 2,
        };
        if !ok {
            return Err(Error::Domain(format!("no simple type {ty}{rank}")));
        }
        Ok(CartanType { ty, rank })
    }

    /// Every simple type of rank at most `max`.
    pub fn all_up_to(max: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for n in 1..=max {
            for ty in [LieType::A, LieType::B, LieType::C, LieType::D, LieType::E, LieType::F, LieType::G] {
                if let Ok(t) = CartanType::new(ty, n) {
                    out.push(t);
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.ty, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let ty = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => LieType::A,
            Some('B') => LieType::B,
            Some('C') => LieType::C,
            Some('D') => LieType::D,
            Some('E') => LieType::E,
            Some('F') => LieType::F,
            Some('G') => LieType::G,
            _ => return Err(Error::Domain(format!("unknown Lie type {s:?}"))),
        };
        let rank = chars.as_str().parse::<usize>().map_err(|_| Error::Domain(format!("bad rank in {s:?}")))?;
        CartanType::new(ty, rank)
    }
}

/// Simple-root data with inner products scaled so that short roots have (α, α) = 2c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub cartan: CartanType,
    pub scale: i64,
    /// (α_i, α_j)
    pub form: Vec<Vec<i64>>,
    /// a_ij with d_i a_ij = (α_i, α_j)
    pub cartan_matrix: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    /// positive roots in the simple-root basis
    pub positive: Vec<Vec<i64>>,
    /// coefficients of 2ρ
    pub s: Vec<i64>,
}

/// Bourbaki's tabulated coefficients of 2ρ.
pub fn tabulated_two_rho(t: CartanType) -> Vec<i64> {
    let n = t.rank as i64;
    let idx = 1..=n;
    match t.ty {
        LieType::A => idx.map(|i| i * (n + 1 - i)).collect(),
        LieType::B => idx.map(|i| if i < n { i * (2 * n - i) } else { n * n }).collect(),
        LieType::C => idx.map(|i| if i < n { i * (2 * n - i + 1) } else { n * (n + 1) / 2 }).collect(),
        LieType::D => idx.map(|i| if i <= n - 2 { i * (2 * n - i - 1) } else { n * (n - 1) / 2 }).collect(),
        LieType::E => match n {
            6 => vec![16, 22, 30, 42, 30, 16],
            7 => vec![34, 49, 66, 96, 75, 52, 27],
            _ => vec![92, 136, 182, 270, 220, 168, 114, 58],
        },
        LieType::F => vec![16, 30, 42, 22],
        LieType::G => vec![10, 6],
    }
}

/// Known number of positive roots.
pub fn positive_root_count(t: CartanType) -> usize {
    let n = t.rank;
    match t.ty {
        LieType::A => n * (n + 1) / 2,
        LieType::B | LieType::C => n * n,
        LieType::D => n * (n - 1),
        LieType::E => [36, 63, 120][n - 6],
        LieType::F => 24,
        LieType::G => 6,
    }
}

/// Unscaled Gram matrix of the simple roots in Bourbaki order.
fn gram(t: CartanType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut g = vec![vec![0i64; n]; n];
    let mut bond = |i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match t.ty {
        LieType::A => (0..n - 1).for_each(|i| bond(i, i + 1, -1)),
        LieType::B => (0..n - 1).for_each(|i| bond(i, i + 1, -2)),
        LieType::C => {
            (0..n - 2).for_each(|i| bond(i, i + 1, -1));
            bond(n - 2, n - 1, -2);
        }
        LieType::D => {
            (0..n - 2).for_each(|i| bond(i, i + 1, -1));
            bond(n - 3, n - 1, -1);
        }
        LieType::E => {
            bond(0, 2, -1);
            bond(1, 3, -1);
            (2..n - 1).for_each(|i| bond(i, i + 1, -1));
        }
        LieType::F => {
            bond(0, 1, -2);
            bond(1, 2, -2);
            bond(2, 3, -1);
        }
        LieType::G => bond(0, 1, -3),
    }
    let lengths: Vec<i64> = match t.ty {
        LieType::A | LieType::D | LieType::E => vec![2; n],
        LieType::B => (0..n).map(|i| if i + 1 < n { 4 } else { 2 }).collect(),
        LieType::C => (0..n).map(|i| if i + 1 < n { 2 } else { 4 }).collect(),
        LieType::F => vec![4, 4, 2, 2],
        LieType::G => vec![2, 6],
    };
    for (i, l) in lengths.into_iter().enumerate() {
        g[i][i] = l;
    }
    g
}

impl RootSystem {
    pub fn new(cartan: CartanType, scale: i64) -> Result<Self> {
        if scale < 1 {
            return Err(Error::Domain(format!("scale must be positive, got {scale}")));
        }
        let n = cartan.rank;
        let form: Vec<Vec<i64>> = gram(cartan).into_iter().map(|r| r.into_iter().map(|x| x * scale).collect()).collect();
        let d: Vec<i64> = (0..n).map(|i| form[i][i] / 2).collect();
        let cartan_matrix = (0..n).map(|i| (0..n).map(|j| form[i][j] / d[i]).collect()).collect();
        let mut rs = RootSystem { cartan, scale, form, cartan_matrix, d, positive: Vec::new(), s: Vec::new() };
        rs.positive = rs.reflection_closure();
        rs.s = (0..n).map(|i| rs.positive.iter().map(|a| a[i]).sum()).collect();
        if rs.positive.len() != positive_root_count(cartan) || rs.s != tabulated_two_rho(cartan) {
            return Err(Error::Verify(format!("root data for {cartan} disagrees with the tables")));
        }
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| a[i] * self.form[i][j] * b[j]).sum()
    }

    /// s_i(β) = β − ⟨β, α_i^∨⟩α_i
    pub fn reflect(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        let k = self.pair(beta, &e) / self.d[i];
        let mut out = beta.to_vec();
        out[i] -= k;
        out
    }

    fn reflection_closure(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let r = self.reflect(i, &b);
                if r.iter().all(|x| *x >= 0) && r.iter().any(|x| *x > 0) && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut v: Vec<Vec<i64>> = seen.into_iter().collect();
        v.sort_by_key(|a| (a.iter().sum::<i64>(), a.clone()));
        v
    }

    pub fn d_hat(&self) -> i64 {
        *self.d.iter().min().expect("nonempty")
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Order of ζ^k for ζ a primitive ℓ-th root of unity.
pub fn order_of(ell: i64, k: i64) -> i64 {
    ell / gcd(ell, k)
}

/// ℓ_i for each simple root.
pub fn ell_i(rs: &RootSystem, ell: i64) -> Vec<i64> {
    rs.d.iter().map(|d| order_of(ell, 2 * d)).collect()
}

/// τ = Σ_{α∈Φ⁺} (ℓ_α − 1)α.
pub fn tau(rs: &RootSystem, ell: i64) -> Vec<i64> {
    let mut t = vec![0; rs.rank()];
    for a in &rs.positive {
        let la = order_of(ell, rs.pair(a, a));
        for (ti, ai) in t.iter_mut().zip(a) {
            *ti += (la - 1) * ai;
        }
    }
    t
}

/// (ρ, τ) = Σ d_i(ℓ_i − 1)s_i.
pub fn rho_tau_direct(rs: &RootSystem, ell: i64) -> i64 {
    ell_i(rs, ell).iter().zip(&rs.d).zip(&rs.s).map(|((li, d), s)| d * (li - 1) * s).sum()
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The closed form for (ρ, τ) by type.
pub fn rho_tau_table(rs: &RootSystem, ell: i64) -> i64 {
    let dh = rs.d_hat();
    let l1 = order_of(ell, 2 * dh) - 1;
    let l2 = order_of(ell, 4 * dh) - 1;
    let l3 = order_of(ell, 6 * dh) - 1;
    let n = rs.rank() as i64;
    match rs.cartan.ty {
        LieType::A => dh * l1 * binom(n + 2, 3),
        LieType::B => 2 * dh * l2 * (3 * binom(n + 1, 3) + binom(n, 3)) + dh * l1 * n * n,
        LieType::C => 4 * dh * l1 * binom(n + 1, 3) + 2 * dh * l2 * binom(n + 1, 2),
        LieType::D => 2 * dh * l1 * (binom(n + 1, 3) + binom(n, 3)),
        LieType::E => [156, 399, 1240][rs.rank() - 6] * dh * l1,
        LieType::F => 4 * dh * (16 * l1 + 23 * l2),
        LieType::G => 2 * dh * (5 * l1 + 9 * l3),
    }
}

/// The situations in which double balancing is guaranteed without computing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Clause {
    /// type is not A_{4k+1}, B_{2k+1} or E₇
    TypeNotExceptional,
    /// ℓ odd or twice an odd number
    EllOddOrTwiceOdd,
    /// the smallest d_i is even
    DHatEven,
}

pub fn clauses(rs: &RootSystem, ell: i64) -> Vec<Clause> {
    let n = rs.rank();
    let exceptional = match rs.cartan.ty {
        LieType::A => n % 4 == 1,
        LieType::B => n % 2 == 1,
        LieType::E => n == 7,
        _ => false,
    };
    let mut out = Vec::new();
    if !exceptional {
        out.push(Clause::TypeNotExceptional);
    }
    if ell % 2 == 1 || (ell / 2) % 2 == 1 {
        out.push(Clause::EllOddOrTwiceOdd);
    }
    if rs.d_hat() % 2 == 0 {
        out.push(Clause::DHatEven);
    }
    out
}

/// Outcome of the balancing computation for one root system and ℓ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub cartan: String,
    pub ell: i64,
    pub scale: i64,
    pub ell_i: Vec<i64>,
    pub tau: Vec<i64>,
    pub rho_tau: i64,
    pub rho_tau_table: i64,
    /// a solution of 2w ≡ (ρ, τ) mod ℓ
    pub w: Option<i64>,
    /// ζ^w in Q(ζ_ℓ), written in z = ζ
    pub theta: Option<String>,
    pub clauses: Vec<Clause>,
    /// even ℓ: the numbers are computed but no algebra is built behind them
    pub arithmetic_only: bool,
}

/// Smallest w ≥ 0 with 2w ≡ x mod ℓ.
pub fn half_mod(x: i64, ell: i64) -> Option<i64> {
    (0..ell).find(|w| (2 * w - x).rem_euclid(ell) == 0)
}

pub fn theta(ell: i64, w: i64) -> Result<RingElem> {
    Ok(CyclotomicOrder::new(ell as u32)?.zeta(w))
}

pub fn balance(cartan: CartanType, ell: i64, scale: i64) -> Result<BalanceReport> {
    if ell < 2 {
        return Err(Error::Domain(format!("ℓ must be at least 2, got {ell}")));
    }
    let rs = RootSystem::new(cartan, scale)?;
    let rho_tau = rho_tau_direct(&rs, ell);
    let w = half_mod(rho_tau, ell);
    let theta = w.map(|w| theta(ell, w).map(|t| t.to_string())).transpose()?;
    Ok(BalanceReport {
        cartan: cartan.to_string(),
        ell,
        scale,
        ell_i: ell_i(&rs, ell),
        tau: tau(&rs, ell),
        rho_tau,
        rho_tau_table: rho_tau_table(&rs, ell),
        w,
        theta,
        clauses: clauses(&rs, ell),
        arithmetic_only: ell % 2 == 0,
    })
}

impl BalanceReport {
    pub fn to_text(&self) -> String {
        let w = self.w.map_or("none".to_string(), |w| w.to_string());
        let theta = self.theta.as_deref().unwrap_or("none");
        let clauses: Vec<String> = self.clauses.iter().map(|c| format!("{c:?}")).collect();
        let mut s = format!(
            "type={} ell={} scale={} rho_tau={} table={} w={} theta={} clauses=[{}]",
            self.cartan,
            self.ell,
            self.scale,
            self.rho_tau,
            self.rho_tau_table,
            w,
            theta,
            clauses.join(",")
        );
        if self.arithmetic_only {
            s.push_str(" (arithmetic only)");
        }
        s
    }
}

/// Table versus direct formula over all types of rank ≤ `max_rank` and ℓ in `ells`;
/// returns the first disagreement.
pub fn verify_table(max_rank: usize, ells: std::ops::RangeInclusive<i64>, scales: &[i64]) -> Result<Option<String>> {
    for t in CartanType::all_up_to(max_rank) {
        for &c in scales {
            let rs = RootSystem::new(t, c)?;
            for ell in ells.clone() {
                let (a, b) = (rho_tau_direct(&rs, ell), rho_tau_table(&rs, ell));
                if a != b {
                    return Ok(Some(format!("{t} ℓ={ell} c={c}: direct {a}, table {b}")));
                }
                let via_form = rs.pair(&rs.s, &tau(&rs, ell));
                if via_form != 2 * a {
                    return Ok(Some(format!("{t} ℓ={ell} c={c}: (2ρ,τ) = {via_form} but 2(ρ,τ) = {}", 2 * a)));
                }
            }
        }
    }
    Ok(None)
}
