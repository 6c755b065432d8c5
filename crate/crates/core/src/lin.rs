//! Exact linear algebra over Q(ζ_N): incremental row echelon forms,
//! nullspaces, and a rank certificate modulo a split prime.

use std::collections::BTreeMap;

use dashu_int::IBig;

use crate::ring::{CyclotomicOrder, RingElem};

/// Sparse row: column → nonzero coefficient.
pub type Row = BTreeMap<usize, RingElem>;

/// Reduced row echelon basis built one row at a time.
///
/// Every stored row has coefficient 1 at its pivot and zeros at all other pivots.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, pivot: usize) -> Option<&Row> {
        self.rows.get(&pivot)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    fn reduce(&self, mut row: Row) -> Row {
        let pivots: Vec<usize> = row.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for p in pivots {
            let Some(c) = row.get(&p).cloned() else { continue };
            for (col, v) in &self.rows[&p] {
                let d = &c * v;
                let e = row.entry(*col).or_insert_with(|| d.order().zero());
                *e -= &d;
                if e.is_zero() {
                    row.remove(col);
                }
            }
        }
        row
    }

    /// Adds a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: Row) -> bool {
        let row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else { return false };
        let inv = lead.inv().expect("nonzero pivot");
        let row: Row = row.iter().map(|(c, v)| (*c, v * &inv)).collect();
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&p).cloned() {
                for (col, v) in &row {
                    let d = &c * v;
                    let e = other.entry(*col).or_insert_with(|| d.order().zero());
                    *e -= &d;
                    if e.is_zero() {
                        other.remove(col);
                    }
                }
            }
        }
        self.rows.insert(p, row);
        true
    }

    /// Basis of {v : row·v = 0 for all rows}.
    pub fn nullspace(&self, ord: CyclotomicOrder) -> Vec<Vec<RingElem>> {
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.rows.contains_key(c)) {
            let mut v = vec![ord.zero(); self.ncols];
            v[free] = ord.one();
            for (p, row) in &self.rows {
                if let Some(c) = row.get(&free) {
                    v[*p] = -c;
                }
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a dense or sparse list of rows over the field.
pub fn rank(rows: impl IntoIterator<Item = Row>, ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Reduction Z[ζ_N][1/d] → F_p sending ζ_N to a fixed primitive N-th root mod p.
#[derive(Debug, Clone)]
pub struct ModP {
    pub p: u64,
    root_pows: Vec<u64>,
}

impl ModP {
    /// Smallest prime p ≡ 1 mod N above `floor` together with a primitive N-th root.
    pub fn new(n: u32, floor: u64) -> ModP {
        let n64 = n as u64;
        let mut p = (floor / n64 + 1) * n64 + 1;
        while !is_prime(p) {
            p += n64;
        }
        let mut root = 0;
        for g in 2..p {
            let r = pow_mod(g, (p - 1) / n64, p);
            // primitive iff r^(N/q) ≠ 1 for every prime q | N
            let ok = (2..=n64).filter(|q| n64.is_multiple_of(*q) && is_prime(*q)).all(|q| pow_mod(r, n64 / q, p) != 1);
            if ok {
                root = r;
                break;
            }
        }
        let mut root_pows = Vec::with_capacity(n as usize);
        let mut c = 1u64;
        for _ in 0..n {
            root_pows.push(c);
            c = c * root % p;
        }
        ModP { p, root_pows }
    }

    fn int(&self, x: &IBig) -> u64 {
        let pm = IBig::from(self.p);
        let r = ((x % &pm) + &pm) % &pm;
        u64::try_from(r).expect("residue fits")
    }

    /// Image of a ring element; None if its denominator vanishes mod p.
    pub fn reduce(&self, a: &RingElem) -> Option<u64> {
        let den = self.int(a.denominator());
        if den == 0 {
            return None;
        }
        let mut s = 0u64;
        for (i, c) in a.numerators().iter().enumerate() {
            if !c.is_zero() {
                s = (s + self.int(c) * self.root_pows[i]) % self.p;
            }
        }
        Some(s * pow_mod(den, self.p - 2, self.p) % self.p)
    }

    /// Rank of a matrix over F_p.
    pub fn rank(&self, mut m: Vec<Vec<u64>>) -> usize {
        let p = self.p;
        let ncols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..ncols {
            let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, piv);
            let inv = pow_mod(m[r][c], p - 2, p);
            for v in m[r].iter_mut() {
                *v = *v * inv % p;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
            r += 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_nullspace() {
        let ord = CyclotomicOrder::new(3).unwrap();
        let z = ord.zeta(1);
        let mut e = Echelon::new(3);
        let r1: Row = [(0, ord.one()), (1, z.clone())].into_iter().collect();
        let r2: Row = [(0, ord.int(2)), (1, z.scale_int(2))].into_iter().collect();
        assert!(e.insert(r1));
        assert!(!e.insert(r2));
        let ns = e.nullspace(ord);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s = &v[0] + &(&z * &v[1]);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn mod_p_reduction_is_a_homomorphism() {
        let ord = CyclotomicOrder::new(12).unwrap();
        let m = ModP::new(12, 1000);
        assert_eq!(m.p % 12, 1);
        let a = &ord.zeta(1) + &ord.int(3);
        let b = &ord.zeta(5) - &ord.ratio(1, 2).unwrap();
        let ab = &a * &b;
        let (ra, rb, rab) = (m.reduce(&a).unwrap(), m.reduce(&b).unwrap(), m.reduce(&ab).unwrap());
        assert_eq!(ra * rb % m.p, rab);
        // Φ_12 vanishes at the chosen root
        assert_eq!(m.reduce(&ord.zeta(12)).unwrap(), 1);
        assert_ne!(m.reduce(&ord.zeta(6)).unwrap(), 1);
    }
}
