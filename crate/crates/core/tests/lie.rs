use hennings::lie::*;
use hennings::ring::CyclotomicOrder;
use proptest::prelude::*;

fn rs(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap(), 1).unwrap()
}

#[test]
fn small_examples() {
    let a1 = balance("A1".parse().unwrap(), 5, 1).unwrap();
    assert_eq!(a1.rho_tau, 4);
    assert_eq!(a1.w, Some(2));
    assert_eq!(a1.theta.unwrap(), CyclotomicOrder::new(5).unwrap().zeta(2).to_string());
    assert_eq!(rho_tau_direct(&rs("A2"), 3), 8);
    assert_eq!(rho_tau_direct(&rs("G2"), 5), 112);
    assert_eq!(rs("A2").positive.len(), 3);
    assert_eq!(rs("A2").s, vec![2, 2]);
    assert_eq!(rs("G2").d, vec![1, 3]);
    assert_eq!(rs("G2").positive.len(), 6);
}

#[test]
fn root_counts_and_two_rho() {
    for t in CartanType::all_up_to(8) {
        let r = RootSystem::new(t, 1).unwrap();
        assert_eq!(r.positive.len(), positive_root_count(t), "{t}");
        assert_eq!(r.s, tabulated_two_rho(t), "{t}");
    }
}

#[test]
fn rho_pairs_to_d() {
    for t in CartanType::all_up_to(8) {
        for c in [1, 2, 3] {
            let r = RootSystem::new(t, c).unwrap();
            for i in 0..r.rank() {
                let mut e = vec![0; r.rank()];
                e[i] = 1;
                // (2ρ, α_i) = 2 d_i
                assert_eq!(r.pair(&r.s, &e), 2 * r.d[i], "{t}");
                for j in 0..r.rank() {
                    assert_eq!(r.d[i] * r.cartan_matrix[i][j], r.d[j] * r.cartan_matrix[j][i]);
                }
            }
        }
    }
}

#[test]
fn root_lengths_take_at_most_two_values() {
    for t in CartanType::all_up_to(8) {
        let r = RootSystem::new(t, 1).unwrap();
        let mut lens: Vec<i64> = r.positive.iter().map(|a| r.pair(a, a)).collect();
        lens.sort();
        lens.dedup();
        assert!(lens.len() <= 2, "{t}: {lens:?}");
        assert!(lens.iter().all(|l| r.d.iter().any(|d| 2 * d == *l)));
    }
}

#[test]
fn table_matches_direct() {
    assert_eq!(verify_table(8, 2..=16, &[1, 2, 3]).unwrap(), None);
}

#[test]
fn tau_pairs_with_simple_roots() {
    for t in CartanType::all_up_to(8) {
        for ell in 2..=16 {
            let r = RootSystem::new(t, 1).unwrap();
            let tv = tau(&r, ell);
            let li = ell_i(&r, ell);
            for i in 0..r.rank() {
                let mut e = vec![0; r.rank()];
                e[i] = 1;
                assert_eq!(r.pair(&e, &tv), 2 * r.d[i] * (li[i] - 1), "{t} ℓ={ell}");
            }
        }
    }
}

#[test]
fn sl2_anomaly() {
    for ell in (3..=11).step_by(2) {
        let b = balance("A1".parse().unwrap(), ell, 1).unwrap();
        let expect = (-(ell + 1) / 2).rem_euclid(ell);
        assert_eq!(b.w, Some(expect), "ℓ={ell}");
        assert!(!b.arithmetic_only);
    }
}

#[test]
fn clauses_imply_balance() {
    for t in CartanType::all_up_to(8) {
        for c in [1, 2, 3] {
            for ell in 2..=16 {
                let b = balance(t, ell, c).unwrap();
                if !b.clauses.is_empty() {
                    assert!(b.w.is_some(), "{t} ℓ={ell} c={c}");
                }
            }
        }
    }
    // a case outside every clause that does fail
    let b = balance("A5".parse().unwrap(), 4, 1).unwrap();
    assert!(b.clauses.is_empty());
    assert_eq!(b.w, None);
    assert!(b.arithmetic_only);
}

#[test]
fn bad_types_are_rejected() {
    for s in ["A0", "B1", "D3", "E9", "F3", "G3", "X2", "A"] {
        assert!(s.parse::<CartanType>().is_err(), "{s}");
    }
}

proptest! {
    #[test]
    fn reflections_permute_roots(ti in 0usize..30, i in 0usize..8, k in 0usize..200) {
        let all = CartanType::all_up_to(8);
        let r = RootSystem::new(all[ti % all.len()], 1).unwrap();
        let i = i % r.rank();
        let a = &r.positive[k % r.positive.len()];
        let b = r.reflect(i, a);
        prop_assert_eq!(r.pair(&b, &b), r.pair(a, a));
        let neg: Vec<i64> = b.iter().map(|x| -x).collect();
        prop_assert!(r.positive.contains(&b) || r.positive.contains(&neg));
    }
}
