use dashu_int::IBig;
use hennings::diagrams::*;
use proptest::prelude::*;

const HOPF: &str = "closed; cup 1; cup 3; xp 2; xp 2; cap 3; cap 1";

fn lk(text: &str) -> LinkingData {
    linking(&load(text).unwrap()).unwrap()
}

#[test]
fn unknots() {
    let d = load("closed; cup 1; cap 1").unwrap();
    assert_eq!(d.components.len(), 1);
    assert_eq!(d.crossing_count(), 0);
    assert_eq!(d.components[0].writhe, 0);
    assert_eq!(d.components[0].rotation().abs(), 1);

    let d = load("closed; cup 1; xn 1; cap 1").unwrap();
    assert_eq!(d.components[0].writhe, -1);
    let l = linking(&d).unwrap();
    assert_eq!((l.matrix.clone(), l.sigma, l.det), (vec![vec![-1]], -1, IBig::from(-1)));
}

#[test]
fn hopf_link() {
    let d = load(HOPF).unwrap();
    assert_eq!(d.components.len(), 2);
    assert!(d.components.iter().all(|c| c.writhe == 0));
    let l = linking(&d).unwrap();
    assert_eq!(l.matrix, vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(l.sigma, 0);
    assert_eq!(l.det, IBig::from(-1));
    // nested cups on one pair give an unknot with two kinks beside a plain unknot
    let d = load("closed; cup 1; cup 2; xp 2; xp 2; cap 2; cap 1").unwrap();
    assert_eq!(linking(&d).unwrap().matrix, vec![vec![0, 0], vec![0, 2]]);
}

#[test]
fn lens_and_homology() {
    for p in 1..=7i64 {
        let l = lk(&library::unknot(p));
        assert_eq!(l.det, IBig::from(p));
        let d = load(&library::unknot(p)).unwrap();
        assert_eq!(h_of_m(&d).unwrap(), p as u64);
    }
    assert_eq!(h_of_m(&load(&library::unknot(0)).unwrap()).unwrap(), 0);
    assert_eq!(h_of_m(&load("closed").unwrap()).unwrap(), 1);
    assert_eq!(lk("closed").sigma, 0);
}

#[test]
fn parse_errors() {
    let e = parse("closed\ncup 1\nfoo 2\n").unwrap_err();
    assert!(matches!(e, hennings::Error::Parse { line: 3, .. }), "{e}");
    let e = load("closed\ncup 1\ncap 2\n").unwrap_err();
    assert!(matches!(e, hennings::Error::Parse { line: 3, .. }), "{e}");
    let e = load("closed\ncup 1\n").unwrap_err();
    assert!(e.to_string().contains("unbalanced"), "{e}");
    assert!(parse("cup 1").is_err());
    assert!(linking(&load("tangle 1 0; cap 1").unwrap()).is_err());
    // a strand from the top to the bottom is not admissible
    assert!(load("tangle 1 1").is_err());
}

#[test]
fn tangle_components() {
    let d = load("tangle 1 1\ncup 3\nxp 2\nxp 2\ncap 1\n").unwrap();
    let kinds: Vec<_> = d.components.iter().map(|c| c.kind).collect();
    assert_eq!(kinds, vec![ComponentKind::Top(1), ComponentKind::Bottom(1)]);
}

#[test]
fn kirby_t1() {
    let e = load("closed").unwrap();
    let d = kirby_move(&e, KirbyMove::T1AddPair).unwrap();
    let l = linking(&d).unwrap();
    assert_eq!(l.matrix, vec![vec![1, 0], vec![0, -1]]);
    let back = kirby_move(&d, KirbyMove::T1RemovePair).unwrap();
    assert_eq!(back.word, e.word);
    assert!(kirby_move(&e, KirbyMove::T1RemovePair).is_err());
}

#[test]
fn corpus_round_trips() {
    for (name, text) in library::corpus() {
        let d = load(&text).unwrap();
        let again = parse(&d.word.render()).unwrap();
        assert_eq!(again, d.word, "{name}");
        assert!(d.crossing_count() <= 8, "{name}");
        let l = linking(&d).unwrap();
        for (c, comp) in d.components.iter().enumerate() {
            assert_eq!(l.matrix[c][c], comp.writhe as i64);
        }
    }
}

fn random_link(seed: u64, max_cross: usize, max_comp: usize) -> MorseWord {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let (mut n, mut comps, mut cross) = (0usize, 0usize, 0usize);
    let mut slices = Vec::new();
    loop {
        let r = rng.gen_range(0..10);
        if n == 0 || (r < 3 && comps < max_comp) {
            if comps == max_comp && n == 0 {
                break;
            }
            slices.push(Slice::new(SliceKind::Cup, rng.gen_range(1..=n + 1)));
            n += 2;
            comps += 1;
        } else if r < 8 && cross < max_cross {
            let k = if rng.gen_bool(0.5) { SliceKind::Xp } else { SliceKind::Xn };
            slices.push(Slice::new(k, rng.gen_range(1..n)));
            cross += 1;
        } else {
            slices.push(Slice::new(SliceKind::Cap, rng.gen_range(1..n)));
            n -= 2;
            if rng.gen_bool(0.4) && n == 0 {
                break;
            }
        }
        if cross >= max_cross && n == 0 {
            break;
        }
    }
    MorseWord::closed(slices)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn slides_preserve_sigma_and_det(seed in any::<u64>()) {
        let d = validate(random_link(seed, 8, 4)).unwrap();
        let n = d.components.len();
        prop_assume!(n >= 2);
        let l = linking(&d).unwrap();
        for a in 0..n {
            for b in 0..n {
                if a == b { continue; }
                let s = kirby_move(&d, KirbyMove::T2Slide { a, b }).unwrap_or_else(|e| panic!("{e} {}", d.word.render().replace("\n", ";")));
                prop_assert_eq!(s.components.len(), n);
                let ls = linking(&s).unwrap();
                prop_assert_eq!(ls.sigma, l.sigma);
                prop_assert_eq!(ls.det.clone() * ls.det.clone(), l.det.clone() * l.det.clone());
                // B changes by the congruence with I ± E_ab
                let m = &l.matrix;
                let ok = [1i64, -1].iter().any(|&e| {
                    let mut p = m.clone();
                    for k in 0..n { p[a][k] += e * m[b][k]; }
                    let q = p.clone();
                    for k in 0..n { p[k][a] += e * q[k][b]; }
                    sorted_eq(&p, &ls.matrix)
                });
                prop_assert!(ok, "{:?} -> {:?}", m, ls.matrix);
            }
        }
    }

    #[test]
    fn render_parse_identity(seed in any::<u64>()) {
        let w = random_link(seed, 6, 3);
        prop_assert_eq!(parse(&w.render()).unwrap(), w);
    }

    #[test]
    fn t1_pair_keeps_sigma_and_abs_det(seed in any::<u64>()) {
        let d = validate(random_link(seed, 6, 3)).unwrap();
        let l = linking(&d).unwrap();
        let e = linking(&kirby_move(&d, KirbyMove::T1AddPair).unwrap()).unwrap();
        prop_assert_eq!(e.sigma, l.sigma);
        prop_assert_eq!(e.det, -l.det);
    }
}

/// Component order and orientations may change under a slide; compare up to
/// simultaneous permutation and sign flips.
fn sorted_eq(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        (0..1u32 << n).any(|mask| {
            let s = |i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
            (0..n).all(|i| (0..n).all(|j| a[i][j] == s(i) * s(j) * b[p[i]][p[j]]))
        })
    })
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, f) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}
