use hennings::ring::*;
use hennings::Error;
use proptest::prelude::*;

/// Numerical value of an element under ζ_N ↦ e^{2πi/N}.
fn eval(x: &RingElem) -> (f64, f64) {
    let n = x.order().n() as f64;
    let den: f64 = x.denominator().to_string().parse().unwrap();
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, c) in x.numerators().iter().enumerate() {
        let c: f64 = c.to_string().parse::<f64>().unwrap() / den;
        let a = 2.0 * std::f64::consts::PI * k as f64 / n;
        re += c * a.cos();
        im += c * a.sin();
    }
    (re, im)
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-7 && (a.1 - b.1).abs() < 1e-7
}

fn elem(n: u32, coeffs: &[i64], den: i64) -> RingElem {
    let o = CyclotomicOrder::new(n).unwrap();
    let mut acc = o.zero();
    for (k, &c) in coeffs.iter().enumerate() {
        acc += &o.zeta(k as i64).scale_int(c);
    }
    acc.try_mul(&o.ratio(1, den).unwrap()).unwrap()
}

#[test]
fn zeta_3_squared() {
    let z = zeta(3, 2).unwrap();
    let o = z.order();
    assert_eq!(z, &(-&o.one()) - &o.zeta(1));
}

#[test]
fn one_plus_zeta_product() {
    let o = CyclotomicOrder::new(3).unwrap();
    let a = &o.one() + &o.zeta(1);
    let b = &o.one() + &o.zeta(2);
    assert!((&a * &b).is_one());
}

#[test]
fn gauss_sum_three() {
    let g = gauss_sum(3).unwrap();
    let o3 = CyclotomicOrder::new(3).unwrap();
    let expect = (&o3.one() + &o3.zeta(1).scale_int(2)).embed(g.order()).unwrap();
    assert_eq!(g, expect);
}

#[test]
fn gauss_norm_and_sqrt() {
    for ell in [3u32, 5, 7, 9, 11] {
        let f = Sl2Field::new(ell).unwrap();
        let g = f.gauss_sum();
        assert_eq!(&g * &g.conj(), f.int(ell as i64), "ℓ={ell}");
        let s = sqrt_ell(ell).unwrap();
        assert_eq!(&s * &s, f.int(ell as i64));
        assert!(s.is_integral());
    }
}

#[test]
fn sqrt_ell_is_real() {
    for ell in [3u32, 5, 7, 9, 11, 13] {
        let s = sqrt_ell(ell).unwrap();
        let v = eval(&s);
        assert!(v.1.abs() < 1e-9);
        assert!((v.0.abs() - (ell as f64).sqrt()).abs() < 1e-9);
    }
}

#[test]
fn even_ell_rejected() {
    assert!(matches!(gauss_sum(4), Err(Error::Domain(_))));
    assert!(matches!(jacobi(2, 4), Err(Error::Domain(_))));
}

#[test]
fn jacobi_values() {
    assert_eq!(jacobi(2, 3).unwrap(), -1);
    assert_eq!(jacobi(5, 3).unwrap(), -1);
    assert_eq!(jacobi(4, 5).unwrap(), 1);
    assert_eq!(jacobi(3, 9).unwrap(), 0);
    // Euler's criterion oracle for primes
    for p in [3i64, 5, 7, 11, 13] {
        for a in 1..p {
            let e = (1..=(p - 1) / 2).fold(1i64, |acc, _| acc * a % p);
            let expect = if e == 1 { 1 } else { -1 };
            assert_eq!(jacobi(a, p).unwrap() as i64, expect);
        }
    }
}

#[test]
fn errors() {
    let a = zeta(3, 1).unwrap();
    let b = zeta(5, 1).unwrap();
    assert_eq!(a.try_add(&b), Err(Error::OrderMismatch(3, 5)));
    let z = a.order().zero();
    assert_eq!(arith(&a, &z, ArithOp::Div), Err(Error::DivisionByZero));
    assert!(RingElem::parse_text("order=12\n1 + 2*w").is_err());
}

#[test]
fn quantum_integers() {
    let f = Sl2Field::new(5).unwrap();
    let d = &f.zeta(1) - &f.zeta(-1);
    for n in 0..8 {
        let lhs = &f.qint(n) * &d;
        assert_eq!(lhs, &f.zeta(n) - &f.zeta(-n));
    }
    assert!(f.qint(5).is_zero());
    assert_eq!(f.qbinom(4, 2), f.qint(4).try_mul(&f.qint(3)).unwrap().try_div(&f.qint(2)).unwrap());
}

fn arb_elem(n: u32) -> impl Strategy<Value = RingElem> {
    (prop::collection::vec(-20i64..20, 0..(n as usize + 2)), 1i64..7).prop_map(move |(c, d)| elem(n, &c, d))
}

proptest! {
    #[test]
    fn field_ops_match_numeric((a, b) in prop::sample::select(vec![3u32, 4, 5, 8, 12, 20])
        .prop_flat_map(|n| (arb_elem(n), arb_elem(n)))) {
        let (ar, ai) = eval(&a);
        let (br, bi) = eval(&b);
        prop_assert!(close(eval(&(&a + &b)), (ar + br, ai + bi)));
        prop_assert!(close(eval(&(&a * &b)), (ar * br - ai * bi, ar * bi + ai * br)));
        prop_assert!(close(eval(&a.conj()), (ar, -ai)));
        if !b.is_zero() {
            let q = a.try_div(&b).unwrap();
            prop_assert_eq!(&q * &b, a.clone());
        }
    }

    #[test]
    fn ring_axioms(a in arb_elem(12), b in arb_elem(12), c in arb_elem(12)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn text_roundtrip(a in arb_elem(20)) {
        prop_assert_eq!(RingElem::parse_text(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn embedding_is_homomorphism(a in arb_elem(5), b in arb_elem(5)) {
        let t = CyclotomicOrder::new(20).unwrap();
        let ea = a.embed(t).unwrap();
        let eb = b.embed(t).unwrap();
        prop_assert_eq!((&a * &b).embed(t).unwrap(), &ea * &eb);
        prop_assert!(close(eval(&ea), eval(&a)));
    }
}
