mod common;

use common::{at, closed_form, graph};
use num_rational::BigRational;
use spectral::*;

#[test]
fn closed_form_oracle_reference_values() {
    let (f2, _) = closed_form(2, &rat(3), &rat(1), 2);
    assert_eq!(f2, BigRational::new(4.into(), 9.into()));
    let (_, i1) = closed_form(2, &rat(3), &rat(1), 1);
    assert_eq!(i1, BigRational::new(7.into(), 3.into()));
}

#[test]
fn propagation_matches_closed_form() {
    for q in [2u64, 3, 4, 5] {
        let g = graph(q, "x:1", "x", 13);
        let l = LayeredDecomposition::new(&g).unwrap();
        assert_eq!(l.propagation(), Propagation::Strict);
        let c0 = (0..g.len()).find(|&v| g.vertices[v].gap == 0).unwrap();
        for lam in [2, 3, 5, 7, q as i64] {
            let lambda = rat(lam);
            let a = rat(1);
            let p = l.propagate(&Rationals, &lambda, &[(c0, a.clone())], 12).unwrap();
            assert!(p.verified > 0);
            for n in 1..=12u32 {
                let (fin, inf) = closed_form(q as i64, &lambda, &a, n);
                assert_eq!(p.values[at(&g, n, &format!("cusp{n}@inf1"))], Some(inf), "q={q} λ={lam} n={n}");
                for c in 0..q {
                    assert_eq!(p.values[at(&g, n, &format!("cusp{n}@{c}"))], Some(fin.clone()), "q={q} λ={lam} n={n}");
                }
            }
        }
    }
}

#[test]
fn constant_tail_at_lambda_q() {
    let g = graph(3, "x:1", "x", 8);
    let l = LayeredDecomposition::new(&g).unwrap();
    let p = l.propagate(&Rationals, &rat(3), &[(0, rat(1))], 6).unwrap();
    for n in 1..=8 {
        assert_eq!(p.values[at(&g, n, &format!("cusp{n}@1"))], Some(rat(1)));
    }
}

#[test]
fn bad_seed_and_zero_are_rejected() {
    let g = graph(2, "x:1", "x", 6);
    let l = LayeredDecomposition::new(&g).unwrap();
    assert!(matches!(l.propagate(&Rationals, &rat(0), &[(0, rat(1))], 3), Err(SpectralError::ZeroEigenvalue)));
    let s1 = at(&g, 1, "cusp1@1");
    let s2 = at(&g, 1, "cusp1@0");
    // both satellites at gap 1 equal 2a/λ; giving them different values is inconsistent
    let r = l.propagate(&Rationals, &rat(3), &[(0, rat(1)), (s1, rat(1)), (s2, rat(2))], 3);
    assert!(matches!(r, Err(SpectralError::BadSeed)));
}

#[test]
fn interpolated_families() {
    let g = graph(2, "x:1", "x", 6);
    let l = LayeredDecomposition::new(&g).unwrap();
    let depth = 4;
    let samples: Vec<BigRational> =
        (0..2 * (l.prime.len() + depth) + 4).map(|i| BigRational::new((i as i64 + 3).into(), 2.into())).collect();
    let seed = [(0usize, rat(1))];
    let x = QPoly::x();
    // c_{n,φ≠∞} = (q/λ)^n
    for n in 1..=3u32 {
        let fam = l.eigenform_family(at(&g, n, &format!("cusp{n}@1")), &seed, &samples, depth).unwrap();
        assert_eq!(fam.numerator, QPoly::constant(rat(2i64.pow(n))));
        assert_eq!(fam.denominator, x.pow(n));
        assert!(fam.growth() <= depth as i64);
    }
    let fam = l.eigenform_family(0, &seed, &samples, depth).unwrap();
    assert_eq!((fam.numerator.clone(), fam.denominator.clone()), (QPoly::one(), QPoly::one()));
    // c_{1,∞} = λ − (q−1)q/λ
    let fam = l.eigenform_family(at(&g, 1, "cusp1@inf1"), &seed, &samples, depth).unwrap();
    assert_eq!(fam.numerator, QPoly::from_ints(&[-2, 0, 1]));
    assert_eq!(fam.denominator, x);
    assert!(l.eigenform_family(0, &seed, &samples[..5], depth).is_err());
}
