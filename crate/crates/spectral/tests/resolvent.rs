mod common;

use common::graph;
use num_rational::BigRational;
use spectral::*;

#[test]
fn resolvent_has_one_dimensional_fibres() {
    let g = graph(2, "x:1", "x", 8);
    let l = LayeredDecomposition::new(&g).unwrap();
    let lambda = rat(5);
    let core = l.core_gap(1);
    let support: Vec<usize> = (0..l.len()).filter(|&v| !l.boundary[v] && l.gap[v] as i64 <= core).collect();
    // deterministic pseudo-random right-hand sides
    let mut state = 12345u64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as i64
    };
    let mut dims = Vec::new();
    for _ in 0..5 {
        let mut g: Vec<(usize, BigRational)> = Vec::new();
        for &v in &support {
            if next() % 3 == 0 {
                let (a, b) = (next() % 21 - 10, next() % 5 + 1);
                g.push((v, BigRational::new(a.into(), b.into())));
            }
        }
        let r = l.solve_resolvent(&Rationals, &lambda, &g).unwrap();
        dims.push(r.dim);
        // particular + homogeneous is again a solution
        let shifted: Vec<BigRational> =
            r.particular.iter().zip(&r.homogeneous[0]).map(|(a, b)| a + b * rat(3)).collect();
        for v in (0..l.len()).filter(|&v| !l.boundary[v]) {
            let phi: BigRational = l.out[v].iter().map(|&(w, m)| rat(m) * &shifted[w]).sum();
            let gv = g.iter().find(|(u, _)| *u == v).map_or(rat(0), |(_, x)| x.clone());
            assert_eq!(phi - &lambda * &shifted[v], gv);
        }
    }
    assert_eq!(dims, vec![1; 5]);
    let c0 = [(0usize, rat(1))];
    assert_eq!(l.solve_resolvent(&Rationals, &lambda, &c0).unwrap().dim, 1);
    assert_eq!(l.solve_resolvent(&Rationals, &lambda, &[]).unwrap().dim, l.dim_bounds(&Rationals, &lambda).unwrap().lower);
}

#[test]
fn generalized_eigenspaces_grow_linearly() {
    let g = graph(2, "x:1", "x", 10);
    let l = LayeredDecomposition::new(&g).unwrap();
    for k in 1..=3 {
        assert_eq!(l.window_dim(&Rationals, &rat(5), k).unwrap(), k);
    }
}

#[test]
fn nucleus_eigenvalues_are_rejected() {
    let g = graph(2, "y:1", "x", 6);
    let l = LayeredDecomposition::new(&g).unwrap();
    assert!(matches!(
        l.solve_resolvent(&Rationals, &rat(0), &[]),
        Err(SpectralError::InNucleusSpectrum { .. })
    ));
    let g = graph(2, "x:1", "x", 6);
    let l = LayeredDecomposition::new(&g).unwrap();
    let f = Quotient::new(QPoly::from_ints(&[-2, 0, 1]));
    assert!(matches!(l.solve_resolvent(&f, &f.generator(), &[]), Err(SpectralError::InNucleusSpectrum { .. })));
}
