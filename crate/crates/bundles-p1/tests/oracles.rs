use bundles_p1::aut::section_images;
use bundles_p1::*;
use ring_arith::poly::Poly;
use ring_arith::{FieldCtx, Jet, JetRing, Point};
use std::sync::Arc;

fn all_polys(q: u32, max_deg: i64) -> Vec<Poly> {
    if max_deg < 0 {
        return vec![Vec::new()];
    }
    let n = (max_deg + 1) as u32;
    (0..q.pow(n))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let c = k % q;
                    k /= q;
                    c
                })
                .collect()
        })
        .collect()
}

/// `Λ = O·g + π^c O²` membership by trying every multiplier.
fn in_line_lattice(r: &JetRing, g: (Jet, Jet), v: (Jet, Jet)) -> bool {
    r.elements().any(|l| r.mul(l, g.0) == v.0 && r.mul(l, g.1) == v.1)
}

fn brute_h0(f: &FieldCtx, r: &JetRing, a: i64, b: i64, g: (Jet, Jet), m: i64) -> usize {
    let q = f.q();
    let mut count = 0u64;
    for f1 in all_polys(q, a + m) {
        for f2 in all_polys(q, b + m) {
            let v = (local_value(&f1, a + m, r), local_value(&f2, b + m, r));
            if in_line_lattice(r, g, v) {
                count += 1;
            }
        }
    }
    let mut h = 0;
    while (q as u64).pow(h) < count {
        h += 1;
    }
    assert_eq!((q as u64).pow(h), count);
    h as usize
}

#[test]
fn h0_profile_matches_exhaustive_count() {
    for (q, pt, c, a, b) in [(2, "t", 1, 0, 0), (2, "inf", 2, 2, 0), (3, "t+1", 1, 1, 0), (2, "t^2+t+1", 1, 1, 1)] {
        let f = Arc::new(FieldCtx::new(q).unwrap());
        let p = Point::parse(&f, pt).unwrap();
        let r = Arc::new(JetRing::new(f.clone(), p, c).unwrap());
        for g in [(r.one(), r.one()), (r.uniformizer(), r.one()), (r.one(), r.zero())] {
            let cond = LatticeCondition { ring: r.clone(), generators: vec![g] };
            let sheaf = ModifiedSheaf::new(f.clone(), a, b, &[cond]);
            for m in -1..=2 {
                assert_eq!(sheaf.h0(m), brute_h0(&f, &r, a, b, g, m), "{q} {pt} {g:?} m={m}");
            }
        }
    }
}

#[test]
fn diagonal_line_gives_gap_one() {
    let f = Arc::new(FieldCtx::new(2).unwrap());
    let r = Arc::new(JetRing::new(f.clone(), Point::parse(&f, "t").unwrap(), 1).unwrap());
    let g = (r.one(), r.one());
    let profile: Vec<usize> = (0..3).map(|m| brute_h0(&f, &r, 0, 0, g, m)).collect();
    // O ⊕ O(-1): 1, 3, 5
    assert_eq!(profile, vec![1, 3, 5]);
    let cond = LatticeCondition { ring: r, generators: vec![g] };
    assert_eq!(splitting_type(&f, 0, 0, &[cond]).unwrap(), (0, -1));
}

#[test]
fn splitting_type_is_automorphism_invariant() {
    let f = Arc::new(FieldCtx::new(3).unwrap());
    let x = Point::parse(&f, "t").unwrap();
    let r = Arc::new(JetRing::new(f.clone(), x.clone(), 2).unwrap());
    let d1 = DivisorSpec::new(vec![(x, 2)]).unwrap();
    let level = d1.level_ring(&f).unwrap();
    for n in 0..4i64 {
        for g in [(r.one(), r.from_poly(&[2, 1])), (r.uniformizer(), r.one()), (r.from_poly(&[0, 2]), r.one())] {
            let base = splitting_type(&f, n, 0, &[LatticeCondition { ring: r.clone(), generators: vec![g] }]).unwrap();
            for s in section_images(&f, &level, n, &DivisorSpec::zero()) {
                for alpha in [1, 2] {
                    // h = [[α, s], [0, 1]] acting on the bundle side
                    let h = [r.from_const(alpha), s[0], 0, r.one()];
                    let moved = (r.add(r.mul(h[0], g.0), r.mul(h[1], g.1)), g.1);
                    let c = LatticeCondition { ring: r.clone(), generators: vec![moved] };
                    assert_eq!(splitting_type(&f, n, 0, &[c]).unwrap(), base);
                }
            }
        }
    }
}

#[test]
fn fiber_count_law_with_fixed_part() {
    for (q, d1, d2) in [
        (2, "t:1", ""),
        (2, "t:1", "inf:1"),
        (3, "t:1", "t+1:1"),
        (2, "t:2", "inf:1"),
        (2, "t:1,t+1:1", ""),
        (2, "t^2+t+1:1", "inf:2"),
        (3, "inf:2", ""),
    ] {
        let f = Arc::new(FieldCtx::new(q).unwrap());
        let d1 = DivisorSpec::parse(&f, d1).unwrap();
        let d2 = DivisorSpec::parse(&f, d2).unwrap();
        let level = d1.level_ring(&f).unwrap();
        let gap = (d1.degree() + d2.degree()) as i64 - 1;
        let group = aut_image(&f, gap.max(1), &d1, &d2).unwrap();
        let reps = orbit_representatives(&level, &group).unwrap();
        assert_eq!(reps.len() as u128, fiber_count(q, &d1, &d2), "q={q}");
    }
}

#[test]
fn orbits_partition_the_group() {
    let f = Arc::new(FieldCtx::new(2).unwrap());
    let m = Moduli::new(f.clone(), DivisorSpec::parse(&f, "t:2,inf:1").unwrap(), None).unwrap();
    for gap in 0..4 {
        let reps = m.levels_at(gap).unwrap();
        let aut = m.aut(gap);
        let mut total = 0;
        for rep in &reps {
            let mut orbit: Vec<_> = aut.iter().map(|h| bundles_p1::aut::act(m.level_ring(), rep, h)).collect();
            orbit.sort();
            orbit.dedup();
            assert_eq!(orbit[0], *rep);
            for o in &orbit {
                assert_eq!(m.canonical_level(gap, o).unwrap(), *rep);
            }
            total += orbit.len();
        }
        assert_eq!(total, 6 * 8 * 6);
    }
}
