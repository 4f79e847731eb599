use bundles_p1::{parse_point, DivisorSpec, Moduli};
use hecke_edges::{EdgeTag, HeckeAt};
use ring_arith::poly::monic_irreducibles;
use ring_arith::{group_order, FieldCtx, Point, SubgroupSpec, SubgroupTag};
use std::sync::Arc;

fn hecke(q: u64, divisor: &[(Point, usize)], x: Point) -> Option<HeckeAt> {
    let f = Arc::new(FieldCtx::new(q).unwrap());
    let d = DivisorSpec::new(divisor.to_vec()).unwrap();
    let m = Moduli::new(f, d, Some(x)).unwrap();
    let order = group_order(m.level_ring(), SubgroupSpec::pgl(SubgroupTag::GL2));
    (order <= 1 << 17).then(|| HeckeAt::new(Arc::new(m)).unwrap())
}

#[test]
fn rule_matches_bruteforce_in_the_deep_cusp() {
    let mut skipped = Vec::new();
    for q in [2u64, 3, 4] {
        let f = FieldCtx::new(q).unwrap();
        for deg_x in [1, 2] {
            let x = Point::Finite(monic_irreducibles(&f, deg_x)[0].clone());
            let y = parse_point(&f, "inf").unwrap();
            let divisors = [vec![], vec![(x.clone(), 1)], vec![(x.clone(), 2)], vec![(x.clone(), 1), (y, 1)]];
            for d in divisors {
                let Some(h) = hecke(q, &d, x.clone()) else {
                    skipped.push((q, deg_x, d.len()));
                    continue;
                };
                let top = (h.deep_threshold() + 4) as u32;
                for v in h.moduli().enumerate(top).unwrap() {
                    let bf = h.neighbors_bruteforce(&v).unwrap();
                    assert_eq!(bf.iter().map(|e| e.mult).sum::<u64>(), h.degree());
                    if v.gap as i64 > h.deep_threshold() {
                        assert_eq!(h.neighbors_cusp_rule(&v).unwrap(), bf, "q={q} deg x={deg_x} gap={}", v.gap);
                        for e in &bf {
                            assert_eq!((e.target.gap as i64 - v.gap as i64).abs(), deg_x as i64);
                        }
                    } else {
                        assert!(h.neighbors_cusp_rule(&v).is_err());
                    }
                }
            }
        }
    }
    // only the largest level groups exceed the test budget
    assert!(skipped.iter().all(|&(q, deg_x, _)| q * deg_x as u64 >= 6), "{skipped:?}");
}

#[test]
fn worked_example_edges() {
    let f = FieldCtx::new(2).unwrap();
    let x = parse_point(&f, "x").unwrap();
    let h = hecke(2, &[(x.clone(), 1)], x).unwrap();
    let m = h.moduli().clone();
    let vs = m.enumerate(3).unwrap();
    let c0 = &vs[0];
    let out = h.neighbors_bruteforce(c0).unwrap();
    let labels: Vec<String> = out.iter().map(|e| format!("{}:{}", e.target.layer, e.mult)).collect();
    // every position except 0
    assert_eq!(labels, vec!["cusp1@inf1:1", "cusp1@1:1"]);
    for v in vs.iter().filter(|v| v.gap == 1 && v.layer.to_string() != "cusp1@inf1") {
        let out = h.neighbors_bruteforce(v).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].target, *c0);
        assert_eq!(out[0].mult, 2);
        assert_eq!(out[0].tags, vec![EdgeTag::CaseII; 2]);
    }
}

#[test]
fn unramified_half_line() {
    for q in [2u64, 3, 5] {
        let f = FieldCtx::new(q).unwrap();
        let h = hecke(q, &[], parse_point(&f, "x").unwrap()).unwrap();
        for v in h.moduli().enumerate(5).unwrap() {
            let out = h.neighbors(&v).unwrap();
            let summary: Vec<(u32, u64)> = out.iter().map(|e| (e.target.gap, e.mult)).collect();
            if v.gap == 0 {
                assert_eq!(summary, vec![(1, q + 1)]);
            } else {
                assert_eq!(summary, vec![(v.gap - 1, q), (v.gap + 1, 1)]);
            }
        }
    }
}
