//! Left coset decompositions of the Hecke double coset at one point.

use ring_arith::{Jet, JetRing, M2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CosetLabel {
    /// `[[1, π^d C], [0, 1]]·diag(π, 1)` with `C` a residue.
    Ramified(Jet),
    /// `[[π, c], [0, 1]]`.
    Lower(Jet),
    /// `[[1, 0], [0, π]]`.
    Upper,
}

/// One coset `τΔK`: `gamma = τ·Δ` has entries in `O_x`, read in a ring of
/// order at least `d + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetRep {
    pub label: CosetLabel,
    pub tau: M2,
    pub gamma: M2,
}

/// Residue field elements as lifts of degree below `deg x`.
pub fn residues(ring: &JetRing) -> Vec<Jet> {
    let f = ring.field();
    let r = ring.point_degree();
    let q = f.q();
    (0..q.pow(r as u32))
        .map(|mut k| {
            let c: Vec<u32> = (0..r)
                .map(|_| {
                    let x = k % q;
                    k /= q;
                    x
                })
                .collect();
            ring.from_poly(&c)
        })
        .collect()
}

/// Coset representatives for level `d` at the point of `ring`; `ring` must
/// have order at least `d + 1`.
pub fn coset_reps(ring: &JetRing, d: usize) -> Vec<CosetRep> {
    assert!(ring.order() > d, "coset ring too shallow");
    let pi = ring.uniformizer();
    let one = ring.one();
    let pi_pow = (0..d).fold(one, |acc, _| ring.mul(acc, pi));
    let res = residues(ring);
    if d >= 1 {
        res.into_iter()
            .map(|c| {
                let shift = ring.mul(pi_pow, c);
                CosetRep {
                    label: CosetLabel::Ramified(c),
                    tau: [one, shift, 0, one],
                    gamma: [pi, ring.mul(shift, one), 0, one],
                }
            })
            .collect()
    } else {
        let mut out: Vec<CosetRep> = res
            .into_iter()
            .map(|c| CosetRep {
                label: CosetLabel::Lower(c),
                tau: [one, c, 0, one],
                gamma: [pi, c, 0, one],
            })
            .collect();
        out.push(CosetRep { label: CosetLabel::Upper, tau: [0, one, one, 0], gamma: [one, 0, 0, pi] });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ring_arith::{mat2, FieldCtx, Point};
    use std::sync::Arc;

    fn ring(q: u64, pt: &str, d: usize) -> JetRing {
        let f = Arc::new(FieldCtx::new(q).unwrap());
        let p = Point::parse(&f, pt).unwrap();
        JetRing::new(f, p, d).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(coset_reps(&ring(2, "t", 2), 1).len(), 2);
        assert_eq!(coset_reps(&ring(3, "t", 1), 0).len(), 4);
        assert_eq!(coset_reps(&ring(2, "t^2+t+1", 1), 0).len(), 5);
        assert_eq!(coset_reps(&ring(3, "inf", 3), 2).len(), 3);
    }

    #[test]
    fn determinants_have_valuation_one() {
        let r = ring(2, "t^2+t+1", 3);
        for d in 0..3 {
            for c in coset_reps(&r, d) {
                assert_eq!(r.valuation(mat2::det(&r, &c.gamma)), 1);
            }
        }
    }

    #[test]
    fn cosets_are_distinct() {
        // γ_i^{-1} γ_j ∉ K(d) for i ≠ j
        let r = ring(3, "t", 3);
        for d in 0..2 {
            let reps = coset_reps(&r, d);
            for (i, a) in reps.iter().enumerate() {
                for b in &reps[i + 1..] {
                    let m = mat2::mul(&r, &mat2::adj(&r, &a.gamma), &b.gamma);
                    let integral = m.iter().all(|&e| r.valuation(e) >= 1);
                    let inside = integral && {
                        let red: Vec<_> = m.iter().map(|&e| r.div_uniformizer(e, &r).unwrap()).collect();
                        let id = mat2::identity(&r);
                        r.is_unit(mat2::det(&r, &[red[0], red[1], red[2], red[3]]))
                            && (d == 0 || (0..4).all(|k| r.valuation(r.sub(red[k], id[k])) >= d))
                    };
                    assert!(!inside);
                }
            }
        }
    }
}
