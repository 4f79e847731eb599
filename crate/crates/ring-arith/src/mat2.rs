//! 2×2 matrices over a single truncated local ring, entries in row-major
//! order `[a11, a12, a21, a22]`.

use crate::jet::{Jet, JetRing};

pub type M2 = [Jet; 4];

/// Positions of the entries in the scalar-normalization scan order
/// `a11, a21, a12, a22`.
pub const SCAN_ORDER: [usize; 4] = [0, 2, 1, 3];

pub fn identity(r: &JetRing) -> M2 {
    [r.one(), 0, 0, r.one()]
}

pub fn scalar(c: Jet) -> M2 {
    [c, 0, 0, c]
}

pub fn diag(a: Jet, d: Jet) -> M2 {
    [a, 0, 0, d]
}

pub fn mul(r: &JetRing, a: &M2, b: &M2) -> M2 {
    [
        r.add(r.mul(a[0], b[0]), r.mul(a[1], b[2])),
        r.add(r.mul(a[0], b[1]), r.mul(a[1], b[3])),
        r.add(r.mul(a[2], b[0]), r.mul(a[3], b[2])),
        r.add(r.mul(a[2], b[1]), r.mul(a[3], b[3])),
    ]
}

pub fn det(r: &JetRing, a: &M2) -> Jet {
    r.sub(r.mul(a[0], a[3]), r.mul(a[1], a[2]))
}

pub fn is_invertible(r: &JetRing, a: &M2) -> bool {
    r.is_unit(det(r, a))
}

/// Adjugate `[[a22, -a12], [-a21, a11]]`.
pub fn adj(r: &JetRing, a: &M2) -> M2 {
    [a[3], r.neg(a[1]), r.neg(a[2]), a[0]]
}

pub fn inverse(r: &JetRing, a: &M2) -> Option<M2> {
    let di = r.inv(det(r, a))?;
    Some(scale(r, &adj(r, a), di))
}

pub fn scale(r: &JetRing, a: &M2, c: Jet) -> M2 {
    [r.mul(a[0], c), r.mul(a[1], c), r.mul(a[2], c), r.mul(a[3], c)]
}

/// Rescales so the first unit entry in [`SCAN_ORDER`] becomes 1. Returns
/// `None` when no entry is a unit.
pub fn normalize(r: &JetRing, a: &M2) -> Option<M2> {
    let pos = SCAN_ORDER.into_iter().find(|&i| r.is_unit(a[i]))?;
    let c = r.inv(a[pos])?;
    Some(scale(r, a, c))
}

pub fn reduce_to(r: &JetRing, a: &M2, target: &JetRing) -> M2 {
    a.map(|x| r.reduce_to(x, target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::jet::Point;
    use std::sync::Arc;

    fn ring(q: u64, point: &str, d: usize) -> JetRing {
        let f = Arc::new(FieldCtx::new(q).unwrap());
        let p = Point::parse(&f, point).unwrap();
        JetRing::new(f, p, d).unwrap()
    }

    #[test]
    fn antidiagonal_scans_a21_first() {
        let r = ring(5, "t", 1);
        for c in 1..5 {
            let m = [0, 1, c, 0];
            let ci = r.inv(c).unwrap();
            assert_eq!(normalize(&r, &m).unwrap(), [0, ci, 1, 0]);
        }
    }

    #[test]
    fn det_is_multiplicative_and_inverse_round_trips() {
        let r = ring(2, "t", 2);
        let all: Vec<M2> = (0..256u32)
            .map(|i| [i >> 6 & 3, i >> 4 & 3, i >> 2 & 3, i & 3])
            .collect();
        for a in &all {
            for b in all.iter().step_by(7) {
                assert_eq!(det(&r, &mul(&r, a, b)), r.mul(det(&r, a), det(&r, b)));
            }
            if let Some(ai) = inverse(&r, a) {
                assert_eq!(mul(&r, a, &ai), identity(&r));
            }
        }
    }

    #[test]
    fn normalize_is_idempotent_and_scalar_invariant() {
        let r = ring(3, "t", 1);
        for i in 0..81u32 {
            let m = [i / 27, i / 9 % 3, i / 3 % 3, i % 3];
            if !is_invertible(&r, &m) {
                continue;
            }
            let n = normalize(&r, &m).unwrap();
            assert_eq!(normalize(&r, &n).unwrap(), n);
            assert_eq!(normalize(&r, &scale(&r, &m, 2)).unwrap(), n);
        }
    }
}
