//! Local values of global sections in the standard frames.
//!
//! A section of `O(k)` is a polynomial of degree at most `k` in `t`. At a
//! finite point the frame is `1`; at infinity it is `t^k`, so the local
//! value is `u^k f(1/u)`.

use ring_arith::poly::{self, Poly};
use ring_arith::{FieldCtx, Jet, JetRing, Point};

/// Value of the section `f` of `O(k)` in `ring`.
pub fn local_value(f: &[u32], k: i64, ring: &JetRing) -> Jet {
    match ring.point() {
        Point::Finite(_) => ring.from_poly(f),
        Point::Infinity => {
            let w = ring.width();
            let coeffs: Vec<u32> = (0..w as i64)
                .map(|j| {
                    let i = k - j;
                    if i < 0 {
                        0
                    } else {
                        f.get(i as usize).copied().unwrap_or(0)
                    }
                })
                .collect();
            ring.from_coeffs(&coeffs)
        }
    }
}

/// A section of `O(k)` whose value in `ring` is `value`; needs
/// `k ≥ width − 1` at infinity.
pub fn lift_value(value: Jet, k: i64, ring: &JetRing) -> Poly {
    let c = ring.coeffs(value);
    match ring.point() {
        Point::Finite(_) => {
            let mut p = c;
            poly::trim(&mut p);
            p
        }
        Point::Infinity => {
            let mut p = vec![0; (k + 1).max(0) as usize];
            for (j, &x) in c.iter().enumerate() {
                if x != 0 {
                    p[(k - j as i64) as usize] = x;
                }
            }
            poly::trim(&mut p);
            p
        }
    }
}

/// The section of `O([y])` vanishing exactly at `y`, with its degree.
pub fn point_section(y: &Point) -> (Poly, i64) {
    match y {
        Point::Finite(p) => (p.clone(), p.len() as i64 - 1),
        Point::Infinity => (vec![1], 1),
    }
}

/// Section of `O(Σ d_y [y])` vanishing exactly on the divisor.
pub fn divisor_section(f: &FieldCtx, entries: &[(Point, usize)]) -> (Poly, i64) {
    let mut acc: Poly = vec![1];
    let mut deg = 0i64;
    for (y, d) in entries {
        let (s, k) = point_section(y);
        acc = poly::mul(f, &acc, &poly::pow(f, &s, *d as u32));
        deg += k * *d as i64;
    }
    (acc, deg)
}
