//! Images of bundle automorphisms in the level group.

use crate::divisor::DivisorSpec;
use crate::error::BundleError;
use crate::local::{divisor_section, local_value};
use ring_arith::linalg;
use ring_arith::poly;
use ring_arith::{mat2, FieldCtx, Fq, Jet, LevelRing, Mat2};
use std::sync::Arc;

/// The image in `PGL₂(O_{D1})` of the automorphisms of `O(n) ⊕ O` that fix
/// a level structure along `D2`, as sorted normalized matrices.
///
/// For `n ≥ 1` these are `[[α, s], [0, 1]]` with `α ∈ k^×` (only `α = 1`
/// when `D2 ≠ 0`) and `s` a section of `O(n)` vanishing on `D2`. For
/// `n = 0` every constant matrix is an automorphism.
pub fn aut_image(
    field: &Arc<FieldCtx>,
    n: i64,
    d1: &DivisorSpec,
    d2: &DivisorSpec,
) -> Result<Vec<Mat2>, BundleError> {
    d1.disjoint_from(d2)?;
    let level = d1.level_ring(field)?;
    aut_image_in(&level, n, d2)
}

pub(crate) fn aut_image_in(
    level: &LevelRing,
    n: i64,
    d2: &DivisorSpec,
) -> Result<Vec<Mat2>, BundleError> {
    let f = level.field().clone();
    let consts = |c: Fq| -> Vec<Jet> { level.factors().iter().map(|r| r.from_const(c)).collect() };
    let mut out = Vec::new();
    if n == 0 {
        if d2.is_zero() {
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        for d in f.elements() {
                            if f.sub(f.mul(a, d), f.mul(b, c)) == 0 {
                                continue;
                            }
                            let (a, b, c, d) = (consts(a), consts(b), consts(c), consts(d));
                            let m = Mat2((0..level.len()).map(|i| [a[i], b[i], c[i], d[i]]).collect());
                            out.push(level.normalize_unchecked(&m));
                        }
                    }
                }
            }
        } else {
            out.push(level.identity());
        }
    } else {
        let alphas: Vec<Fq> = if d2.is_zero() { f.units().collect() } else { vec![1] };
        let shifts = section_images(&f, level, n, d2);
        for &alpha in &alphas {
            let a = consts(alpha);
            for s in &shifts {
                let m = Mat2(
                    level
                        .factors()
                        .iter()
                        .enumerate()
                        .map(|(i, r)| [a[i], s[i], 0, r.one()])
                        .collect(),
                );
                out.push(level.normalize_unchecked(&m));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All values in `O_{D1}` of sections of `O(n)` vanishing on `D2`.
pub fn section_images(f: &FieldCtx, level: &LevelRing, n: i64, d2: &DivisorSpec) -> Vec<Vec<Jet>> {
    let finite: Vec<_> = d2.entries().iter().filter(|(p, _)| !p.is_infinity()).cloned().collect();
    let (vanish, _) = divisor_section(f, &finite);
    let free = n - d2.degree() as i64;
    let widths: Vec<usize> = level.factors().iter().map(|r| r.width()).collect();
    let total: usize = widths.iter().sum();
    let mut rows: Vec<Vec<Fq>> = (0..=free.max(-1))
        .filter(|&i| i >= 0)
        .map(|i| {
            let mut mono = vec![0; i as usize + 1];
            mono[i as usize] = 1;
            let s = poly::mul(f, &mono, &vanish);
            level
                .factors()
                .iter()
                .flat_map(|r| r.coeffs(local_value(&s, n, r)))
                .collect()
        })
        .collect();
    let piv = linalg::rref(f, &mut rows, total);
    rows.truncate(piv.len());
    let q = f.q() as u64;
    let count = q.pow(rows.len() as u32);
    (0..count)
        .map(|idx| {
            let mut v = vec![0; total];
            let mut k = idx;
            for row in &rows {
                let c = (k % q) as Fq;
                k /= q;
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(c, y));
                    }
                }
            }
            let mut off = 0;
            level
                .factors()
                .iter()
                .zip(&widths)
                .map(|(r, &w)| {
                    let j = r.from_coeffs(&v[off..off + w]);
                    off += w;
                    j
                })
                .collect()
        })
        .collect()
}

/// Right action `a ↦ normalize(a·h)`.
pub fn act(level: &LevelRing, a: &Mat2, h: &Mat2) -> Mat2 {
    Mat2(
        level
            .factors()
            .iter()
            .zip(a.0.iter().zip(&h.0))
            .map(|(r, (x, y))| mat2::normalize(r, &mat2::mul(r, x, y)).expect("invertible"))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use ring_arith::{enumerate_group, SubgroupSpec, SubgroupTag};

    fn setup(q: u64, d1: &str, d2: &str) -> (Arc<FieldCtx>, DivisorSpec, DivisorSpec) {
        let f = Arc::new(FieldCtx::new(q).unwrap());
        let a = DivisorSpec::parse(&f, d1).unwrap();
        let b = DivisorSpec::parse(&f, d2).unwrap();
        (f, a, b)
    }

    #[test]
    fn cusp_image_is_torus_times_unipotent() {
        let (f, d1, d2) = setup(2, "t:1", "");
        let img = aut_image(&f, 5, &d1, &d2).unwrap();
        assert_eq!(img.len(), 2);
        let level = d1.level_ring(&f).unwrap();
        assert_eq!(level.format_mat(&img[1]), "[[1,1],[0,1]]");
        for (q, d1s, n) in [(3, "t:2,inf:1", 4), (4, "t^2+t+{0,1}:1", 3), (2, "inf:3", 2)] {
            let (f, d1, d2) = setup(q, d1s, "");
            let level = d1.level_ring(&f).unwrap();
            let expect = enumerate_group(&level, SubgroupSpec::pgl(SubgroupTag::TkLtimesU)).unwrap();
            assert_eq!(aut_image(&f, n, &d1, &d2).unwrap(), expect);
        }
    }

    #[test]
    fn fixed_part_leaves_unipotent() {
        let (f, d1, d2) = setup(3, "t:1,inf:1", "t+1:1");
        let level = d1.level_ring(&f).unwrap();
        let expect = enumerate_group(&level, SubgroupSpec::pgl(SubgroupTag::U)).unwrap();
        assert_eq!(aut_image(&f, 2, &d1, &d2).unwrap(), expect);
        assert_eq!(expect.len(), 9);
        // below the threshold the values form a line
        assert_eq!(aut_image(&f, 1, &d1, &d2).unwrap().len(), 3);
    }

    #[test]
    fn trivial_bundle_sees_all_constants() {
        let (f, d1, d2) = setup(3, "t:1", "");
        assert_eq!(aut_image(&f, 0, &d1, &d2).unwrap().len(), 24);
        let (f, d1, d2) = setup(3, "t:1", "inf:1");
        assert_eq!(aut_image(&f, 0, &d1, &d2).unwrap().len(), 1);
    }

    #[test]
    fn small_gap_at_a_double_point() {
        // sections of O(1) at t^2: values s0 + s1 t fill O, so the image is full
        let (f, d1, d2) = setup(2, "t:2", "");
        assert_eq!(aut_image(&f, 1, &d1, &d2).unwrap().len(), 4);
        // at t^3 only a 2-dimensional subspace of the 3-dimensional ring
        let (f, d1, d2) = setup(2, "t:3", "");
        assert_eq!(aut_image(&f, 1, &d1, &d2).unwrap().len(), 4);
        assert_eq!(aut_image(&f, 2, &d1, &d2).unwrap().len(), 8);
    }
}
