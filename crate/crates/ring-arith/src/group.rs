//! Closed-form orders and exhaustive enumeration of the matrix groups
//! acting on level structures.

use crate::error::RingError;
use crate::jet::{Jet, JetRing};
use crate::level::{LevelRing, Mat2};
use crate::mat2::{self, M2};

pub const DEFAULT_BUDGET: u128 = 1 << 20;

/// The enumeration budget, overridable through `HECKE_LAB_BUDGET`.
pub fn enumeration_budget() -> u128 {
    std::env::var("HECKE_LAB_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupTag {
    /// `GL₂(O_D)`.
    GL2,
    /// Upper triangular matrices with unit diagonal entries.
    Borel,
    /// `[[α, s], [0, δ]]` with `α, δ` constants in `k^×` and `s ∈ O_D`.
    TkLtimesU,
    /// `[[1, s], [0, 1]]`.
    U,
    /// Unit scalars `c·Id`, `c ∈ O_D^×`.
    Scalars,
    /// Constant diagonal matrices `diag(α, δ)`, `α, δ ∈ k^×`.
    Tk,
}

/// A subgroup of `GL₂(O_D)`, or its image in `PGL₂(O_D)` when
/// `projective` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupSpec {
    pub tag: SubgroupTag,
    pub projective: bool,
}

impl SubgroupSpec {
    pub fn gl(tag: SubgroupTag) -> Self {
        SubgroupSpec { tag, projective: false }
    }
    pub fn pgl(tag: SubgroupTag) -> Self {
        SubgroupSpec { tag, projective: true }
    }
}

fn local_gl2_order(r: &JetRing) -> u128 {
    let qr = (r.field().q() as u128).pow(r.point_degree() as u32);
    let lift = qr.pow(4 * (r.order() as u32 - 1));
    (qr * qr - 1) * (qr * qr - qr) * lift
}

pub fn group_order(level: &LevelRing, spec: SubgroupSpec) -> u128 {
    use SubgroupTag::*;
    if level.is_empty() {
        return 1;
    }
    let q1 = level.field().q() as u128 - 1;
    let units = level.unit_count();
    let size = level.size();
    let gl_order = match spec.tag {
        GL2 => level.factors().iter().map(|r| local_gl2_order(r)).product(),
        Borel => units * units * size,
        TkLtimesU => q1 * q1 * size,
        U => size,
        Scalars => units,
        Tk => q1 * q1,
    };
    if !spec.projective {
        return gl_order;
    }
    let center = match spec.tag {
        GL2 | Borel | Scalars => units,
        TkLtimesU | Tk => q1,
        U => 1,
    };
    gl_order / center
}

/// Number of rank-one direct summands of `O_D²`, `∏ (q^r + 1) q^{r(d-1)}`.
pub fn p1_count(level: &LevelRing) -> u128 {
    level
        .factors()
        .iter()
        .map(|r| {
            let qr = (r.field().q() as u128).pow(r.point_degree() as u32);
            (qr + 1) * qr.pow(r.order() as u32 - 1)
        })
        .product()
}

/// Normalized generators of the rank-one summands at one point: `(1, b)`
/// for all `b`, then `(a, 1)` for non-units `a`.
pub fn local_p1(r: &JetRing) -> Vec<(Jet, Jet)> {
    let mut out: Vec<(Jet, Jet)> = r.elements().map(|b| (r.one(), b)).collect();
    out.extend(r.elements().filter(|&a| !r.is_unit(a)).map(|a| (a, r.one())));
    out
}

/// `GL₂` of one local ring, or scalar-normalized `PGL₂` representatives.
pub fn local_gl2(r: &JetRing, projective: bool) -> Vec<M2> {
    let units: Vec<Jet> = r.units().collect();
    let columns: Vec<(Jet, Jet)> = if projective {
        local_p1(r)
    } else {
        r.elements()
            .flat_map(|a| r.elements().map(move |c| (a, c)))
            .filter(|&(a, c)| r.is_unit(a) || r.is_unit(c))
            .collect()
    };
    let mut out = Vec::new();
    for (a11, a21) in columns {
        if let Some(i11) = r.inv(a11) {
            for a12 in r.elements() {
                for &u in &units {
                    let a22 = r.mul(i11, r.add(u, r.mul(a21, a12)));
                    out.push([a11, a12, a21, a22]);
                }
            }
        } else {
            let i21 = r.inv(a21).expect("unimodular column");
            for a22 in r.elements() {
                for &u in &units {
                    let a12 = r.mul(i21, r.sub(r.mul(a11, a22), u));
                    out.push([a11, a12, a21, a22]);
                }
            }
        }
    }
    out
}

fn cartesian(per_point: Vec<Vec<M2>>) -> Vec<Mat2> {
    let mut acc: Vec<Vec<M2>> = vec![Vec::new()];
    for choices in per_point {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |m| {
                    let mut v = prefix.clone();
                    v.push(*m);
                    v
                })
            })
            .collect();
    }
    acc.into_iter().map(Mat2).collect()
}

fn constant_pairs(level: &LevelRing) -> Vec<(u32, u32)> {
    let f = level.field();
    f.units().flat_map(|a| f.units().map(move |d| (a, d))).collect()
}

/// Every element of the subgroup exactly once, sorted. Projective groups
/// are returned as scalar-normalized representatives.
pub fn enumerate_group(level: &LevelRing, spec: SubgroupSpec) -> Result<Vec<Mat2>, RingError> {
    enumerate_group_with_budget(level, spec, enumeration_budget())
}

pub fn enumerate_group_with_budget(
    level: &LevelRing,
    spec: SubgroupSpec,
    budget: u128,
) -> Result<Vec<Mat2>, RingError> {
    use SubgroupTag::*;
    let order = group_order(level, spec);
    if order > budget {
        return Err(RingError::BudgetExceeded { order, budget });
    }
    let rings = level.factors();
    let mut out = match spec.tag {
        GL2 => cartesian(rings.iter().map(|r| local_gl2(r, spec.projective)).collect()),
        Borel => cartesian(
            rings
                .iter()
                .map(|r| {
                    let units: Vec<Jet> = r.units().collect();
                    let mut v = Vec::new();
                    for &a in &units {
                        for s in r.elements() {
                            for &d in &units {
                                v.push([a, s, 0, d]);
                            }
                        }
                    }
                    v
                })
                .collect(),
        ),
        U => cartesian(
            rings
                .iter()
                .map(|r| r.elements().map(|s| [r.one(), s, 0, r.one()]).collect())
                .collect(),
        ),
        Scalars => cartesian(
            rings
                .iter()
                .map(|r| r.units().map(mat2::scalar).collect())
                .collect(),
        ),
        TkLtimesU | Tk => {
            let unipotent = if spec.tag == Tk {
                vec![level.identity()]
            } else {
                enumerate_group_with_budget(level, SubgroupSpec::gl(U), budget)?
            };
            let mut v = Vec::new();
            for (a, d) in constant_pairs(level) {
                let t = Mat2(
                    rings
                        .iter()
                        .map(|r| mat2::diag(r.from_const(a), r.from_const(d)))
                        .collect(),
                );
                for u in &unipotent {
                    v.push(level.mat_mul(&t, u));
                }
            }
            v
        }
    };
    if spec.projective {
        for m in out.iter_mut() {
            *m = level.normalize_unchecked(m);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::jet::Point;
    use std::sync::Arc;

    fn level(q: u64, pts: &[(&str, usize)]) -> LevelRing {
        let f = Arc::new(FieldCtx::new(q).unwrap());
        let pts: Vec<_> = pts.iter().map(|(p, d)| (Point::parse(&f, p).unwrap(), *d)).collect();
        LevelRing::new(f, &pts).unwrap()
    }

    #[test]
    fn small_examples() {
        let f3 = level(3, &[("t", 1)]);
        assert_eq!(enumerate_group(&f3, SubgroupSpec::gl(SubgroupTag::Scalars)).unwrap().len(), 2);
        let f2 = level(2, &[("t", 1)]);
        assert_eq!(enumerate_group(&f2, SubgroupSpec::gl(SubgroupTag::GL2)).unwrap().len(), 6);
        let dual = level(2, &[("t", 2)]);
        assert_eq!(
            enumerate_group(&dual, SubgroupSpec::gl(SubgroupTag::TkLtimesU)).unwrap().len(),
            4
        );
        assert_eq!(p1_count(&dual), 6);
        assert_eq!(group_order(&f2, SubgroupSpec::pgl(SubgroupTag::Tk)), 1);
    }

    #[test]
    fn enumeration_matches_closed_forms() {
        use SubgroupTag::*;
        let cases = [
            level(2, &[("t", 1)]),
            level(3, &[("t", 2)]),
            level(2, &[("t^2+t+1", 1)]),
            level(2, &[("t", 1), ("inf", 2)]),
            level(4, &[("t", 1)]),
        ];
        for l in &cases {
            for tag in [GL2, Borel, TkLtimesU, U, Scalars, Tk] {
                for proj in [false, true] {
                    let spec = SubgroupSpec { tag, projective: proj };
                    let elems = enumerate_group(l, spec).unwrap();
                    assert_eq!(elems.len() as u128, group_order(l, spec), "{l:?} {spec:?}");
                    assert!(elems.iter().all(|m| l.is_invertible(m)));
                }
            }
            assert_eq!(local_p1(l.factor(0)).len() as u128 * {
                let rest: u128 = l.factors()[1..].iter().map(|r| local_p1(r).len() as u128).product();
                rest
            }, p1_count(l));
        }
    }

    #[test]
    fn budget_error_names_order() {
        let l = level(3, &[("t", 2)]);
        let err = enumerate_group_with_budget(&l, SubgroupSpec::gl(SubgroupTag::GL2), 10).unwrap_err();
        assert_eq!(err, RingError::BudgetExceeded { order: 48 * 81, budget: 10 });
    }
}
