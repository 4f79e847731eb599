//! Global sections of subsheaves of `O(a) ⊕ O(b)` cut out by local
//! lattice conditions, and the splitting type they determine.

use crate::error::BundleError;
use crate::local::local_value;
use ring_arith::linalg;
use ring_arith::poly::{self, Poly};
use ring_arith::{FieldCtx, Fq, Jet, JetRing};
use std::sync::Arc;

/// A sublattice of `O_y²` containing `π^c O_y²`, given by generators modulo
/// `π^c` in the local frame of `O(a) ⊕ O(b)`.
#[derive(Clone, Debug)]
pub struct LatticeCondition {
    pub ring: Arc<JetRing>,
    pub generators: Vec<(Jet, Jet)>,
}

impl LatticeCondition {
    /// `F_q`-basis of the sublattice modulo `π^c`, as coefficient vectors of
    /// length `2·width`.
    fn span(&self) -> Vec<Vec<Fq>> {
        let r = &self.ring;
        let w = r.width();
        let mut rows = Vec::new();
        for &(g1, g2) in &self.generators {
            for k in 0..w {
                let mut e = vec![0; w];
                e[k] = 1;
                let m = r.from_coeffs(&e);
                let mut v = r.coeffs(r.mul(m, g1));
                v.extend(r.coeffs(r.mul(m, g2)));
                rows.push(v);
            }
        }
        let f = r.field();
        let piv = linalg::rref(f, &mut rows, 2 * w);
        rows.truncate(piv.len());
        rows
    }

    /// `dim_{F_q}` of `O_y² / Λ`.
    pub fn colength(&self) -> usize {
        2 * self.ring.width() - self.span().len()
    }
}

/// The sections of `E'(m)` where `E' ⊂ O(a) ⊕ O(b)` is cut out by the
/// conditions; a section is a pair of polynomials of degrees at most
/// `a + m` and `b + m`.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    pub degrees: (i64, i64),
    pub basis: Vec<(Poly, Poly)>,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Precomputed annihilators of the local conditions.
pub struct ModifiedSheaf {
    field: Arc<FieldCtx>,
    a: i64,
    b: i64,
    conditions: Vec<(Arc<JetRing>, Vec<Vec<Fq>>)>,
    colength: i64,
}

impl ModifiedSheaf {
    pub fn new(
        field: Arc<FieldCtx>,
        a: i64,
        b: i64,
        conditions: &[LatticeCondition],
    ) -> Self {
        let mut colength = 0;
        let conds = conditions
            .iter()
            .map(|c| {
                let span = c.span();
                let w = c.ring.width();
                colength += (2 * w - span.len()) as i64;
                let annihilator = linalg::kernel(&field, &span, 2 * w);
                (c.ring.clone(), annihilator)
            })
            .collect();
        ModifiedSheaf { field, a, b, conditions: conds, colength }
    }

    pub fn degree(&self) -> i64 {
        self.a + self.b - self.colength
    }

    pub fn colength(&self) -> i64 {
        self.colength
    }

    fn system(&self, m: i64) -> (Vec<Vec<Fq>>, usize, usize) {
        let n1 = (self.a + m + 1).max(0) as usize;
        let n2 = (self.b + m + 1).max(0) as usize;
        let mut rows = Vec::new();
        for (ring, ann) in &self.conditions {
            let w = ring.width();
            let mono = |i: usize, k: i64| {
                let mut p = vec![0; i + 1];
                p[i] = 1;
                ring.coeffs(local_value(&p, k, ring))
            };
            let cols: Vec<Vec<Fq>> = (0..n1)
                .map(|i| {
                    let mut v = mono(i, self.a + m);
                    v.extend(std::iter::repeat(0).take(w));
                    v
                })
                .chain((0..n2).map(|i| {
                    let mut v = vec![0; w];
                    v.extend(mono(i, self.b + m));
                    v
                }))
                .collect();
            for z in ann {
                rows.push(
                    cols.iter()
                        .map(|c| {
                            c.iter()
                                .zip(z)
                                .fold(0, |acc, (&x, &y)| self.field.add(acc, self.field.mul(x, y)))
                        })
                        .collect(),
                );
            }
        }
        (rows, n1, n2)
    }

    pub fn h0(&self, m: i64) -> usize {
        let (rows, n1, n2) = self.system(m);
        n1 + n2 - linalg::rank(&self.field, &rows, n1 + n2)
    }

    pub fn sections(&self, m: i64) -> SectionSpace {
        let (rows, n1, n2) = self.system(m);
        let basis = linalg::kernel(&self.field, &rows, n1 + n2)
            .into_iter()
            .map(|v| {
                let mut f1 = v[..n1].to_vec();
                let mut f2 = v[n1..].to_vec();
                poly::trim(&mut f1);
                poly::trim(&mut f2);
                (f1, f2)
            })
            .collect();
        SectionSpace { degrees: (self.a + m, self.b + m), basis }
    }

    /// The splitting type `(a', b')`, `a' ≥ b'`, checked against the full
    /// dimension profile.
    pub fn splitting_type(&self) -> Result<(i64, i64), BundleError> {
        let deg = self.degree();
        let mut top = self.a;
        while self.h0(-top) == 0 {
            top -= 1;
        }
        let bottom = deg - top;
        if bottom > top {
            return Err(self.inconsistent(-top, 0, 0));
        }
        for m in (-top - 1)..=(-bottom + 1) {
            let expected = (top + m + 1).max(0) + (bottom + m + 1).max(0);
            let found = self.h0(m) as i64;
            if expected != found {
                return Err(self.inconsistent(m, expected, found));
            }
        }
        Ok((top, bottom))
    }

    fn inconsistent(&self, twist: i64, expected: i64, found: i64) -> BundleError {
        BundleError::InconsistentColength { colength: self.colength, twist, expected, found }
    }

    /// An isomorphism `O(a') ⊕ O(b') → E'` as a matrix of sections; column
    /// `j` generates the `j`-th summand.
    pub fn frame(&self) -> Result<ModFrame, BundleError> {
        let (top, bottom) = self.splitting_type()?;
        let first = self.sections(-top);
        let s1 = first.basis.first().cloned().ok_or(BundleError::NoFrame)?;
        let second = self.sections(-bottom);
        let f = &self.field;
        let s2 = second
            .basis
            .into_iter()
            .find(|s2| {
                let det = poly::sub(f, &poly::mul(f, &s1.0, &s2.1), &poly::mul(f, &s1.1, &s2.0));
                !det.is_empty()
            })
            .ok_or(BundleError::NoFrame)?;
        Ok(ModFrame {
            top,
            bottom,
            entries: [s1.0, s2.0, s1.1, s2.1],
            degrees: [self.a - top, self.a - bottom, self.b - top, self.b - bottom],
        })
    }
}

/// Global frame of a modified sheaf: `entries[i]` is a section of
/// `O(degrees[i])`, laid out row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFrame {
    pub top: i64,
    pub bottom: i64,
    pub entries: [Poly; 4],
    pub degrees: [i64; 4],
}

impl ModFrame {
    pub fn gap(&self) -> i64 {
        self.top - self.bottom
    }

    /// Local matrix of the frame in `ring`.
    pub fn local(&self, ring: &JetRing) -> [Jet; 4] {
        std::array::from_fn(|i| local_value(&self.entries[i], self.degrees[i], ring))
    }
}

/// Splitting type of the subsheaf of `O(a) ⊕ O(b)` cut out by `conditions`.
pub fn splitting_type(
    field: &Arc<FieldCtx>,
    a: i64,
    b: i64,
    conditions: &[LatticeCondition],
) -> Result<(i64, i64), BundleError> {
    ModifiedSheaf::new(field.clone(), a, b, conditions).splitting_type()
}
