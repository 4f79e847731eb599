//! The product ring `O_D = ∏ O_y/π_y^{d_y}` and 2×2 matrices over it.

use crate::error::RingError;
use crate::field::FieldCtx;
use crate::jet::{Jet, JetRing, Point};
use crate::mat2::{self, M2};
use std::fmt;
use std::sync::Arc;

/// A matrix over `O_D`, one [`M2`] per factor. The derived order is
/// lexicographic, point-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub Vec<M2>);

impl Mat2 {
    pub fn factor(&self, i: usize) -> &M2 {
        &self.0[i]
    }
}

#[derive(Clone)]
pub struct LevelRing {
    field: Arc<FieldCtx>,
    factors: Vec<Arc<JetRing>>,
}

impl fmt::Debug for LevelRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factors.iter()).finish()
    }
}

impl LevelRing {
    pub fn new(field: Arc<FieldCtx>, points: &[(Point, usize)]) -> Result<Self, RingError> {
        for (i, (p, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(o, _)| o == p) {
                return Err(RingError::RepeatedPoint);
            }
        }
        let factors = points
            .iter()
            .map(|(p, d)| JetRing::new(field.clone(), p.clone(), *d).map(Arc::new))
            .collect::<Result<_, _>>()?;
        Ok(LevelRing { field, factors })
    }

    pub fn from_factors(field: Arc<FieldCtx>, factors: Vec<Arc<JetRing>>) -> Self {
        LevelRing { field, factors }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn factors(&self) -> &[Arc<JetRing>] {
        &self.factors
    }
    pub fn factor(&self, i: usize) -> &JetRing {
        &self.factors[i]
    }
    pub fn len(&self) -> usize {
        self.factors.len()
    }
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn size(&self) -> u128 {
        self.factors.iter().map(|r| r.size() as u128).product()
    }

    pub fn unit_count(&self) -> u128 {
        self.factors.iter().map(|r| r.unit_count() as u128).product()
    }

    pub fn one(&self) -> Vec<Jet> {
        self.factors.iter().map(|r| r.one()).collect()
    }

    pub fn add(&self, a: &[Jet], b: &[Jet]) -> Vec<Jet> {
        self.zip(a, b, |r, x, y| r.add(x, y))
    }

    pub fn mul(&self, a: &[Jet], b: &[Jet]) -> Vec<Jet> {
        self.zip(a, b, |r, x, y| r.mul(x, y))
    }

    pub fn is_unit(&self, a: &[Jet]) -> bool {
        self.factors.iter().zip(a).all(|(r, &x)| r.is_unit(x))
    }

    pub fn inv(&self, a: &[Jet]) -> Option<Vec<Jet>> {
        self.factors.iter().zip(a).map(|(r, &x)| r.inv(x)).collect()
    }

    fn zip(&self, a: &[Jet], b: &[Jet], op: impl Fn(&JetRing, Jet, Jet) -> Jet) -> Vec<Jet> {
        self.factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|(r, (&x, &y))| op(r, x, y))
            .collect()
    }

    pub fn identity(&self) -> Mat2 {
        Mat2(self.factors.iter().map(|r| mat2::identity(r)).collect())
    }

    pub fn scalar(&self, c: &[Jet]) -> Mat2 {
        Mat2(c.iter().map(|&x| mat2::scalar(x)).collect())
    }

    pub fn mat_mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        Mat2(
            self.factors
                .iter()
                .zip(a.0.iter().zip(&b.0))
                .map(|(r, (x, y))| mat2::mul(r, x, y))
                .collect(),
        )
    }

    pub fn det(&self, a: &Mat2) -> Vec<Jet> {
        self.factors.iter().zip(&a.0).map(|(r, m)| mat2::det(r, m)).collect()
    }

    pub fn is_invertible(&self, a: &Mat2) -> bool {
        self.factors.iter().zip(&a.0).all(|(r, m)| mat2::is_invertible(r, m))
    }

    pub fn inverse(&self, a: &Mat2) -> Result<Mat2, RingError> {
        self.factors
            .iter()
            .zip(&a.0)
            .map(|(r, m)| mat2::inverse(r, m).ok_or(RingError::NotInvertible))
            .collect::<Result<_, _>>()
            .map(Mat2)
    }

    /// Scalar-normalized representative of the `PGL₂` class: at each point
    /// the first unit entry in the order `a11, a21, a12, a22` becomes 1.
    pub fn pgl2_normalize(&self, a: &Mat2) -> Result<Mat2, RingError> {
        if !self.is_invertible(a) {
            return Err(RingError::NotInvertible);
        }
        Ok(self.normalize_unchecked(a))
    }

    /// As [`pgl2_normalize`](Self::pgl2_normalize) for a matrix already
    /// known to be invertible.
    pub fn normalize_unchecked(&self, a: &Mat2) -> Mat2 {
        Mat2(
            self.factors
                .iter()
                .zip(&a.0)
                .map(|(r, m)| mat2::normalize(r, m).expect("invertible matrix has a unit entry"))
                .collect(),
        )
    }

    pub fn format_mat(&self, a: &Mat2) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .zip(&a.0)
            .map(|(r, m)| {
                format!(
                    "[[{},{}],[{},{}]]",
                    r.format(m[0]),
                    r.format(m[1]),
                    r.format(m[2]),
                    r.format(m[3])
                )
            })
            .collect();
        parts.join(" x ")
    }
}
