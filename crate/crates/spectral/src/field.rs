//! Exact scalar fields: ℚ and `ℚ[x]/(m)` for squarefree `m`.

use crate::qpoly::{rat, QPoly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Raised when a `ℚ[x]/(m)` computation meets a zero divisor: `factor` is a
/// proper monic factor of `m`, and the caller should redo the work over
/// `ℚ[x]/(factor)` and `ℚ[x]/(m/factor)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub factor: QPoly,
}

pub trait Field: Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_int(&self, n: i64) -> Self::E;
    fn from_rational(&self, r: &BigRational) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Result<Self::E, Split>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        rat(n)
    }
    fn from_rational(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational, Split> {
        Ok(a.recip())
    }
}

/// `ℚ[x]/(m)`; a field when `m` is irreducible, otherwise a product of
/// fields that reports zero divisors through [`Split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub modulus: QPoly,
}

impl Quotient {
    pub fn new(modulus: QPoly) -> Self {
        assert!(modulus.degree() >= 1, "modulus must be non-constant");
        Quotient { modulus: modulus.monic() }
    }

    /// The class of `x`, i.e. a root of the modulus.
    pub fn generator(&self) -> QPoly {
        QPoly::x().rem(&self.modulus)
    }
}

impl Field for Quotient {
    type E = QPoly;
    fn zero(&self) -> QPoly {
        QPoly::zero()
    }
    fn one(&self) -> QPoly {
        QPoly::one().rem(&self.modulus)
    }
    fn from_int(&self, n: i64) -> QPoly {
        QPoly::constant(rat(n))
    }
    fn from_rational(&self, r: &BigRational) -> QPoly {
        QPoly::constant(r.clone())
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.add(b)
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.sub(b)
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.mul(b).rem(&self.modulus)
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        a.neg()
    }
    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &QPoly) -> Result<QPoly, Split> {
        let (g, s) = a.gcdext_mod(&self.modulus);
        if g.degree() == 0 {
            Ok(s)
        } else {
            Err(Split { factor: g })
        }
    }
}
