//! The spectrum of the finite part and exact scalars for eigenvalue queries.

use crate::error::SpectralError;
use crate::field::{Quotient, Rationals};
use crate::layers::LayeredDecomposition;
use crate::qpoly::{parse_rational, QPoly};
use crate::solve::DimBounds;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NucleusSpectrum {
    /// `det(λ − M)`, integer coefficients lowest degree first.
    pub charpoly: Vec<BigInt>,
    /// Squarefree factorization: each factor with its multiplicity.
    pub factors: Vec<(QPoly, u32)>,
    pub rational_roots: Vec<BigRational>,
    /// Largest row sum of `|M|`.
    pub row_bound: i64,
    /// Total out-multiplicity of the Hecke operator.
    pub degree: u64,
}

impl NucleusSpectrum {
    /// Every eigenvalue of `M` lies in the disc bounded by its row sums,
    /// which in turn never exceed the Hecke degree.
    pub fn bound_holds(&self) -> bool {
        self.row_bound as u64 <= self.degree
    }
}

/// A rational number, or the class of a polynomial in `ℚ[x]/(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactScalar {
    Rational(BigRational),
    Algebraic { modulus: QPoly, residue: QPoly },
}

impl FromStr for ExactScalar {
    type Err = String;
    /// `p/q`, or `minpoly:residue` with both polynomials in `x`.
    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            None => parse_rational(s).map(ExactScalar::Rational).ok_or_else(|| format!("bad rational `{s}`")),
            Some((m, r)) => {
                let modulus = QPoly::parse(m).ok_or_else(|| format!("bad polynomial `{m}`"))?;
                let residue = QPoly::parse(r).ok_or_else(|| format!("bad polynomial `{r}`"))?;
                if modulus.degree() < 1 {
                    return Err("the minimal polynomial must be non-constant".into());
                }
                let residue = residue.rem(&modulus.monic());
                Ok(ExactScalar::Algebraic { modulus: modulus.monic(), residue })
            }
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{r}"),
            ExactScalar::Algebraic { modulus, residue } => write!(f, "{modulus}:{residue}"),
        }
    }
}

impl LayeredDecomposition {
    pub fn nucleus_spectrum(&self) -> NucleusSpectrum {
        let cp = self.prime_charpoly();
        NucleusSpectrum {
            charpoly: cp.integer_coeffs(),
            factors: cp.squarefree(),
            rational_roots: cp.rational_roots(),
            row_bound: self.max_row_sum(),
            degree: self.degree,
        }
    }

    /// Dimension bounds at an exact scalar. An algebraic scalar over a
    /// reducible modulus yields one entry per factor found while computing.
    pub fn dim_bounds_exact(&self, lambda: &ExactScalar) -> Result<Vec<(Option<QPoly>, DimBounds)>, SpectralError> {
        match lambda {
            ExactScalar::Rational(r) => Ok(vec![(None, self.dim_bounds(&Rationals, r)?)]),
            ExactScalar::Algebraic { modulus, residue } => {
                let mut todo = vec![modulus.clone()];
                let mut out = Vec::new();
                while let Some(m) = todo.pop() {
                    let field = Quotient::new(m.clone());
                    match self.dim_bounds(&field, &residue.rem(&field.modulus)) {
                        Ok(b) => out.push((Some(field.modulus), b)),
                        Err(SpectralError::Split(s)) => {
                            let other = field.modulus.divrem(&s.factor).0.monic();
                            todo.push(s.factor);
                            todo.push(other);
                        }
                        Err(e) => return Err(e),
                    }
                }
                out.sort_by_key(|(m, _)| m.as_ref().map(|p| p.degree()));
                Ok(out)
            }
        }
    }
}
