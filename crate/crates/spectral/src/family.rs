//! Eigenform values as rational functions of the eigenvalue.

use crate::error::SpectralError;
use crate::field::Rationals;
use crate::layers::LayeredDecomposition;
use crate::qpoly::QPoly;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    /// `f(λ) = numerator / denominator`, in lowest terms, denominator monic.
    pub numerator: QPoly,
    pub denominator: QPoly,
    pub held_out: usize,
}

impl Family {
    /// `deg numerator − deg denominator`.
    pub fn growth(&self) -> i64 {
        self.numerator.degree() - self.denominator.degree()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.numerator.eval(x) / self.denominator.eval(x)
    }
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> QPoly {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = QPoly::zero();
    for i in (0..n).rev() {
        p = p.mul(&QPoly(vec![-xs[i].clone(), BigRational::from_integer(1.into())]).trimmed());
        p = p.add(&QPoly::constant(c[i].clone()));
    }
    p
}

impl LayeredDecomposition {
    /// Interpolates the value at `vertex` of the eigenform propagated from
    /// `seed` to `depth` layers, as a rational function of `λ` with
    /// denominator dividing `det(λ − M)·λ^depth`. The last three samples are
    /// held out and must match exactly.
    pub fn eigenform_family(
        &self,
        vertex: usize,
        seed: &[(usize, BigRational)],
        samples: &[BigRational],
        depth: usize,
    ) -> Result<Family, SpectralError> {
        let need = 2 * (self.prime.len() + depth) + 1;
        if samples.len() < need {
            return Err(SpectralError::Interpolation(format!("{} samples given, {need} needed", samples.len())));
        }
        let cp = self.prime_charpoly();
        let den = cp.mul(&QPoly::x().pow(depth as u32));
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for l in samples {
            if l.is_zero() || cp.eval(l).is_zero() {
                return Err(SpectralError::Interpolation(format!("sample {l} is 0 or a nucleus eigenvalue")));
            }
            let p = self.propagate(&Rationals, l, seed, depth)?;
            let v = p.values[vertex]
                .clone()
                .ok_or_else(|| SpectralError::Undetermined { what: format!("the value at vertex {vertex}") })?;
            xs.push(l.clone());
            ys.push(v);
        }
        let fit = xs.len() - 3;
        let scaled: Vec<BigRational> = xs.iter().zip(&ys).map(|(x, y)| y * den.eval(x)).collect();
        let p = interpolate(&xs[..fit], &scaled[..fit]);
        for i in fit..xs.len() {
            if p.eval(&xs[i]) != scaled[i] {
                return Err(SpectralError::Interpolation(format!("held-out sample {} does not match", xs[i])));
            }
        }
        let g = p.gcd(&den);
        let mut numerator = if p.is_zero() { p.clone() } else { p.divrem(&g).0 };
        let mut denominator = if p.is_zero() { QPoly::one() } else { den.divrem(&g).0 };
        let lead = denominator.lead();
        numerator = numerator.scale(&lead.recip());
        denominator = denominator.scale(&lead.recip());
        Ok(Family { numerator, denominator, held_out: 3 })
    }
}
