//! Eigenspace dimensions, eigenform propagation, resolvent solutions and
//! generalized eigenspaces on a layered window.

use crate::charpoly::charpoly;
use crate::error::SpectralError;
use crate::field::Field;
use crate::layers::{LayeredDecomposition, Propagation};
use crate::linalg::{self, Matrix};
use crate::qpoly::QPoly;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimBounds {
    pub lower: usize,
    pub upper: usize,
    pub exact: usize,
    /// Dimension of the window eigenspace restricted to the core, computed
    /// without the decomposition.
    pub window: usize,
    /// `dim ker(λ − M)` on the finite part.
    pub prime_kernel: usize,
    /// Whether the last three layers have the same size.
    pub stationary: bool,
}

/// Rows of `λ − Φ` at `rows`, in the columns `cols`; entries for vertices
/// outside `cols` are dropped.
fn eigen_rows<F: Field>(f: &F, d: &LayeredDecomposition, lambda: &F::E, rows: &[usize], cols: &[usize]) -> Matrix<F::E> {
    let index: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    rows.iter()
        .map(|&v| {
            let mut row = vec![f.zero(); cols.len()];
            if let Some(&c) = index.get(&v) {
                row[c] = lambda.clone();
            }
            for &(w, m) in &d.out[v] {
                if let Some(&c) = index.get(&w) {
                    row[c] = f.sub(&row[c], &f.from_int(m));
                }
            }
            row
        })
        .collect()
}

fn positions(cols: &[usize], pick: impl Fn(usize) -> bool) -> Vec<usize> {
    cols.iter().enumerate().filter(|(_, &v)| pick(v)).map(|(i, _)| i).collect()
}

impl LayeredDecomposition {
    fn interior(&self, set: &[usize]) -> Vec<usize> {
        set.iter().copied().filter(|&v| !self.boundary[v]).collect()
    }

    fn check_lambda<F: Field>(&self, f: &F, lambda: &F::E) -> Result<(), SpectralError> {
        if self.ramified && f.is_zero(lambda) {
            return Err(SpectralError::ZeroEigenvalue);
        }
        Ok(())
    }

    /// `det(λ − M)` for the finite part.
    pub fn prime_charpoly(&self) -> QPoly {
        charpoly(&self.m)
    }

    /// The eigenspace dimension bounds at `λ`.
    pub fn dim_bounds<F: Field>(&self, f: &F, lambda: &F::E) -> Result<DimBounds, SpectralError> {
        self.check_lambda(f, lambda)?;
        if self.propagation() == Propagation::Not {
            return Err(SpectralError::NotPropagative);
        }
        let core = self.core_gap(1);
        let in_core = |v: usize| (self.gap[v] as i64) <= core;
        let rows = self.interior(&self.prime);
        let mut cols = self.prime.clone();
        cols.extend(&self.layers[0]);
        let first: std::collections::HashSet<usize> = self.layers[0].iter().copied().collect();

        let sys = eigen_rows(f, self, lambda, &rows, &cols);
        let sols = linalg::kernel(f, &sys, cols.len())?;
        let p = linalg::projected_rank(f, &sols, &positions(&cols, |v| in_core(v) || first.contains(&v)))?;

        let sys = eigen_rows(f, self, lambda, &rows, &self.prime);
        let ker = linalg::kernel(f, &sys, self.prime.len())?;
        let prime_kernel = linalg::projected_rank(f, &ker, &positions(&self.prime, in_core))?;

        let (sup, stationary) = self.sup_layer();
        let exact = (p + sup).checked_sub(self.layers[0].len()).ok_or_else(|| {
            SpectralError::Invariant(format!("solution space of dimension {p} is smaller than the first layer"))
        })?;
        Ok(DimBounds {
            lower: sup,
            upper: sup + prime_kernel,
            exact,
            window: self.window_dim(f, lambda, 1)?,
            prime_kernel,
            stationary,
        })
    }

    /// `dim ker(Φ − λ)^k` on the window, restricted to the core.
    pub fn window_dim<F: Field>(&self, f: &F, lambda: &F::E, k: usize) -> Result<usize, SpectralError> {
        let n = self.len();
        let mut ok: Vec<bool> = vec![true; n];
        // rows[v] = row of (λ − Φ)^j at v, kept sparse.
        let mut rows: Vec<HashMap<usize, F::E>> = (0..n)
            .map(|v| {
                let mut r = HashMap::new();
                r.insert(v, f.one());
                r
            })
            .collect();
        for _ in 0..k {
            let mut next = Vec::with_capacity(n);
            let mut next_ok = vec![false; n];
            for v in 0..n {
                let mut acc: HashMap<usize, F::E> = HashMap::new();
                if !self.boundary[v] && self.out[v].iter().all(|&(w, _)| ok[w]) && ok[v] {
                    next_ok[v] = true;
                    // (λ − Φ)·row: λ·row_v − Σ m·row_w
                    for (&c, x) in &rows[v] {
                        let e = acc.entry(c).or_insert_with(|| f.zero());
                        *e = f.add(e, &f.mul(lambda, x));
                    }
                    for &(w, m) in &self.out[v] {
                        let mm = f.from_int(m);
                        for (&c, x) in &rows[w] {
                            let e = acc.entry(c).or_insert_with(|| f.zero());
                            *e = f.sub(e, &f.mul(&mm, x));
                        }
                    }
                }
                next.push(acc);
            }
            rows = next;
            ok = next_ok;
        }
        let sys: Matrix<F::E> = (0..n)
            .filter(|&v| ok[v])
            .map(|v| {
                let mut row = vec![f.zero(); n];
                for (&c, x) in &rows[v] {
                    row[c] = x.clone();
                }
                row
            })
            .collect();
        let ker = linalg::kernel(f, &sys, n)?;
        let core = self.core_gap(k);
        let coords: Vec<usize> = (0..n).filter(|&v| self.gap[v] as i64 <= core).collect();
        Ok(linalg::projected_rank(f, &ker, &coords)?)
    }
}

#[derive(Clone, Debug)]
pub struct Propagated<E> {
    /// Value at each window vertex, when determined.
    pub values: Vec<Option<E>>,
    /// Number of layers filled in.
    pub depth: usize,
    /// Interior vertices at which the eigen-equation was re-checked.
    pub verified: usize,
}

#[derive(Clone, Debug)]
pub struct Resolvent<E> {
    pub particular: Vec<E>,
    /// Homogeneous solutions with independent restrictions to the core.
    pub homogeneous: Vec<Vec<E>>,
    pub dim: usize,
}

impl LayeredDecomposition {
    /// Extends a seed on `Γ′ ∪ Γ₁` to an eigenform on the first `depth` layers.
    /// The seed may be partial: the remaining values on `Γ′ ∪ Γ₁` are solved
    /// from the boundary equation and must be unique where they are used.
    pub fn propagate<F: Field>(
        &self,
        f: &F,
        lambda: &F::E,
        seed: &[(usize, F::E)],
        depth: usize,
    ) -> Result<Propagated<F::E>, SpectralError> {
        self.check_lambda(f, lambda)?;
        if self.propagation() != Propagation::Strict {
            return Err(SpectralError::NotPropagative);
        }
        if depth > self.layers.len() {
            return Err(SpectralError::Undetermined { what: format!("layer {depth}") });
        }
        let mut cols = self.prime.clone();
        cols.extend(&self.layers[0]);
        let index: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rows = self.interior(&self.prime);
        let mut sys = eigen_rows(f, self, lambda, &rows, &cols);
        let mut rhs = vec![f.zero(); sys.len()];
        for (v, x) in seed {
            let c = *index
                .get(v)
                .ok_or_else(|| SpectralError::Invalid(format!("seed vertex {v} is not in the finite part or the first layer")))?;
            let mut row = vec![f.zero(); cols.len()];
            row[c] = f.one();
            sys.push(row);
            rhs.push(x.clone());
        }
        let (x, ker) = linalg::solve(f, &sys, &rhs, cols.len())?.ok_or(SpectralError::BadSeed)?;
        let fixed = linalg::determined(f, &ker, cols.len());
        let mut values: Vec<Option<F::E>> = vec![None; self.len()];
        for (i, &v) in cols.iter().enumerate() {
            if fixed[i] {
                values[v] = Some(x[i].clone());
            }
        }
        let need = |values: &[Option<F::E>], v: usize| {
            values[v].clone().ok_or_else(|| SpectralError::Undetermined { what: format!("the value at vertex {v}") })
        };
        for i in 0..depth.saturating_sub(1) {
            let layer = &self.layers[i];
            let mut rhs = Vec::with_capacity(layer.len());
            for (a, &v) in layer.iter().enumerate() {
                let mut t = f.mul(lambda, &need(&values, v)?);
                for (b, &w) in layer.iter().enumerate() {
                    if self.within[i][a][b] != 0 {
                        t = f.sub(&t, &f.mul(&f.from_int(self.within[i][a][b]), &need(&values, w)?));
                    }
                }
                if i > 0 {
                    for (b, &w) in self.layers[i - 1].iter().enumerate() {
                        if self.down[i][a][b] != 0 {
                            t = f.sub(&t, &f.mul(&f.from_int(self.down[i][a][b]), &need(&values, w)?));
                        }
                    }
                }
                for (b, &w) in self.prime.iter().enumerate() {
                    if self.to_prime[i][a][b] != 0 {
                        t = f.sub(&t, &f.mul(&f.from_int(self.to_prime[i][a][b]), &need(&values, w)?));
                    }
                }
                rhs.push(t);
            }
            let up: Matrix<F::E> = self.up[i].iter().map(|r| r.iter().map(|&m| f.from_int(m)).collect()).collect();
            let inv = linalg::inverse(f, &up)?.ok_or(SpectralError::SingularLayer { layer: i + 2 })?;
            let next = linalg::mat_vec(f, &inv, &rhs);
            for (k, &w) in self.layers[i + 1].iter().enumerate() {
                values[w] = Some(next[k].clone());
            }
        }
        let verified = self.verify_eigen(f, lambda, &values)?;
        Ok(Propagated { values, depth, verified })
    }

    /// Checks `λ f(v) = Σ mult·f(w)` wherever all the values involved are
    /// known; returns the number of vertices checked.
    pub fn verify_eigen<F: Field>(&self, f: &F, lambda: &F::E, values: &[Option<F::E>]) -> Result<usize, SpectralError> {
        let mut n = 0;
        for v in 0..self.len() {
            if self.boundary[v] {
                continue;
            }
            let Some(fv) = &values[v] else { continue };
            let mut sum = f.zero();
            let mut complete = true;
            for &(w, m) in &self.out[v] {
                match &values[w] {
                    Some(x) => sum = f.add(&sum, &f.mul(&f.from_int(m), x)),
                    None => complete = false,
                }
            }
            if !complete {
                continue;
            }
            if !f.is_zero(&f.sub(&f.mul(lambda, fv), &sum)) {
                return Err(SpectralError::Invariant(format!("eigen-equation fails at vertex {v}")));
            }
            n += 1;
        }
        Ok(n)
    }

    /// The squarefree factor of `det(λ − M)` vanishing at `λ`, if any.
    pub fn nucleus_factor_at<F: Field>(&self, f: &F, lambda: &F::E) -> Option<QPoly> {
        let eval = |p: &QPoly| {
            p.0.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, lambda), &f.from_rational(c)))
        };
        self.prime_charpoly().squarefree().into_iter().map(|(p, _)| p).find(|p| f.is_zero(&eval(p)))
    }

    /// Solves `(Φ − λ) f = g` on the window for `g` supported on interior
    /// core vertices.
    pub fn solve_resolvent<F: Field>(
        &self,
        f: &F,
        lambda: &F::E,
        g: &[(usize, F::E)],
    ) -> Result<Resolvent<F::E>, SpectralError> {
        self.check_lambda(f, lambda)?;
        if let Some(p) = self.nucleus_factor_at(f, lambda) {
            return Err(SpectralError::InNucleusSpectrum { factor: p.to_string() });
        }
        let core = self.core_gap(1);
        let n = self.len();
        let rows: Vec<usize> = (0..n).filter(|&v| !self.boundary[v]).collect();
        let row_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut rhs = vec![f.zero(); rows.len()];
        for (v, x) in g {
            match row_of.get(v) {
                Some(&i) if self.gap[*v] as i64 <= core => rhs[i] = f.neg(x),
                _ => return Err(SpectralError::Invalid(format!("g must be supported on interior core vertices, not {v}"))),
            }
        }
        let all: Vec<usize> = (0..n).collect();
        let sys = eigen_rows(f, self, lambda, &rows, &all);
        let (x, ker) = linalg::solve(f, &sys, &rhs, n)?
            .ok_or_else(|| SpectralError::Invariant("resolvent system is inconsistent".into()))?;
        let residual = linalg::mat_vec(f, &sys, &x);
        if residual.iter().zip(&rhs).any(|(a, b)| !f.is_zero(&f.sub(a, b))) {
            return Err(SpectralError::Invariant("resolvent residual is nonzero".into()));
        }
        let coords: Vec<usize> = (0..n).filter(|&v| self.gap[v] as i64 <= core).collect();
        let mut homogeneous: Vec<Vec<F::E>> = Vec::new();
        for v in ker {
            let mut trial = homogeneous.clone();
            trial.push(v.clone());
            if linalg::projected_rank(f, &trial, &coords)? == trial.len() {
                homogeneous = trial;
            }
        }
        let dim = homogeneous.len();
        Ok(Resolvent { particular: x, homogeneous, dim })
    }
}
