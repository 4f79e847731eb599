//! Dense exact linear algebra over a [`Field`].

use crate::field::{Field, Split};

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::E>, ncols: usize) -> Result<Vec<usize>, Split> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !f.is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let inv = f.inv(&m[r][c])?;
        for v in m[r][c..].iter_mut() {
            if !f.is_zero(v) {
                *v = f.mul(v, &inv);
            }
        }
        let pivot_row = m[r].clone();
        let support: Vec<usize> = (c..pivot_row.len()).filter(|&j| !f.is_zero(&pivot_row[j])).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                let t = f.mul(&factor, &pivot_row[j]);
                row[j] = f.sub(&row[j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::E>, ncols: usize) -> Result<usize, Split> {
    let mut m = m.clone();
    Ok(rref(f, &mut m, ncols)?.len())
}

fn kernel_from_rref<F: Field>(f: &F, m: &Matrix<F::E>, pivots: &[usize], ncols: usize) -> Matrix<F::E> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(&m[r][free]);
        }
        basis.push(v);
    }
    basis
}

pub fn kernel<F: Field>(f: &F, m: &Matrix<F::E>, ncols: usize) -> Result<Matrix<F::E>, Split> {
    let mut m = m.clone();
    let pivots = rref(f, &mut m, ncols)?;
    Ok(kernel_from_rref(f, &m, &pivots, ncols))
}

/// Solutions of `m·v = rhs`: one particular solution and a kernel basis,
/// or `None` when inconsistent.
pub fn solve<F: Field>(
    f: &F,
    m: &Matrix<F::E>,
    rhs: &[F::E],
    ncols: usize,
) -> Result<Option<(Vec<F::E>, Matrix<F::E>)>, Split> {
    let mut aug: Matrix<F::E> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug, ncols + 1)?;
    if pivots.last() == Some(&ncols) {
        return Ok(None);
    }
    let mut x = vec![f.zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][ncols].clone();
    }
    let kernel = kernel_from_rref(f, &aug, &pivots, ncols);
    Ok(Some((x, kernel)))
}

/// Rank of the given vectors restricted to `coords`.
pub fn projected_rank<F: Field>(f: &F, vectors: &Matrix<F::E>, coords: &[usize]) -> Result<usize, Split> {
    let m: Matrix<F::E> = vectors.iter().map(|v| coords.iter().map(|&c| v[c].clone()).collect()).collect();
    rank(f, &m, coords.len())
}

/// Coordinates on which every vector vanishes.
pub fn determined<F: Field>(f: &F, kernel: &Matrix<F::E>, n: usize) -> Vec<bool> {
    (0..n).map(|c| kernel.iter().all(|v| f.is_zero(&v[c]))).collect()
}

pub fn mat_vec<F: Field>(f: &F, m: &Matrix<F::E>, v: &[F::E]) -> Vec<F::E> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                if f.is_zero(a) || f.is_zero(b) {
                    acc
                } else {
                    f.add(&acc, &f.mul(a, b))
                }
            })
        })
        .collect()
}

/// Inverse of a square matrix; `None` when singular.
pub fn inverse<F: Field>(f: &F, m: &Matrix<F::E>) -> Result<Option<Matrix<F::E>>, Split> {
    let n = m.len();
    let mut aug: Matrix<F::E> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug, n)?;
    if pivots.len() < n {
        return Ok(None);
    }
    Ok(Some(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
}
