//! Characteristic polynomials of integer matrices.

use crate::field::{Field, Rationals};
use crate::qpoly::{rat, QPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// `det(λ − M)` via reduction to upper Hessenberg form over ℚ.
pub fn charpoly(m: &[Vec<i64>]) -> QPoly {
    let n = m.len();
    let f = Rationals;
    let mut h: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
    for k in 0..n.saturating_sub(2) {
        let Some(p) = (k + 1..n).find(|&i| !h[i][k].is_zero()) else { continue };
        if p != k + 1 {
            h.swap(p, k + 1);
            for row in h.iter_mut() {
                row.swap(p, k + 1);
            }
        }
        let piv = h[k + 1][k].clone();
        for i in k + 2..n {
            if h[i][k].is_zero() {
                continue;
            }
            let u = &h[i][k] / &piv;
            for j in 0..n {
                let t = &u * &h[k + 1][j];
                h[i][j] = f.sub(&h[i][j], &t);
            }
            for row in h.iter_mut() {
                let t = &u * &row[i];
                row[k + 1] = f.add(&row[k + 1], &t);
            }
        }
    }
    // p_k = det(λ − H[..k, ..k])
    let mut p: Vec<QPoly> = vec![QPoly::one()];
    for k in 0..n {
        let lin = QPoly(vec![-h[k][k].clone(), rat(1)]).trimmed();
        let mut next = lin.mul(&p[k]);
        let mut prod = BigRational::from_integer(BigInt::from(1));
        for i in (0..k).rev() {
            prod *= &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let c = &prod * &h[i][k];
            next = next.sub(&p[i].scale(&c));
        }
        p.push(next);
    }
    p.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_det(m: &[Vec<i64>], lambda: i64) -> BigRational {
        let n = m.len();
        let a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| rat(if i == j { lambda } else { 0 } - m[i][j])).collect())
            .collect();
        let mut a = a;
        let mut det = rat(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return rat(0) };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            for i in c + 1..n {
                let u = &a[i][c] / &a[c][c];
                for j in c..n {
                    let t = &u * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
        det
    }

    #[test]
    fn matches_determinants() {
        let ms = vec![
            vec![vec![0, 1], vec![2, 0]],
            vec![vec![0, 1, 0, 0], vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![2, 0, 0, 0]],
            vec![vec![1, 2, 0], vec![0, 0, 3], vec![4, 0, 1]],
            vec![vec![0, 0, 5], vec![0, 0, 0], vec![1, 7, 0]],
        ];
        for m in ms {
            let p = charpoly(&m);
            assert_eq!(p.degree(), m.len() as i64);
            for l in -3..4 {
                assert_eq!(p.eval(&rat(l)), brute_det(&m, l), "{m:?} at {l}");
            }
        }
        assert_eq!(charpoly(&[vec![4]]), QPoly::from_ints(&[-4, 1]));
    }
}
