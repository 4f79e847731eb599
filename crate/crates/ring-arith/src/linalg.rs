//! Dense Gaussian elimination over `F_q`.

use crate::field::{FieldCtx, Fq};

/// Row-reduces in place and returns the pivot columns.
pub fn rref(f: &FieldCtx, rows: &mut [Vec<Fq>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(k, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &FieldCtx, rows: &[Vec<Fq>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m, ncols).len()
}

/// A basis of `{v : rows · v = 0}`.
pub fn kernel(f: &FieldCtx, rows: &[Vec<Fq>], ncols: usize) -> Vec<Vec<Fq>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[i][fc]);
            }
            v
        })
        .collect()
}

/// One solution of `rows · v = rhs`, if any.
pub fn solve(f: &FieldCtx, rows: &[Vec<Fq>], rhs: &[Fq], ncols: usize) -> Option<Vec<Fq>> {
    let mut m: Vec<Vec<Fq>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut r = r.clone();
            r.push(b);
            r
        })
        .collect();
    let pivots = rref(f, &mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut v = vec![0; ncols];
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = m[i][ncols];
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_is_annihilated() {
        let f = FieldCtx::new(5).unwrap();
        let rows = vec![vec![1, 2, 3, 4], vec![2, 4, 1, 3]];
        let ker = kernel(&f, &rows, 4);
        assert_eq!(ker.len() + rank(&f, &rows, 4), 4);
        for v in ker {
            for r in &rows {
                let s = r.iter().zip(&v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = FieldCtx::new(3).unwrap();
        let rows = vec![vec![1, 1], vec![2, 2]];
        assert!(solve(&f, &rows, &[1, 2], 2).is_some());
        assert!(solve(&f, &rows, &[1, 1], 2).is_none());
    }
}
