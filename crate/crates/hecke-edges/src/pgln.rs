//! Cusp moves of the lattice walk for `PGL_n` and Gaussian binomials.

/// Gaussian binomial `[n choose r]_Q`.
pub fn q_binomial(n: u32, r: u32, big_q: u128) -> u128 {
    if r > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num *= big_q.pow(n - i) - 1;
        den *= big_q.pow(i + 1) - 1;
    }
    num / den
}

/// `Σ_p Q^{Σ(n−i)p_i − r(r−1)/2}` over 0/1-vectors `p` of weight `r`.
pub fn q_binomial_by_subsets(n: u32, r: u32, big_q: u128) -> u128 {
    let shift = (r * r.saturating_sub(1) / 2) as i64;
    (0u32..1 << n)
        .filter(|m| m.count_ones() == r)
        .map(|m| {
            let e: i64 = (0..n).filter(|i| m >> i & 1 == 1).map(|i| (n - 1 - i) as i64).sum();
            big_q.pow((e - shift) as u32)
        })
        .sum()
}

/// The `n` moves of the splitting gaps `(deg L_i − deg L_{i+1})` when
/// `L_i` is twisted by `−x`, each with its cusp multiplicity
/// `q^{deg x·(n−i)}`.
pub fn pgln_moves(n: usize, deg_x: i64, q: u128) -> Vec<(Vec<i64>, u128)> {
    assert!(n >= 2, "rank at least two");
    (1..=n)
        .map(|i| {
            let mut v = vec![0; n - 1];
            if i >= 2 {
                v[i - 2] += deg_x;
            }
            if i <= n - 1 {
                v[i - 1] -= deg_x;
            }
            (v, q.pow(deg_x as u32 * (n - i) as u32))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_and_three() {
        assert_eq!(pgln_moves(2, 1, 2), vec![(vec![-1], 2), (vec![1], 1)]);
        let m = pgln_moves(3, 1, 2);
        assert_eq!(m, vec![(vec![-1, 0], 4), (vec![1, -1], 2), (vec![0, 1], 1)]);
        assert_eq!(m.iter().map(|x| x.1).sum::<u128>(), 7);
        assert_eq!(q_binomial(3, 1, 2), 7);
    }

    #[test]
    fn subset_sum_identity() {
        for n in 1..=6 {
            for r in 0..=n {
                for big_q in 2..=5 {
                    assert_eq!(q_binomial_by_subsets(n, r, big_q), q_binomial(n, r, big_q), "n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn moves_total_is_binomial() {
        for n in 2..6 {
            for d in 1..3 {
                let total: u128 = pgln_moves(n, d, 3).iter().map(|x| x.1).sum();
                assert_eq!(total, q_binomial(n as u32, 1, 3u128.pow(d as u32)));
            }
        }
    }
}
