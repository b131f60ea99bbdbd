//! Integer kernels and ranks by unimodular row reduction.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Basis of `{k in Z^n : sum k_i rows[i] = 0}`.
///
/// The basis is saturated: every integer kernel vector is an integer
/// combination of it. Each vector has its first nonzero entry positive.
pub fn integer_kernel(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    let m = rows.iter().map(Vec::len).max().unwrap_or(0);
    // [rows | I]
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.resize(m, BigInt::zero());
            v.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    let mut top = 0;
    for col in 0..m {
        if top == n {
            break;
        }
        loop {
            // Smallest nonzero entry at or below `top` becomes the pivot.
            let pivot = (top..n).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].abs());
            let Some(p) = pivot else { break };
            a.swap(top, p);
            let mut done = true;
            for r in top + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let qt = a[r][col].div_floor(&a[top][col]);
                let (head, tail) = a.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[top]) {
                    *x -= &qt * y;
                }
                if !a[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                top += 1;
                break;
            }
        }
    }
    a.into_iter()
        .skip(top)
        .map(|row| normalize_sign(row[m..].to_vec()))
        .collect()
}

/// Rank of the row vectors over the rationals.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    rows.len() - integer_kernel(rows).len()
}

/// Flips the sign so the first nonzero entry is positive.
pub fn normalize_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut v {
            *x = -&*x;
        }
    }
    v
}

pub fn normalize_sign_i64(mut v: Vec<i64>) -> Vec<i64> {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in &mut v {
            *x = -*x;
        }
    }
    v
}

/// Divides by the gcd of the entries.
pub fn primitive_i64(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// Rank of a small integer matrix (rows are vectors), fraction-free in i128.
///
/// Returns `None` on overflow.
pub fn rank_small(rows: &[&[i64]]) -> Option<usize> {
    let m = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<i128> = r.iter().map(|&x| x as i128).collect();
            v.resize(m, 0);
            v
        })
        .collect();
    let n = a.len();
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..n).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..n {
            if a[r][col] == 0 {
                continue;
            }
            let (x, y) = (a[rank][col], a[r][col]);
            let g = x.gcd(&y);
            let (fx, fy) = (x / g, y / g);
            for c in col..m {
                a[r][c] = a[r][c].checked_mul(fx)?.checked_sub(a[rank][c].checked_mul(fy)?)?;
            }
            let h = a[r].iter().fold(0i128, |h, &v| h.gcd(&v));
            if h > 1 {
                a[r].iter_mut().for_each(|v| *v /= h);
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    Some(rank)
}

pub fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kernel_i64(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
        integer_kernel(&to_big(rows))
            .into_iter()
            .map(|v| v.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn kernels() {
        // 2 and 4 over the prime 2.
        assert_eq!(kernel_i64(&[vec![1], vec![2]]), vec![vec![2, -1]]);
        // 2, 6, 3 over primes 2, 3.
        assert_eq!(kernel_i64(&[vec![1, 0], vec![1, 1], vec![0, 1]]), vec![vec![1, -1, 1]]);
        // 6, 10, 15 independent.
        assert!(kernel_i64(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).is_empty());
        // zero vector
        assert_eq!(kernel_i64(&[vec![0], vec![3]]), vec![vec![1, 0]]);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2 x + 4 y = 0 has kernel generated by (2, -1), not (4, -2).
        assert_eq!(kernel_i64(&[vec![2], vec![4]]), vec![vec![2, -1]]);
        let k = kernel_i64(&[vec![6, 0], vec![4, 0], vec![0, 5]]);
        assert_eq!(k, vec![vec![2, -3, 0]]);
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_small(&[&[1, 0], &[1, 1], &[0, 1]]), Some(2));
        assert_eq!(rank_small(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]), Some(3));
        assert_eq!(rank_small(&[&[0, 0], &[0, 0]]), Some(0));
        assert_eq!(rank(&to_big(&[vec![2, 4], vec![1, 2]])), 1);
    }
}
