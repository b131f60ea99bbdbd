//! Integer number theory on machine words: sieving, factorization,
//! totients, square-free tests.

use alloc::vec;
use alloc::vec::Vec;

/// Primes up to and including `limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Smallest-prime-factor table for `0..=limit`; entries 0 and 1 are 0.
pub fn spf_table(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Prime factorization by trial division, ascending primes.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

pub fn totient(n: u64) -> u64 {
    factor(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    factor(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Square-free kernel with sign: `n = s^2 * kernel`.
pub fn squarefree_part(n: i64) -> i64 {
    let sign = if n < 0 { -1 } else { 1 };
    let k: u64 = factor(n.unsigned_abs())
        .iter()
        .filter(|&&(_, e)| e % 2 == 1)
        .map(|&(p, _)| p)
        .product();
    sign * k as i64
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square_i64(n: i64) -> bool {
    n >= 0 && {
        let r = isqrt(n as u64);
        r * r == n as u64
    }
}

/// Integer `k`-th root, floor.
pub fn iroot(n: u64, k: u32) -> u64 {
    if k == 1 || n < 2 {
        return n;
    }
    let mut x = libm::pow(n as f64, 1.0 / k as f64) as u64;
    while x > 0 && pow_checked(x, k).is_none_or(|v| v > n) {
        x -= 1;
    }
    while pow_checked(x + 1, k).is_some_and(|v| v <= n) {
        x += 1;
    }
    x
}

pub fn pow_checked(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Writes `n = root^e` with `root` not a perfect power (`n >= 2`).
pub fn perfect_power_root(n: u64) -> (u64, u32) {
    let f = factor(n);
    let g = f.iter().fold(0u32, |g, &(_, e)| gcd(g as u64, e as u64) as u32);
    let root = f.iter().map(|&(p, e)| p.pow(e / g)).product();
    (root, g)
}

/// Kronecker symbol `(d / n)` for `n >= 1`.
pub fn kronecker(d: i64, n: u64) -> i32 {
    let mut result = 1i32;
    let mut n = n;
    let a = d;
    if n == 0 {
        return if d.unsigned_abs() == 1 { 1 } else { 0 };
    }
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            0 | 2 | 4 | 6 => return 0,
            3 | 5 => result = -result,
            _ => {}
        }
    }
    // Jacobi symbol (a / n), n odd.
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        assert_eq!(factor(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factor(97), vec![(97, 1)]);
        assert!(factor(1).is_empty());
    }

    #[test]
    fn totients_and_roots() {
        assert_eq!(totient(12), 4);
        assert_eq!(totient(1), 1);
        assert_eq!(perfect_power_root(64), (2, 6));
        assert_eq!(perfect_power_root(36), (6, 2));
        assert_eq!(perfect_power_root(12), (12, 1));
        assert_eq!(iroot(1_000_000, 3), 100);
        assert_eq!(iroot(999_999, 3), 99);
    }

    #[test]
    fn kronecker_matches_quadratic_residues() {
        // (-4/n) is the non-trivial character mod 4.
        assert_eq!(kronecker(-4, 1), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-3, 2), -1);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(-12), -3);
        assert_eq!(squarefree_part(8), 2);
        assert!(is_squarefree(-15));
        assert!(!is_squarefree(18));
    }
}
