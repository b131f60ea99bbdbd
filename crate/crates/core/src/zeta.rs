//! Certified values of Hurwitz zeta, digamma and quadratic Dirichlet L-functions.
//!
//! All series use Euler-Maclaurin summation. The remainder after the last
//! Bernoulli term is bounded by the first omitted term, since the relevant
//! derivatives keep a constant sign on the tail.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::real::Real;

const TAIL_SHIFT: u64 = 24;
const TERMS: usize = 14;

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // sum_{k=0}^{m} binom(m+1, k) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * &binom;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / binom);
    }
    b
}

fn rising(s: u64, m: u64) -> BigInt {
    (0..m).fold(BigInt::one(), |acc, i| acc * BigInt::from(s + i))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn widen(x: &Real, err: &Real) -> Real {
    let e = err.abs();
    let lo = x.sub(&e);
    let hi = x.add(&e);
    lo.hull(&hi)
}

/// Euler-Maclaurin coefficients `B_2j (s)_(2j-1) / (2j)!` for `j = 1..=TERMS + 1`.
fn hurwitz_coeffs(s: u32) -> Vec<BigRational> {
    let bern = bernoulli(2 * TERMS + 2);
    (1..=TERMS + 1)
        .map(|j| {
            let b = &bern[2 * j];
            BigRational::new(b.numer() * rising(s as u64, 2 * j as u64 - 1), b.denom() * factorial(2 * j as u64))
        })
        .collect()
}

/// Hurwitz zeta `zeta(s, x)` for integer `s >= 2` and rational `x > 0`.
pub fn hurwitz(s: u32, x: &BigRational, prec: u32) -> Real {
    hurwitz_with(&hurwitz_coeffs(s), s, x, prec)
}

fn hurwitz_with(coeffs: &[BigRational], s: u32, x: &BigRational, prec: u32) -> Real {
    assert!(s >= 2, "hurwitz zeta needs s >= 2");
    let p = prec + 32;
    let n = TAIL_SHIFT;
    let mut sum = Real::from_int(0, p);
    for k in 0..n {
        let t = x + BigRational::from_integer(k.into());
        let v = t.pow(s as i32);
        sum = sum.add(&Real::from_ratio(v.denom(), v.numer(), p));
    }
    let y = x + BigRational::from_integer(n.into());
    let inv_y = Real::from_rational(&y, p).recip().expect("y > 0");
    let inv_y2 = inv_y.square();
    let mut yp = inv_y.powi(s - 1);
    // Integral and half term.
    sum = sum.add(&yp.div(&Real::from_int(s - 1, p)).unwrap());
    sum = sum.add(&yp.mul(&inv_y).mul(&Real::from_ratio(&1.into(), &2.into(), p)));
    yp = yp.mul(&inv_y2);
    let mut last = Real::from_int(0, p);
    for (j, c) in coeffs.iter().enumerate() {
        let t = Real::from_rational(c, p).mul(&yp);
        if j == TERMS {
            last = t;
        } else {
            sum = sum.add(&t);
        }
        yp = yp.mul(&inv_y2);
    }
    widen(&sum, &last).with_prec(prec + 8)
}

pub fn zeta(s: u32, prec: u32) -> Real {
    hurwitz(s, &BigRational::one(), prec)
}

fn digamma_coeffs() -> Vec<BigRational> {
    let bern = bernoulli(2 * TERMS + 2);
    (1..=TERMS + 1).map(|j| BigRational::new(bern[2 * j].numer().clone(), bern[2 * j].denom() * BigInt::from(2 * j))).collect()
}

/// Digamma at rational `x > 0`.
pub fn digamma(x: &BigRational, prec: u32) -> Real {
    digamma_with(&digamma_coeffs(), x, prec)
}

fn digamma_with(coeffs: &[BigRational], x: &BigRational, prec: u32) -> Real {
    let p = prec + 32;
    let n = TAIL_SHIFT;
    let mut shift = Real::from_int(0, p);
    for k in 0..n {
        let t = x + BigRational::from_integer(k.into());
        shift = shift.add(&Real::from_ratio(t.denom(), t.numer(), p));
    }
    let y = x + BigRational::from_integer(n.into());
    let yr = Real::from_rational(&y, p);
    let inv_y = yr.recip().expect("y > 0");
    let inv_y2 = inv_y.square();
    let mut v = yr.ln().expect("y > 0").sub(&inv_y.mul(&Real::from_ratio(&1.into(), &2.into(), p)));
    let mut yp = inv_y2.clone();
    let mut last = Real::from_int(0, p);
    for (j, c) in coeffs.iter().enumerate() {
        let t = Real::from_rational(c, p).mul(&yp);
        if j == TERMS {
            last = t;
        } else {
            v = v.sub(&t);
        }
        yp = yp.mul(&inv_y2);
    }
    widen(&v, &last).sub(&shift).with_prec(prec + 8)
}

/// `L(s, chi_D)` for the Kronecker character of discriminant `d`, integer `s >= 2`.
pub fn dirichlet_l(s: u32, d: i64, prec: u32) -> Real {
    let q = d.unsigned_abs();
    let p = prec + 16;
    let coeffs = hurwitz_coeffs(s);
    let mut acc = Real::from_int(0, p);
    for a in 1..=q {
        let chi = arith::kronecker(d, a);
        if chi == 0 {
            continue;
        }
        let z = hurwitz_with(&coeffs, s, &BigRational::new(a.into(), q.into()), p);
        acc = if chi > 0 { acc.add(&z) } else { acc.sub(&z) };
    }
    let scale = Real::from_int(BigInt::from(q).pow(s), p).recip().unwrap();
    acc.mul(&scale).with_prec(prec + 4)
}

/// `L(1, chi_D)` for a nonprincipal Kronecker character, via digamma values.
pub fn dirichlet_l1(d: i64, prec: u32) -> Real {
    let q = d.unsigned_abs();
    let p = prec + 16;
    let coeffs = digamma_coeffs();
    let mut acc = Real::from_int(0, p);
    for a in 1..=q {
        let chi = arith::kronecker(d, a);
        if chi == 0 {
            continue;
        }
        let g = digamma_with(&coeffs, &BigRational::new(a.into(), q.into()), p);
        acc = if chi > 0 { acc.sub(&g) } else { acc.add(&g) };
    }
    acc.div(&Real::from_int(q, p)).unwrap().with_prec(prec + 4)
}

/// Whether `d` is a fundamental discriminant.
pub fn is_fundamental(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => arith::is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && arith::is_squarefree(m)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn ratio(n: i64, d: i64) -> BigRational {
        let g = n.gcd(&d);
        BigRational::new((n / g).into(), (d / g).into())
    }

    fn close(x: &Real, v: f64, tol: f64) -> bool {
        (x.mid_f64() - v).abs() < tol && x.rad_f64() < tol
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(12);
        assert_eq!(b[1], ratio(-1, 2));
        assert_eq!(b[2], ratio(1, 6));
        assert_eq!(b[4], ratio(-1, 30));
        assert_eq!(b[12], ratio(-691, 2730));
        assert!(b[3].is_zero());
    }

    #[test]
    fn riemann_zeta_values() {
        let z2 = zeta(2, 100);
        let pi = Real::pi(110);
        let expect = pi.square().div(&Real::from_int(6, 110)).unwrap();
        assert!(z2.intersects(&expect));
        assert!(z2.width_at_most(90));
        assert!(close(&zeta(3, 80), 1.202_056_903_159_594, 1e-14));
        let z4 = zeta(4, 100);
        assert!(z4.intersects(&pi.powi(4).div(&Real::from_int(90, 110)).unwrap()));
    }

    #[test]
    fn l_values() {
        // L(2, chi_-4) is Catalan's constant.
        assert!(close(&dirichlet_l(2, -4, 80), 0.915_965_594_177_219, 1e-14));
        // L(1, chi_-4) = pi / 4
        let l = dirichlet_l1(-4, 80);
        assert!(l.intersects(&Real::pi(90).div(&Real::from_int(4, 90)).unwrap()));
        // L(1, chi_5) = 2 log(phi) / sqrt(5)
        let phi = 1.618_033_988_749_895f64;
        assert!(close(&dirichlet_l1(5, 80), 2.0 * phi.ln() / 5f64.sqrt(), 1e-14));
    }

    #[test]
    fn digamma_one() {
        // psi(1) = -gamma
        assert!(close(&digamma(&BigRational::one(), 80), -0.577_215_664_901_532_9, 1e-15));
    }

    #[test]
    fn fundamental_discriminants() {
        assert!(is_fundamental(-4));
        assert!(is_fundamental(-3));
        assert!(is_fundamental(8));
        assert!(is_fundamental(5));
        assert!(!is_fundamental(-16));
        assert!(!is_fundamental(12 * 4));
    }
}
