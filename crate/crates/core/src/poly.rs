//! Integer polynomials in ascending-coefficient form.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};

/// Primitive integer polynomial with positive leading coefficient.
///
/// `coeffs[i]` is the coefficient of `x^i`; the last entry is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Normalizes to content 1 and positive leading coefficient.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let coeffs = trim(coeffs);
        if coeffs.is_empty() {
            return Err(invalid("zero polynomial"));
        }
        Ok(IntPolynomial { coeffs: primitive_part(&coeffs) })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Minimal polynomial `q x - p` of a nonzero rational `p/q`.
    pub fn linear(p: &BigInt, q: &BigInt) -> Result<Self> {
        Self::new(vec![-p.clone(), q.clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// `max |a_i|`.
    pub fn naive_height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant(&self.coeffs)
    }

    /// `x^d f(1/x)`, normalized.
    pub fn reversed(&self) -> Result<Self> {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `f(-x)`, normalized.
    pub fn negated_arg(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self::new(c).unwrap()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn trim(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

pub fn content(c: &[BigInt]) -> BigInt {
    c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Content-free, positive-leading version of a nonzero polynomial.
pub fn primitive_part(c: &[BigInt]) -> Vec<BigInt> {
    let g = content(c);
    let neg = c.last().unwrap().is_negative();
    c.iter()
        .map(|x| {
            let q = x / &g;
            if neg { -q } else { q }
        })
        .collect()
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    c.iter().enumerate().skip(1).map(|(i, x)| x * BigInt::from(i)).collect()
}

/// Exact quotient `a / b` over the integers, if `b` divides `a` in `Z[x]`.
pub fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a;
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigInt::zero(); rem.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let top = &rem[i + b.len() - 1];
        let (qi, r) = top.div_rem(&lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &qi * bj;
        }
        q[i] = qi;
    }
    if rem.iter().all(|x| x.is_zero()) { Some(q) } else { None }
}

/// Remainder of `a` modulo a monic `m` over the integers.
pub fn rem_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(m.last().is_some_and(|x| x.is_one()));
    let mut rem = a.to_vec();
    let dm = m.len() - 1;
    while rem.len() > dm {
        let top = rem.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = rem.len() - dm;
        for (j, mj) in m.iter().take(dm).enumerate() {
            rem[shift + j] -= &top * mj;
        }
    }
    trim(rem)
}

/// Pseudo-remainder `lc(b)^k a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let lb = b.last().unwrap();
    let db = b.len() - 1;
    while rem.len() > db && !rem.is_empty() {
        let top = rem.pop().unwrap();
        for x in rem.iter_mut() {
            *x *= lb;
        }
        let shift = rem.len() - db;
        for (j, bj) in b.iter().take(db).enumerate() {
            rem[shift + j] -= &top * bj;
        }
        rem = trim(rem);
    }
    rem
}

/// Primitive gcd over `Q[x]` (positive leading coefficient).
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    if x.is_empty() {
        return if y.is_empty() { Vec::new() } else { primitive_part(&y) };
    }
    if y.is_empty() {
        return primitive_part(&x);
    }
    x = primitive_part(&x);
    y = primitive_part(&y);
    if x.len() < y.len() {
        core::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive_part(&r) };
    }
    x
}

pub fn is_squarefree(c: &[BigInt]) -> bool {
    gcd(c, &derivative(c)).len() <= 1
}

/// Squarefree part, primitive.
pub fn squarefree_part(c: &[BigInt]) -> Vec<BigInt> {
    let g = gcd(c, &derivative(c));
    if g.len() <= 1 {
        return primitive_part(c);
    }
    primitive_part(&exact_div(&primitive_part(c), &g).expect("gcd divides"))
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant via the Sylvester matrix.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let n = da + db;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..db {
        for (j, c) in a.iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in b.iter().rev().enumerate() {
            m[db + i][i + j] = c.clone();
        }
    }
    determinant(m)
}

pub fn discriminant(c: &[BigInt]) -> BigInt {
    let d = c.len() - 1;
    if d == 1 {
        return BigInt::one();
    }
    let r = resultant(c, &derivative(c));
    let s = if (d * (d - 1) / 2) % 2 == 1 { -r } else { r };
    s / c.last().unwrap()
}

/// Power sums `p_1..p_count` of the roots of `c`, by Newton's identities.
pub fn power_sums(c: &[BigInt], count: usize) -> Vec<BigRational> {
    let d = c.len() - 1;
    let lead = c[d].clone();
    // e_k = (-1)^k c_{d-k} / c_d
    let e: Vec<BigRational> = (0..=d)
        .map(|k| {
            let v = BigRational::new(c[d - k].clone(), lead.clone());
            if k % 2 == 1 { -v } else { v }
        })
        .collect();
    let mut p: Vec<BigRational> = Vec::with_capacity(count + 1);
    p.push(BigRational::from_integer(BigInt::from(d)));
    for m in 1..=count {
        let mut s = BigRational::zero();
        for i in 1..m.min(d + 1) {
            let t = &e[i] * &p[m - i];
            if i % 2 == 1 { s += t } else { s -= t }
        }
        if m <= d {
            let t = &e[m] * BigRational::from_integer(BigInt::from(m));
            if m % 2 == 1 { s += t } else { s -= t }
        }
        p.push(s);
    }
    p.remove(0);
    p
}

/// Monic rational polynomial with the given power sums `p_1..p_d`.
pub fn from_power_sums(p: &[BigRational]) -> Vec<BigRational> {
    let d = p.len();
    let mut e = vec![BigRational::one()];
    for k in 1..=d {
        let mut s = BigRational::zero();
        for i in 1..=k {
            let t = &e[k - i] * &p[i - 1];
            if i % 2 == 1 { s += t } else { s -= t }
        }
        e.push(s / BigRational::from_integer(BigInt::from(k)));
    }
    // x^d - e1 x^(d-1) + e2 x^(d-2) ...
    let mut out = vec![BigRational::zero(); d + 1];
    for (k, ek) in e.into_iter().enumerate() {
        out[d - k] = if k % 2 == 1 { -ek } else { ek };
    }
    out
}

/// Clears denominators of a rational polynomial; result is primitive.
pub fn clear_denominators(c: &[BigRational]) -> Vec<BigInt> {
    let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive_part(&trim(ints))
}

/// `prod_{i,j} (x - a_i b_j)` over the roots of `a` and `b`, primitive.
pub fn composed_product(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = (a.len() - 1) * (b.len() - 1);
    let pa = power_sums(a, n);
    let pb = power_sums(b, n);
    let p: Vec<BigRational> = pa.iter().zip(&pb).map(|(x, y)| x * y).collect();
    clear_denominators(&from_power_sums(&p))
}

/// `prod_i (x - r_i^k)` for the roots `r_i` of `c`, as a primitive integer polynomial.
pub fn root_power_poly(c: &[BigInt], k: u32) -> Vec<BigInt> {
    let d = c.len() - 1;
    let k = k as usize;
    let ps = power_sums(c, d * k);
    let pk: Vec<BigRational> = (1..=d).map(|j| ps[j * k - 1].clone()).collect();
    clear_denominators(&from_power_sums(&pk))
}

/// `prod_{i != j} (x - r_i / r_j)` for a polynomial with nonzero roots.
pub fn ratio_poly(c: &[BigInt]) -> Vec<BigInt> {
    let d = c.len() - 1;
    let n = d * (d - 1);
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut rev = c.to_vec();
    rev.reverse();
    let pos = power_sums(c, n);
    let neg = power_sums(&rev, n);
    let dd = BigRational::from_integer(BigInt::from(d));
    let pt: Vec<BigRational> = (0..n).map(|t| &pos[t] * &neg[t] - &dd).collect();
    clear_denominators(&from_power_sums(&pt))
}

/// `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic(d)).unwrap();
        }
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalization() {
        let f = IntPolynomial::from_i64(&[4, 0, -2]).unwrap();
        assert_eq!(f.coeffs(), p(&[-2, 0, 1]).as_slice());
        assert!(IntPolynomial::from_i64(&[0, 0]).is_err());
        assert_eq!(format!("{f}"), "x^2 - 2");
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p(&[-2, 0, 0, 1])), BigInt::from(-108));
        assert_eq!(discriminant(&p(&[-1, -3, 0, 1])), BigInt::from(81));
        assert_eq!(discriminant(&p(&[-1, -1, 1])), BigInt::from(5));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
    }

    #[test]
    fn power_transforms() {
        // roots ±√2 squared are 2, 2.
        assert_eq!(root_power_poly(&p(&[-2, 0, 1]), 2), p(&[4, -4, 1]));
        // ratio of ±i is -1 twice.
        assert_eq!(ratio_poly(&p(&[1, 0, 1])), p(&[1, 2, 1]));
        // golden ratio: roots φ, -1/φ; ratios -φ², -1/φ²  => x² + 3x + 1.
        assert_eq!(ratio_poly(&p(&[-1, -1, 1])), p(&[1, 3, 1]));
    }

    #[test]
    fn gcd_and_division() {
        let a = mul(&p(&[-1, 1]), &p(&[1, 1]));
        let g = gcd(&a, &p(&[-1, 0, 0, 1]));
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(exact_div(&a, &p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(exact_div(&a, &p(&[2, 1])), None);
        assert!(!is_squarefree(&p(&[1, 2, 1])));
    }
}
