//! Exceptional sets: degenerate polynomials, small Galois groups, and numbers
//! admitting a root-of-unity twist of the same degree.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::algnum::{self, sorted_roots, AlgebraicNumber, ComplexBox};
use crate::arith;
use crate::enumerate;
use crate::error::{invalid, Error, Result};
use crate::poly::{self, IntPolynomial};

/// Orders `k >= 3` with `phi(k) <= bound`.
pub fn small_orders(bound: u64) -> Vec<u64> {
    // phi(k) >= sqrt(k / 2)
    (3..=2 * bound * bound).filter(|&k| arith::totient(k) <= bound).collect()
}

/// `lead * prod (x - r)` rounded to integers when every coefficient is within
/// tolerance of one, ascending.
fn near_integer_poly(lead: f64, roots: &[(f64, f64)]) -> Option<Vec<BigInt>> {
    let mut c: Vec<(f64, f64)> = vec![(lead, 0.0)];
    for &(rr, ri) in roots {
        let mut next = vec![(0.0, 0.0); c.len() + 1];
        for (i, &(a, b)) in c.iter().enumerate() {
            next[i + 1].0 += a;
            next[i + 1].1 += b;
            next[i].0 -= a * rr - b * ri;
            next[i].1 -= a * ri + b * rr;
        }
        c = next;
    }
    let mut out = Vec::with_capacity(c.len());
    for (re, im) in c {
        let tol = 1e-6 * (1.0 + libm::fabs(re));
        let n = libm::round(re);
        if libm::fabs(im) > tol || libm::fabs(re - n) > tol {
            return None;
        }
        out.push(BigInt::from(n as i64));
    }
    Some(out)
}

/// Whether `x * eta` has degree exactly `target` for some primitive `k`-th root of unity `eta`.
///
/// The numbers `x_i eta_j` are the roots of the composed product `R`. If some
/// root has degree `target`, a Galois conjugation moves it to `x eta'`, so the
/// question is whether the squarefree part of `R` has an irreducible factor of
/// degree `target`. Candidate factors through `x eta` come from a
/// floating-point subset search and are then confirmed by exact division and
/// an irreducibility test.
pub fn twist_has_degree(x: &AlgebraicNumber, k: u64, target: usize) -> Result<bool> {
    if k < 3 || target == 0 {
        return Err(invalid("need k >= 3 and a positive target degree"));
    }
    let f = x.minpoly().coeffs();
    let lead = x.minpoly().leading().to_f64().ok_or_else(|| Error::Overflow("leading coefficient".into()))?;
    let conj: Vec<(f64, f64)> = sorted_roots(f, 64)?.iter().map(|d| {
        let b = ComplexBox::from_disk(d);
        (b.re.mid_f64(), b.im.mid_f64())
    }).collect();
    let etas: Vec<(f64, f64)> = (1..k)
        .filter(|&j| arith::gcd(j, k) == 1)
        .map(|j| {
            let a = core::f64::consts::TAU * j as f64 / k as f64;
            (libm::cos(a), libm::sin(a))
        })
        .collect();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let prods: Vec<(f64, f64)> = conj.iter().flat_map(|&a| etas.iter().map(move |&e| mul(a, e))).collect();
    let m = etas.len();
    let le = libm::pow(lead, target as f64);
    let mut r: Option<Vec<BigInt>> = None;
    let mut tried: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..m {
        let beta = x.root_index() * m + j;
        let others: Vec<usize> = (0..prods.len()).filter(|&i| i != beta).collect();
        if others.len() + 1 < target {
            return Ok(false);
        }
        let mut pick: Vec<usize> = (0..target - 1).collect();
        loop {
            let mut roots = vec![prods[beta]];
            roots.extend(pick.iter().map(|&i| prods[others[i]]));
            if let Some(g) = near_integer_poly(le, &roots) {
                let g = poly::primitive_part(&poly::trim(g));
                if g.len() == target + 1 && !tried.contains(&g) {
                    let r = r.get_or_insert_with(|| poly::squarefree_part(&poly::composed_product(f, &poly::cyclotomic(k))));
                    if poly::exact_div(r, &g).is_some() && algnum::is_irreducible(&IntPolynomial::new(g.clone())?)? {
                        return Ok(true);
                    }
                    tried.push(g);
                }
            }
            if !next_combination(&mut pick, others.len()) {
                break;
            }
        }
    }
    Ok(false)
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    let mut i = k;
    while i > 0 && pick[i - 1] == n - k + i - 1 {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    pick[i - 1] += 1;
    for j in i..k {
        pick[j] = pick[j - 1] + 1;
    }
    true
}

/// Membership in the set of degree-`d` numbers with a same-degree twist by a root of unity other than `+-1`.
pub fn has_same_degree_twist(x: &AlgebraicNumber) -> Result<bool> {
    let d = x.degree();
    for k in small_orders((d * d) as u64) {
        if twist_has_degree(x, k, d)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSetCounts {
    pub d: u32,
    pub h: u64,
    /// Algebraic integers with a same-degree twist (`d <= 3`).
    pub c: Option<u64>,
    pub c_star: Option<u64>,
    /// Monic polynomials whose Galois group is not the full symmetric group, reducible ones included.
    pub e: u64,
    pub e_irreducible: u64,
    pub f: u64,
    pub f_star: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentRow {
    pub set: &'static str,
    pub count: u64,
    pub empirical: Option<f64>,
    pub bound: f64,
}

impl SpecialSetCounts {
    /// Empirical `log(count) / log H` next to the exponent of the upper bound.
    pub fn exponents(&self) -> Vec<ExponentRow> {
        let d = self.d as f64;
        let lh = libm::log(self.h as f64);
        let emp = |c: u64| (c > 0 && self.h > 1).then(|| libm::log(c as f64) / lh);
        let sharp = self.d == 2 || self.d % 2 == 1;
        let mut rows = vec![
            ExponentRow { set: "F", count: self.f, empirical: emp(self.f), bound: d - 1.0 },
            ExponentRow { set: "F*", count: self.f_star, empirical: emp(self.f_star), bound: d },
        ];
        rows.push(ExponentRow { set: "E", count: self.e, empirical: emp(self.e), bound: d - 0.5 });
        if let Some(c) = self.c {
            let b = if sharp { d * (d - 1.0) } else { d * (d - 0.5) };
            rows.push(ExponentRow { set: "C", count: c, empirical: emp(c), bound: b });
        }
        if let Some(c) = self.c_star {
            let b = if sharp { d * d } else { d * (d + 0.5) };
            rows.push(ExponentRow { set: "C*", count: c, empirical: emp(c), bound: b });
        }
        rows
    }
}

/// Calls `visit` on every integer polynomial of degree `d` with all
/// coefficients in `[-h, h]`; monic only when `monic`, else positive leading
/// coefficient (negatives mirror them).
fn coefficient_box(d: usize, h: i64, monic: bool, mut visit: impl FnMut(&IntPolynomial) -> Result<()>) -> Result<()> {
    let leads = if monic { 1..=1 } else { 1..=h };
    for lead in leads {
        let mut c = vec![-h; d];
        loop {
            let mut coeffs: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
            coeffs.push(BigInt::from(lead));
            visit(&IntPolynomial::new(coeffs)?)?;
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                if c[i] < h {
                    c[i] += 1;
                    break;
                }
                c[i] = -h;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    Ok(())
}

/// Degenerate polynomials of degree `d` and height at most `h`.
pub fn count_degenerate(d: u32, h: u64, monic: bool) -> Result<u64> {
    if d < 2 {
        return Ok(0);
    }
    let mut n = 0u64;
    coefficient_box(d as usize, h as i64, monic, |f| {
        if algnum::is_degenerate(f)? {
            n += 1;
        }
        Ok(())
    })?;
    // Leading coefficients of both signs.
    Ok(if monic { n } else { 2 * n })
}

/// Monic polynomials of degree `d` and height at most `h` whose Galois group
/// is not `S_d`: `(all, irreducible only)`.
pub fn count_small_galois(d: u32, h: u64) -> Result<(u64, u64)> {
    if !(2..=4).contains(&d) {
        return Err(Error::UnsupportedDegree(d as usize));
    }
    let (mut all, mut irr) = (0u64, 0u64);
    coefficient_box(d as usize, h as i64, true, |f| {
        if !algnum::is_irreducible(f)? {
            all += 1;
        } else if !algnum::galois_is_full(f)? {
            all += 1;
            irr += 1;
        }
        Ok(())
    })?;
    Ok((all, irr))
}

/// Degree-`d` numbers (integers when `integers`) of Weil height at most `h`
/// with a same-degree twist. Conjugates share membership.
pub fn count_twisted(d: u32, h: u64, integers: bool) -> Result<u64> {
    let hq = BigRational::from_integer(h.into());
    let polys = enumerate::degree_polynomials(d, &hq, integers, false)?;
    let mut n = 0;
    for f in polys {
        if f.degree() >= 2 && has_same_degree_twist(&AlgebraicNumber::new_unchecked(f.clone(), 0))? {
            n += f.degree() as u64;
        }
    }
    Ok(n)
}

pub fn count_special_sets(d: u32, h: u64) -> Result<SpecialSetCounts> {
    if !(2..=4).contains(&d) {
        return Err(Error::UnsupportedDegree(d as usize));
    }
    if h == 0 {
        return Err(invalid("height must be positive"));
    }
    let (e, ei) = count_small_galois(d, h)?;
    let (c, cs) = if d <= 3 { (Some(count_twisted(d, h, true)?), Some(count_twisted(d, h, false)?)) } else { (None, None) };
    Ok(SpecialSetCounts {
        d,
        h,
        c,
        c_star: cs,
        e,
        e_irreducible: ei,
        f: count_degenerate(d, h, true)?,
        f_star: count_degenerate(d, h, false)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(c: &[i64], i: usize) -> AlgebraicNumber {
        AlgebraicNumber::new(IntPolynomial::from_i64(c).unwrap(), i).unwrap()
    }

    #[test]
    fn twists() {
        // sqrt(2) * i has degree 2.
        assert!(twist_has_degree(&alg(&[-2, 0, 1], 1), 4, 2).unwrap());
        assert!(has_same_degree_twist(&alg(&[-2, 0, 1], 1)).unwrap());
        // golden ratio: phi * zeta has degree 4 or more for every zeta != +-1
        assert!(!has_same_degree_twist(&alg(&[-1, -1, 1], 1)).unwrap());
        // 1 + i times i
        assert!(has_same_degree_twist(&alg(&[2, -2, 1], 1)).unwrap());
        // cube root of 2 times a cube root of unity
        assert!(has_same_degree_twist(&alg(&[-2, 0, 0, 1], 0)).unwrap());
    }

    #[test]
    fn degenerate_quadratics() {
        // x^2 - c is degenerate for every c != 0; oracle count by direct roots.
        let f2 = count_degenerate(2, 10, true).unwrap();
        assert!(f2 >= 20);
        let mut brute = 0;
        for b in -10i64..=10 {
            for c in -10i64..=10 {
                // roots r1, r2 with r1 / r2 a root of unity, r1 != r2, both nonzero
                let disc = (b * b - 4 * c) as f64;
                let ok = if c == 0 {
                    false
                } else if disc < 0.0 {
                    // complex pair of equal modulus: quotient on the unit circle; root of unity iff
                    // the argument is a rational multiple of pi, i.e. b^2 / c in {0, 1, 2, 3}
                    let t = (b * b) as f64 / c as f64;
                    [0.0, 1.0, 2.0, 3.0].iter().any(|v| (t - v).abs() < 1e-12)
                } else {
                    // real roots: quotient -1
                    disc > 0.0 && b == 0
                };
                brute += u64::from(ok);
            }
        }
        assert_eq!(f2, brute);
    }

    #[test]
    fn cubic_galois() {
        let (all, irr) = count_small_galois(3, 3).unwrap();
        assert!(all > irr);
        // x^3 - 3x + 1 has cyclic Galois group
        assert!(!algnum::galois_is_full(&IntPolynomial::from_i64(&[1, -3, 0, 1]).unwrap()).unwrap());
        assert!(irr >= 1);
    }

    #[test]
    fn small_special_sets() {
        let s = count_special_sets(2, 2).unwrap();
        assert!(s.c.unwrap() > 0);
        assert!(s.c_star.unwrap() >= s.c.unwrap());
        assert_eq!(s.e_irreducible, 0);
        assert!(count_special_sets(5, 2).is_err());
    }
}
