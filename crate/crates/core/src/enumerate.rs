//! Duplicate-free enumeration of bounded-height algebraic numbers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algnum::{self, AlgebraicNumber};
use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::poly::IntPolynomial;
use crate::quadratic::{QuadElem, QuadField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    IntegersInField,
    NumbersInField,
    IntegersOfDegree,
    NumbersOfDegree,
}

impl Mode {
    pub fn is_field(self) -> bool {
        matches!(self, Mode::IntegersInField | Mode::NumbersInField)
    }

    pub fn is_integers(self) -> bool {
        matches!(self, Mode::IntegersInField | Mode::IntegersOfDegree)
    }
}

/// `None` stands for the rationals.
pub type BaseField = Option<QuadField>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub mode: Mode,
    pub field: Option<BaseField>,
    pub degree: Option<u32>,
    pub height_bound: BigRational,
    pub include_zero: bool,
}

impl EnumerationSpec {
    pub fn field(mode: Mode, field: BaseField, h: BigRational) -> Self {
        EnumerationSpec { mode, field: Some(field), degree: None, height_bound: h, include_zero: false }
    }

    pub fn degree(mode: Mode, d: u32, h: BigRational) -> Self {
        EnumerationSpec { mode, field: None, degree: Some(d), height_bound: h, include_zero: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.height_bound < BigRational::one() {
            return Err(invalid("height bound must be at least 1"));
        }
        match (self.mode.is_field(), &self.field, self.degree) {
            (true, Some(_), None) => Ok(()),
            (false, None, Some(d)) if d >= 1 => Ok(()),
            (false, None, Some(_)) => Err(invalid("degree must be at least 1")),
            _ => Err(invalid("field modes need a field, degree modes need a degree")),
        }
    }
}

/// Enumerated elements, grouped by representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stream {
    RationalIntegers(Vec<i64>),
    RationalNumbers(Vec<BigRational>),
    Quadratic(QuadField, Vec<QuadElem>),
    /// Each polynomial stands for all of its roots.
    Polynomials(Vec<IntPolynomial>),
}

impl Stream {
    /// Number of algebraic numbers represented.
    pub fn count(&self) -> u64 {
        match self {
            Stream::RationalIntegers(v) => v.len() as u64,
            Stream::RationalNumbers(v) => v.len() as u64,
            Stream::Quadratic(_, v) => v.len() as u64,
            Stream::Polynomials(v) => v.iter().map(|f| f.degree().max(1) as u64).sum(),
        }
    }

    /// `(minimal polynomial, root index)` keys, one per number.
    pub fn keys(&self) -> Vec<(IntPolynomial, usize)> {
        match self {
            Stream::RationalIntegers(v) => v.iter().map(|&m| (linear(&BigInt::from(m), &BigInt::one()), 0)).collect(),
            Stream::RationalNumbers(v) => v.iter().map(|q| (linear(q.numer(), q.denom()), 0)).collect(),
            Stream::Quadratic(_, v) => v.iter().map(|x| (x.minpoly(), if x.is_rational() { 0 } else { x.root_index() })).collect(),
            Stream::Polynomials(v) => v.iter().flat_map(|f| (0..f.degree()).map(move |i| (f.clone(), i))).collect(),
        }
    }

    pub fn algebraic_numbers(&self) -> Vec<AlgebraicNumber> {
        self.keys().into_iter().map(|(f, i)| AlgebraicNumber::new_unchecked(f, i)).collect()
    }
}

fn linear(p: &BigInt, q: &BigInt) -> IntPolynomial {
    if p.is_zero() {
        return IntPolynomial::from_i64(&[0, 1]).expect("x");
    }
    IntPolynomial::linear(p, q).expect("nonzero denominator")
}

/// `floor(c * (u/v)^e)`.
fn floor_scaled_pow(c: u64, h: &BigRational, e: u32) -> BigInt {
    let p = h.pow(e as i32) * BigRational::from_integer(c.into());
    p.floor().to_integer()
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow("height bound too large".into()))
}

pub fn enumerate(spec: &EnumerationSpec) -> Result<Stream> {
    spec.validate()?;
    let h = &spec.height_bound;
    let z = spec.include_zero;
    match (spec.mode, spec.field, spec.degree) {
        (Mode::IntegersInField, Some(None), _) => Ok(Stream::RationalIntegers(rational_integers(h, z)?)),
        (Mode::NumbersInField, Some(None), _) => Ok(Stream::RationalNumbers(rational_numbers(h, z)?)),
        (Mode::IntegersInField, Some(Some(k)), _) => Ok(Stream::Quadratic(k, quadratic_integers(k, h, z)?)),
        (Mode::NumbersInField, Some(Some(k)), _) => Ok(Stream::Quadratic(k, quadratic_numbers(k, h, z)?)),
        (Mode::IntegersOfDegree, _, Some(d)) => Ok(Stream::Polynomials(degree_polynomials(d, h, true, z)?)),
        (Mode::NumbersOfDegree, _, Some(d)) => Ok(Stream::Polynomials(degree_polynomials(d, h, false, z)?)),
        _ => Err(invalid("inconsistent enumeration spec")),
    }
}

pub fn enum_field_integers(spec: &EnumerationSpec) -> Result<Stream> {
    if spec.mode != Mode::IntegersInField {
        return Err(invalid("mode must be integers-in-field"));
    }
    enumerate(spec)
}

pub fn enum_field_numbers(spec: &EnumerationSpec) -> Result<Stream> {
    if spec.mode != Mode::NumbersInField {
        return Err(invalid("mode must be numbers-in-field"));
    }
    enumerate(spec)
}

pub fn enum_degree_integers(spec: &EnumerationSpec) -> Result<Stream> {
    if spec.mode != Mode::IntegersOfDegree {
        return Err(invalid("mode must be integers-of-degree"));
    }
    enumerate(spec)
}

pub fn enum_degree_numbers(spec: &EnumerationSpec) -> Result<Stream> {
    if spec.mode != Mode::NumbersOfDegree {
        return Err(invalid("mode must be numbers-of-degree"));
    }
    enumerate(spec)
}

/// Nonzero integers `m` with `|m| <= h`, ordered by `|m|` then sign.
pub fn rational_integers(h: &BigRational, include_zero: bool) -> Result<Vec<i64>> {
    let n = to_i64(&h.floor().to_integer())?;
    let mut out = Vec::with_capacity(2 * n as usize + 1);
    if include_zero {
        out.push(0);
    }
    for m in 1..=n {
        out.push(m);
        out.push(-m);
    }
    Ok(out)
}

/// Reduced fractions `p/q` with `max(|p|, q) <= h`, `p != 0`.
pub fn rational_numbers(h: &BigRational, include_zero: bool) -> Result<Vec<BigRational>> {
    let n = to_i64(&h.floor().to_integer())?;
    let mut out = Vec::new();
    if include_zero {
        out.push(BigRational::zero());
    }
    for q in 1..=n {
        for p in 1..=n {
            if arith::gcd(p as u64, q as u64) == 1 {
                out.push(BigRational::new(p.into(), q.into()));
                out.push(BigRational::new((-p).into(), q.into()));
            }
        }
    }
    Ok(out)
}

/// Calls `emit(a, b, c)` for each `a x^2 + b x + c` with discriminant `m f^2`,
/// `f >= 1`, `1 <= a <= amax`, `|b| <= bmax`, `|c| <= cmax`.
fn sweep_quadratics(m: i64, amax: i64, bmax: i64, cmax: i64, mut emit: impl FnMut(i64, i64, i64)) {
    for a in 1..=amax {
        let lim = 4 * a as i128 * cmax as i128;
        for b in -bmax..=bmax {
            let bb = b as i128 * b as i128;
            let mut f: i128 = 1;
            loop {
                let num = bb - m as i128 * f * f;
                if (m < 0 && num > lim) || (m > 0 && num < -lim) {
                    break;
                }
                f += 1;
                if num.abs() > lim || num % (4 * a as i128) != 0 {
                    continue;
                }
                emit(a, b, (num / (4 * a as i128)) as i64);
            }
        }
    }
}

/// Algebraic integers of `k` with height at most `h`.
pub fn quadratic_integers(k: QuadField, h: &BigRational, include_zero: bool) -> Result<Vec<QuadElem>> {
    let mut out: Vec<QuadElem> = Vec::new();
    if include_zero {
        out.push(k.rational(BigRational::zero()));
    }
    for m in rational_integers(h, false)? {
        out.push(k.from_ints(m, 0));
    }
    // Degree two: M(x^2 + b x + c) <= h^2. Every root modulus is at most M.
    let h2 = h * h;
    let (u, v) = (h2.numer().clone(), h2.denom().clone());
    let cmax = to_i64(&h2.floor().to_integer())?;
    let bmax = 2 * cmax;
    let one = BigInt::one();
    let mut err = None;
    sweep_quadratics(k.m(), 1, bmax, cmax, |_, b, c| {
        let (bb, cc) = (BigInt::from(b), BigInt::from(c));
        if algnum::quadratic_mahler_le(&one, &bb, &cc, &u, &v) {
            for idx in 0..2 {
                match k.from_quadratic_root(&one, &bb, &cc, idx) {
                    Some(x) => out.push(x),
                    None => err = Some(Error::InvalidInput("root outside field".into())),
                }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// All elements of `k` with height at most `h`.
pub fn quadratic_numbers(k: QuadField, h: &BigRational, include_zero: bool) -> Result<Vec<QuadElem>> {
    let mut out: Vec<QuadElem> = rational_numbers(h, include_zero)?.into_iter().map(|q| k.rational(q)).collect();
    let h2 = h * h;
    let (u, v) = (h2.numer().clone(), h2.denom().clone());
    let mmax = to_i64(&h2.floor().to_integer())?;
    // a <= M, |c| <= M, |b| <= 2M.
    let mut err = None;
    sweep_quadratics(k.m(), mmax, 2 * mmax, mmax, |a, b, c| {
        if arith::gcd(arith::gcd(a as u64, b.unsigned_abs()), c.unsigned_abs()) != 1 {
            return;
        }
        let (aa, bb, cc) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
        if algnum::quadratic_mahler_le(&aa, &bb, &cc, &u, &v) {
            for idx in 0..2 {
                match k.from_quadratic_root(&aa, &bb, &cc, idx) {
                    Some(x) => out.push(x),
                    None => err = Some(Error::InvalidInput("root outside field".into())),
                }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Number of coefficient vectors in the sweep box for degree `d`.
pub fn degree_box_size(d: u32, h: &BigRational, monic: bool) -> f64 {
    let hd = h.pow(d as i32).to_f64().unwrap_or(f64::INFINITY);
    let mut size = if monic { 1.0 } else { libm::floor(hd) };
    for k in 1..=d {
        size *= 2.0 * libm::floor(arith::binomial(d as u64, k as u64) as f64 * hd) + 1.0;
    }
    size
}

/// Irreducible polynomials of degree `d` with Mahler measure at most `h^d`:
/// monic when `monic`, otherwise primitive with positive leading coefficient.
pub fn degree_polynomials(d: u32, h: &BigRational, monic: bool, include_zero: bool) -> Result<Vec<IntPolynomial>> {
    if d == 0 {
        return Err(invalid("degree must be at least 1"));
    }
    let hd = h.pow(d as i32);
    let (u, v) = (hd.numer().clone(), hd.denom().clone());
    let mut out = Vec::new();
    if include_zero {
        out.push(IntPolynomial::from_i64(&[0, 1])?);
    }
    let lead_max = if monic { 1 } else { to_i64(&hd.floor().to_integer())? };
    // bounds[k]: bound on the coefficient of x^(d-k), k = 1..=d
    let bounds: Vec<i64> = (0..=d)
        .map(|k| to_i64(&floor_scaled_pow(arith::binomial(d as u64, k as u64), h, d)))
        .collect::<Result<_>>()?;
    for lead in 1..=lead_max {
        // coefficients from x^(d-1) down to x^0
        let mut c: Vec<i64> = (1..=d as usize).map(|k| -bounds[k]).collect();
        loop {
            let c0 = c[d as usize - 1];
            if c0 != 0 && c0.abs() <= bounds[d as usize] {
                if let Some(f) = accept(lead, &c, monic, &u, &v)? {
                    out.push(f);
                }
            }
            let mut i = c.len();
            let mut done = true;
            while i > 0 {
                i -= 1;
                if c[i] < bounds[i + 1] {
                    c[i] += 1;
                    done = false;
                    break;
                }
                c[i] = -bounds[i + 1];
            }
            if done {
                break;
            }
        }
    }
    Ok(out)
}

fn accept(lead: i64, rest: &[i64], monic: bool, u: &BigInt, v: &BigInt) -> Result<Option<IntPolynomial>> {
    let d = rest.len();
    if !monic {
        let g = rest.iter().fold(lead as u64, |g, &x| arith::gcd(g, x.unsigned_abs()));
        if g != 1 {
            return Ok(None);
        }
    }
    // ascending coefficients
    let mut coeffs: Vec<BigInt> = rest.iter().rev().map(|&x| BigInt::from(x)).collect();
    coeffs.push(BigInt::from(lead));
    match d {
        1 => {
            // M = max(|a|, |b|)
            if v * BigInt::from(lead.max(rest[0].abs())) > *u {
                return Ok(None);
            }
        }
        2 => {
            let disc = rest[0] as i128 * rest[0] as i128 - 4 * lead as i128 * rest[1] as i128;
            if disc >= 0 && is_square_i128(disc) {
                return Ok(None);
            }
            if !algnum::quadratic_mahler_le(&coeffs[2], &coeffs[1], &coeffs[0], u, v) {
                return Ok(None);
            }
        }
        _ => {
            let f = IntPolynomial::new(coeffs)?;
            if !algnum::is_irreducible(&f)? || !algnum::mahler_le(&f, u, v)? {
                return Ok(None);
            }
            return Ok(Some(f));
        }
    }
    Ok(Some(IntPolynomial::new(coeffs)?))
}

fn is_square_i128(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = libm::sqrt(n as f64) as i128;
    (r.saturating_sub(2)..=r + 2).any(|s| s >= 0 && s * s == n)
}

/// Distinct `(poly, root_index)` keys; used to check streams for duplicates.
pub fn has_duplicates(stream: &Stream) -> bool {
    let mut keys = stream.keys();
    let n = keys.len();
    keys.sort_by(|a, b| (a.0.coeffs(), a.1).cmp(&(b.0.coeffs(), b.1)));
    keys.dedup();
    keys.len() != n
}

/// Integer height bound for sweeps driven by a rational bound.
pub fn integer_part(h: &BigRational) -> BigInt {
    h.floor().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hq(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn count(spec: EnumerationSpec) -> u64 {
        enumerate(&spec).unwrap().count()
    }

    #[test]
    fn rational_streams() {
        assert_eq!(count(EnumerationSpec::field(Mode::IntegersInField, None, hq(3))), 6);
        assert_eq!(count(EnumerationSpec::field(Mode::NumbersInField, None, hq(2))), 6);
        assert_eq!(count(EnumerationSpec::degree(Mode::IntegersOfDegree, 1, hq(5))), 10);
        assert_eq!(count(EnumerationSpec::degree(Mode::NumbersOfDegree, 1, hq(2))), 6);
    }

    #[test]
    fn gaussian_integers() {
        let k = QuadField::new(-1).unwrap();
        assert_eq!(count(EnumerationSpec::field(Mode::IntegersInField, Some(k), hq(2))), 12);
        assert_eq!(count(EnumerationSpec::field(Mode::NumbersInField, Some(k), hq(1))), 4);
        // norm <= H^2 lattice count
        let brute = (-10i64..=10).flat_map(|x| (-10i64..=10).map(move |y| (x, y))).filter(|&(x, y)| (x, y) != (0, 0) && x * x + y * y <= 100).count();
        assert_eq!(count(EnumerationSpec::field(Mode::IntegersInField, Some(k), hq(10))), brute as u64);
    }

    #[test]
    fn real_quadratic_integers_match_lattice() {
        // Brute force over x + y sqrt(2) with the exact Mahler test.
        let k = QuadField::new(2).unwrap();
        let h = hq(3);
        let s = enumerate(&EnumerationSpec::field(Mode::IntegersInField, Some(k), h.clone())).unwrap();
        let mut brute = 0;
        for x in -30i64..=30 {
            for y in -30i64..=30 {
                if (x, y) == (0, 0) {
                    continue;
                }
                if y == 0 {
                    brute += u64::from(x.abs() <= 3);
                    continue;
                }
                let e = k.from_ints(x, y);
                let f = e.minpoly();
                if algnum::mahler_le(&f, &BigInt::from(9), &BigInt::one()).unwrap() {
                    brute += 1;
                }
            }
        }
        assert_eq!(s.count(), brute);
        assert!(!has_duplicates(&s));
    }

    #[test]
    fn degree_two() {
        let s = enumerate(&EnumerationSpec::degree(Mode::IntegersOfDegree, 2, hq(2))).unwrap();
        let Stream::Polynomials(v) = &s else { panic!() };
        let x2m2 = IntPolynomial::from_i64(&[-2, 0, 1]).unwrap();
        let x2m5 = IntPolynomial::from_i64(&[-5, 0, 1]).unwrap();
        assert!(v.contains(&x2m2));
        assert!(!v.contains(&x2m5));
        let s = enumerate(&EnumerationSpec::degree(Mode::NumbersOfDegree, 2, hq(2))).unwrap();
        let Stream::Polynomials(v) = &s else { panic!() };
        assert!(v.contains(&IntPolynomial::from_i64(&[-1, 0, 2]).unwrap()));
        assert!(!has_duplicates(&s));
    }

    #[test]
    fn symmetry_and_zero() {
        let k = QuadField::new(-3).unwrap();
        let s = quadratic_numbers(k, &hq(2), false).unwrap();
        for x in &s {
            assert!(s.contains(&x.neg()));
            assert!(s.contains(&x.inv().unwrap()));
        }
        let mut spec = EnumerationSpec::field(Mode::IntegersInField, None, hq(2));
        spec.include_zero = true;
        assert_eq!(count(spec), 5);
    }

    #[test]
    fn invalid_specs() {
        let mut spec = EnumerationSpec::field(Mode::IntegersInField, None, hq(2));
        spec.degree = Some(2);
        assert!(enumerate(&spec).is_err());
        assert!(enumerate(&EnumerationSpec::field(Mode::IntegersInField, None, BigRational::new(1.into(), 2.into()))).is_err());
    }
}
