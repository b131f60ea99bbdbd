//! Exact arithmetic in a quadratic field Q(sqrt(m)).

use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algnum::{AlgebraicNumber, ComplexBox};
use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::poly::IntPolynomial;
use crate::real::Real;

/// The field Q(sqrt(m)) for squarefree `m` not in {0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadField {
    m: i64,
}

/// `a + b sqrt(m)` with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    m: i64,
    pub a: BigRational,
    pub b: BigRational,
}

/// Label of a prime ideal: rational prime plus a residue tag.
///
/// Split primes carry the root of the ring generator's minimal polynomial
/// mod p; inert and ramified primes use tag 0.
pub type PrimeIdeal = (u64, u64);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl QuadField {
    pub fn new(m: i64) -> Result<Self> {
        if m == 0 || m == 1 || !arith::is_squarefree(m) {
            return Err(invalid("m must be squarefree and not 0 or 1"));
        }
        Ok(QuadField { m })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn is_real(&self) -> bool {
        self.m > 0
    }

    pub fn disc(&self) -> i64 {
        if self.m.rem_euclid(4) == 1 {
            self.m
        } else {
            4 * self.m
        }
    }

    /// Number of roots of unity.
    pub fn w(&self) -> u32 {
        match self.m {
            -1 => 4,
            -3 => 6,
            _ => 2,
        }
    }

    pub fn elem(&self, a: BigRational, b: BigRational) -> QuadElem {
        QuadElem { m: self.m, a, b }
    }

    pub fn from_ints(&self, a: i64, b: i64) -> QuadElem {
        self.elem(q(a), q(b))
    }

    pub fn rational(&self, r: BigRational) -> QuadElem {
        self.elem(r, BigRational::zero())
    }

    pub fn one(&self) -> QuadElem {
        self.from_ints(1, 0)
    }

    /// Ring generator: sqrt(m), or (1 + sqrt(m))/2 when m = 1 mod 4.
    pub fn omega(&self) -> QuadElem {
        if self.m.rem_euclid(4) == 1 {
            let h = BigRational::new(1.into(), 2.into());
            self.elem(h.clone(), h)
        } else {
            self.from_ints(0, 1)
        }
    }

    /// `x + y omega`.
    pub fn from_basis(&self, x: &BigInt, y: &BigInt) -> QuadElem {
        let w = self.omega();
        self.elem(BigRational::from_integer(x.clone()) + &w.a * y, &w.b * y)
    }

    /// Minimal polynomial of omega as (t^2 + c1 t + c0) coefficients (c0, c1).
    fn omega_poly(&self) -> (i64, i64) {
        if self.m.rem_euclid(4) == 1 {
            (-(self.m - 1) / 4, -1)
        } else {
            (-self.m, 0)
        }
    }

    /// Fundamental unit `> 1` of a real field, from the continued fraction of omega.
    pub fn fundamental_unit(&self) -> Option<QuadElem> {
        if !self.is_real() {
            return None;
        }
        let m = BigInt::from(self.m);
        let s = m.sqrt();
        let (p0, q0) = if self.m.rem_euclid(4) == 1 { (BigInt::one(), BigInt::from(2)) } else { (BigInt::zero(), BigInt::one()) };
        // omega = (P + sqrt(m)) / Q with Q | m - P^2.
        let partial = |p: &BigInt, qq: &BigInt| -> BigInt {
            if qq.is_positive() {
                (p + &s).div_floor(qq)
            } else {
                -((p + &s).div_floor(&-qq)) - 1
            }
        };
        let (mut p, mut qq) = (p0.clone(), q0.clone());
        let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
        let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
        // Convergents grow, so the first one yielding a unit is fundamental.
        loop {
            let a = partial(&p, &qq);
            let h_next = &a * &h + &h_prev;
            let k_next = &a * &k + &k_prev;
            h_prev = core::mem::replace(&mut h, h_next);
            k_prev = core::mem::replace(&mut k, k_next);
            if let Some(e) = self.candidate_unit(&h, &k, &p0, &q0) {
                return Some(e);
            }
            let p_next = &a * &qq - &p;
            qq = (&m - &p_next * &p_next) / &qq;
            p = p_next;
        }
    }

    fn candidate_unit(&self, h: &BigInt, k: &BigInt, p0: &BigInt, q0: &BigInt) -> Option<QuadElem> {
        // conj(omega) = (P0 - sqrt(m)) / Q0
        let a = BigRational::from_integer(h.clone()) - BigRational::new(k * p0, q0.clone());
        let b = BigRational::new(k.clone(), q0.clone());
        let e = self.elem(a, b);
        let n = e.norm();
        if k.is_zero() || !(n.is_one() || (-n).is_one()) || !e.is_integral() {
            return None;
        }
        Some(if e.a.is_negative() { e.neg() } else { e })
    }

    /// Recognizes an algebraic number of degree <= 2 lying in this field.
    pub fn from_algebraic(&self, x: &AlgebraicNumber) -> Result<QuadElem> {
        if let Some(r) = x.as_rational() {
            return Ok(self.rational(r));
        }
        if x.degree() != 2 {
            return Err(invalid("element not in field"));
        }
        let c = x.minpoly().coeffs();
        self.from_quadratic_root(&c[2], &c[1], &c[0], x.root_index())
            .ok_or_else(|| invalid("element not in field"))
    }

    /// Root `idx` of `a x^2 + b x + c` as an element, if it lies in this field.
    pub fn from_quadratic_root(&self, a: &BigInt, b: &BigInt, c: &BigInt, idx: usize) -> Option<QuadElem> {
        let disc = b * b - BigInt::from(4) * a * c;
        let m = BigInt::from(self.m);
        if !(&disc % &m).is_zero() {
            return None;
        }
        let t = &disc / &m;
        if t.is_negative() || !crate::algnum::is_square(&t) {
            return None;
        }
        let f = t.sqrt();
        let two_a: BigInt = a * 2;
        let x = BigRational::new(-b, two_a.clone());
        let y = BigRational::new(f, two_a);
        Some(self.elem(x, if idx == 0 { -y } else { y }))
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.m)
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.m)
    }
}

impl QuadElem {
    pub fn field(&self) -> QuadField {
        QuadField { m: self.m }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem { m: self.m, a: -&self.a, b: -&self.b }
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem { m: self.m, a: self.a.clone(), b: -&self.b }
    }

    pub fn mul(&self, o: &QuadElem) -> QuadElem {
        let m = q(self.m);
        QuadElem {
            m: self.m,
            a: &self.a * &o.a + &self.b * &o.b * m,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * q(self.m)
    }

    pub fn trace(&self) -> BigRational {
        &self.a * BigRational::from_integer(2.into())
    }

    pub fn inv(&self) -> Option<QuadElem> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QuadElem { m: self.m, a: c.a / &n, b: c.b / n })
    }

    pub fn pow(&self, k: i64) -> Option<QuadElem> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Some(acc)
    }

    pub fn is_integral(&self) -> bool {
        self.trace().is_integer() && self.norm().is_integer()
    }

    /// Primitive minimal polynomial over the integers.
    pub fn minpoly(&self) -> IntPolynomial {
        if self.is_rational() {
            return IntPolynomial::linear(self.a.numer(), self.a.denom()).expect("nonzero denominator");
        }
        let t = self.trace();
        let n = self.norm();
        let den = t.denom().lcm(n.denom());
        let d = BigRational::from_integer(den.clone());
        let c0 = (n * &d).to_integer();
        let c1 = (-(t * &d)).to_integer();
        IntPolynomial::new(alloc::vec![c0, c1, den]).expect("nonzero")
    }

    /// Index of this element among the roots of its minimal polynomial.
    pub fn root_index(&self) -> usize {
        usize::from(self.b.is_positive())
    }

    pub fn to_algebraic(&self) -> AlgebraicNumber {
        AlgebraicNumber::new_unchecked(self.minpoly(), if self.is_rational() { 0 } else { self.root_index() })
    }

    /// Complex enclosure at `prec` bits.
    pub fn to_box(&self, prec: u32) -> ComplexBox {
        let a = Real::from_rational(&self.a, prec);
        let b = Real::from_rational(&self.b, prec);
        let s = Real::from_int(self.m.abs(), prec).sqrt();
        if self.m > 0 {
            ComplexBox::real(a.add(&b.mul(&s)))
        } else {
            ComplexBox { re: a, im: b.mul(&s) }
        }
    }

    /// Certified `log |self|` in the first embedding.
    pub fn log_abs(&self, prec: u32) -> Option<Real> {
        let bx = self.to_box(prec + 16);
        bx.norm_sq().ln().map(|l| l.mul(&Real::from_ratio(&1.into(), &2.into(), prec + 16)))
    }

    /// Whether this is a root of unity.
    pub fn is_torsion(&self) -> bool {
        !self.is_zero() && self.pow(self.field().w() as i64).is_some_and(|p| p.is_one())
    }

    /// Smallest `e > 0` with `self^e` rational, if any.
    pub fn rational_power_order(&self) -> Option<u32> {
        if self.is_rational() {
            return Some(1);
        }
        let r = self.mul(&self.conj().inv()?);
        let w = self.field().w();
        let mut acc = r.clone();
        for e in 1..=w {
            if acc.is_one() {
                return Some(e);
            }
            acc = acc.mul(&r);
        }
        None
    }

    /// `(gamma, delta)` with `self = gamma / delta`, gamma integral in the
    /// basis (1, omega) as (x, y), delta a positive integer.
    pub fn integral_parts(&self) -> ((BigInt, BigInt), BigInt) {
        let delta = self.a.denom().lcm(self.b.denom());
        let d = BigRational::from_integer(delta.clone());
        let a = (&self.a * &d).to_integer();
        let b = (&self.b * &d).to_integer();
        let xy = if self.m.rem_euclid(4) == 1 { (&a - &b, &b * 2) } else { (a, b) };
        (xy, delta)
    }

    /// Valuations at every prime ideal where they are nonzero.
    pub fn valuations(&self) -> Result<BTreeMap<PrimeIdeal, i64>> {
        if self.is_zero() {
            return Err(invalid("zero has no valuations"));
        }
        let field = self.field();
        let ((x, y), delta) = self.integral_parts();
        let n = field.from_basis(&x, &y).norm().to_integer().abs();
        let n64 = n.to_u64().ok_or_else(|| Error::Overflow("norm exceeds 64 bits".into()))?;
        let d64 = delta.to_u64().ok_or_else(|| Error::Overflow("denominator exceeds 64 bits".into()))?;
        let mut out: BTreeMap<PrimeIdeal, i64> = BTreeMap::new();
        let disc = field.disc();
        let add = |k: PrimeIdeal, v: i64, out: &mut BTreeMap<PrimeIdeal, i64>| {
            if v != 0 {
                let e = out.entry(k).or_insert(0);
                *e += v;
                if *e == 0 {
                    out.remove(&k);
                }
            }
        };
        for (p, e) in arith::factor(n64) {
            let e = e as i64;
            match arith::kronecker(disc, p) {
                0 => add((p, 0), e, &mut out),
                -1 => add((p, 0), e / 2, &mut out),
                _ => {
                    let (r1, r2) = field.split_roots(p);
                    let v1 = field.split_valuation(&x, &y, p, r1, e as u32) as i64;
                    add((p, r1), v1, &mut out);
                    add((p, r2), e - v1, &mut out);
                }
            }
        }
        for (p, e) in arith::factor(d64) {
            let e = e as i64;
            match arith::kronecker(disc, p) {
                0 => add((p, 0), -2 * e, &mut out),
                -1 => add((p, 0), -e, &mut out),
                _ => {
                    let (r1, r2) = field.split_roots(p);
                    add((p, r1), -e, &mut out);
                    add((p, r2), -e, &mut out);
                }
            }
        }
        Ok(out)
    }
}

impl QuadField {
    /// The two roots mod p of omega's minimal polynomial, ascending (p split).
    fn split_roots(&self, p: u64) -> (u64, u64) {
        let (c0, c1) = self.omega_poly();
        let pi = p as i128;
        let mut roots = (0..p).filter(|&t| {
            let t = t as i128;
            (t * t + c1 as i128 * t + c0 as i128).rem_euclid(pi) == 0
        });
        let r1 = roots.next().expect("split prime has a root");
        let r2 = roots.next().unwrap_or(r1);
        (r1, r2)
    }

    /// Valuation of x + y omega at the prime (p, omega - r), at most `cap`.
    fn split_valuation(&self, x: &BigInt, y: &BigInt, p: u64, r: u64, cap: u32) -> u32 {
        if cap == 0 {
            return 0;
        }
        let (c0, c1) = self.omega_poly();
        let pb = BigInt::from(p);
        let modulus = pb.pow(cap);
        // Hensel lift of the simple root r to modulus p^cap.
        let g = |t: &BigInt| -> BigInt { t * t + BigInt::from(c1) * t + BigInt::from(c0) };
        let dg = |t: &BigInt| -> BigInt { t * 2 + BigInt::from(c1) };
        let mut t = BigInt::from(r);
        let mut mk = pb.clone();
        while mk < modulus {
            mk = (&mk * &mk).min(modulus.clone());
            let inv = mod_inverse(&dg(&t).mod_floor(&mk), &mk);
            t = (&t - g(&t) * inv).mod_floor(&mk);
        }
        let mut v = (x + y * &t).mod_floor(&modulus);
        if v.is_zero() {
            return cap;
        }
        let mut e = 0;
        while (&v % &pb).is_zero() {
            v /= &pb;
            e += 1;
        }
        e
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Parses `Q`, `Q(sqrt(m))`, `Q(i)` or a bare integer `m`.
pub fn parse_field(s: &str) -> Result<Option<QuadField>> {
    let t: alloc::string::String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" || t == "QQ" {
        return Ok(None);
    }
    if t == "Q(i)" {
        return QuadField::new(-1).map(Some);
    }
    let inner = t
        .strip_prefix("Q(sqrt(")
        .and_then(|r| r.strip_suffix("))"))
        .unwrap_or(&t);
    let m: i64 = inner.parse().map_err(|_| invalid("unrecognized field"))?;
    QuadField::new(m).map(Some)
}
