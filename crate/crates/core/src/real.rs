//! Certified real intervals with dyadic endpoints.
//!
//! A [`Real`] is a closed interval `[lo / 2^prec, hi / 2^prec]` with
//! arbitrary-precision integer endpoints. Every operation rounds outward, so
//! the true value of any expression built from exact inputs stays inside the
//! computed interval.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Certified enclosure of a real number.
#[derive(Clone, PartialEq, Eq)]
pub struct Real {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

/// Alias used in the public height/constant API.
pub type CertifiedValue = Real;

fn shr_floor(x: &BigInt, n: u32) -> BigInt {
    // num-bigint's `>>` on negatives rounds toward negative infinity.
    x >> n as usize
}

fn shr_ceil(x: &BigInt, n: u32) -> BigInt {
    -((-x) >> n as usize)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Real {
    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        let v: BigInt = n.into() << prec as usize;
        Real { lo: v.clone(), hi: v, prec }
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let scaled = num << prec as usize;
        Real { lo: scaled.div_floor(&den), hi: div_ceil(&scaled, &den), prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec)
    }

    /// Interval from raw scaled endpoints `lo/2^prec, hi/2^prec`.
    pub fn from_scaled(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        assert!(lo <= hi, "inverted interval");
        Real { lo, hi, prec }
    }

    /// Interval `[a, b]` hull of two reals.
    pub fn hull(&self, other: &Real) -> Real {
        let p = self.prec.max(other.prec);
        let (a, b) = (self.with_prec(p), other.with_prec(p));
        Real { lo: a.lo.min(b.lo), hi: a.hi.max(b.hi), prec: p }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn lo_scaled(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_scaled(&self) -> &BigInt {
        &self.hi
    }

    /// Re-express at another precision, rounding outward when coarsening.
    pub fn with_prec(&self, prec: u32) -> Real {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = (prec - self.prec) as usize;
                Real { lo: &self.lo << s, hi: &self.hi << s, prec }
            }
            Ordering::Less => {
                let s = self.prec - prec;
                Real { lo: shr_floor(&self.lo, s), hi: shr_ceil(&self.hi, s), prec }
            }
        }
    }

    fn align(&self, other: &Real) -> (Real, Real) {
        let p = self.prec.max(other.prec);
        (self.with_prec(p), other.with_prec(p))
    }

    pub fn add(&self, other: &Real) -> Real {
        let (a, b) = self.align(other);
        Real { lo: a.lo + b.lo, hi: a.hi + b.hi, prec: a.prec }
    }

    pub fn sub(&self, other: &Real) -> Real {
        let (a, b) = self.align(other);
        Real { lo: a.lo - b.hi, hi: a.hi - b.lo, prec: a.prec }
    }

    pub fn neg(&self) -> Real {
        Real { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn mul(&self, other: &Real) -> Real {
        let (a, b) = self.align(other);
        let p = a.prec;
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        Real { lo: shr_floor(min, p), hi: shr_ceil(max, p), prec: p }
    }

    pub fn mul_int(&self, k: &BigInt) -> Real {
        let (lo, hi) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Real { lo: hi, hi: lo, prec: self.prec }
        } else {
            Real { lo, hi, prec: self.prec }
        }
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, other: &Real) -> Option<Real> {
        let (a, b) = self.align(other);
        if b.contains_zero() {
            return None;
        }
        let p = a.prec;
        let mut lows = alloc::vec::Vec::with_capacity(4);
        let mut highs = alloc::vec::Vec::with_capacity(4);
        for x in [&a.lo, &a.hi] {
            for y in [&b.lo, &b.hi] {
                let num = x << p as usize;
                lows.push(num.div_floor(y));
                highs.push(div_ceil(&num, y));
            }
        }
        Some(Real {
            lo: lows.into_iter().min().unwrap(),
            hi: highs.into_iter().max().unwrap(),
            prec: p,
        })
    }

    /// Division by a positive machine integer.
    pub fn div_u64(&self, d: u64) -> Real {
        let d = BigInt::from(d);
        Real { lo: self.lo.div_floor(&d), hi: div_ceil(&self.hi, &d), prec: self.prec }
    }

    pub fn recip(&self) -> Option<Real> {
        Real::from_int(1, self.prec).div(self)
    }

    pub fn powi(&self, mut k: u32) -> Real {
        let mut base = self.clone();
        let mut acc = Real::from_int(1, self.prec);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn square(&self) -> Real {
        let m = self.abs();
        m.mul(&m)
    }

    pub fn abs(&self) -> Real {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = (-&self.lo).max(self.hi.clone());
            Real { lo: BigInt::zero(), hi, prec: self.prec }
        }
    }

    /// `max(self, c)` for an exact integer `c`.
    pub fn max_int(&self, c: i64) -> Real {
        let v = BigInt::from(c) << self.prec as usize;
        Real { lo: self.lo.clone().max(v.clone()), hi: self.hi.clone().max(v), prec: self.prec }
    }

    pub fn min(&self, other: &Real) -> Real {
        let (a, b) = self.align(other);
        Real { lo: a.lo.min(b.lo), hi: a.hi.min(b.hi), prec: a.prec }
    }

    pub fn max(&self, other: &Real) -> Real {
        let (a, b) = self.align(other);
        Real { lo: a.lo.max(b.lo), hi: a.hi.max(b.hi), prec: a.prec }
    }

    /// Square root of a nonnegative interval (negative parts clamp to 0).
    pub fn sqrt(&self) -> Real {
        let p = self.prec as usize;
        let lo = if self.lo.is_positive() { (&self.lo << p).sqrt() } else { BigInt::zero() };
        let hi_arg = if self.hi.is_positive() { &self.hi << p } else { BigInt::zero() };
        let mut hi = hi_arg.sqrt();
        if &hi * &hi < hi_arg {
            hi += 1;
        }
        Real { lo, hi, prec: self.prec }
    }

    /// Positive `k`-th root of a nonnegative interval.
    pub fn nth_root(&self, k: u32) -> Real {
        assert!(k >= 1);
        if k == 1 {
            return self.clone();
        }
        let shift = self.prec as usize * (k as usize - 1);
        let lo = if self.lo.is_positive() { (&self.lo << shift).nth_root(k) } else { BigInt::zero() };
        let hi_arg = if self.hi.is_positive() { &self.hi << shift } else { BigInt::zero() };
        let mut hi = hi_arg.nth_root(k);
        if hi.pow(k) < hi_arg {
            hi += 1;
        }
        Real { lo, hi, prec: self.prec }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_int(&self, n: &BigInt) -> bool {
        let v = n << self.prec as usize;
        self.lo <= v && v <= self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let scaled = q.numer() << self.prec as usize;
        // lo <= q*2^p <= hi  <=>  lo*den <= num*2^p <= hi*den
        &self.lo * q.denom() <= scaled && scaled <= &self.hi * q.denom()
    }

    /// `Some(ordering)` when the intervals are separated, `None` if they overlap.
    pub fn certified_cmp(&self, other: &Real) -> Option<Ordering> {
        let (a, b) = self.align(other);
        if a.hi < b.lo {
            Some(Ordering::Less)
        } else if a.lo > b.hi {
            Some(Ordering::Greater)
        } else if a.lo == a.hi && b.lo == b.hi && a.lo == b.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn intersects(&self, other: &Real) -> bool {
        let (a, b) = self.align(other);
        a.lo <= b.hi && b.lo <= a.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// `width <= 2^-bits`.
    pub fn width_at_most(&self, bits: u32) -> bool {
        let w = &self.hi - &self.lo;
        if bits >= self.prec {
            w.is_zero() || (bits == self.prec && w <= BigInt::one())
        } else {
            w <= BigInt::one() << (self.prec - bits) as usize
        }
    }

    pub fn lower_f64(&self) -> f64 {
        dyadic_to_f64(&self.lo, self.prec, RoundDir::Down)
    }

    pub fn upper_f64(&self) -> f64 {
        dyadic_to_f64(&self.hi, self.prec, RoundDir::Up)
    }

    pub fn mid_f64(&self) -> f64 {
        dyadic_to_f64(&(&self.lo + &self.hi), self.prec + 1, RoundDir::Nearest)
    }

    /// Radius bounding `|x - mid_f64()|` for every `x` in the interval.
    pub fn rad_f64(&self) -> f64 {
        let m = self.mid_f64();
        let a = m - self.lower_f64();
        let b = self.upper_f64() - m;
        let r = if a > b { a } else { b };
        if r == 0.0 { 0.0 } else { r.next_up() }
    }

    /// Floor of the lower endpoint.
    pub fn floor_lo(&self) -> BigInt {
        shr_floor(&self.lo, self.prec)
    }

    /// Ceiling of the upper endpoint.
    pub fn ceil_hi(&self) -> BigInt {
        shr_ceil(&self.hi, self.prec)
    }

    /// Natural logarithm of a positive interval.
    pub fn ln(&self) -> Option<Real> {
        if !self.is_positive() {
            return None;
        }
        // ln(hi) - ln(lo) <= (hi - lo) / lo
        let p = self.prec;
        let base = ln_point(&self.lo, p);
        let spread = div_ceil(&((&self.hi - &self.lo) << p as usize), &self.lo);
        Some(Real { lo: base.lo, hi: base.hi + spread, prec: p })
    }

    pub fn exp(&self) -> Real {
        let p = self.prec;
        let lo = exp_point(&self.lo, p).lo;
        let hi = exp_point(&self.hi, p).hi;
        Real { lo, hi, prec: p }
    }

    /// `self^e` for positive `self` and a real exponent.
    pub fn pow_real(&self, e: &Real) -> Option<Real> {
        Some(self.ln()?.mul(e).exp())
    }

    pub fn pi(prec: u32) -> Real {
        let w = prec + 32;
        let a = atan_inv(5, w).mul_int(&BigInt::from(16));
        let b = atan_inv(239, w).mul_int(&BigInt::from(4));
        a.sub(&b).with_prec(prec)
    }

    pub fn ln2(prec: u32) -> Real {
        // ln 2 = 2 atanh(1/3)
        let w = prec + 32;
        let z = Real::from_ratio(&BigInt::one(), &BigInt::from(3), w);
        atanh_series(&z, w).mul_int(&BigInt::from(2)).with_prec(prec)
    }
}

#[derive(Clone, Copy)]
enum RoundDir {
    Down,
    Up,
    Nearest,
}

fn dyadic_to_f64(x: &BigInt, prec: u32, dir: RoundDir) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits() as i64;
    // Keep 60 significant bits, then scale.
    let shift = bits - 60;
    let (m, exp) = if shift > 0 {
        let m = match dir {
            RoundDir::Down => shr_floor(x, shift as u32),
            RoundDir::Up => shr_ceil(x, shift as u32),
            RoundDir::Nearest => shr_floor(&(x + (BigInt::one() << (shift as usize - 1))), shift as u32),
        };
        (m, shift - prec as i64)
    } else {
        (x.clone(), -(prec as i64))
    };
    let mi = m.to_i64().unwrap();
    let approx = mi as f64 * libm::pow(2.0, exp as f64);
    match dir {
        RoundDir::Nearest => approx,
        // i64 -> f64 and the scaling may round either way; nudge outward.
        RoundDir::Down => approx.next_down(),
        RoundDir::Up => approx.next_up(),
    }
}

fn point(x: &BigInt, prec: u32) -> Real {
    Real { lo: x.clone(), hi: x.clone(), prec }
}

/// `atanh(z) = sum z^(2k+1)/(2k+1)` for `0 <= z <= 1/2`, with tail bound.
fn atanh_series(z: &Real, w: u32) -> Real {
    let z2 = z.mul(z);
    let mut term = z.clone();
    let mut sum = Real::from_int(0, w);
    let mut k: u64 = 0;
    let eps = BigInt::one();
    loop {
        let t = term.div_u64(2 * k + 1);
        sum = sum.add(&t);
        term = term.mul(&z2);
        k += 1;
        if term.hi <= eps {
            break;
        }
    }
    // Remaining terms are bounded by term/(1 - z^2) <= 4/3 * term.
    let tail_hi = (&term.hi * 4) / 3 + 1;
    sum.add(&Real { lo: BigInt::zero(), hi: tail_hi, prec: w })
}

fn atan_inv(n: u64, w: u32) -> Real {
    // atan(1/n) = sum (-1)^k / ((2k+1) n^(2k+1)); alternating, tail <= next term.
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut sum = Real::from_int(0, w);
    let mut denom_pow = n.clone();
    let mut k: u64 = 0;
    loop {
        let d = &denom_pow * BigInt::from(2 * k + 1);
        let t = Real::from_ratio(&BigInt::one(), &d, w);
        if t.hi <= BigInt::one() {
            let slack = Real { lo: -&t.hi, hi: t.hi.clone(), prec: w };
            return sum.add(&slack);
        }
        sum = if k % 2 == 0 { sum.add(&t) } else { sum.sub(&t) };
        denom_pow *= &n2;
        k += 1;
    }
}

/// Interval for `ln(x / 2^prec)` for a positive scaled integer `x`.
fn ln_point(x: &BigInt, prec: u32) -> Real {
    let w = prec + 40;
    // x/2^prec = m * 2^e with m in [1, 2).
    let bits = x.bits() as i64;
    let e = bits - 1 - prec as i64;
    let m_scaled = if bits - 1 >= w as i64 {
        // m = x / 2^(bits-1); keep w fractional bits.
        let s = (bits - 1 - w as i64) as u32;
        Real { lo: shr_floor(x, s), hi: shr_ceil(x, s), prec: w }
    } else {
        let s = (w as i64 - (bits - 1)) as usize;
        point(&(x << s), w)
    };
    // ln m = 2 atanh((m-1)/(m+1)), (m-1)/(m+1) in [0, 1/3).
    let one = Real::from_int(1, w);
    let z = m_scaled.sub(&one).div(&m_scaled.add(&one)).unwrap();
    let z = Real { lo: z.lo.max(BigInt::zero()), hi: z.hi, prec: w };
    let ln_m = atanh_series(&z, w).mul_int(&BigInt::from(2));
    let ln2 = Real::ln2(w);
    ln_m.add(&ln2.mul_int(&BigInt::from(e))).with_prec(prec)
}

/// Interval for `exp(x / 2^prec)`.
fn exp_point(x: &BigInt, prec: u32) -> Real {
    // Reduce: r = v / 2^s with |r| <= 1/4, then square s times.
    let v_bits = x.bits() as i64 - prec as i64;
    let s: u32 = if v_bits > -2 { (v_bits + 2) as u32 } else { 0 };
    let w = prec + 48 + 2 * s + v_bits.max(0) as u32 * 2;
    let r = point(&(x << (w - prec) as usize), w).div(&Real::from_int(BigInt::one() << s as usize, w)).unwrap();
    let mut sum = Real::from_int(1, w);
    let mut term = Real::from_int(1, w);
    let mut k: u64 = 1;
    loop {
        term = term.mul(&r).div(&Real::from_int(k, w)).unwrap();
        sum = sum.add(&term);
        k += 1;
        if term.abs().hi <= BigInt::one() {
            break;
        }
    }
    // |tail| <= 2|term| since |r| <= 1/4.
    let t = term.abs().hi * 2 + 1;
    sum = sum.add(&Real { lo: -&t, hi: t, prec: w });
    if sum.lo.sign() == Sign::Minus {
        sum.lo = BigInt::zero();
    }
    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    sum.with_prec(prec)
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lower_f64(), self.upper_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.mid_f64(), self.rad_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(r: &Real, v: f64, tol: f64) -> bool {
        r.lower_f64() <= v + tol && r.upper_f64() >= v - tol && r.upper_f64() - r.lower_f64() < tol
    }

    #[test]
    fn pi_and_ln2_enclose_known_values() {
        let pi = Real::pi(200);
        assert!(close(&pi, core::f64::consts::PI, 1e-15));
        assert!(pi.width_at_most(190));
        let l2 = Real::ln2(128);
        assert!(close(&l2, core::f64::consts::LN_2, 1e-15));
    }

    #[test]
    fn exp_ln_inverse() {
        let x = Real::from_ratio(&BigInt::from(7), &BigInt::from(3), 160);
        let y = x.ln().unwrap().exp();
        assert!(y.intersects(&x));
        assert!(y.width_at_most(140));
        let e = Real::from_int(1, 100).exp();
        assert!(close(&e, core::f64::consts::E, 1e-15));
        let small = Real::from_int(-30, 100).exp();
        assert!(close(&small, libm::exp(-30.0), 1e-25));
    }

    #[test]
    fn roots_are_outward() {
        let two = Real::from_int(2, 64);
        let s = two.sqrt();
        assert!(s.square().contains_int(&BigInt::from(2)));
        let c = Real::from_int(10, 64).nth_root(3);
        assert!(c.powi(3).contains_int(&BigInt::from(10)));
        assert!(c.width_at_most(60));
    }

    #[test]
    fn division_and_comparison() {
        let a = Real::from_int(1, 64);
        let b = Real::from_int(3, 64);
        let q = a.div(&b).unwrap();
        assert!(q.mul(&b).contains_int(&BigInt::one()));
        assert_eq!(q.certified_cmp(&a), Some(Ordering::Less));
        assert!(Real::from_int(0, 10).recip().is_none());
    }
}
