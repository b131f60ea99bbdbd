//! Field invariants for Q and quadratic fields, the constants C1..C8, and unit counts.

use alloc::string::ToString;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::quadratic::QuadField;
use crate::real::Real;
use crate::zeta;

#[derive(Clone, Debug)]
pub struct FieldInvariants {
    pub d: u32,
    pub r1: u32,
    pub r2: u32,
    pub r: u32,
    pub disc: i64,
    pub h: u64,
    pub reg: Real,
    pub w: u32,
    pub zeta2: Real,
    /// `Some(m)` for Q(sqrt(m)), `None` for Q or externally supplied fields.
    pub quadratic_m: Option<i64>,
}

impl FieldInvariants {
    /// Invariants supplied from outside (for fields the library cannot derive).
    #[allow(clippy::too_many_arguments)]
    pub fn custom(d: u32, r1: u32, r2: u32, disc: i64, h: u64, reg: Real, w: u32, zeta2: Real) -> Result<Self> {
        let inv = FieldInvariants { d, r1, r2, r: (r1 + r2).saturating_sub(1), disc, h, reg, w, zeta2, quadratic_m: None };
        inv.validate()?;
        Ok(inv)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.d != self.r1 + 2 * self.r2 || self.r1 + self.r2 == 0 {
            return Err(invalid("degree must equal r1 + 2 r2"));
        }
        if self.w < 2 || self.w % 2 == 1 || (self.d == 1 && self.w != 2) {
            return Err(invalid("w must be even, at least 2, and 2 over Q"));
        }
        if self.disc == 0 || self.h == 0 {
            return Err(invalid("discriminant and class number must be nonzero"));
        }
        if !self.reg.is_positive() || (self.r == 0 && !self.reg.contains_int(&BigInt::one())) {
            return Err(invalid("regulator must be positive, and 1 for unit rank 0"));
        }
        if !self.zeta2.is_positive() {
            return Err(invalid("zeta_K(2) must be positive"));
        }
        Ok(())
    }

    pub fn label(&self) -> alloc::string::String {
        match (self.d, self.quadratic_m) {
            (1, _) => "Q".to_string(),
            (_, Some(m)) => alloc::format!("Q(sqrt({m}))"),
            _ => alloc::format!("K(d={},D={})", self.d, self.disc),
        }
    }
}

/// Error-term exponents attached to the degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErrorExponents {
    pub sigma: u32,
    pub rho: u32,
    pub vartheta: u32,
}

impl ErrorExponents {
    pub fn for_degree(d: u32) -> Self {
        ErrorExponents {
            sigma: u32::from(d == 1),
            rho: u32::from(d == 2),
            vartheta: u32::from(d == 1 || d == 2),
        }
    }
}

pub fn invariants_rationals(prec: u32) -> FieldInvariants {
    FieldInvariants {
        d: 1,
        r1: 1,
        r2: 0,
        r: 0,
        disc: 1,
        h: 1,
        reg: Real::from_int(1, prec),
        w: 2,
        zeta2: zeta::zeta(2, prec),
        quadratic_m: None,
    }
}

pub fn invariants_quadratic(m: i64, prec: u32) -> Result<FieldInvariants> {
    let k = QuadField::new(m)?;
    let disc = k.disc();
    let zeta2 = zeta::zeta(2, prec + 8).mul(&zeta::dirichlet_l(2, disc, prec + 8)).with_prec(prec);
    let (r1, r2, reg, h) = if k.is_real() {
        let eps = k.fundamental_unit().expect("real field");
        let reg = eps.to_box(prec + 16).re.ln().expect("unit > 1").with_prec(prec);
        let h = class_number_real(disc, &reg)?;
        if disc.abs() <= 200 {
            let forms = narrow_class_number(disc);
            let narrow = if eps.norm().is_one() { 2 * h } else { h };
            if forms != narrow {
                return Err(Error::Overflow("class number cross-check failed".to_string()));
            }
        }
        (2, 0, reg, h)
    } else {
        (0, 1, Real::from_int(1, prec), class_number_imaginary(disc))
    };
    Ok(FieldInvariants { d: 2, r1, r2, r: r1 + r2 - 1, disc, h, reg, w: k.w(), zeta2, quadratic_m: Some(m) })
}

/// Class number of an imaginary quadratic field by counting reduced forms.
pub fn class_number_imaginary(disc: i64) -> u64 {
    let n = -disc;
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b * b + n) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + n) / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if arith::gcd_i64(arith::gcd_i64(a, b), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

/// Narrow class number of a real quadratic field: cycles of reduced forms.
pub fn narrow_class_number(disc: i64) -> u64 {
    let s = arith::isqrt(disc as u64) as i64;
    let mut forms = alloc::vec::Vec::new();
    for b in 1..=s {
        if (disc - b * b) % 4 != 0 {
            continue;
        }
        let ac = (b * b - disc) / 4;
        for a in 1..=(s + b) / 2 {
            // sqrt(D) - b < 2|a| < sqrt(D) + b, with sqrt(D) irrational
            if 2 * a <= s - b || 2 * a > s + b || ac % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let c = ac / sa;
                if arith::gcd_i64(arith::gcd_i64(sa, b), c) == 1 {
                    forms.push((sa, b, c));
                }
            }
        }
    }
    forms.sort_unstable();
    let mut seen = alloc::vec![false; forms.len()];
    let mut cycles = 0;
    for i in 0..forms.len() {
        if seen[i] {
            continue;
        }
        cycles += 1;
        let mut f = forms[i];
        loop {
            let idx = forms.binary_search(&f).expect("reduced forms are closed under rho");
            if seen[idx] {
                break;
            }
            seen[idx] = true;
            let (_, b, c) = f;
            let m = 2 * c.abs();
            // b' = -b mod 2|c| in [s - 2|c| + 1, s]
            let lo = s - m + 1;
            let b2 = lo + (-b - lo).rem_euclid(m);
            let a2 = (b2 * b2 - disc) / (4 * c);
            f = (c, b2, a2);
        }
    }
    cycles
}

/// Class number of a real quadratic field from `h R = sqrt(D) L(1, chi) / 2`.
pub fn class_number_real(disc: i64, reg: &Real) -> Result<u64> {
    let mut prec = 64;
    loop {
        let l = zeta::dirichlet_l1(disc, prec);
        let p = l.precision();
        let v = Real::from_int(disc, p).sqrt().mul(&l).div(&reg.with_prec(p).mul_int(&BigInt::from(2))).ok_or(Error::ZeroHeight)?;
        if let Some(h) = unique_int(&v) {
            return Ok(h);
        }
        if prec > 1024 {
            return Err(Error::Undecided { max_precision: prec });
        }
        prec *= 2;
    }
}

/// The unique integer inside an enclosure, if exactly one exists.
fn unique_int(v: &Real) -> Option<u64> {
    let lo = v.floor_lo();
    let lo = if v.contains_int(&lo) { lo } else { lo + 1 };
    let hi = v.ceil_hi();
    let hi = if v.contains_int(&hi) { hi } else { hi - 1 };
    if lo == hi {
        num_traits::ToPrimitive::to_u64(&lo)
    } else {
        None
    }
}

/// Class number of an imaginary quadratic field from `h = w sqrt|D| L(1, chi) / (2 pi)`.
pub fn class_number_imaginary_analytic(disc: i64, w: u32, prec: u32) -> Real {
    let l = zeta::dirichlet_l1(disc, prec);
    let p = l.precision();
    Real::from_int(-disc, p)
        .sqrt()
        .mul(&l)
        .mul_int(&BigInt::from(w))
        .div(&Real::pi(p).mul_int(&BigInt::from(2)))
        .unwrap()
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn two_pi(prec: u32) -> Real {
    Real::pi(prec).mul_int(&BigInt::from(2))
}

pub fn c1(inv: &FieldInvariants, prec: u32) -> Real {
    let p = prec + 16;
    let num = Real::from_int(BigInt::from(2).pow(inv.r1), p)
        .mul(&two_pi(p).powi(inv.r2))
        .mul(&Real::from_int(BigInt::from(inv.d).pow(inv.r), p));
    let den = Real::from_int(inv.disc.abs(), p).sqrt().mul_int(&factorial(inv.r));
    num.div(&den).unwrap().with_prec(prec)
}

pub fn c2(inv: &FieldInvariants, prec: u32) -> Real {
    let p = prec + 16;
    let num = Real::from_int(BigInt::from(2).pow(2 * inv.r1 + inv.r), p)
        .mul(&two_pi(p).powi(2 * inv.r2))
        .mul_int(&BigInt::from(inv.h))
        .mul(&inv.reg.with_prec(p));
    let den = inv.zeta2.with_prec(p).mul_int(&(BigInt::from(inv.disc.abs()) * inv.w));
    num.div(&den).unwrap().with_prec(prec)
}

pub fn c3(n: u32, inv: &FieldInvariants, prec: u32) -> Real {
    let p = prec + 16;
    c1(inv, p).powi(n - 1).mul_int(&BigInt::from(n * (n + 1) / 2 * inv.w)).with_prec(prec)
}

pub fn c4(n: u32, inv: &FieldInvariants, prec: u32) -> Real {
    let p = prec + 16;
    c2(inv, p).powi(n - 1).mul_int(&BigInt::from(n * n * inv.w)).with_prec(prec)
}

fn pow_q(base: u64, e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(base).pow(e))
}

pub fn c5(d: u32) -> BigRational {
    let mut c = BigRational::from_integer(BigInt::from(d) * BigInt::from(2).pow(d));
    for j in 1..=(d - 1) / 2 {
        c = c * BigRational::from_integer(d.into()) * pow_q(2 * j as u64, d - 2 * j - 1) / pow_q(2 * j as u64 + 1, d - 2 * j);
    }
    c
}

/// `C6(d)` split as a rational factor over `zeta(d + 1)`.
pub fn c6_rational_part(d: u32) -> BigRational {
    let mut c = BigRational::from_integer(BigInt::from(d) * BigInt::from(2).pow(d));
    for j in 1..=(d - 1) / 2 {
        c = c * BigRational::from_integer((d + 1).into()) * pow_q(2 * j as u64, d - 2 * j)
            / pow_q(2 * j as u64 + 1, d - 2 * j + 1);
    }
    c
}

pub fn c6(d: u32, prec: u32) -> Real {
    let p = prec + 16;
    Real::from_rational(&c6_rational_part(d), p).div(&zeta::zeta(d + 1, p)).unwrap().with_prec(prec)
}

pub fn c7(n: u32, d: u32) -> BigRational {
    let lead = BigInt::from(n as u64 * w0(d) + (n * (n - 1)) as u64);
    let mut c = BigRational::from_integer(lead);
    for _ in 1..n {
        c *= c5(d);
    }
    c
}

pub fn c8(n: u32, d: u32, prec: u32) -> Real {
    let p = prec + 16;
    let lead = BigInt::from(n as u64 * w0(d) + (2 * n * (n - 1)) as u64);
    c6(d, p).powi(n - 1).mul_int(&lead).with_prec(prec)
}

/// Number of roots of unity of degree exactly `d`.
pub fn w0(d: u32) -> u64 {
    let d = d as u64;
    if d == 1 {
        return 2;
    }
    d * (1..=2 * d * d).filter(|&k| arith::totient(k) == d).count() as u64
}

/// Units of Q(sqrt(m)) with Weil height at most `h`.
pub fn unit_count_quadratic(m: i64, h: &BigRational) -> Result<u64> {
    let k = QuadField::new(m)?;
    if h < &BigRational::one() {
        return Ok(0);
    }
    let w = k.w() as u64;
    let Some(eps) = k.fundamental_unit() else {
        return Ok(w);
    };
    // H(eps^j) = eps^(j/2) <= h  <=>  eps^j <= h^2
    let bound = h * h;
    let mut power = eps.clone();
    let mut count = 0u64;
    loop {
        let rhs = &bound - &power.a;
        let fits = !rhs.is_negative() && &power.b * &power.b * BigRational::from_integer(m.into()) <= &rhs * &rhs;
        if !fits {
            break;
        }
        count += 1;
        power = power.mul(&eps);
    }
    Ok(w * (1 + 2 * count))
}
