//! Algebraic numbers given by a minimal polynomial and a distinguished root.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::poly::{self, IntPolynomial};
use crate::real::Real;
use crate::roots::{self, RootDisk};

/// Precision ceiling for every certified decision in this module.
pub const MAX_PRECISION: u32 = 1 << 14;
const BASE_PRECISION: u32 = 64;

/// Rectangle enclosure of a complex number.
#[derive(Clone, Debug)]
pub struct ComplexBox {
    pub re: Real,
    pub im: Real,
}

impl ComplexBox {
    pub fn from_disk(d: &RootDisk) -> Self {
        ComplexBox { re: d.re_interval(), im: d.im_interval() }
    }

    pub fn real(x: Real) -> Self {
        let p = x.precision();
        ComplexBox { re: x, im: Real::from_int(0, p) }
    }

    pub fn one(prec: u32) -> Self {
        Self::real(Real::from_int(1, prec))
    }

    pub fn mul(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn sub(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn norm_sq(&self) -> Real {
        self.re.square().add(&self.im.square())
    }

    pub fn inv(&self) -> Option<ComplexBox> {
        let n = self.norm_sq();
        Some(ComplexBox { re: self.re.div(&n)?, im: self.im.neg().div(&n)? })
    }

    pub fn powi(&self, k: i64) -> Option<ComplexBox> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = ComplexBox::one(self.re.precision());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Some(acc)
    }

    pub fn intersects_disk(&self, d: &RootDisk) -> bool {
        self.re.intersects(&d.re_interval()) && self.im.intersects(&d.im_interval())
    }

    pub fn modulus(&self) -> Real {
        self.norm_sq().sqrt()
    }
}

/// An algebraic number: irreducible minimal polynomial plus one of its roots.
///
/// Roots are indexed in ascending (real part, imaginary part) order.
#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: IntPolynomial,
    root_index: usize,
    enclosure: RootDisk,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly && self.root_index == other.root_index
    }
}

impl Eq for AlgebraicNumber {}

impl core::hash::Hash for AlgebraicNumber {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.minpoly.hash(state);
        self.root_index.hash(state);
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root #{} of {}", self.root_index, self.minpoly)
    }
}

/// Sorted, certified root disks of a squarefree polynomial.
pub fn sorted_roots(f: &[BigInt], target: u32) -> Result<Vec<RootDisk>> {
    let mut disks = roots::isolate(f, target, MAX_PRECISION)?;
    roots::sort_disks(&mut disks);
    Ok(disks)
}

fn rational_disk(p: &BigInt, q: &BigInt, prec: u32) -> RootDisk {
    let x = Real::from_ratio(p, q, prec);
    let lo = x.lo_scaled().clone();
    let hi = x.hi_scaled().clone();
    let center = (&lo + &hi) >> 1usize;
    let rad = (&hi - &center).max(&center - &lo);
    RootDisk { re: center, im: BigInt::zero(), rad, prec }
}

impl AlgebraicNumber {
    /// Builds root `root_index` of an irreducible polynomial.
    pub fn new(minpoly: IntPolynomial, root_index: usize) -> Result<Self> {
        if minpoly.degree() == 0 {
            return Err(invalid("constant polynomial"));
        }
        if root_index >= minpoly.degree() {
            return Err(invalid("root index out of range"));
        }
        if !is_irreducible(&minpoly)? {
            return Err(invalid("polynomial is reducible"));
        }
        Ok(Self::new_unchecked(minpoly, root_index))
    }

    /// Like [`AlgebraicNumber::new`] without the irreducibility check.
    pub fn new_unchecked(minpoly: IntPolynomial, root_index: usize) -> Self {
        let enclosure = if minpoly.degree() == 1 {
            rational_disk(&-minpoly.constant(), minpoly.leading(), BASE_PRECISION)
        } else {
            sorted_roots(minpoly.coeffs(), BASE_PRECISION)
                .expect("irreducible polynomials are squarefree")
                .swap_remove(root_index)
        };
        AlgebraicNumber { minpoly, root_index, enclosure }
    }

    pub fn rational(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if q.is_zero() {
            return Err(invalid("zero denominator"));
        }
        let f = IntPolynomial::linear(&p, &q)?;
        Ok(Self::new_unchecked(f, 0))
    }

    pub fn from_rational(q: &BigRational) -> Result<Self> {
        Self::rational(q.numer().clone(), q.denom().clone())
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(n, 1).unwrap()
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn enclosure(&self) -> &RootDisk {
        &self.enclosure
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 1 && self.minpoly.constant().is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.degree() == 1).then(|| BigRational::new(-self.minpoly.constant(), self.minpoly.leading().clone()))
    }

    /// Enclosure of this root with radius at most `2^-target`.
    pub fn disk(&self, target: u32) -> Result<RootDisk> {
        let limit = |d: &RootDisk| d.prec >= target && d.rad <= BigInt::one() << (d.prec - target) as usize;
        if limit(&self.enclosure) {
            return Ok(self.enclosure.clone());
        }
        if self.degree() == 1 {
            let prec = target + 8;
            return Ok(rational_disk(&-self.minpoly.constant(), self.minpoly.leading(), prec));
        }
        let mut t = target;
        loop {
            let disks = roots::isolate(self.minpoly.coeffs(), t, MAX_PRECISION)?;
            let old = ComplexBox::from_disk(&self.enclosure);
            let hits: Vec<&RootDisk> = disks.iter().filter(|d| old.intersects_disk(d)).collect();
            if hits.len() == 1 {
                return Ok(hits[0].clone());
            }
            if t >= MAX_PRECISION {
                return Err(Error::Undecided { max_precision: MAX_PRECISION });
            }
            t = (t * 2).min(MAX_PRECISION);
        }
    }

    pub fn complex_box(&self, target: u32) -> Result<ComplexBox> {
        if let Some(q) = self.as_rational() {
            return Ok(ComplexBox::real(Real::from_rational(&q, target + 8)));
        }
        Ok(ComplexBox::from_disk(&self.disk(target)?))
    }

    pub fn naive_height(&self) -> BigInt {
        self.minpoly.naive_height()
    }

    /// Certified absolute Weil height, width at most `2^-precision`.
    pub fn weil_height(&self, precision: u32) -> Result<Real> {
        if self.is_zero() {
            return Err(Error::ZeroHeight);
        }
        if let Some(q) = self.as_rational() {
            let h = q.numer().abs().max(q.denom().abs());
            return Ok(Real::from_int(h, precision));
        }
        let d = self.degree() as u32;
        let m = mahler_measure(&self.minpoly, precision + 4)?;
        Ok(m.with_prec(precision + 8).nth_root(d).with_prec(precision + 2))
    }

    /// `H(self^k) = H(self)^|k|`, certified.
    pub fn height_of_power(&self, k: i64, precision: u32) -> Result<Real> {
        if self.is_zero() {
            return Err(Error::ZeroHeight);
        }
        let e = k.unsigned_abs() as u32;
        if let Some(q) = self.as_rational() {
            let h = q.numer().abs().max(q.denom().abs());
            return Ok(Real::from_int(h.pow(e), precision));
        }
        // Bits lost to the power: |k| * log2(H) + log2|k|.
        let h0 = self.weil_height(16)?;
        let grow = (e as f64 * libm::log2(h0.upper_f64().max(1.0))) as u32 + 32 - e.leading_zeros() + 8;
        let h = self.weil_height(precision + grow)?;
        Ok(h.powi(e))
    }

    /// Minimal polynomial and root of `self^k`, computed independently of heights.
    pub fn power(&self, k: i64) -> Result<AlgebraicNumber> {
        if self.is_zero() {
            return Err(Error::ZeroHeight);
        }
        if let Some(q) = self.as_rational() {
            let e = k.unsigned_abs() as u32;
            let (n, d) = (q.numer().pow(e), q.denom().pow(e));
            return if k >= 0 { Self::rational(n, d) } else { Self::rational(d, n) };
        }
        let base = if k < 0 { self.minpoly.reversed()? } else { self.minpoly.clone() };
        let f = poly::root_power_poly(base.coeffs(), k.unsigned_abs() as u32);
        let g = IntPolynomial::new(poly::squarefree_part(&f))?;
        self.identify_root(g, |b| b.powi(k))
    }

    /// Finds which root of `g` equals `image(self)`.
    pub(crate) fn identify_root(
        &self,
        g: IntPolynomial,
        image: impl Fn(&ComplexBox) -> Option<ComplexBox>,
    ) -> Result<AlgebraicNumber> {
        if g.degree() == 1 {
            return Ok(Self::new_unchecked(g, 0));
        }
        let mut t = BASE_PRECISION;
        loop {
            let target_box = image(&self.complex_box(t)?).ok_or(Error::ZeroHeight)?;
            let disks = sorted_roots(g.coeffs(), t)?;
            let hits: Vec<usize> = (0..disks.len()).filter(|&i| target_box.intersects_disk(&disks[i])).collect();
            if hits.len() == 1 {
                let idx = hits[0];
                let enclosure = disks[idx].clone();
                return Ok(AlgebraicNumber { minpoly: g, root_index: idx, enclosure });
            }
            if t >= MAX_PRECISION {
                return Err(Error::Undecided { max_precision: MAX_PRECISION });
            }
            t = (t * 2).min(MAX_PRECISION);
        }
    }

    /// `a * self` with `a` the leading coefficient of the minimal polynomial.
    pub fn scale_by_leading(&self) -> Result<AlgebraicNumber> {
        if self.is_zero() {
            return Err(Error::ZeroHeight);
        }
        let a = self.minpoly.leading().clone();
        let d = self.degree();
        // a^(d-1) f(x/a): coefficient k becomes c_k a^(d-1-k); monic.
        let c: Vec<BigInt> = self
            .minpoly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, ck)| if k == d { BigInt::one() } else { ck * a.pow((d - 1 - k) as u32) })
            .collect();
        let g = IntPolynomial::new(c)?;
        // Scaling by a positive integer keeps the root order.
        Ok(Self::new_unchecked(g, self.root_index))
    }

    pub fn negate(&self) -> AlgebraicNumber {
        let g = self.minpoly.negated_arg();
        let idx = self.degree() - 1 - self.root_index;
        // -z reverses the (re, im) order exactly when the order is strict.
        let cand = Self::new_unchecked(g.clone(), idx);
        if self.degree() == 1 {
            return cand;
        }
        self.identify_root(g, |b| Some(ComplexBox { re: b.re.neg(), im: b.im.neg() }))
            .unwrap_or(cand)
    }

    pub fn inverse(&self) -> Result<AlgebraicNumber> {
        self.power(-1)
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.torsion_order().is_some()
    }

    /// `k` such that this is a primitive `k`-th root of unity.
    pub fn torsion_order(&self) -> Option<u64> {
        cyclotomic_index(&self.minpoly)
    }
}

/// Index `k` with `f = Phi_k`, if `f` is cyclotomic.
pub fn cyclotomic_index(f: &IntPolynomial) -> Option<u64> {
    if !f.is_monic() || f.constant().abs() != BigInt::one() {
        return None;
    }
    let d = f.degree() as u64;
    (1..=2 * d * d + 2)
        .filter(|&k| arith::totient(k) == d)
        .find(|&k| poly::cyclotomic(k) == f.coeffs())
}

/// Certified Mahler measure `a_d prod max(1, |root|)`, width at most `2^-precision`.
pub fn mahler_measure(f: &IntPolynomial, precision: u32) -> Result<Real> {
    if f.degree() == 1 {
        let m = f.constant().abs().max(f.leading().abs());
        return Ok(Real::from_int(m, precision));
    }
    let lead = f.leading().clone();
    let mut t = precision + 8;
    loop {
        let disks = roots::isolate(f.coeffs(), t, MAX_PRECISION)?;
        let prec = t + 8;
        let mut m = Real::from_int(lead.clone(), prec);
        for d in &disks {
            m = m.mul(&d.modulus().with_prec(prec).max_int(1));
        }
        if m.width_at_most(precision) {
            return Ok(m);
        }
        if t >= MAX_PRECISION {
            return Err(Error::Undecided { max_precision: MAX_PRECISION });
        }
        let grow = m.upper_f64().max(2.0);
        t = (t * 2).max(t + libm::log2(grow) as u32 + f.degree() as u32).min(MAX_PRECISION);
    }
}

/// Exact test `M(f) <= u/v` for a quadratic `a x^2 + b x + c` (irreducible).
pub fn quadratic_mahler_le(a: &BigInt, b: &BigInt, c: &BigInt, u: &BigInt, v: &BigInt) -> bool {
    let disc = b * b - BigInt::from(4) * a * c;
    // M <= u/v  <=>  v M <= u for each closed form below.
    if disc.is_negative() {
        return v * a.max(c) <= *u;
    }
    let bb = b.abs();
    let two_a: BigInt = a * 2;
    let two_c: BigInt = c.abs() * 2;
    // |big root| > 1  <=>  sqrt(disc) > 2a - |b|
    let big_out = {
        let r: BigInt = &two_a - &bb;
        r.is_negative() || disc > &r * &r
    };
    // |small root| > 1  <=>  sqrt(disc) < 2|c| - |b|
    let small_out = {
        let r: BigInt = &two_c - &bb;
        r.is_positive() && disc < &r * &r
    };
    match (big_out, small_out) {
        (false, _) => v * a <= *u,
        (true, true) => v * c.abs() <= *u,
        (true, false) => {
            // (|b| + sqrt(disc)) / 2 <= u/v  <=>  v sqrt(disc) <= 2u - v|b|
            let rhs: BigInt = u * 2 - v * &bb;
            !rhs.is_negative() && v * v * &disc <= &rhs * &rhs
        }
    }
}

/// Exact test `M(f) <= u/v` for any irreducible `f`.
///
/// Ties are resolved with the separation bound for the algebraic integer
/// `v^2 M^2 - u^2`, whose degree is at most `binom(d, d/2)^2`.
pub fn mahler_le(f: &IntPolynomial, u: &BigInt, v: &BigInt) -> Result<bool> {
    let c = f.coeffs();
    match f.degree() {
        1 => Ok(v * c[0].abs().max(c[1].abs()) <= *u),
        2 => Ok(quadratic_mahler_le(&c[2], &c[1], &c[0], u, v)),
        d => {
            let bound = Real::from_ratio(u, v, 64);
            let n = arith::binomial(d as u64, d as u64 / 2).saturating_pow(2);
            let mut prec = 64u32;
            loop {
                let m = mahler_measure(f, prec)?;
                if let Some(o) = m.certified_cmp(&bound.with_prec(m.precision())) {
                    return Ok(o != core::cmp::Ordering::Greater);
                }
                let p = m.precision();
                let vv = Real::from_int(v * v, p);
                let uu = Real::from_int(u * u, p);
                let gap = vv.mul(&m.square()).sub(&uu);
                // |norm| >= 1 for nonzero algebraic integers.
                let conj = vv.mul(&m.square()).add(&uu).upper_f64();
                let log_sep = -(libm::log2(conj.max(2.0)) * (n - 1) as f64) - 2.0;
                let sep_bits = (-log_sep) as u32 + 1;
                if gap.width_at_most(sep_bits + 1) {
                    let g = gap.abs();
                    // Entire enclosure below the separation bound: the gap is 0.
                    if g.upper_f64() < libm::exp2(log_sep) {
                        return Ok(true);
                    }
                }
                if prec >= MAX_PRECISION {
                    return Err(Error::Undecided { max_precision: MAX_PRECISION });
                }
                prec = (prec * 2).max(sep_bits + 16).min(MAX_PRECISION);
            }
        }
    }
}

/// Irreducibility over the rationals.
pub fn is_irreducible(f: &IntPolynomial) -> Result<bool> {
    let d = f.degree();
    if d == 0 {
        return Err(invalid("degree must be at least 1"));
    }
    if d == 1 {
        return Ok(true);
    }
    if f.constant().is_zero() {
        return Ok(false);
    }
    if d == 2 {
        return Ok(!is_square(&f.discriminant()));
    }
    if !poly::is_squarefree(f.coeffs()) {
        return Ok(false);
    }
    if has_rational_root(f) {
        return Ok(false);
    }
    if d == 3 {
        return Ok(true);
    }
    Ok(find_factor(f, 2)?.is_none())
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    let mut out = vec![1u64];
    for (p, e) in arith::factor(n) {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

fn has_rational_root(f: &IntPolynomial) -> bool {
    let (Some(ps), Some(qs)) = (divisors(f.constant()), divisors(f.leading())) else {
        return find_factor(f, 1).ok().flatten().is_some();
    };
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for s in [p.clone(), -p.clone()] {
                if f.eval_rational(&BigRational::new(s, q.clone())).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Searches for an integer factor whose degree lies in `[min_deg, d/2]`.
///
/// Candidate factors come from conjugation-closed subsets of certified root
/// enclosures; a candidate is accepted only after exact division.
pub fn find_factor(f: &IntPolynomial, min_deg: usize) -> Result<Option<IntPolynomial>> {
    let d = f.degree();
    let lead = f.leading().clone();
    let mut t = BASE_PRECISION;
    'precision: loop {
        let disks = sorted_roots(f.coeffs(), t)?;
        let boxes: Vec<ComplexBox> = disks.iter().map(ComplexBox::from_disk).collect();
        // Conjugation classes: a real root alone, or a conjugate pair.
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut used = vec![false; d];
        for i in 0..d {
            if used[i] {
                continue;
            }
            used[i] = true;
            if disks[i].is_real() {
                classes.push(vec![i]);
            } else {
                let j = (0..d)
                    .find(|&j| !used[j] && disks[j].re == disks[i].re && disks[j].im == -&disks[i].im)
                    .expect("conjugate present");
                used[j] = true;
                classes.push(vec![i, j]);
            }
        }
        let nc = classes.len();
        let mut ambiguous = false;
        for mask in 1u64..(1u64 << nc) {
            let members: Vec<usize> =
                (0..nc).filter(|&c| mask >> c & 1 == 1).flat_map(|c| classes[c].clone()).collect();
            let k = members.len();
            if k < min_deg || k > d / 2 {
                continue;
            }
            let prec = disks[0].prec;
            // lead * prod (x - root)
            let mut coeffs: Vec<ComplexBox> = vec![ComplexBox::real(Real::from_int(lead.clone(), prec))];
            for &m in &members {
                let mut next = vec![ComplexBox::real(Real::from_int(0, prec)); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] = ComplexBox { re: next[i + 1].re.add(&c.re), im: next[i + 1].im.add(&c.im) };
                    let t = c.mul(&boxes[m]);
                    next[i] = next[i].sub(&t);
                }
                coeffs = next;
            }
            let mut ints = Vec::with_capacity(coeffs.len());
            let mut feasible = true;
            for c in &coeffs {
                let lo = c.re.lo_scaled().clone();
                let hi = c.re.hi_scaled().clone();
                let p = c.re.precision() as usize;
                let first = -((-lo) >> p);
                let last = hi >> p;
                if first > last {
                    feasible = false;
                    break;
                }
                if first != last {
                    ambiguous = true;
                    feasible = false;
                    break;
                }
                ints.push(first);
            }
            if !feasible {
                continue;
            }
            let g = poly::primitive_part(&poly::trim(ints));
            if g.len() == k + 1 && poly::exact_div(f.coeffs(), &g).is_some() {
                return Ok(Some(IntPolynomial::new(g)?));
            }
        }
        if !ambiguous {
            return Ok(None);
        }
        if t >= MAX_PRECISION {
            return Err(Error::Undecided { max_precision: MAX_PRECISION });
        }
        t *= 2;
        continue 'precision;
    }
}

/// Whether two distinct roots of `f` have a root-of-unity quotient.
///
/// Works on the squarefree part with zero roots removed; the quotient
/// polynomial is tested against every `Phi_k` with `phi(k) <= d^2`.
pub fn is_degenerate(f: &IntPolynomial) -> Result<bool> {
    let d = f.degree();
    if d < 2 {
        return Err(invalid("degree must be at least 2"));
    }
    let mut c = poly::squarefree_part(f.coeffs());
    while c[0].is_zero() {
        c.remove(0);
    }
    if c.len() < 3 {
        return Ok(false);
    }
    let r = poly::ratio_poly(&c);
    let bound = (d * d) as u64;
    for k in 1..=2 * bound * bound {
        if arith::totient(k) > bound {
            continue;
        }
        let phi = poly::cyclotomic(k);
        if phi.len() > r.len() {
            continue;
        }
        if poly::rem_monic(&r, &phi).is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether the Galois group of an irreducible `f` (degree <= 4) is the full symmetric group.
pub fn galois_is_full(f: &IntPolynomial) -> Result<bool> {
    let d = f.degree();
    if d > 4 {
        return Err(Error::UnsupportedDegree(d));
    }
    if d == 0 || !is_irreducible(f)? {
        return Err(invalid("polynomial must be irreducible"));
    }
    match d {
        1 | 2 => Ok(true),
        3 => Ok(!is_square(&f.discriminant())),
        _ => {
            // Monic model a^3 f(x/a), then the resolvent cubic.
            let a = f.leading();
            let c = f.coeffs();
            let b1 = &c[3];
            let c1 = &c[2] * a;
            let d1 = &c[1] * a * a;
            let e1 = &c[0] * a * a * a;
            let four = BigInt::from(4);
            let resolvent = vec![
                -(b1 * b1 * &e1 - &four * &c1 * &e1 + &d1 * &d1),
                b1 * &d1 - &four * &e1,
                -c1.clone(),
                BigInt::one(),
            ];
            let res = IntPolynomial::new(resolvent)?;
            let res_irreducible = !res.constant().is_zero() && !has_rational_root(&res);
            Ok(res_irreducible && !is_square(&f.discriminant()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&poly(&[-2, 0, 1])).unwrap());
        assert!(!is_irreducible(&poly(&[-1, 0, 1])).unwrap());
        assert!(is_irreducible(&poly(&[1, 1, 0, 1])).unwrap());
        // (x^2 + 1)(x^2 + 2) has no rational root.
        assert!(!is_irreducible(&poly(&[2, 0, 3, 0, 1])).unwrap());
        assert!(is_irreducible(&poly(&[-2, 0, 0, 0, 1])).unwrap());
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        assert!(!is_irreducible(&poly(&[4, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn naive_heights() {
        assert_eq!(AlgebraicNumber::rational(3, 2).unwrap().naive_height(), BigInt::from(3));
        let sqrt2 = AlgebraicNumber::new(poly(&[-2, 0, 1]), 1).unwrap();
        assert_eq!(sqrt2.naive_height(), BigInt::from(2));
        let phi = AlgebraicNumber::new(poly(&[-1, -1, 1]), 1).unwrap();
        assert_eq!(phi.naive_height(), BigInt::one());
    }

    #[test]
    fn weil_heights() {
        let q = AlgebraicNumber::rational(3, 2).unwrap();
        assert!(q.weil_height(64).unwrap().contains_int(&BigInt::from(3)));
        let sqrt2 = AlgebraicNumber::new(poly(&[-2, 0, 1]), 1).unwrap();
        let h = sqrt2.weil_height(60).unwrap();
        assert!(h.width_at_most(60));
        assert!(h.square().contains_int(&BigInt::from(2)));
        let phi = AlgebraicNumber::new(poly(&[-1, -1, 1]), 1).unwrap();
        let h = phi.weil_height(50).unwrap();
        assert!((h.mid_f64() - 1.272_019_649_514_069).abs() < 1e-12);
        assert_eq!(AlgebraicNumber::integer(0).weil_height(10), Err(Error::ZeroHeight));
    }

    #[test]
    fn powers_and_heights() {
        let q = AlgebraicNumber::rational(3, 2).unwrap();
        assert!(q.height_of_power(2, 32).unwrap().contains_int(&BigInt::from(9)));
        let two = AlgebraicNumber::integer(2);
        assert!(two.height_of_power(-3, 32).unwrap().contains_int(&BigInt::from(8)));
        assert_eq!(two.power(-3).unwrap().as_rational().unwrap(), BigRational::new(1.into(), 8.into()));
        let sqrt2 = AlgebraicNumber::new(poly(&[-2, 0, 1]), 1).unwrap();
        assert_eq!(sqrt2.power(2).unwrap().as_rational().unwrap(), BigRational::from_integer(2.into()));
        assert!(sqrt2.height_of_power(2, 40).unwrap().contains_int(&BigInt::from(2)));
        // cube of the real root of x^3 - x - 1 is a root of x^3 - 3x^2 + 2x - 1... verify via intersection
        let a = AlgebraicNumber::new(poly(&[-1, -1, 0, 1]), 2).unwrap();
        let p = a.power(3).unwrap();
        assert!(p.weil_height(40).unwrap().intersects(&a.height_of_power(3, 40).unwrap()));
    }

    #[test]
    fn scaling_by_leading() {
        assert_eq!(AlgebraicNumber::rational(3, 2).unwrap().scale_by_leading().unwrap().as_rational().unwrap(),
            BigRational::from_integer(3.into()));
        let a = AlgebraicNumber::new(poly(&[-2, -1, 2]), 0).unwrap();
        let s = a.scale_by_leading().unwrap();
        assert_eq!(s.minpoly(), &poly(&[-4, -1, 1]));
        assert_eq!(s.root_index(), 0);
    }

    #[test]
    fn torsion() {
        assert_eq!(AlgebraicNumber::integer(-1).torsion_order(), Some(2));
        let w = AlgebraicNumber::new(poly(&[1, 1, 1]), 0).unwrap();
        assert_eq!(w.torsion_order(), Some(3));
        let sqrt2 = AlgebraicNumber::new(poly(&[-2, 0, 1]), 1).unwrap();
        assert!(!sqrt2.is_root_of_unity());
    }

    #[test]
    fn degeneracy() {
        assert!(is_degenerate(&poly(&[-2, 0, 1])).unwrap());
        assert!(is_degenerate(&poly(&[1, 0, 1])).unwrap());
        assert!(!is_degenerate(&poly(&[-1, -1, 1])).unwrap());
        assert!(is_degenerate(&poly(&[1])).is_err());
    }

    #[test]
    fn galois() {
        assert!(galois_is_full(&poly(&[-2, 0, 0, 1])).unwrap());
        assert!(!galois_is_full(&poly(&[-1, -3, 0, 1])).unwrap());
        assert!(galois_is_full(&poly(&[-2, 0, 1])).unwrap());
        // x^4 - 2 has dihedral group; x^4 + x + 1 has S4.
        assert!(!galois_is_full(&poly(&[-2, 0, 0, 0, 1])).unwrap());
        assert!(galois_is_full(&poly(&[1, 1, 0, 0, 1])).unwrap());
        assert_eq!(galois_is_full(&poly(&[1, 1, 0, 0, 0, 1])), Err(Error::UnsupportedDegree(5)));
    }

    #[test]
    fn mahler_comparisons() {
        // x^2 - 2: M = 2
        assert!(mahler_le(&poly(&[-2, 0, 1]), &4.into(), &1.into()).unwrap());
        assert!(!mahler_le(&poly(&[-5, 0, 1]), &4.into(), &1.into()).unwrap());
        // 2x^2 - 1: M = 2
        assert!(mahler_le(&poly(&[-1, 0, 2]), &2.into(), &1.into()).unwrap());
        // cubic tie: x^3 - 2 has M = 2 exactly.
        assert!(mahler_le(&poly(&[-2, 0, 0, 1]), &2.into(), &1.into()).unwrap());
        assert!(!mahler_le(&poly(&[-3, 0, 0, 1]), &2.into(), &1.into()).unwrap());
    }

    #[test]
    fn quadratic_mahler_matches_numeric() {
        for a in 1..6i64 {
            for b in -12..=12i64 {
                for c in -12..=12i64 {
                    let f = poly(&[c, b, a]);
                    if c == 0 || f.degree() != 2 || !is_irreducible(&f).unwrap() {
                        continue;
                    }
                    let m = mahler_measure(&f, 40).unwrap().mid_f64();
                    for u in 1..40i64 {
                        let k = f.coeffs();
                        let exact = quadratic_mahler_le(&k[2], &k[1], &k[0], &u.into(), &1.into());
                        if (m - u as f64).abs() > 1e-9 {
                            assert_eq!(exact, m < u as f64, "{f} vs {u}");
                        }
                    }
                }
            }
        }
    }
}
