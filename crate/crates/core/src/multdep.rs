//! Multiplicative dependence: exact kernels, bounded search, verification, rank.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algnum::{AlgebraicNumber, ComplexBox, MAX_PRECISION};
use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::lattice;
use crate::quadratic::{QuadElem, QuadField};
use crate::real::Real;

pub type ExponentVector = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    RationalKernel,
    QuadraticKernel,
    BoundedSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceCertificate {
    pub relation: ExponentVector,
    pub method: Method,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub s: usize,
    /// Indices of a smallest dependent sub-tuple (a torsion coordinate when `s = 0`).
    pub witness: Option<Vec<usize>>,
}

fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or_else(|| Error::Overflow("exponent exceeds 64 bits".into()))).collect()
}

fn big_to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Overflow("factorization limited to 64-bit integers".into()))
}

/// `q = (-1)^sign * prod p^e`.
pub fn exponent_vector_rational(q: &BigRational) -> Result<(bool, BTreeMap<u64, i64>)> {
    if q.is_zero() {
        return Err(invalid("zero has no exponent vector"));
    }
    let mut out = BTreeMap::new();
    for (p, e) in arith::factor(big_to_u64(&q.numer().abs())?) {
        out.insert(p, e as i64);
    }
    for (p, e) in arith::factor(big_to_u64(&q.denom().abs())?) {
        out.insert(p, -(e as i64));
    }
    Ok((q.is_negative(), out))
}

fn rational_product(tuple: &[BigRational], k: &[i64]) -> BigRational {
    tuple.iter().zip(k).fold(BigRational::one(), |acc, (x, &e)| {
        let p = x.pow(e.unsigned_abs() as i32);
        if e >= 0 {
            acc * p
        } else {
            acc / p
        }
    })
}

fn quadratic_product(k: QuadField, tuple: &[QuadElem], e: &[i64]) -> Result<QuadElem> {
    let mut acc = k.one();
    for (x, &ei) in tuple.iter().zip(e) {
        if ei != 0 {
            acc = acc.mul(&x.pow(ei).ok_or(Error::ZeroHeight)?);
        }
    }
    Ok(acc)
}

fn check_nonzero_relation(k: &[i64], n: usize) -> Result<()> {
    if k.len() != n {
        return Err(invalid("relation length differs from tuple length"));
    }
    if k.iter().all(|&x| x == 0) {
        return Err(invalid("relation must be nonzero"));
    }
    Ok(())
}

pub fn verify_relation_rational(tuple: &[BigRational], k: &[i64]) -> Result<bool> {
    check_nonzero_relation(k, tuple.len())?;
    if tuple.iter().any(Zero::is_zero) {
        return Err(invalid("zero coordinate"));
    }
    Ok(rational_product(tuple, k).is_one())
}

pub fn verify_relation_quadratic(field: QuadField, tuple: &[QuadElem], k: &[i64]) -> Result<bool> {
    check_nonzero_relation(k, tuple.len())?;
    if tuple.iter().any(QuadElem::is_zero) {
        return Err(invalid("zero coordinate"));
    }
    Ok(quadratic_product(field, tuple, k)?.is_one())
}

/// Kernel vector of the prime-exponent matrix, lifted past the sign.
pub fn dependence_rational(tuple: &[BigRational]) -> Result<Option<DependenceCertificate>> {
    let mut signs = Vec::with_capacity(tuple.len());
    let mut vecs = Vec::with_capacity(tuple.len());
    for q in tuple {
        let (s, v) = exponent_vector_rational(q)?;
        signs.push(s);
        vecs.push(v);
    }
    let primes: Vec<u64> = {
        let mut p: Vec<u64> = vecs.iter().flat_map(|v| v.keys().copied()).collect();
        p.sort_unstable();
        p.dedup();
        p
    };
    let rows: Vec<Vec<BigInt>> = vecs
        .iter()
        .map(|v| primes.iter().map(|p| BigInt::from(*v.get(p).unwrap_or(&0))).collect())
        .collect();
    let kernel = lattice::integer_kernel(&rows);
    let Some(b) = kernel.first() else { return Ok(None) };
    let mut k = to_i64(b)?;
    let parity: i64 = k.iter().zip(&signs).filter(|(_, &s)| s).map(|(&e, _)| e).sum();
    if parity.rem_euclid(2) == 1 {
        k.iter_mut().for_each(|e| *e *= 2);
    }
    let verified = verify_relation_rational(tuple, &k)?;
    debug_assert!(verified);
    Ok(Some(DependenceCertificate { relation: k, method: Method::RationalKernel, verified }))
}

/// Integer `c` with `u = +-eps^c` for a unit `u` of a real quadratic field.
pub fn unit_exponent(u: &QuadElem, eps: &QuadElem) -> Result<i64> {
    let mut prec = 64;
    loop {
        let lu = u.log_abs(prec).ok_or(Error::ZeroHeight)?;
        let le = eps.log_abs(prec).ok_or(Error::ZeroHeight)?;
        let ratio = lu.div(&le).ok_or(Error::ZeroHeight)?;
        let lo = ratio.floor_lo();
        let hi = ratio.ceil_hi();
        let candidates: Vec<BigInt> = num_iter_range(&lo, &hi).filter(|c| ratio.contains_int(c)).collect();
        if candidates.len() == 1 {
            let c = candidates[0].to_i64().ok_or_else(|| Error::Overflow("unit exponent".into()))?;
            let rest = u.mul(&eps.pow(-c).ok_or(Error::ZeroHeight)?);
            if rest.is_one() || rest.neg().is_one() {
                return Ok(c);
            }
            return Err(invalid("element is not a unit"));
        }
        if prec >= MAX_PRECISION {
            return Err(Error::Undecided { max_precision: MAX_PRECISION });
        }
        prec *= 2;
    }
}

fn num_iter_range(lo: &BigInt, hi: &BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = lo.clone();
    let hi = hi.clone();
    core::iter::from_fn(move || {
        if cur > hi {
            return None;
        }
        let out = cur.clone();
        cur += 1;
        Some(out)
    })
}

/// Exact dependence inside a quadratic field.
pub fn dependence_quadratic(field: QuadField, tuple: &[QuadElem]) -> Result<Option<DependenceCertificate>> {
    if tuple.iter().any(|x| x.field() != field) {
        return Err(invalid("coordinate not in field"));
    }
    let vals = tuple.iter().map(QuadElem::valuations).collect::<Result<Vec<_>>>()?;
    let mut keys: Vec<_> = vals.iter().flat_map(|v| v.keys().copied()).collect();
    keys.sort_unstable();
    keys.dedup();
    let rows: Vec<Vec<BigInt>> = vals
        .iter()
        .map(|v| keys.iter().map(|k| BigInt::from(*v.get(k).unwrap_or(&0))).collect())
        .collect();
    let kernel: Vec<Vec<i64>> = lattice::integer_kernel(&rows).iter().map(|b| to_i64(b)).collect::<Result<_>>()?;
    if kernel.is_empty() {
        return Ok(None);
    }
    let mut k = match field.fundamental_unit() {
        None => kernel[0].clone(),
        Some(eps) => {
            // Each kernel vector yields a unit +-eps^c; combine to cancel the c's.
            let mut cs = Vec::with_capacity(kernel.len());
            for b in &kernel {
                let u = quadratic_product(field, tuple, b)?;
                cs.push(vec![BigInt::from(unit_exponent(&u, &eps)?)]);
            }
            let inner = lattice::integer_kernel(&cs);
            let Some(c) = inner.first() else { return Ok(None) };
            let c = to_i64(c)?;
            let mut k = vec![0i64; tuple.len()];
            for (cj, b) in c.iter().zip(&kernel) {
                for (ki, bi) in k.iter_mut().zip(b) {
                    *ki += cj * bi;
                }
            }
            lattice::normalize_sign_i64(lattice::primitive_i64(k))
        }
    };
    if !quadratic_product(field, tuple, &k)?.is_one() {
        // The remaining unit is torsion; its order divides w.
        let w = field.w() as i64;
        k.iter_mut().for_each(|e| *e *= w);
    }
    let verified = verify_relation_quadratic(field, tuple, &k)?;
    if !verified {
        return Err(Error::Overflow("torsion lift failed".into()));
    }
    Ok(Some(DependenceCertificate { relation: k, method: Method::QuadraticKernel, verified }))
}

/// How a tuple of algebraic numbers can be handled exactly.
pub enum Backend {
    Rational(Vec<BigRational>),
    Quadratic(QuadField, Vec<QuadElem>),
    General,
}

/// Squarefree kernel of the discriminant of a quadratic minimal polynomial.
pub fn quadratic_field_of(x: &AlgebraicNumber) -> Option<QuadField> {
    if x.degree() != 2 {
        return None;
    }
    let d = x.minpoly().discriminant().to_i64()?;
    QuadField::new(arith::squarefree_part(d)).ok()
}

pub fn classify(tuple: &[AlgebraicNumber]) -> Backend {
    if tuple.iter().all(|x| x.degree() == 1) {
        return Backend::Rational(tuple.iter().map(|x| x.as_rational().unwrap()).collect());
    }
    if tuple.iter().any(|x| x.degree() > 2) {
        return Backend::General;
    }
    let fields: Vec<QuadField> = tuple.iter().filter_map(quadratic_field_of).collect();
    if fields.len() != tuple.iter().filter(|x| x.degree() == 2).count() || fields.windows(2).any(|w| w[0] != w[1]) {
        return Backend::General;
    }
    let k = fields[0];
    match tuple.iter().map(|x| k.from_algebraic(x)).collect::<Result<Vec<_>>>() {
        Ok(elems) => Backend::Quadratic(k, elems),
        Err(_) => Backend::General,
    }
}

/// Decides `prod tuple[i]^k[i] = 1` exactly or by certified evaluation.
pub fn verify_relation(tuple: &[AlgebraicNumber], k: &[i64]) -> Result<bool> {
    check_nonzero_relation(k, tuple.len())?;
    if tuple.iter().any(AlgebraicNumber::is_zero) {
        return Err(invalid("zero coordinate"));
    }
    match classify(tuple) {
        Backend::Rational(q) => verify_relation_rational(&q, k),
        Backend::Quadratic(f, e) => verify_relation_quadratic(f, &e, k),
        Backend::General => verify_relation_certified(tuple, k),
    }
}

/// Liouville separation: a nonzero `gamma = prod - 1` of degree at most `D`
/// and height at most `2B` satisfies `|gamma| >= (2B)^-D`.
pub fn verify_relation_certified(tuple: &[AlgebraicNumber], k: &[i64]) -> Result<bool> {
    check_nonzero_relation(k, tuple.len())?;
    let mut degree: f64 = 1.0;
    let mut log2_b = 0.0;
    let mut growth = 0.0;
    for (x, &e) in tuple.iter().zip(k) {
        if e == 0 {
            continue;
        }
        degree *= x.degree() as f64;
        let h = x.weil_height(16)?.upper_f64();
        log2_b += e.unsigned_abs() as f64 * libm::log2(h);
        // Worst-case amplification of an absolute error through x^e.
        let m = x.complex_box(16)?.modulus();
        let lm = libm::log2(m.upper_f64().max(1.0 / m.lower_f64().max(1e-300)));
        growth += e.unsigned_abs() as f64 * (lm.abs() + 1.0) + 4.0;
    }
    let sep_bits = degree * (1.0 + log2_b);
    if !sep_bits.is_finite() || sep_bits > MAX_PRECISION as f64 {
        return Err(Error::Undecided { max_precision: MAX_PRECISION });
    }
    let sep_bits = libm::ceil(sep_bits) as u32;
    let mut prec = (sep_bits + 16 + libm::ceil(growth) as u32).max(64);
    loop {
        let mut acc = ComplexBox::one(prec);
        for (x, &e) in tuple.iter().zip(k) {
            if e != 0 {
                acc = acc.mul(&x.complex_box(prec)?.powi(e).ok_or(Error::ZeroHeight)?);
            }
        }
        let gamma = ComplexBox { re: acc.re.sub(&Real::from_int(1, acc.re.precision())), im: acc.im };
        if !gamma.re.contains_zero() || !gamma.im.contains_zero() {
            return Ok(false);
        }
        // Whole enclosure strictly inside the separation disk: gamma = 0.
        let bound = Real::from_ratio(&BigInt::one(), &(BigInt::one() << (sep_bits as usize + 1)), prec);
        if gamma.re.abs().certified_cmp(&bound) == Some(core::cmp::Ordering::Less)
            && gamma.im.abs().certified_cmp(&bound) == Some(core::cmp::Ordering::Less)
        {
            return Ok(true);
        }
        if prec >= MAX_PRECISION {
            return Err(Error::Undecided { max_precision: MAX_PRECISION });
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}

/// First verified relation of the form `q k` with `0 < max |k_i| <= bound`
/// and `q` the order of the root of unity `prod x_i^k_i`.
///
/// `None` only means no relation within the bound.
pub fn dependence_bounded(tuple: &[AlgebraicNumber], bound: u32) -> Result<Option<DependenceCertificate>> {
    if bound == 0 {
        return Err(invalid("bound must be at least 1"));
    }
    if tuple.iter().any(AlgebraicNumber::is_zero) {
        return Err(invalid("zero coordinate"));
    }
    let n = tuple.len();
    let mut logs = Vec::with_capacity(n);
    let mut args = Vec::with_capacity(n);
    for x in tuple {
        let b = x.complex_box(60)?;
        let (re, im) = (b.re.mid_f64(), b.im.mid_f64());
        logs.push(0.5 * libm::log(re * re + im * im));
        args.push(libm::atan2(im, re));
    }
    let degree = tuple.iter().fold(1u64, |acc, x| acc.saturating_mul(x.degree() as u64)).min(512);
    let mut orders: Vec<u64> = Vec::new();
    let b = bound as i64;
    let mut k = vec![0i64; n];
    for t in 1..=b {
        // All vectors in [-t, t]^n with max norm t, first nonzero positive.
        let mut idx = vec![-t; n];
        loop {
            let maxn = idx.iter().map(|x| x.abs()).max().unwrap();
            let first = idx.iter().find(|&&x| x != 0).copied().unwrap_or(0);
            if maxn == t && first > 0 {
                let l: f64 = idx.iter().zip(&logs).map(|(&e, l)| e as f64 * l).sum();
                let a: f64 = idx.iter().zip(&args).map(|(&e, a)| e as f64 * a).sum();
                let tau = core::f64::consts::TAU;
                let wrapped = a - tau * libm::round(a / tau);
                if l.abs() < 1e-6 {
                    // The product is a root of unity of some order q with phi(q) <= D.
                    let frac = wrapped / tau;
                    if orders.is_empty() {
                        orders = [1, 2].into_iter().chain(crate::special::small_orders(degree)).collect();
                    }
                    for &q in &orders {
                        let qf = q as f64;
                        if libm::fabs(qf * frac - libm::round(qf * frac)) < 1e-6 * qf {
                            for (ki, &e) in k.iter_mut().zip(&idx) {
                                *ki = e * q as i64;
                            }
                            if verify_relation(tuple, &k)? {
                                return Ok(Some(DependenceCertificate { relation: k, method: Method::BoundedSearch, verified: true }));
                            }
                        }
                    }
                }
            }
            // odometer
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < t {
                    idx[i] += 1;
                    break;
                }
                idx[i] = -t;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    Ok(None)
}

/// Dependence decision for subsets, used by the rank computation.
pub trait DependenceBackend {
    fn len(&self) -> usize;
    fn is_torsion(&self, i: usize) -> Result<bool>;
    fn dependent(&self, subset: &[usize]) -> Result<bool>;
}

/// Rank by increasing subset size: `s = 0` for torsion, otherwise one less
/// than the size of a smallest dependent subset, and `n` if none.
pub fn rank_with<B: DependenceBackend + ?Sized>(b: &B) -> Result<RankResult> {
    let n = b.len();
    for i in 0..n {
        if b.is_torsion(i)? {
            return Ok(RankResult { s: 0, witness: Some(vec![i]) });
        }
    }
    for size in 2..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if b.dependent(&idx)? {
                return Ok(RankResult { s: size - 1, witness: Some(idx) });
            }
            // next combination
            let mut i = size;
            while i > 0 && idx[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(RankResult { s: n, witness: None })
}

pub struct RationalBackend {
    rows: Vec<Vec<BigInt>>,
    torsion: Vec<bool>,
}

impl RationalBackend {
    pub fn new(tuple: &[BigRational]) -> Result<Self> {
        let vecs = tuple.iter().map(exponent_vector_rational).collect::<Result<Vec<_>>>()?;
        let mut primes: Vec<u64> = vecs.iter().flat_map(|(_, v)| v.keys().copied()).collect();
        primes.sort_unstable();
        primes.dedup();
        let rows = vecs
            .iter()
            .map(|(_, v)| primes.iter().map(|p| BigInt::from(*v.get(p).unwrap_or(&0))).collect())
            .collect();
        let torsion = tuple.iter().map(|q| q.abs().is_one()).collect();
        Ok(RationalBackend { rows, torsion })
    }
}

impl DependenceBackend for RationalBackend {
    fn len(&self) -> usize {
        self.rows.len()
    }
    fn is_torsion(&self, i: usize) -> Result<bool> {
        Ok(self.torsion[i])
    }
    fn dependent(&self, subset: &[usize]) -> Result<bool> {
        let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| self.rows[i].clone()).collect();
        Ok(lattice::rank(&rows) < rows.len())
    }
}

pub struct QuadraticBackend<'a> {
    field: QuadField,
    tuple: &'a [QuadElem],
}

impl<'a> QuadraticBackend<'a> {
    pub fn new(field: QuadField, tuple: &'a [QuadElem]) -> Self {
        QuadraticBackend { field, tuple }
    }
}

impl DependenceBackend for QuadraticBackend<'_> {
    fn len(&self) -> usize {
        self.tuple.len()
    }
    fn is_torsion(&self, i: usize) -> Result<bool> {
        Ok(self.tuple[i].is_torsion())
    }
    fn dependent(&self, subset: &[usize]) -> Result<bool> {
        let sub: Vec<QuadElem> = subset.iter().map(|&i| self.tuple[i].clone()).collect();
        Ok(dependence_quadratic(self.field, &sub)?.is_some())
    }
}

/// Bounded-search backend; "independent" means no relation up to `bound`.
pub struct BoundedBackend<'a> {
    pub tuple: &'a [AlgebraicNumber],
    pub bound: u32,
}

impl DependenceBackend for BoundedBackend<'_> {
    fn len(&self) -> usize {
        self.tuple.len()
    }
    fn is_torsion(&self, i: usize) -> Result<bool> {
        Ok(self.tuple[i].is_root_of_unity())
    }
    fn dependent(&self, subset: &[usize]) -> Result<bool> {
        let sub: Vec<AlgebraicNumber> = subset.iter().map(|&i| self.tuple[i].clone()).collect();
        Ok(dependence_bounded(&sub, self.bound)?.is_some())
    }
}

pub fn rank_rational(tuple: &[BigRational]) -> Result<RankResult> {
    rank_with(&RationalBackend::new(tuple)?)
}

pub fn rank_quadratic(field: QuadField, tuple: &[QuadElem]) -> Result<RankResult> {
    rank_with(&QuadraticBackend::new(field, tuple))
}

/// Rank with the exact backend when one applies, else bounded search with `bound`.
pub fn multiplicative_rank(tuple: &[AlgebraicNumber], bound: u32) -> Result<RankResult> {
    if tuple.iter().any(AlgebraicNumber::is_zero) {
        return Err(invalid("zero coordinate"));
    }
    match classify(tuple) {
        Backend::Rational(q) => rank_rational(&q),
        Backend::Quadratic(f, e) => rank_quadratic(f, &e),
        Backend::General => rank_with(&BoundedBackend { tuple, bound }),
    }
}

/// Dependence with the exact backend when one applies, else bounded search.
pub fn dependence(tuple: &[AlgebraicNumber], bound: u32) -> Result<Option<DependenceCertificate>> {
    if tuple.iter().any(AlgebraicNumber::is_zero) {
        return Err(invalid("zero coordinate"));
    }
    match classify(tuple) {
        Backend::Rational(q) => dependence_rational(&q),
        Backend::Quadratic(f, e) => dependence_quadratic(f, &e),
        Backend::General => dependence_bounded(tuple, bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn rel(t: &[i64]) -> Option<Vec<i64>> {
        dependence_rational(&qs(t)).unwrap().map(|c| c.relation)
    }

    fn alg(c: &[i64], idx: usize) -> AlgebraicNumber {
        AlgebraicNumber::new(IntPolynomial::from_i64(c).unwrap(), idx).unwrap()
    }

    #[test]
    fn exponent_vectors() {
        let (s, v) = exponent_vector_rational(&BigRational::from_integer((-12).into())).unwrap();
        assert!(s);
        assert_eq!(v.into_iter().collect::<Vec<_>>(), vec![(2, 2), (3, 1)]);
        let (s, v) = exponent_vector_rational(&BigRational::new(9.into(), 4.into())).unwrap();
        assert!(!s);
        assert_eq!(v.into_iter().collect::<Vec<_>>(), vec![(2, -2), (3, 2)]);
        assert!(exponent_vector_rational(&BigRational::one()).unwrap().1.is_empty());
        assert!(exponent_vector_rational(&BigRational::zero()).is_err());
    }

    #[test]
    fn rational_dependence() {
        assert_eq!(rel(&[2, 4]), Some(vec![2, -1]));
        assert_eq!(rel(&[6, 10, 15]), None);
        assert_eq!(rel(&[2, 6, 3]), Some(vec![1, -1, 1]));
        assert_eq!(rel(&[2, -2]), Some(vec![2, -2]));
        assert!(dependence_rational(&qs(&[2, 0])).is_err());
    }

    #[test]
    fn quadratic_dependence() {
        let g = QuadField::new(-1).unwrap();
        let c = dependence_quadratic(g, &[g.from_ints(1, 1), g.from_ints(2, 0)]).unwrap().unwrap();
        assert_eq!(c.relation, vec![8, -4]);
        assert!(dependence_quadratic(g, &[g.from_ints(1, 1), g.from_ints(3, 0)]).unwrap().is_none());
        let k = QuadField::new(2).unwrap();
        let c = dependence_quadratic(k, &[k.from_ints(1, 1), k.from_ints(3, 2)]).unwrap().unwrap();
        assert_eq!(c.relation, vec![2, -1]);
        // units of norm -1 paired with a rational: only a torsion relation of the rational part
        assert!(dependence_quadratic(k, &[k.from_ints(1, 1), k.from_ints(2, 0)]).unwrap().is_none());
        // eps * 2 and eps^2 * 4
        let a = k.from_ints(2, 2);
        let b = a.pow(2).unwrap();
        assert_eq!(dependence_quadratic(k, &[a, b]).unwrap().unwrap().relation, vec![2, -1]);
    }

    #[test]
    fn bounded_search() {
        let sqrt2 = alg(&[-2, 0, 1], 1);
        let two = AlgebraicNumber::integer(2);
        let c = dependence_bounded(&[sqrt2.clone(), two], 2).unwrap().unwrap();
        assert_eq!(c.relation, vec![2, -1]);
        let sqrt3 = alg(&[-3, 0, 1], 1);
        assert!(dependence_bounded(&[sqrt2, sqrt3], 5).unwrap().is_none());
        let phi = alg(&[-1, -1, 1], 1);
        let phi2 = phi.power(2).unwrap();
        assert_eq!(dependence_bounded(&[phi, phi2], 2).unwrap().unwrap().relation, vec![2, -1]);
    }

    #[test]
    fn verification() {
        let two = AlgebraicNumber::integer(2);
        let four = AlgebraicNumber::integer(4);
        let three = AlgebraicNumber::integer(3);
        assert!(verify_relation(&[two.clone(), four], &[2, -1]).unwrap());
        assert!(!verify_relation(&[two, three], &[1, -1]).unwrap());
        let s2 = alg(&[-2, 0, 1], 1);
        let s3 = alg(&[-3, 0, 1], 1);
        let s6 = alg(&[-6, 0, 1], 1);
        let m6 = alg(&[-6, 0, 1], 0);
        assert!(verify_relation(&[s2.clone(), s3.clone(), s6], &[1, 1, -1]).unwrap());
        assert!(!verify_relation(&[s2.clone(), s3.clone(), m6.clone()], &[1, 1, -1]).unwrap());
        // the same through the certified path
        let s6 = alg(&[-6, 0, 1], 1);
        assert!(verify_relation_certified(&[s2.clone(), s3.clone(), s6], &[1, 1, -1]).unwrap());
        assert!(!verify_relation_certified(&[s2, s3, m6], &[1, 1, -1]).unwrap());
        let c = alg(&[-2, 0, 0, 1], 0);
        assert!(verify_relation_certified(&[c.clone(), AlgebraicNumber::integer(2)], &[3, -1]).unwrap());
        assert!(!verify_relation_certified(&[c, AlgebraicNumber::integer(2)], &[2, -1]).unwrap());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_rational(&qs(&[-1, 5])).unwrap().s, 0);
        assert_eq!(rank_rational(&qs(&[2, 4, 7])).unwrap().s, 1);
        assert_eq!(rank_rational(&qs(&[2, 6, 3])).unwrap().s, 2);
        assert_eq!(rank_rational(&qs(&[6, 5, 10, 3])).unwrap().s, 3);
        assert_eq!(rank_rational(&qs(&[2, 3, 5])).unwrap().s, 3);
        let r = multiplicative_rank(&[alg(&[-2, 0, 1], 1), AlgebraicNumber::integer(2), AlgebraicNumber::integer(3)], 4).unwrap();
        assert_eq!(r.s, 1);
    }
}
