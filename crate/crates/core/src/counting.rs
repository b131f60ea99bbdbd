//! Counts of multiplicatively dependent tuples, stratified by rank.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::algnum::AlgebraicNumber;
use crate::arith;
use crate::enumerate::{self, BaseField, EnumerationSpec, Mode, Stream};
use crate::error::{invalid, Error, Result};
use crate::fields::{self, ErrorExponents};
use crate::multdep::{self, BoundedBackend};
use crate::quadratic::QuadField;
use crate::real::Real;
use crate::tuples::{self, Embedded, Universe};

pub const DEFAULT_BUDGET: f64 = 1e9;
const PREC: u32 = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Setting {
    Field(BaseField),
    Degree(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountParams {
    pub integers: bool,
    pub setting: Setting,
    pub n: u32,
    pub h: BigRational,
}

impl CountParams {
    pub fn mode(&self) -> Mode {
        match (self.setting, self.integers) {
            (Setting::Field(_), true) => Mode::IntegersInField,
            (Setting::Field(_), false) => Mode::NumbersInField,
            (Setting::Degree(_), true) => Mode::IntegersOfDegree,
            (Setting::Degree(_), false) => Mode::NumbersOfDegree,
        }
    }

    pub fn mode_label(&self) -> &'static str {
        if self.integers {
            "integers"
        } else {
            "numbers"
        }
    }

    pub fn setting_label(&self) -> String {
        match self.setting {
            Setting::Field(None) => "Q".into(),
            Setting::Field(Some(k)) => alloc::format!("Q(sqrt({}))", k.m()),
            Setting::Degree(d) => alloc::format!("d={d}"),
        }
    }

    fn spec(&self) -> EnumerationSpec {
        match self.setting {
            Setting::Field(k) => EnumerationSpec::field(self.mode(), k, self.h.clone()),
            Setting::Degree(d) => EnumerationSpec::degree(self.mode(), d, self.h.clone()),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(invalid("n must be at least 2"));
        }
        self.spec().validate()
    }
}

#[derive(Clone, Debug)]
pub struct CountRecord {
    pub params: CountParams,
    pub total: u128,
    /// `strata[s]` counts dependent tuples of rank `s`.
    pub strata: Vec<u128>,
    /// Tuples whose dependence could not be certified; must be zero for a valid run.
    pub undecided: u128,
    pub main_term: Real,
    /// `None` when the main term vanishes.
    pub ratio: Option<Real>,
    pub elapsed: f64,
}

impl CountRecord {
    fn new(params: CountParams, strata: Vec<u128>, undecided: u128) -> Result<Self> {
        let main_term = main_term(&params, PREC)?;
        let mut r = CountRecord { params, total: 0, strata, undecided, main_term, ratio: None, elapsed: 0.0 };
        r.finish();
        Ok(r)
    }

    fn finish(&mut self) {
        self.total = self.strata.iter().sum();
        let t = Real::from_int(BigInt::from(self.total), PREC);
        self.ratio = t.div(&self.main_term);
    }

    /// Component-wise sum of two shards of the same run.
    pub fn merge(&mut self, other: &CountRecord) -> Result<()> {
        if self.params != other.params {
            return Err(invalid("cannot merge records of different runs"));
        }
        for (a, b) in self.strata.iter_mut().zip(&other.strata) {
            *a += b;
        }
        self.undecided += other.undecided;
        self.elapsed = self.elapsed.max(other.elapsed);
        self.finish();
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.undecided == 0 && self.total == self.strata.iter().sum::<u128>()
    }
}

fn invariants(k: BaseField, prec: u32) -> Result<fields::FieldInvariants> {
    match k {
        None => Ok(fields::invariants_rationals(prec)),
        Some(k) => fields::invariants_quadratic(k.m(), prec),
    }
}

fn pow_h(h: &BigRational, e: u32, prec: u32) -> Real {
    Real::from_rational(&h.pow(e as i32), prec)
}

/// Leading term of the count for `params`.
pub fn main_term(params: &CountParams, prec: u32) -> Result<Real> {
    let p = prec + 16;
    let n = params.n;
    let h = &params.h;
    let v = match (params.setting, params.integers) {
        (Setting::Field(k), true) => {
            let inv = invariants(k, p)?;
            let mut v = fields::c3(n, &inv, p).mul(&pow_h(h, inv.d * (n - 1), p));
            let e = inv.r * (n - 1);
            if e > 0 {
                let lh = Real::from_rational(h, p).ln().ok_or(Error::ZeroHeight)?;
                v = v.mul(&lh.powi(e));
            }
            v
        }
        (Setting::Field(k), false) => {
            let inv = invariants(k, p)?;
            fields::c4(n, &inv, p).mul(&pow_h(h, 2 * inv.d * (n - 1), p))
        }
        (Setting::Degree(d), true) => Real::from_rational(&fields::c7(n, d), p).mul(&pow_h(h, d * d * (n - 1), p)),
        (Setting::Degree(d), false) => fields::c8(n, d, p).mul(&pow_h(h, d * (d + 1) * (n - 1), p)),
    };
    Ok(v.with_prec(prec))
}

/// Budget for one run, in dependence tests.
#[derive(Clone, Copy, Debug)]
pub struct Budget(pub f64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

fn check_budget(estimate: f64, budget: Budget) -> Result<()> {
    if estimate > budget.0 {
        return Err(Error::Budget { estimate: estimate.min(u128::MAX as f64) as u128, budget: budget.0 as u128 });
    }
    Ok(())
}

fn embed_stream(stream: &Stream) -> Result<Vec<Embedded>> {
    match stream {
        Stream::RationalIntegers(v) => v.iter().map(|&m| tuples::embed_rational(&BigRational::from_integer(m.into()))).collect(),
        Stream::RationalNumbers(v) => v.iter().map(tuples::embed_rational).collect(),
        Stream::Quadratic(_, v) => v.iter().map(tuples::embed_quadratic).collect(),
        Stream::Polynomials(v) => {
            let mut out = Vec::new();
            for f in v {
                let c = f.coeffs();
                match f.degree() {
                    1 => out.push(tuples::embed_rational(&BigRational::new(-c[0].clone(), c[1].clone()))?),
                    2 => {
                        let disc = f.discriminant().to_i64().ok_or_else(|| Error::Overflow("discriminant".into()))?;
                        let k = QuadField::new(arith::squarefree_part(disc))?;
                        for idx in 0..2 {
                            let x = k.from_quadratic_root(&c[2], &c[1], &c[0], idx).ok_or_else(|| invalid("root outside field"))?;
                            out.push(tuples::embed_quadratic(&x)?);
                        }
                    }
                    d => return Err(Error::UnsupportedDegree(d as usize)),
                }
            }
            Ok(out)
        }
    }
}

enum Engine {
    Exact(Universe),
    /// Degree three and up: bounded search over all ordered tuples.
    Bounded { numbers: Vec<AlgebraicNumber>, bound: u32 },
}

/// A prepared count: the universe is built once and shards run against it.
pub struct CountJob {
    pub params: CountParams,
    engine: Engine,
}

/// Search bound for tuples that need bounded search: `max(8, ceil((log 2H)^2))`.
pub fn search_bound(h: &BigRational) -> u32 {
    let l = libm::log(2.0 * h.to_f64().unwrap_or(f64::MAX));
    (libm::ceil(l * l) as u32).max(8)
}

impl CountJob {
    pub fn prepare(params: CountParams, budget: Budget) -> Result<Self> {
        params.validate()?;
        if let Setting::Degree(d) = params.setting {
            let monic = params.integers;
            check_budget(enumerate::degree_box_size(d, &params.h, monic), budget)?;
        }
        let stream = enumerate::enumerate(&params.spec())?;
        let engine = match stream {
            Stream::Polynomials(ref v) if v.iter().any(|f| f.degree() > 2) => {
                let numbers = stream.algebraic_numbers();
                check_budget(libm::pow(numbers.len() as f64, params.n as f64), budget)?;
                Engine::Bounded { numbers, bound: search_bound(&params.h) }
            }
            _ => {
                let u = Universe::build(embed_stream(&stream)?)?;
                let est = if params.n == 2 { u.representatives() as f64 } else { u.multiset_count(params.n) };
                check_budget(est, budget)?;
                Engine::Exact(u)
            }
        };
        Ok(CountJob { params, engine })
    }

    /// Number of enumerated numbers.
    pub fn population(&self) -> u128 {
        match &self.engine {
            Engine::Exact(u) => u.total,
            Engine::Bounded { numbers, .. } => numbers.len() as u128,
        }
    }

    /// Roots of unity among the enumerated numbers.
    pub fn torsion(&self) -> u128 {
        match &self.engine {
            Engine::Exact(u) => u.torsion,
            Engine::Bounded { numbers, .. } => numbers.iter().filter(|x| x.is_root_of_unity()).count() as u128,
        }
    }

    pub fn run_shard(&self, shard: usize, shards: usize) -> Result<CountRecord> {
        if shards == 0 || shard >= shards {
            return Err(invalid("shard index out of range"));
        }
        let n = self.params.n;
        let (strata, undecided) = match &self.engine {
            Engine::Exact(u) => (u.count(n, shard, shards)?, 0),
            Engine::Bounded { numbers, bound } => bounded_count(numbers, n, *bound, shard, shards)?,
        };
        CountRecord::new(self.params.clone(), strata, undecided)
    }

    pub fn run(&self) -> Result<CountRecord> {
        self.run_shard(0, 1)
    }
}

fn bounded_count(numbers: &[AlgebraicNumber], n: u32, bound: u32, shard: usize, shards: usize) -> Result<(Vec<u128>, u128)> {
    let n = n as usize;
    let len = numbers.len();
    let mut strata = vec![0u128; n];
    let mut undecided = 0u128;
    if len == 0 {
        return Ok((strata, 0));
    }
    let mut idx = vec![0usize; n];
    let mut tuple: Vec<AlgebraicNumber> = Vec::with_capacity(n);
    loop {
        if idx[0] % shards == shard {
            tuple.clear();
            tuple.extend(idx.iter().map(|&i| numbers[i].clone()));
            match multdep::rank_with(&BoundedBackend { tuple: &tuple, bound }) {
                Ok(r) if r.s < n => strata[r.s] += 1,
                Ok(_) => {}
                Err(Error::Undecided { .. }) => undecided += 1,
                Err(e) => return Err(e),
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok((strata, undecided));
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < len {
                break;
            }
            idx[i] = 0;
        }
    }
}

pub fn count_field(integers: bool, field: BaseField, n: u32, h: BigRational, budget: Budget) -> Result<CountRecord> {
    CountJob::prepare(CountParams { integers, setting: Setting::Field(field), n, h }, budget)?.run()
}

pub fn count_degree(integers: bool, d: u32, n: u32, h: BigRational, budget: Budget) -> Result<CountRecord> {
    CountJob::prepare(CountParams { integers, setting: Setting::Degree(d), n, h }, budget)?.run()
}

/// Pairs over the rationals in time about linear in `H` (integers) or `H^2` (numbers).
///
/// Non-torsion rationals `a, b` are dependent exactly when `|a|` and `|b|` are
/// powers of a common base, so rank one pairs are sums of squared class sizes.
pub fn fast_count_pairs_rationals(integers: bool, h: u64) -> Result<CountRecord> {
    if h == 0 {
        return Err(invalid("height bound must be at least 1"));
    }
    let r = arith::isqrt(h);
    // powers[c] = number of j >= 1 with c^j <= h (only needed for c <= sqrt h)
    let powers = |c: u64| -> u128 {
        let mut j = 0;
        let mut x = 1u64;
        while let Some(y) = x.checked_mul(c).filter(|&y| y <= h) {
            x = y;
            j += 1;
        }
        j
    };
    let (total, s1) = if integers {
        let mut is_power = vec![false; h as usize + 1];
        for c in 2..=r {
            let mut x = c * c;
            while x <= h {
                is_power[x as usize] = true;
                match x.checked_mul(c) {
                    Some(y) => x = y,
                    None => break,
                }
            }
        }
        let mut s1 = 0u128;
        for c in 2..=h {
            if !is_power[c as usize] {
                let size = 2 * if c <= r { powers(c) } else { 1 };
                s1 += size * size;
            }
        }
        (2 * h as u128, s1)
    } else {
        let phi = totients(h as usize);
        let total = 2 * (2 * phi[1..].iter().map(|&x| x as u128).sum::<u128>() - 1);
        // Fractions c/e > 1 that are not common perfect powers are class bases.
        let mut nonbase = vec![0u32; h as usize + 1];
        let mut small: hashbrown::HashSet<(u64, u64)> = hashbrown::HashSet::new();
        let mut s1 = 0u128;
        for c in 2..=h {
            if c <= r {
                let j = powers(c);
                let size = 4 * j;
                for e in 1..c {
                    if arith::gcd(c, e) != 1 || small.contains(&(c, e)) {
                        continue;
                    }
                    s1 += size * size;
                    let (mut cp, mut ep) = (c, e);
                    for _ in 2..=j {
                        cp *= c;
                        ep *= e;
                        nonbase[cp as usize] += 1;
                        if cp <= r {
                            small.insert((cp, ep));
                        }
                    }
                }
            } else {
                s1 += 16 * (phi[c as usize] as u128 - nonbase[c as usize] as u128);
            }
        }
        (total, s1)
    };
    let s0 = tuples::rank_zero(total, 2, 2);
    let params = CountParams { integers, setting: Setting::Field(None), n: 2, h: BigRational::from_integer(h.into()) };
    CountRecord::new(params, vec![s0, s1], 0)
}

fn totients(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            let mut j = i;
            while j <= n {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    phi
}

/// Exhaustive count over ordered tuples with the exact dependence oracle of
/// each tuple (quadratic fields or rationals) and bounded search otherwise.
///
/// Independent of the class and orbit machinery; used to validate it.
pub fn count_exhaustive(params: CountParams, budget: Budget) -> Result<CountRecord> {
    params.validate()?;
    let numbers = enumerate::enumerate(&params.spec())?.algebraic_numbers();
    let n = params.n as usize;
    check_budget(libm::pow(numbers.len() as f64, n as f64), budget)?;
    let bound = search_bound(&params.h);
    let mut strata = vec![0u128; n];
    let mut undecided = 0u128;
    let mut idx = vec![0usize; n];
    let len = numbers.len();
    let mut tuple = Vec::with_capacity(n);
    'outer: while len > 0 {
        tuple.clear();
        tuple.extend(idx.iter().map(|&i| numbers[i].clone()));
        match multdep::multiplicative_rank(&tuple, bound) {
            Ok(r) if r.s < n => strata[r.s] += 1,
            Ok(_) => {}
            Err(Error::Undecided { .. }) => undecided += 1,
            Err(e) => return Err(e),
        }
        let mut i = n;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < len {
                break;
            }
            idx[i] = 0;
        }
    }
    CountRecord::new(params, strata, undecided)
}

/// Stratum sizes against the exponent of the upper bound for rank `s >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct StratumReport {
    pub s: usize,
    pub count: u128,
    pub empirical: Option<f64>,
    pub bound: f64,
    pub ok: bool,
}

pub const STRATUM_SLACK: f64 = 0.3;

/// Exponent `D(n-1) - e(ceil((s+1)/2) - 1)` with `D = d, e = d` for fields of
/// degree `d` and `D = d^2, e = d` in degree mode.
pub fn stratum_exponent(setting: Setting, n: u32, s: u32) -> f64 {
    let (big, small) = match setting {
        Setting::Field(None) => (1.0, 1.0),
        Setting::Field(Some(_)) => (2.0, 2.0),
        Setting::Degree(d) => ((d * d) as f64, d as f64),
    };
    big * (n - 1) as f64 - small * ((s + 2) / 2 - 1) as f64
}

pub fn stratum_bound_check(record: &CountRecord) -> Result<Vec<StratumReport>> {
    if !record.params.integers {
        return Err(invalid("stratum bounds are stated for integers"));
    }
    let h = record.params.h.to_f64().unwrap_or(f64::MAX);
    let mut out = Vec::new();
    for (s, &count) in record.strata.iter().enumerate().skip(2) {
        let bound = stratum_exponent(record.params.setting, record.params.n, s as u32);
        let empirical = (count > 0 && h > 1.0).then(|| libm::log(count as f64) / libm::log(h));
        let ok = empirical.is_none_or(|e| e <= bound + STRATUM_SLACK);
        out.push(StratumReport { s, count, empirical, bound, ok });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MainTermRow {
    pub main_term: Real,
    pub ratio: Option<Real>,
    pub error_exponents: Option<ErrorExponents>,
    /// Power of `H` in the main term.
    pub exponent: u32,
}

pub fn compare_main_term(record: &CountRecord) -> MainTermRow {
    let n = record.params.n;
    let (exponent, ee) = match (record.params.setting, record.params.integers) {
        (Setting::Field(k), true) => {
            let d = if k.is_some() { 2 } else { 1 };
            (d * (n - 1), Some(ErrorExponents::for_degree(d)))
        }
        (Setting::Field(k), false) => {
            let d = if k.is_some() { 2 } else { 1 };
            (2 * d * (n - 1), Some(ErrorExponents::for_degree(d)))
        }
        (Setting::Degree(d), true) => (d * d * (n - 1), None),
        (Setting::Degree(d), false) => (d * (d + 1) * (n - 1), None),
    };
    MainTermRow { main_term: record.main_term.clone(), ratio: record.ratio.clone(), error_exponents: ee, exponent }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedCoeffReport {
    pub count: u64,
    pub empirical: Option<f64>,
}

/// Elements of the field of height at most `h` whose minimal polynomial has
/// leading coefficient `u` and constant coefficient `v`.
pub fn count_fixed_coeffs(field: BaseField, u: u64, v: i64, h: &BigRational) -> Result<FixedCoeffReport> {
    if u == 0 || v == 0 {
        return Err(invalid("u and v must be nonzero"));
    }
    let spec = EnumerationSpec::field(Mode::NumbersInField, field, h.clone());
    let (u, v) = (BigInt::from(u), BigInt::from(v));
    let count = enumerate::enumerate(&spec)?
        .keys()
        .iter()
        .filter(|(f, _)| *f.leading() == u && *f.constant() == v)
        .count() as u64;
    let hf = h.to_f64().unwrap_or(f64::MAX);
    let empirical = (count > 0 && hf > 1.0).then(|| libm::log(count as f64) / libm::log(hf));
    Ok(FixedCoeffReport { count, empirical })
}

/// `N^n - (N - w)^n` for a finished job.
pub fn rank_zero_closed_form(job: &CountJob) -> u128 {
    tuples::rank_zero(job.population(), job.torsion(), job.params.n)
}
