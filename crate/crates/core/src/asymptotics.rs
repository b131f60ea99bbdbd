//! Smooth numbers, the product equation, and the explicit rank `n - 1` construction.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::arith;
use crate::error::{invalid, Error, Result};

/// Count of `m <= x` with no prime factor above `y`.
pub fn psi_exact(x: u64, y: u64) -> Result<u64> {
    if y <= 2 || y > x {
        return Err(invalid("need 2 < y <= x"));
    }
    let primes = arith::primes_up_to(y);
    let mut memo = HashMap::new();
    Ok(psi_rec(x, primes.len(), &primes, &mut memo))
}

// Buchstab: psi(x, p_i) = psi(x, p_{i-1}) + psi(x / p_i, p_i).
fn psi_rec(x: u64, i: usize, primes: &[u64], memo: &mut HashMap<(u64, usize), u64>) -> u64 {
    if x == 0 {
        return 0;
    }
    if i == 0 || x == 1 {
        return 1;
    }
    if i == 1 {
        return 64 - x.leading_zeros() as u64;
    }
    let p = primes[i - 1];
    if p > x {
        let j = primes[..i].partition_point(|&q| q <= x);
        return psi_rec(x, j, primes, memo);
    }
    if let Some(&v) = memo.get(&(x, i)) {
        return v;
    }
    let v = psi_rec(x, i - 1, primes, memo) + psi_rec(x / p, i, primes, memo);
    memo.insert((x, i), v);
    v
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothEstimate {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub z: f64,
    /// `exp(Z)`.
    pub estimate: f64,
}

pub fn psi_debruijn(x: f64, y: f64) -> Result<SmoothEstimate> {
    if !(y > 2.0 && y <= x) {
        return Err(invalid("need 2 < y <= x"));
    }
    let (lx, ly) = (libm::log(x), libm::log(y));
    let z = libm::log(1.0 + y / lx) * lx / ly + libm::log(1.0 + lx / y) * y / ly;
    Ok(SmoothEstimate { x, y, u: lx / ly, z, estimate: libm::exp(z) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductEquationSpec {
    pub k: u32,
    pub q: u64,
    pub gammas: Vec<f64>,
    pub t: f64,
}

impl ProductEquationSpec {
    pub fn uniform(k: u32, q: u64, t: f64) -> Self {
        ProductEquationSpec { k, q, gammas: vec![1.0; k as usize], t }
    }

    fn bounds(&self) -> Result<Vec<u64>> {
        if self.k < 2 || self.q < 2 {
            return Err(invalid("need k >= 2 and q >= 2"));
        }
        if self.gammas.len() != self.k as usize || self.gammas.iter().any(|&g| !(g > 0.0)) {
            return Err(invalid("need k positive exponents"));
        }
        if !(self.t >= 2.0) {
            return Err(invalid("need T >= 2"));
        }
        Ok(self.gammas.iter().map(|&g| libm::floor(libm::pow(self.t, g) + 1e-9) as u64).collect())
    }
}

/// `#{t <= x : gcd(t, q) = 1}` by inclusion-exclusion over the primes of `q`.
fn coprime_count(x: u64, primes: &[u64]) -> u64 {
    let mut total = 0i64;
    for mask in 0u32..1 << primes.len() {
        let mut d = 1u64;
        for (j, p) in primes.iter().enumerate() {
            if mask >> j & 1 == 1 {
                d = d.saturating_mul(*p);
            }
        }
        let term = (x / d) as i64;
        total += if mask.count_ones() % 2 == 0 { term } else { -term };
    }
    total as u64
}

/// Solutions of `a_1 ... a_k = b_1 ... b_k` with `a_i, b_i <= T^gamma_i` and
/// `gcd(a_i b_i, q) = 1`.
pub fn product_equation_count(spec: &ProductEquationSpec, budget: f64) -> Result<u128> {
    let bounds = spec.bounds()?;
    let qp: Vec<u64> = arith::factor(spec.q).into_iter().map(|(p, _)| p).collect();
    if bounds.len() == 2 {
        // a_1 a_2 = b_1 b_2: with g = gcd(a_1, b_1), a_2 = (b_1/g) t and b_2 = (a_1/g) t.
        let (b1, b2) = (bounds[0], bounds[1]);
        if (b1 as f64) * (b1 as f64) > budget {
            return Err(Error::Budget { estimate: b1 as u128 * b1 as u128, budget: budget as u128 });
        }
        let ok: Vec<u64> = (1..=b1).filter(|&a| arith::gcd(a, spec.q) == 1).collect();
        let mut n = 0u128;
        for &a in &ok {
            for &b in &ok {
                let g = arith::gcd(a, b);
                n += coprime_count(b2 * g / a.max(b), &qp) as u128;
            }
        }
        return Ok(n);
    }
    let m: f64 = bounds.iter().map(|&b| b as f64).product();
    if m * bounds.len() as f64 > budget {
        return Err(Error::Budget { estimate: (m * bounds.len() as f64) as u128, budget: budget as u128 });
    }
    let r = representation_counts(&bounds, spec.q);
    Ok(r.iter().map(|&c| c as u128 * c as u128).sum())
}

/// `r[m] = #{(a_1..a_k) : prod a_i = m, a_i <= bounds[i], gcd(a_i, q) = 1}`.
fn representation_counts(bounds: &[u64], q: u64) -> Vec<u64> {
    let m: usize = bounds.iter().map(|&b| b as usize).product();
    let mut r = vec![0u64; m + 1];
    r[1] = 1;
    let mut top = 1usize;
    for &b in bounds {
        let mut next = vec![0u64; m + 1];
        for a in (1..=b as usize).filter(|&a| arith::gcd(a as u64, q) == 1) {
            for x in 1..=top {
                if r[x] != 0 {
                    next[a * x] += r[x];
                }
            }
        }
        top *= b as usize;
        r = next;
    }
    r
}

/// Construction parameters for rank `n - 1` tuples with `n = 2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundParams {
    pub k: usize,
    pub p: Vec<u64>,
    pub q: Vec<u64>,
}

impl LowerBoundParams {
    /// Smallest odd primes, alternating between the two sides: `p_2 = 3, q_2 = 5, ...`.
    pub fn default_for(n: usize) -> Result<Self> {
        if n < 4 || n % 2 == 1 {
            return Err(invalid("n must be even and at least 4"));
        }
        let k = n / 2;
        let odd: Vec<u64> = arith::primes_up_to(1000).into_iter().skip(1).take(2 * (k - 1)).collect();
        let p = odd.iter().step_by(2).copied().collect();
        let q = odd.iter().skip(1).step_by(2).copied().collect();
        LowerBoundParams::new(k, p, q)
    }

    pub fn new(k: usize, p: Vec<u64>, q: Vec<u64>) -> Result<Self> {
        if k < 2 || p.len() != k - 1 || q.len() != k - 1 {
            return Err(invalid("need k >= 2 and k - 1 primes per side"));
        }
        let mut all: Vec<u64> = p.iter().chain(&q).copied().collect();
        if all.iter().any(|&x| x < 3 || arith::factor(x) != [(x, 1)]) {
            return Err(invalid("primes must be odd primes"));
        }
        all.sort_unstable();
        all.dedup();
        if all.len() != 2 * (k - 1) {
            return Err(invalid("primes must be distinct"));
        }
        Ok(LowerBoundParams { k, p, q })
    }

    /// `2 p_2 ... p_k q_2 ... q_k`; the `a_i, b_i` must be coprime to it.
    pub fn modulus(&self) -> u64 {
        2 * self.p.iter().product::<u64>() * self.q.iter().product::<u64>()
    }

    /// Multipliers of `a_1..a_k` followed by those of `b_1..b_k`.
    pub fn prefactors(&self) -> Vec<u64> {
        let mut f = vec![2 * self.p.iter().product::<u64>()];
        f.extend(&self.q);
        f.push(2 * self.q.iter().product::<u64>());
        f.extend(&self.p);
        f
    }

    pub fn max_prefactor(&self) -> u64 {
        self.prefactors().into_iter().max().unwrap_or(1)
    }

    pub fn build(&self, a: &[u64], b: &[u64]) -> Vec<i64> {
        let f = self.prefactors();
        a.iter().chain(b).zip(&f).map(|(x, m)| (x * m) as i64).collect()
    }
}

/// All constructed tuples with `a_i, b_i <= t`.
pub fn lower_bound_generate(params: &LowerBoundParams, t: u64, budget: f64) -> Result<Vec<Vec<i64>>> {
    let k = params.k;
    let q = params.modulus();
    if libm::pow(t as f64, k as f64) > budget {
        return Err(Error::Budget { estimate: libm::pow(t as f64, k as f64) as u128, budget: budget as u128 });
    }
    let ok: Vec<u64> = (1..=t).filter(|&a| arith::gcd(a, q) == 1).collect();
    let mut by_product: HashMap<u64, Vec<Vec<u64>>> = HashMap::new();
    let mut idx = vec![0usize; k];
    if ok.is_empty() {
        return Ok(Vec::new());
    }
    loop {
        let v: Vec<u64> = idx.iter().map(|&i| ok[i]).collect();
        by_product.entry(v.iter().product()).or_default().push(v);
        let mut i = k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < ok.len() {
                break;
            }
            idx[i] = 0;
            if i == 0 {
                i = usize::MAX;
                break;
            }
        }
        if i == usize::MAX {
            break;
        }
    }
    let mut keys: Vec<u64> = by_product.keys().copied().collect();
    keys.sort_unstable();
    let mut out = Vec::new();
    for m in keys {
        let group = &by_product[&m];
        for a in group {
            for b in group {
                out.push(params.build(a, b));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusRow {
    pub n: usize,
    pub h: u64,
    pub t: u64,
    pub count: u128,
    /// `H^k (log H)^((k-1)^2)`.
    pub normalizer: f64,
    pub ratio: f64,
}

/// Number of constructed tuples with `a_i, b_i <= T = H / max prefactor`.
pub fn lower_bound_census(params: &LowerBoundParams, h: u64, budget: f64) -> Result<CensusRow> {
    let k = params.k;
    let t = h / params.max_prefactor();
    let count = if t >= 2 {
        product_equation_count(&ProductEquationSpec::uniform(k as u32, params.modulus(), t as f64), budget)?
    } else {
        u128::from(t == 1)
    };
    let lh = libm::log(h as f64);
    let normalizer = libm::pow(h as f64, k as f64) * libm::pow(lh, ((k - 1) * (k - 1)) as f64);
    Ok(CensusRow { n: 2 * k, h, t, count, normalizer, ratio: count as f64 / normalizer })
}
