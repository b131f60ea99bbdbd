//! Exact dependence for numbers of degree at most two, and rank-stratified
//! tuple counting.
//!
//! For `alpha` in a quadratic field, `alpha^2 = N(alpha) * (alpha / conj(alpha))`.
//! Modulo torsion the norm lives in the Galois-fixed part and the norm-one
//! quotient in the eigenspace of the field's character, and distinct fields
//! have distinct characters. A relation therefore holds exactly when it holds
//! on the rational norms and, field by field, on the norm-one quotients.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice;
use crate::multdep::{exponent_vector_rational, unit_exponent};
use crate::quadratic::{PrimeIdeal, QuadElem, QuadField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Prime(u64),
    Ideal(i64, PrimeIdeal),
}

/// Image of a nonzero number in the rational span of the multiplicative group modulo torsion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedded {
    pub torsion: bool,
    /// Sorted sparse integer coordinates.
    pub exact: Vec<(Coord, i64)>,
    /// Norm-one quotient in a real quadratic field, whose unit part is not
    /// captured by `exact`.
    pub unit: Option<QuadElem>,
}

fn prime_vector(q: &BigRational, scale: i64) -> Result<Vec<(Coord, i64)>> {
    let (_, v) = exponent_vector_rational(q)?;
    Ok(v.into_iter().map(|(p, e)| (Coord::Prime(p), scale * e)).collect())
}

pub fn embed_rational(q: &BigRational) -> Result<Embedded> {
    Ok(Embedded { torsion: q.abs().is_one(), exact: prime_vector(q, 2)?, unit: None })
}

pub fn embed_quadratic(x: &QuadElem) -> Result<Embedded> {
    if x.is_rational() {
        return embed_rational(&x.a);
    }
    let k = x.field();
    let mut exact = prime_vector(&x.norm(), 1)?;
    let beta = x.mul(&x.conj().inv().ok_or(Error::ZeroHeight)?);
    for (pi, v) in beta.valuations()? {
        exact.push((Coord::Ideal(k.m(), pi), v));
    }
    exact.sort();
    let unit = (k.is_real() && !beta.is_one() && !beta.neg().is_one()).then_some(beta);
    Ok(Embedded { torsion: x.is_torsion(), exact, unit })
}

/// Exact dependence of the given embedded numbers.
pub fn dependent(items: &[&Embedded]) -> Result<bool> {
    if items.iter().any(|e| e.torsion) {
        return Ok(true);
    }
    let mut coords: Vec<Coord> = items.iter().flat_map(|e| e.exact.iter().map(|c| c.0)).collect();
    coords.sort();
    coords.dedup();
    let rows: Vec<Vec<BigInt>> = items
        .iter()
        .map(|e| {
            let mut r = vec![BigInt::from(0); coords.len()];
            for (c, v) in &e.exact {
                r[coords.binary_search(c).unwrap()] = BigInt::from(*v);
            }
            r
        })
        .collect();
    let kernel = lattice::integer_kernel(&rows);
    if kernel.is_empty() {
        return Ok(false);
    }
    let mut fields: Vec<QuadField> = items.iter().filter_map(|e| e.unit.as_ref().map(QuadElem::field)).collect();
    fields.sort();
    fields.dedup();
    if fields.is_empty() {
        return Ok(true);
    }
    // Unit exponents of each kernel vector, one column per real field.
    let mut cols: Vec<Vec<BigInt>> = vec![Vec::new(); kernel.len()];
    for k in &fields {
        let eps = k.fundamental_unit().ok_or_else(|| Error::InvalidInput("field without units".into()))?;
        for (row, b) in cols.iter_mut().zip(&kernel) {
            let mut u = k.one();
            for (e, bi) in items.iter().zip(b) {
                if let Some(beta) = &e.unit {
                    if beta.field() == *k {
                        let ei: i64 = bi.try_into().map_err(|_| Error::Overflow("relation exponent".into()))?;
                        u = u.mul(&beta.pow(ei).ok_or(Error::ZeroHeight)?);
                    }
                }
            }
            row.push(BigInt::from(unit_exponent(&u, &eps)?));
        }
    }
    Ok(!lattice::integer_kernel(&cols).is_empty())
}

/// Non-torsion numbers grouped into orbits and dependence classes.
pub struct Universe {
    pub total: u128,
    pub torsion: u128,
    reps: Vec<Embedded>,
    weights: Vec<u128>,
    class: Vec<u32>,
    class_weight: Vec<u128>,
    words: usize,
    masks: Vec<u64>,
    sparse: Vec<Vec<(u32, i64)>>,
    has_units: bool,
}

fn primitive_direction(exact: &[(Coord, i64)]) -> Vec<(Coord, i64)> {
    let g = exact.iter().fold(0u64, |g, &(_, v)| crate::arith::gcd(g, v.unsigned_abs())) as i64;
    let sign = if exact.first().is_some_and(|&(_, v)| v < 0) { -1 } else { 1 };
    exact.iter().map(|&(c, v)| (c, sign * v / g.max(1))).collect()
}

impl Universe {
    pub fn build(elements: impl IntoIterator<Item = Embedded>) -> Result<Self> {
        let mut total = 0u128;
        let mut torsion = 0u128;
        let mut index: HashMap<Embedded, usize> = HashMap::new();
        let mut reps = Vec::new();
        let mut weights: Vec<u128> = Vec::new();
        for e in elements {
            total += 1;
            if e.torsion {
                torsion += 1;
                continue;
            }
            match index.get(&e) {
                Some(&i) => weights[i] += 1,
                None => {
                    index.insert(e.clone(), reps.len());
                    reps.push(e);
                    weights.push(1);
                }
            }
        }
        // Dependence of non-torsion numbers is an equivalence relation.
        let mut groups: BTreeMap<Vec<(Coord, i64)>, Vec<u32>> = BTreeMap::new();
        let mut class_rep: Vec<usize> = Vec::new();
        let mut class = Vec::with_capacity(reps.len());
        let mut class_weight: Vec<u128> = Vec::new();
        for (i, e) in reps.iter().enumerate() {
            let key = primitive_direction(&e.exact);
            let list = groups.entry(key).or_default();
            let mut found = None;
            for &c in list.iter() {
                let r = &reps[class_rep[c as usize]];
                if (r.unit.is_none() && e.unit.is_none()) || dependent(&[r, e])? {
                    found = Some(c);
                    break;
                }
            }
            let c = match found {
                Some(c) => c,
                None => {
                    let c = class_rep.len() as u32;
                    class_rep.push(i);
                    class_weight.push(0);
                    list.push(c);
                    c
                }
            };
            class.push(c);
            class_weight[c as usize] += weights[i];
        }
        let mut ids: BTreeMap<Coord, u32> = BTreeMap::new();
        for e in &reps {
            for (c, _) in &e.exact {
                let n = ids.len() as u32;
                ids.entry(*c).or_insert(n);
            }
        }
        let words = ids.len().div_ceil(64).max(1);
        let mut masks = vec![0u64; words * reps.len()];
        let mut sparse = Vec::with_capacity(reps.len());
        for (i, e) in reps.iter().enumerate() {
            let s: Vec<(u32, i64)> = e.exact.iter().map(|(c, v)| (ids[c], *v)).collect();
            for &(id, _) in &s {
                masks[i * words + id as usize / 64] |= 1 << (id % 64);
            }
            sparse.push(s);
        }
        let has_units = reps.iter().any(|e| e.unit.is_some());
        Ok(Universe { total, torsion, reps, weights, class, class_weight, words, masks, sparse, has_units })
    }

    pub fn representatives(&self) -> usize {
        self.reps.len()
    }

    pub fn classes(&self) -> usize {
        self.class_weight.len()
    }

    fn mask(&self, i: usize) -> &[u64] {
        &self.masks[i * self.words..(i + 1) * self.words]
    }

    /// Each coordinate used by the subset appears in at least two members.
    fn support_closed(&self, idx: &[usize]) -> bool {
        for w in 0..self.words {
            let mut once = 0u64;
            let mut twice = 0u64;
            for &i in idx {
                let m = self.mask(i)[w];
                twice |= once & m;
                once |= m;
            }
            if once != twice {
                return false;
            }
        }
        true
    }

    /// Dependence of distinct representatives with pairwise distinct classes.
    fn subset_dependent(&self, idx: &[usize]) -> Result<bool> {
        if !self.support_closed(idx) {
            return Ok(false);
        }
        if !self.has_units {
            let mut cols: Vec<u32> = idx.iter().flat_map(|&i| self.sparse[i].iter().map(|c| c.0)).collect();
            cols.sort_unstable();
            cols.dedup();
            let rows: Vec<Vec<i64>> = idx
                .iter()
                .map(|&i| {
                    let mut r = vec![0i64; cols.len()];
                    for &(c, v) in &self.sparse[i] {
                        r[cols.binary_search(&c).unwrap()] = v;
                    }
                    r
                })
                .collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            if let Some(r) = lattice::rank_small(&refs) {
                return Ok(r < idx.len());
            }
        }
        let items: Vec<&Embedded> = idx.iter().map(|&i| &self.reps[i]).collect();
        dependent(&items)
    }

    /// Rank of a tuple of representatives given as a nondecreasing index list;
    /// `None` when independent.
    pub fn rank_of(&self, idx: &[usize]) -> Result<Option<usize>> {
        let n = idx.len();
        for a in 0..n {
            for b in a + 1..n {
                if self.class[idx[a]] == self.class[idx[b]] {
                    return Ok(Some(1));
                }
            }
        }
        let mut sub: Vec<usize> = Vec::with_capacity(n);
        for size in 3..=n {
            let mut pos: Vec<usize> = (0..size).collect();
            loop {
                sub.clear();
                sub.extend(pos.iter().map(|&p| idx[p]));
                if self.subset_dependent(&sub)? {
                    return Ok(Some(size - 1));
                }
                let mut i = size;
                while i > 0 && pos[i - 1] == n - size + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                pos[i - 1] += 1;
                for j in i..size {
                    pos[j] = pos[j - 1] + 1;
                }
            }
        }
        Ok(None)
    }

    /// Number of multisets of size `n` over the representatives.
    pub fn multiset_count(&self, n: u32) -> f64 {
        let r = self.reps.len() as f64;
        (0..n).fold(1.0, |acc, i| acc * (r + i as f64) / (i as f64 + 1.0))
    }

    /// Strata of ordered `n`-tuples over this universe, restricted to the
    /// shard `shard` of `shards` (partitioned by the first multiset index).
    ///
    /// The rank-0 stratum comes from the closed form and is only added by shard 0.
    pub fn count(&self, n: u32, shard: usize, shards: usize) -> Result<Vec<u128>> {
        let n = n as usize;
        let mut strata = vec![0u128; n];
        if shard == 0 {
            strata[0] = rank_zero(self.total, self.torsion, n as u32);
        }
        if n == 2 {
            if shard == 0 {
                strata[1] = self.class_weight.iter().map(|w| w * w).sum();
            }
            return Ok(strata);
        }
        let r = self.reps.len();
        if r == 0 {
            return Ok(strata);
        }
        let fact: Vec<u128> = (0..=n as u128).scan(1u128, |f, i| {
            if i > 0 {
                *f *= i;
            }
            Some(*f)
        }).collect();
        let mut idx = vec![0usize; n];
        let mut first = true;
        loop {
            if !first {
                // next nondecreasing sequence
                let mut i = n;
                loop {
                    if i == 0 {
                        return Ok(strata);
                    }
                    i -= 1;
                    if idx[i] + 1 < r {
                        break;
                    }
                }
                let v = idx[i] + 1;
                for x in &mut idx[i..] {
                    *x = v;
                }
            }
            first = false;
            if idx[0] % shards != shard {
                // skip the whole block with this first index
                let next = idx[0] + 1;
                if next >= r {
                    return Ok(strata);
                }
                let target = next + (shards + shard - next % shards) % shards;
                if target >= r {
                    return Ok(strata);
                }
                idx.iter_mut().for_each(|x| *x = target);
                first = true;
                continue;
            }
            let s = if idx.windows(2).any(|w| w[0] == w[1]) { Some(1) } else { self.rank_of(&idx)? };
            if let Some(s) = s {
                // ordered tuples for this multiset
                let mut count = fact[n];
                let mut run = 1;
                let mut weight = 1u128;
                for j in 0..n {
                    weight *= self.weights[idx[j]];
                    if j + 1 < n && idx[j + 1] == idx[j] {
                        run += 1;
                    } else {
                        count /= fact[run];
                        run = 1;
                    }
                }
                strata[s] += count * weight;
            }
        }
    }
}

/// Tuples with at least one torsion coordinate: `N^n - (N - w)^n`.
pub fn rank_zero(total: u128, torsion: u128, n: u32) -> u128 {
    total.pow(n) - (total - torsion).pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::AlgebraicNumber;
    use crate::multdep;
    use crate::poly::IntPolynomial;

    fn qr(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn mixed_fields() {
        let k2 = QuadField::new(2).unwrap();
        let k3 = QuadField::new(3).unwrap();
        let k6 = QuadField::new(6).unwrap();
        let s2 = embed_quadratic(&k2.from_ints(0, 1)).unwrap();
        let s3 = embed_quadratic(&k3.from_ints(0, 1)).unwrap();
        let s6 = embed_quadratic(&k6.from_ints(0, 1)).unwrap();
        assert!(dependent(&[&s2, &s3, &s6]).unwrap());
        assert!(!dependent(&[&s2, &s3]).unwrap());
        let e2 = embed_quadratic(&k2.from_ints(1, 1)).unwrap();
        let e3 = embed_quadratic(&k3.from_ints(2, 1)).unwrap();
        assert!(!dependent(&[&e2, &e3]).unwrap());
        assert!(!dependent(&[&e2, &s2]).unwrap());
        let e2sq = embed_quadratic(&k2.from_ints(3, 2)).unwrap();
        assert!(dependent(&[&e2, &e2sq]).unwrap());
        // sqrt(2) and i sqrt(2)
        let gi = QuadField::new(-2).unwrap();
        let is2 = embed_quadratic(&gi.from_ints(0, 1)).unwrap();
        assert!(dependent(&[&s2, &is2]).unwrap());
        let two = embed_rational(&qr(2)).unwrap();
        assert!(dependent(&[&s2, &two]).unwrap());
    }

    #[test]
    fn agrees_with_bounded_search() {
        // Triples of small quadratic numbers from two fields and the rationals.
        let k2 = QuadField::new(2).unwrap();
        let kn = QuadField::new(-1).unwrap();
        let pool = [k2.from_ints(1, 1), k2.from_ints(0, 1), k2.from_ints(2, 1), kn.from_ints(1, 1), kn.from_ints(2, 1), k2.rational(qr(2)), k2.rational(qr(3))];
        for a in 0..pool.len() {
            for b in a + 1..pool.len() {
                for c in b + 1..pool.len() {
                    let t = [&pool[a], &pool[b], &pool[c]];
                    let emb: Vec<Embedded> = t.iter().map(|x| embed_quadratic(x).unwrap()).collect();
                    let refs: Vec<&Embedded> = emb.iter().collect();
                    let algs: Vec<AlgebraicNumber> = t.iter().map(|x| x.to_algebraic()).collect();
                    let bounded = multdep::dependence_bounded(&algs, 8).unwrap().is_some();
                    assert_eq!(dependent(&refs).unwrap(), bounded, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn small_rational_counts() {
        let u = Universe::build((1..=3).flat_map(|m| [qr(m), qr(-m)]).map(|q| embed_rational(&q).unwrap())).unwrap();
        assert_eq!(u.count(2, 0, 1).unwrap(), vec![20, 8]);
        assert_eq!(u.representatives(), 2);
        // n = 3 by brute force over ordered triples
        let vals: Vec<i64> = vec![1, -1, 2, -2, 3, -3];
        let mut strata = [0u128; 3];
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    let r = multdep::rank_rational(&[qr(a), qr(b), qr(c)]).unwrap();
                    if r.s < 3 {
                        strata[r.s] += 1;
                    }
                }
            }
        }
        assert_eq!(u.count(3, 0, 1).unwrap(), strata.to_vec());
    }

    #[test]
    fn sharding_is_exact() {
        let u = Universe::build((1..=12).flat_map(|m| [qr(m), qr(-m)]).map(|q| embed_rational(&q).unwrap())).unwrap();
        let whole = u.count(3, 0, 1).unwrap();
        let mut merged = vec![0u128; 3];
        for s in 0..3 {
            for (m, x) in merged.iter_mut().zip(u.count(3, s, 3).unwrap()) {
                *m += x;
            }
        }
        assert_eq!(whole, merged);
    }

    #[test]
    fn polynomial_roots_embed() {
        let f = IntPolynomial::from_i64(&[-2, 0, 1]).unwrap();
        let a = AlgebraicNumber::new(f, 1).unwrap();
        let k = QuadField::new(2).unwrap();
        let x = k.from_algebraic(&a).unwrap();
        assert!(!embed_quadratic(&x).unwrap().torsion);
        assert!(embed_quadratic(&QuadField::new(-3).unwrap().omega()).unwrap().torsion);
    }
}
