use std::cmp::Ordering;

use multdep_core::algnum::{self, AlgebraicNumber};
use multdep_core::multdep;
use multdep_core::poly::{self, IntPolynomial};
use multdep_core::real::Real;
use multdep_core::special;
use multdep_core::tuples;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Outcome;

fn rat(a: i64) -> BigRational {
    BigRational::from_integer(a.into())
}

/// Kernel certificate versus the torsion-free embedding; certificates re-verified.
fn compare(tuple: &[BigRational]) -> (bool, bool) {
    let cert = multdep::dependence_rational(tuple).unwrap();
    let emb: Vec<_> = tuple.iter().map(|q| tuples::embed_rational(q).unwrap()).collect();
    let refs: Vec<_> = emb.iter().collect();
    let agree = cert.is_some() == tuples::dependent(&refs).unwrap();
    let cert_ok = match cert {
        None => true,
        Some(c) => {
            c.verified && c.relation.iter().any(|&k| k != 0) && multdep::verify_relation_rational(tuple, &c.relation).unwrap()
        }
    };
    (agree, cert_ok)
}

pub fn oracle_equivalence() -> Outcome {
    let nz = |r: i64| (-r..=r).filter(|&x| x != 0).collect::<Vec<_>>();
    let (mut checked, mut disagree, mut bad_cert) = (0, 0, 0);
    let mut tally = |t: &[BigRational]| {
        let (a, c) = compare(t);
        checked += 1;
        disagree += usize::from(!a);
        bad_cert += usize::from(!c);
    };
    for &a in &nz(20) {
        for &b in &nz(20) {
            tally(&[rat(a), rat(b)]);
        }
    }
    for &a in &nz(8) {
        for &b in &nz(8) {
            for &c in &nz(8) {
                tally(&[rat(a), rat(b), rat(c)]);
            }
        }
    }
    Outcome::new(
        disagree == 0 && bad_cert == 0,
        format!("{checked} tuples, {disagree} disagreements, {bad_cert} failed certificates"),
    )
}

fn random_number(rng: &mut ChaCha8Rng) -> AlgebraicNumber {
    loop {
        let d = rng.gen_range(1..=3usize);
        let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-10..=10)).collect();
        if c[d] == 0 || c[0] == 0 {
            continue;
        }
        let f = IntPolynomial::from_i64(&c).unwrap();
        // keep the sampled coefficients as the minimal polynomial
        if f.naive_height() != BigInt::from(c.iter().map(|x| x.abs()).max().unwrap()) {
            continue;
        }
        if let Ok(x) = AlgebraicNumber::new(f, rng.gen_range(0..d)) {
            return x;
        }
    }
}

pub fn height_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let prec = 64;
    let (mut v_power, mut v_naive, mut v_scaled) = (0, 0, 0);
    for _ in 0..10_000 {
        let x = random_number(&mut rng);
        let d = x.degree() as u32;
        let mut k = rng.gen_range(1..=3i64);
        if rng.gen_bool(0.5) {
            k = -k;
        }
        let from_rule = x.height_of_power(k, prec).unwrap();
        let direct = x.power(k).unwrap().weil_height(prec).unwrap();
        let exact_ok = x.as_rational().is_none() || (from_rule.is_exact() && direct.is_exact());
        if !from_rule.intersects(&direct) || !exact_ok {
            v_power += 1;
        }
        let h = x.weil_height(prec).unwrap();
        let naive = Real::from_int(x.naive_height(), prec);
        if h.mul_int(&BigInt::from(2)).powi(d).certified_cmp(&naive) == Some(Ordering::Less) {
            v_naive += 1;
        }
        let scaled = x.scale_by_leading().unwrap().weil_height(prec).unwrap();
        let bound = h.powi(d).mul_int(&BigInt::from(1u64 << (d - 1)));
        if scaled.certified_cmp(&bound) == Some(Ordering::Greater) {
            v_scaled += 1;
        }
    }
    Outcome::new(
        v_power + v_naive + v_scaled == 0,
        format!("10000 numbers; violations: power {v_power}, naive height {v_naive}, leading scale {v_scaled}"),
    )
}

fn eval(c: &[i64], x: i64) -> i64 {
    c.iter().rev().fold(0, |acc, &a| acc * x + a)
}

/// Synthetic division by `x - r`.
fn deflate(c: &[i64], r: i64) -> Vec<i64> {
    let n = c.len() - 1;
    let mut q = vec![0; n];
    let mut carry = 0;
    for i in (0..n).rev() {
        carry = c[i + 1] + carry * r;
        q[i] = carry;
    }
    q
}

/// Distinct integer roots and the monic factor left without rational roots.
fn split_rational(c: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let mut c = c.to_vec();
    let mut roots = Vec::new();
    'outer: while c.len() > 1 {
        let c0 = c[0].abs();
        let cands: Vec<i64> = if c0 == 0 { vec![0] } else { (1..=c0).filter(|r| c0 % r == 0).flat_map(|r| [r, -r]).collect() };
        for r in cands {
            if eval(&c, r) == 0 {
                if !roots.contains(&r) {
                    roots.push(r);
                }
                c = deflate(&c, r);
                continue 'outer;
            }
        }
        break;
    }
    (roots, c)
}

/// Roots of a monic polynomial of degree <= 3 with distinct roots.
fn numeric_roots(c: &[i64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let p = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a as f64);
    let mut z: Vec<Complex64> = (0..n).map(|i| Complex64::new(0.4, 0.9).powu(i as u32)).collect();
    for _ in 0..500 {
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = p(z[i]) / denom;
            z[i] -= step;
        }
    }
    z
}

fn to_big(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

/// Root-quotient check on distinct nonzero roots, positives confirmed exactly.
fn degenerate_oracle(c: &[i64]) -> bool {
    let (ints, rest) = split_rational(c);
    let mut roots: Vec<Complex64> = ints.iter().filter(|&&r| r != 0).map(|&r| Complex64::new(r as f64, 0.0)).collect();
    if rest.len() > 1 {
        roots.extend(numeric_roots(&rest));
    }
    let mut g = to_big(&rest);
    for &r in ints.iter().filter(|&&r| r != 0) {
        g = poly::mul(&g, &to_big(&[-r, 1]));
    }
    for i in 0..roots.len() {
        for j in 0..i {
            let q = roots[i] / roots[j];
            if (q.norm() - 1.0).abs() > 1e-9 {
                continue;
            }
            for k in 1..=60u32 {
                if (q.powu(k) - 1.0).norm() < 1e-8 {
                    // two roots share their k-th power exactly
                    assert!(!poly::is_squarefree(&poly::root_power_poly(&g, k)), "numeric quotient not confirmed for {c:?}");
                    return true;
                }
            }
        }
    }
    false
}

fn monic_box(d: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| (-h..=h).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.into_iter().map(|mut v| {
        v.push(1);
        v
    }).collect()
}

/// Whether the cyclic resolvent value of a monic cubic without rational roots is an integer.
fn resolvent_rational(c: &[i64]) -> bool {
    let r = numeric_roots(c);
    let theta = r[0] * r[0] * r[1] + r[1] * r[1] * r[2] + r[2] * r[2] * r[0];
    theta.im.abs() < 1e-6 && (theta.re - theta.re.round()).abs() < 1e-6
}

pub fn special_sets() -> Outcome {
    let mut mismatch = 0;
    let mut degenerate = 0;
    let mut total = 0;
    for d in [2, 3] {
        for c in monic_box(d, 10) {
            let f = IntPolynomial::from_i64(&c).unwrap();
            let got = algnum::is_degenerate(&f).unwrap();
            let want = degenerate_oracle(&c);
            total += 1;
            degenerate += usize::from(want);
            mismatch += usize::from(got != want);
        }
    }
    let (mut all, mut irr) = (0u64, 0u64);
    for c in monic_box(3, 10) {
        let (ints, _) = split_rational(&c);
        if !ints.is_empty() {
            all += 1;
        } else if resolvent_rational(&c) {
            all += 1;
            irr += 1;
        }
    }
    let (e_all, e_irr) = special::count_small_galois(3, 10).unwrap();
    let ok = mismatch == 0 && (e_all, e_irr) == (all, irr);
    Outcome::new(
        ok,
        format!("{total} polynomials, {degenerate} degenerate, {mismatch} mismatches; E_3 ({e_all}, {e_irr}) vs resolvent ({all}, {irr})"),
    )
}
