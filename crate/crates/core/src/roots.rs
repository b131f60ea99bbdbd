//! Certified isolation of the complex roots of a squarefree integer polynomial.
//!
//! Approximations come from an Aberth iteration (first in `f64`, then in
//! fixed point at the working precision). They are certified with Smith's
//! inclusion disks: with `W_i = f(z_i) / (a_d prod_{j != i}(z_i - z_j))`,
//! every connected component of the disks `D(z_i, d |W_i|)` holds as many
//! roots as disks. When the disks are pairwise disjoint each holds exactly
//! one root. The disk radii are computed exactly from dyadic centers.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

/// A disk `{ z : |z - (re + i im)/2^prec| <= rad/2^prec }` holding exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDisk {
    pub re: BigInt,
    pub im: BigInt,
    pub rad: BigInt,
    pub prec: u32,
}

impl RootDisk {
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn re_interval(&self) -> Real {
        Real::from_scaled(&self.re - &self.rad, &self.re + &self.rad, self.prec)
    }

    pub fn im_interval(&self) -> Real {
        if self.is_real() {
            return Real::from_int(0, self.prec);
        }
        Real::from_scaled(&self.im - &self.rad, &self.im + &self.rad, self.prec)
    }

    /// Enclosure of `|root|`.
    pub fn modulus(&self) -> Real {
        let sq = &self.re * &self.re + &self.im * &self.im;
        let mut hi = sq.sqrt();
        if &hi * &hi < sq {
            hi += 1;
        }
        let lo = sq.sqrt() - &self.rad;
        let lo = if lo.is_negative() { BigInt::zero() } else { lo };
        Real::from_scaled(lo, hi + &self.rad, self.prec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64 { re: self.re + o.re, im: self.im + o.im }
    }
    fn sub(self, o: C64) -> C64 {
        C64 { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(self, o: C64) -> C64 {
        C64 { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64 { re: (self.re * o.re + self.im * o.im) / d, im: (self.im * o.re - self.re * o.im) / d }
    }
    fn norm(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

fn aberth_f64(c: &[f64]) -> Vec<C64> {
    let d = c.len() - 1;
    let lead = c[d];
    let bound = 1.0 + c[..d].iter().map(|x| libm::fabs(x / lead)).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..d)
        .map(|k| {
            let t = 2.0 * core::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4;
            C64 { re: 0.5 * bound * libm::cos(t), im: 0.5 * bound * libm::sin(t) }
        })
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (mut p, mut dp) = (C64 { re: 0.0, im: 0.0 }, C64 { re: 0.0, im: 0.0 });
            for &ck in c.iter().rev() {
                dp = dp.mul(z[i]).add(p);
                p = p.mul(z[i]).add(C64 { re: ck, im: 0.0 });
            }
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p.div(dp);
            let mut s = C64 { re: 0.0, im: 0.0 };
            for j in 0..d {
                if j != i {
                    s = s.add(C64 { re: 1.0, im: 0.0 }.div(z[i].sub(z[j])));
                }
            }
            let w = ratio.div(C64 { re: 1.0, im: 0.0 }.sub(ratio.mul(s)));
            if w.re.is_finite() && w.im.is_finite() {
                z[i] = z[i].sub(w);
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Number of distinct real roots by a Sturm sequence.
pub fn count_real_roots(f: &[BigInt]) -> usize {
    let to_q = |v: &[BigInt]| -> Vec<BigRational> { v.iter().map(|x| BigRational::from_integer(x.clone())).collect() };
    let mut seq: Vec<Vec<BigRational>> = vec![to_q(f), to_q(&crate::poly::derivative(f))];
    loop {
        let n = seq.len();
        let r = rem_q(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|x| -x).collect());
    }
    let sign_changes = |at_pos_inf: bool| -> usize {
        let signs: Vec<i8> = seq
            .iter()
            .map(|p| {
                let lead = p.last().unwrap();
                let deg_odd = (p.len() - 1) % 2 == 1;
                let s = if lead.is_positive() { 1 } else { -1 };
                if !at_pos_inf && deg_odd { -s } else { s }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    sign_changes(false) - sign_changes(true)
}

fn rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let top = r.pop().unwrap() / b.last().unwrap();
        let shift = r.len() - db;
        for (j, bj) in b.iter().take(db).enumerate() {
            r[shift + j] -= &top * bj;
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Fixed-point complex number scaled by `2^prec`.
#[derive(Clone, Debug)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

fn fx_mul(a: &Fx, b: &Fx, p: u32) -> Fx {
    Fx {
        re: (&a.re * &b.re - &a.im * &b.im) >> p as usize,
        im: (&a.re * &b.im + &a.im * &b.re) >> p as usize,
    }
}

fn fx_div(a: &Fx, b: &Fx, p: u32) -> Option<Fx> {
    let d = &b.re * &b.re + &b.im * &b.im;
    if d.is_zero() {
        return None;
    }
    let re = (&a.re * &b.re + &a.im * &b.im) << p as usize;
    let im = (&a.im * &b.re - &a.re * &b.im) << p as usize;
    Some(Fx { re: re.div_floor(&d), im: im.div_floor(&d) })
}

fn fx_from_f64(x: f64, p: u32) -> BigInt {
    let scaled = x * libm::ldexp(1.0, 52);
    let base = BigInt::from_f64(scaled).unwrap_or_default();
    if p >= 52 { base << (p - 52) as usize } else { base >> (52 - p) as usize }
}

/// Root layout: indices of real roots and of upper-half-plane roots.
struct Layout {
    real: Vec<usize>,
    upper: Vec<usize>,
}

fn classify(z: &[C64], n_real: usize) -> Option<Layout> {
    let d = z.len();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| libm::fabs(z[a].im).partial_cmp(&libm::fabs(z[b].im)).unwrap_or(Ordering::Equal));
    let real: Vec<usize> = order[..n_real].to_vec();
    let rest = &order[n_real..];
    let upper: Vec<usize> = rest.iter().copied().filter(|&i| z[i].im > 0.0).collect();
    if upper.len() * 2 != rest.len() {
        return None;
    }
    Some(Layout { real, upper })
}

fn symmetrize(z: &mut [Fx], layout: &Layout) -> Vec<Fx> {
    let mut out = Vec::with_capacity(z.len());
    for &i in &layout.real {
        out.push(Fx { re: z[i].re.clone(), im: BigInt::zero() });
    }
    for &i in &layout.upper {
        let im = z[i].im.abs();
        out.push(Fx { re: z[i].re.clone(), im: im.clone() });
        out.push(Fx { re: z[i].re.clone(), im: -im });
    }
    out
}

fn aberth_fixed(c: &[BigInt], z: &mut Vec<Fx>, p: u32, n_real: usize, iters: usize) {
    let d = z.len();
    let cs: Vec<BigInt> = c.iter().map(|x| x << p as usize).collect();
    let one = Fx { re: BigInt::from(1) << p as usize, im: BigInt::zero() };
    let n_upper = (d - n_real) / 2;
    for _ in 0..iters {
        let mut next = z.clone();
        for i in 0..d {
            let mut val = Fx { re: BigInt::zero(), im: BigInt::zero() };
            let mut der = Fx { re: BigInt::zero(), im: BigInt::zero() };
            for ck in cs.iter().rev() {
                der = fx_mul(&der, &z[i], p);
                der.re += &val.re;
                der.im += &val.im;
                val = fx_mul(&val, &z[i], p);
                val.re += ck;
            }
            let Some(ratio) = fx_div(&val, &der, p) else { continue };
            let mut s = Fx { re: BigInt::zero(), im: BigInt::zero() };
            for j in 0..d {
                if j != i {
                    let diff = Fx { re: &z[i].re - &z[j].re, im: &z[i].im - &z[j].im };
                    if let Some(q) = fx_div(&one, &diff, p) {
                        s.re += q.re;
                        s.im += q.im;
                    }
                }
            }
            let rs = fx_mul(&ratio, &s, p);
            let denom = Fx { re: &one.re - &rs.re, im: -rs.im };
            if let Some(w) = fx_div(&ratio, &denom, p) {
                next[i] = Fx { re: &z[i].re - &w.re, im: &z[i].im - &w.im };
            }
        }
        // Preserve the real / conjugate-pair structure.
        for item in next.iter_mut().take(n_real) {
            item.im = BigInt::zero();
        }
        for k in 0..n_upper {
            let a = n_real + 2 * k;
            let re = (&next[a].re + &next[a + 1].re) >> 1usize;
            let im = (&next[a].im - &next[a + 1].im) >> 1usize;
            next[a] = Fx { re: re.clone(), im: im.clone() };
            next[a + 1] = Fx { re, im: -im };
        }
        *z = next;
    }
}

/// Exact Smith radii (scaled, rounded up); `None` if two centers coincide.
fn smith_radii(c: &[BigInt], z: &[Fx], p: u32) -> Option<Vec<BigInt>> {
    let d = z.len();
    let lead = c.last().unwrap();
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        // F = 2^(p d) f(z_i), exact Gaussian integer.
        let (fr, fi) = eval_scaled(c, &z[i], p);
        let mut prod_norm = BigInt::from(1);
        for j in 0..d {
            if j != i {
                let dr = &z[i].re - &z[j].re;
                let di = &z[i].im - &z[j].im;
                let n = &dr * &dr + &di * &di;
                if n.is_zero() {
                    return None;
                }
                prod_norm *= n;
            }
        }
        let num = BigInt::from((d * d) as u64) * (&fr * &fr + &fi * &fi);
        let den = lead * lead * prod_norm;
        // Scaled radius d |W_i| 2^p = d |F| / (|lead| prod |Δ_ij|), Δ_ij = 2^p (z_i - z_j).
        let sq: BigInt = num.div_floor(&den) + 1;
        let mut r = sq.sqrt();
        if &r * &r < sq {
            r += 1;
        }
        radii.push(r);
    }
    Some(radii)
}

fn eval_scaled(c: &[BigInt], z: &Fx, p: u32) -> (BigInt, BigInt) {
    // Horner on 2^{pd} f(z) = sum c_k (z 2^p)^k 2^{p(d-k)}.
    let d = c.len() - 1;
    let mut fr = BigInt::zero();
    let mut fi = BigInt::zero();
    for (k, ck) in c.iter().enumerate().rev() {
        let nr = &fr * &z.re - &fi * &z.im;
        let ni = &fr * &z.im + &fi * &z.re;
        fr = nr + (ck << (p as usize * (d - k)));
        fi = ni;
    }
    (fr, fi)
}

fn disjoint(z: &[Fx], radii: &[BigInt]) -> bool {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let dr = &z[i].re - &z[j].re;
            let di = &z[i].im - &z[j].im;
            let dist2 = &dr * &dr + &di * &di;
            let rs = &radii[i] + &radii[j];
            if dist2 <= &rs * &rs {
                return false;
            }
        }
    }
    true
}

/// Attempts certification at one working precision.
fn isolate_at(c: &[BigInt], seeds: &[C64], layout: &Layout, n_real: usize, p: u32) -> Option<Vec<RootDisk>> {
    let mut z: Vec<Fx> = seeds
        .iter()
        .map(|s| Fx { re: fx_from_f64(s.re, p), im: fx_from_f64(s.im, p) })
        .collect();
    let mut z = symmetrize(&mut z, layout);
    let iters = 4 + (32 - (p / 40).leading_zeros()) as usize;
    aberth_fixed(c, &mut z, p, n_real, iters);
    let radii = smith_radii(c, &z, p)?;
    if !disjoint(&z, &radii) {
        return None;
    }
    // A real-centered disk holding a single root holds a real one (conjugate symmetry).
    Some(
        z.into_iter()
            .zip(radii)
            .map(|(fx, rad)| RootDisk { re: fx.re, im: fx.im, rad, prec: p })
            .collect(),
    )
}

/// Isolates every root of a squarefree polynomial of degree >= 1.
///
/// Each disk has radius at most `2^-target` (in absolute terms) unless the
/// precision ceiling is hit first, in which case `Error::Undecided` results.
pub fn isolate(c: &[BigInt], target: u32, max_prec: u32) -> Result<Vec<RootDisk>> {
    let d = c.len() - 1;
    assert!(d >= 1);
    let cf: Vec<f64> = c.iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect();
    let seeds = if d == 1 {
        vec![C64 { re: -cf[0] / cf[1], im: 0.0 }]
    } else {
        aberth_f64(&cf)
    };
    let n_real = count_real_roots(c);
    let layout = classify(&seeds, n_real).ok_or(Error::Undecided { max_precision: max_prec })?;
    let mut p = (target + 16).max(64);
    loop {
        if let Some(disks) = isolate_at(c, &seeds, &layout, n_real, p) {
            let limit = BigInt::from(1) << (p.saturating_sub(target)) as usize;
            if disks.iter().all(|dk| dk.rad <= limit) {
                return Ok(disks);
            }
        }
        if p >= max_prec {
            return Err(Error::Undecided { max_precision: max_prec });
        }
        p = (p * 2).min(max_prec);
    }
}

/// Deterministic root order: by real part, then imaginary part.
///
/// Pairs whose real parts stay unseparated are ordered by imaginary part,
/// which the disjoint disks of a conjugate pair always separate.
pub fn sort_disks(disks: &mut [RootDisk]) {
    disks.sort_by(|a, b| {
        if a.is_real() && b.is_real() {
            return a.re.cmp(&b.re);
        }
        match a.re_interval().certified_cmp(&b.re_interval()) {
            Some(o) if o != Ordering::Equal => o,
            _ => a.im.cmp(&b.im),
        }
    });
}
