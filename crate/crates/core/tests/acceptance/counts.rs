use std::f64::consts::PI;
use std::time::Instant;

use multdep_core::counting::{self, Budget, CountJob, CountParams, CountRecord, Setting};
use multdep_core::enumerate::{enumerate, EnumerationSpec, Mode};
use multdep_core::fields;
use multdep_core::quadratic::QuadField;
use num_rational::BigRational;

use crate::Outcome;

pub fn hq(h: u64) -> BigRational {
    BigRational::from_integer(h.into())
}

pub struct Run {
    pub record: CountRecord,
    pub population: u128,
    pub torsion: u128,
    /// Roots of unity expected in the population, known independently of the job.
    pub expected_torsion: u128,
}

impl Run {
    pub fn is(&self, integers: bool, setting: Setting, n: u32, h: u64) -> bool {
        let p = &self.record.params;
        p.integers == integers && p.setting == setting && p.n == n && p.h == hq(h)
    }
}

pub fn find<'a>(runs: &'a [Run], integers: bool, setting: Setting, n: u32, h: u64) -> &'a Run {
    runs.iter().find(|r| r.is(integers, setting, n, h)).expect("run is part of the standard set")
}

fn quad(m: i64) -> Setting {
    Setting::Field(Some(QuadField::new(m).unwrap()))
}

/// Every counting run shared by the decomposition, rank-0 and ratio criteria.
pub fn standard_runs() -> Vec<Run> {
    let q = Setting::Field(None);
    let list = [
        (true, q, 2, 50),
        (true, q, 3, 500),
        (true, q, 4, 30),
        (false, q, 2, 10),
        (false, q, 3, 4),
        (true, quad(-1), 2, 6),
        (true, quad(-1), 3, 3),
        (false, quad(-3), 2, 2),
        (true, quad(2), 2, 4),
        (true, quad(5), 3, 2),
        (true, Setting::Degree(1), 3, 10),
        (true, Setting::Degree(2), 2, 2),
        (true, Setting::Degree(2), 3, 2),
        (false, Setting::Degree(2), 2, 2),
    ];
    std::thread::scope(|s| {
        let handles: Vec<_> = list
            .iter()
            .map(|&(integers, setting, n, h)| {
                s.spawn(move || {
                    let params = CountParams { integers, setting, n, h: hq(h) };
                    let job = CountJob::prepare(params, Budget(counting::DEFAULT_BUDGET)).unwrap();
                    let record = job.run().unwrap();
                    let expected_torsion = match setting {
                        Setting::Field(None) => 2,
                        Setting::Field(Some(k)) => k.w() as u128,
                        Setting::Degree(d) => fields::w0(d) as u128,
                    };
                    Run { record, population: job.population(), torsion: job.torsion(), expected_torsion }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

pub fn constants() -> Outcome {
    let t = Instant::now();
    let prec = 128;
    let q = fields::invariants_rationals(prec);
    let c2 = fields::c2(&q, prec);
    let gap = fields::c6(1, prec).sub(&c2).abs().upper_f64();
    let mut ok = gap <= 1e-12 * c2.lower_f64();
    let mut worst = gap / c2.lower_f64();
    for n in 2..=6 {
        ok &= fields::c3(n, &q, prec).contains_rational(&fields::c7(n, 1));
        let c4 = fields::c4(n, &q, prec);
        let c8 = fields::c8(n, 1, prec);
        let rel = c4.sub(&c8).abs().upper_f64() / c4.lower_f64();
        worst = worst.max(rel);
        ok &= c4.intersects(&c8) && rel <= 1e-12;
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome::new(ok && secs < 1.0, format!("worst relative gap {worst:.1e}, C7 inside C3 for n = 2..6, {secs:.3} s"))
}

fn count(spec: EnumerationSpec) -> f64 {
    enumerate(&spec).unwrap().count() as f64
}

pub fn enumeration() -> Outcome {
    let rational_density = 12.0 / (PI * PI);
    let qi = QuadField::new(-1).unwrap();
    let b_star = count(EnumerationSpec::field(Mode::NumbersInField, None, hq(1000))) / (rational_density * 1e6);
    let b_gauss = count(EnumerationSpec::field(Mode::IntegersInField, Some(qi), hq(100))) / (PI * 1e4);
    let a1 = count(EnumerationSpec::degree(Mode::NumbersOfDegree, 1, hq(100))) / (rational_density * 1e4);
    let a2 = |h: u64| count(EnumerationSpec::degree(Mode::IntegersOfDegree, 2, hq(h))) / (8.0 * (h as f64).powi(4));
    let (r4, r6, r8) = (a2(4), a2(6), a2(8));
    let ok = (0.99..=1.01).contains(&b_star)
        && (0.98..=1.02).contains(&b_gauss)
        && (0.98..=1.02).contains(&a1)
        && (0.7..=1.3).contains(&r6)
        && (r8 - 1.0).abs() < (r4 - 1.0).abs();
    Outcome::new(
        ok,
        format!("B*_Q {b_star:.5}, B_Q(i) {b_gauss:.5}, A*_1 {a1:.5}, A_2 at H=4,6,8: {r4:.4} {r6:.4} {r8:.4}"),
    )
}

/// Smallest `b` with `m = b^e`.
fn base(m: u64) -> u64 {
    (2..=m)
        .find(|&b| {
            let mut x = b;
            while x < m {
                x *= b;
            }
            x == m
        })
        .unwrap()
}

pub fn rational_pairs() -> Outcome {
    let top = 200u64;
    let bases: Vec<u64> = (0..=top).map(|m| if m < 2 { m } else { base(m) }).collect();
    let mut mismatches = Vec::new();
    for h in 1..=top {
        let (mut s0, mut s1) = (0u128, 0u128);
        for a in 1..=h {
            for b in 1..=h {
                // four sign patterns per absolute pair
                if a == 1 || b == 1 {
                    s0 += 4;
                } else if bases[a as usize] == bases[b as usize] {
                    s1 += 4;
                }
            }
        }
        let fast = counting::fast_count_pairs_rationals(true, h).unwrap();
        if fast.strata != [s0, s1] || fast.total != s0 + s1 {
            mismatches.push(h);
        }
    }
    for h in 1..=12 {
        let params = CountParams { integers: true, setting: Setting::Field(None), n: 2, h: hq(h) };
        let ex = counting::count_exhaustive(params, Budget(counting::DEFAULT_BUDGET)).unwrap();
        if ex.strata != counting::fast_count_pairs_rationals(true, h).unwrap().strata {
            mismatches.push(h);
        }
    }
    let t = Instant::now();
    let big = counting::fast_count_pairs_rationals(true, 10_000).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let ratio = big.total as f64 / 12e4;
    let ok = mismatches.is_empty() && (0.98..=1.03).contains(&ratio) && secs < 1.0;
    Outcome::new(
        ok,
        format!("{} mismatches for H <= {top}, L(10^4)/(12*10^4) = {ratio:.5} in {secs:.3} s", mismatches.len()),
    )
}

pub fn rational_triples(runs: &[Run]) -> Outcome {
    let r = find(runs, true, Setting::Field(None), 3, 500);
    let ratio = r.record.total as f64 / (48.0 * 500.0 * 500.0);
    Outcome::new(
        (0.90..=1.10).contains(&ratio),
        format!("L = {}, ratio {ratio:.4}, strata {:?}", r.record.total, r.record.strata),
    )
}

pub fn decomposition(runs: &[Run]) -> Outcome {
    let bad = runs
        .iter()
        .filter(|r| r.record.total != r.record.strata.iter().sum::<u128>() || r.record.undecided != 0 || !r.record.is_valid())
        .count();
    Outcome::new(bad == 0, format!("{} runs, {bad} violations", runs.len()))
}

pub fn rank_zero(runs: &[Run]) -> Outcome {
    let bad = runs
        .iter()
        .filter(|r| {
            let n = r.record.params.n;
            let expect = r.population.pow(n) - (r.population - r.expected_torsion).pow(n);
            r.torsion != r.expected_torsion || r.record.strata[0] != expect
        })
        .count();
    Outcome::new(bad == 0, format!("{} runs, {bad} violations", runs.len()))
}

pub fn stratum_exponent(runs: &[Run]) -> Outcome {
    let at = |h: u64| find(runs, true, Setting::Field(None), 3, h).record.strata[2] as f64;
    let l500 = at(500);
    let e = l500.ln() / 500f64.ln();
    let params = CountParams { integers: true, setting: Setting::Field(None), n: 3, h: hq(100) };
    let l100 = counting::count_field(true, None, 3, params.h, Budget(counting::DEFAULT_BUDGET)).unwrap().strata[2] as f64;
    let slope = (l500 / l100).ln() / 5f64.ln();
    Outcome::new(e <= 1.3, format!("L_3,2(500) = {l500}, log L / log H = {e:.3}, local slope 100..500 = {slope:.3}"))
}
