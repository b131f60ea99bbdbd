use multdep_core::asymptotics::{self, LowerBoundParams, ProductEquationSpec};
use multdep_core::counting::Setting;
use multdep_core::multdep;
use num_rational::BigRational;

use crate::counts::{find, Run};
use crate::Outcome;

const BUDGET: f64 = 1e9;

/// Largest prime factor of every `m <= limit` by trial division.
fn largest_prime_factor(limit: usize) -> Vec<u64> {
    (0..=limit as u64)
        .map(|mut m| {
            let mut big = 1;
            let mut p = 2;
            while p * p <= m {
                while m % p == 0 {
                    big = p;
                    m /= p;
                }
                p += 1;
            }
            if m > 1 {
                m
            } else {
                big
            }
        })
        .collect()
}

pub fn smooth_numbers() -> Outcome {
    let xmax = 10_000usize;
    let lpf = largest_prime_factor(xmax);
    let small = (1..=100).filter(|&m| lpf[m] <= 5).count() as u64;
    let psi100 = asymptotics::psi_exact(100, 5).unwrap();
    let mismatches: usize = std::thread::scope(|s| {
        let lpf = &lpf;
        let handles: Vec<_> = (3..=50u64)
            .map(|y| {
                s.spawn(move || {
                    let mut running = 0u64;
                    let mut bad = 0;
                    for x in 1..=xmax {
                        running += u64::from(lpf[x] <= y);
                        if x as u64 >= y && asymptotics::psi_exact(x as u64, y).unwrap() != running {
                            bad += 1;
                        }
                    }
                    bad
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).sum()
    });
    let psi = asymptotics::psi_exact(1_000_000, 100).unwrap();
    let z = asymptotics::psi_debruijn(1e6, 100.0).unwrap().z;
    let dev = ((psi as f64).ln() / z - 1.0).abs();
    let ok = psi100 == 34 && small == 34 && mismatches == 0 && dev <= 0.15;
    Outcome::new(
        ok,
        format!(
            "psi(100,5) = {psi100} (oracle {small}), {mismatches} grid mismatches, psi(10^6,100) = {psi}, Z = {z:.6}, |log psi / Z - 1| = {dev:.4}"
        ),
    )
}

pub fn product_equation() -> Outcome {
    // Odd a_1 a_2 = b_1 b_2 with all factors at most 4.
    let odd = [1u64, 3];
    let mut brute = 0;
    for a1 in odd {
        for a2 in odd {
            for b1 in odd {
                for b2 in odd {
                    brute += u128::from(a1 * a2 == b1 * b2);
                }
            }
        }
    }
    let n4 = asymptotics::product_equation_count(&ProductEquationSpec::uniform(2, 2, 4.0), BUDGET).unwrap();
    let ratios: Vec<f64> = (10..=13)
        .map(|e| {
            let t = (1u64 << e) as f64;
            let n = asymptotics::product_equation_count(&ProductEquationSpec::uniform(2, 2, t), BUDGET).unwrap();
            n as f64 / (t * t * t.ln())
        })
        .collect();
    let worst = ratios.windows(2).map(|w| (w[1] / w[0] - 1.0).abs()).fold(0.0, f64::max);
    let ok = n4 == 6 && brute == 6 && worst <= 0.2;
    Outcome::new(ok, format!("N(4) = {n4} (oracle {brute}), ratios {ratios:.5?}, worst change per doubling {worst:.4}"))
}

pub fn construction(runs: &[Run]) -> Outcome {
    let params = LowerBoundParams::default_for(4).unwrap();
    let tuples = asymptotics::lower_bound_generate(&params, 50, BUDGET).unwrap();
    let rank3 = tuples
        .iter()
        .filter(|v| {
            let q: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            multdep::dependence_rational(&q).unwrap().is_some() && multdep::rank_rational(&q).unwrap().s == 3
        })
        .count();
    let census30 = asymptotics::lower_bound_census(&params, 30, BUDGET).unwrap().count;
    let stratum = find(runs, true, Setting::Field(None), 4, 30).record.strata[3];
    let ratios: Vec<f64> =
        (6..=12).map(|e| asymptotics::lower_bound_census(&params, 1 << e, BUDGET).unwrap().ratio).collect();
    // Bounded below: every ratio positive and no decay, meaning the upper
    // range (H >= 2^8) stays within a factor 2 of the largest ratio seen.
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    let tail_min = ratios[2..].iter().cloned().fold(f64::INFINITY, f64::min);
    let bounded = ratios.iter().all(|&r| r > 0.0) && tail_min >= 0.5 * max;
    let ok = !tuples.is_empty() && rank3 == tuples.len() && census30 <= stratum && bounded;
    Outcome::new(
        ok,
        format!(
            "{rank3}/{} tuples of rank 3, census(30) = {census30} <= L_4,3(30) = {stratum}, ratios [{}]",
            tuples.len(),
            ratios.iter().map(|r| format!("{r:.3e}")).collect::<Vec<_>>().join(", ")
        ),
    )
}
