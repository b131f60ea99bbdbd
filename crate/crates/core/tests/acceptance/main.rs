//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with `harness = false` so the lines are printed even when cargo
//! captures test output. Exits non-zero when a criterion fails that is not
//! listed in `KNOWN_FAILURES`, or when a listed one unexpectedly passes.

mod algebra;
mod asymptotic;
mod counts;

use std::process::ExitCode;
use std::time::Instant;

pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

/// Criteria whose stated tolerance is not met by the exact values at this scale.
const KNOWN_FAILURES: &[usize] = &[4, 9, 12];

type Check<'a> = Box<dyn Fn() -> Outcome + Send + Sync + 'a>;

fn main() -> ExitCode {
    let start = Instant::now();
    let runs = counts::standard_runs();
    println!("counting runs prepared in {:.1} s", start.elapsed().as_secs_f64());

    let checks: Vec<(usize, &str, Check)> = vec![
        (1, "constant cross-identities", Box::new(counts::constants)),
        (2, "enumeration against main terms", Box::new(counts::enumeration)),
        (3, "rational pairs: fast path, brute force, ratio", Box::new(counts::rational_pairs)),
        (4, "rational triples at H = 500", Box::new(|| counts::rational_triples(&runs))),
        (5, "total equals sum of strata", Box::new(|| counts::decomposition(&runs))),
        (6, "rank-0 closed form", Box::new(|| counts::rank_zero(&runs))),
        (7, "two rational dependence oracles", Box::new(algebra::oracle_equivalence)),
        (8, "height identities and bounds on random numbers", Box::new(algebra::height_bounds)),
        (9, "smooth numbers", Box::new(asymptotic::smooth_numbers)),
        (10, "product equation", Box::new(asymptotic::product_equation)),
        (11, "rank n-1 construction", Box::new(|| asymptotic::construction(&runs))),
        (12, "rank-2 stratum exponent", Box::new(|| counts::stratum_exponent(&runs))),
        (13, "special polynomial sets", Box::new(algebra::special_sets)),
    ];

    let results: Vec<(usize, &str, Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = checks
            .iter()
            .map(|(id, name, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let out = f();
                    (*id, *name, out, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });

    let mut unexpected = Vec::new();
    for (id, name, out, secs) in &results {
        let tag = if out.pass { "PASS" } else { "FAIL" };
        let known = KNOWN_FAILURES.contains(id);
        let note = match (out.pass, known) {
            (false, true) => " [known failure]",
            (true, true) => " [listed as known failure but passed]",
            _ => "",
        };
        println!("{tag} {id:>2} {name}: {} ({secs:.2} s){note}", out.detail);
        if out.pass == known {
            unexpected.push(*id);
        }
    }
    let passed = results.iter().filter(|r| r.2.pass).count();
    println!("{passed}/{} criteria pass, total {:.1} s", results.len(), start.elapsed().as_secs_f64());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
