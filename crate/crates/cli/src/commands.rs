use std::path::Path;
use std::time::Instant;

use multdep_core::algnum::AlgebraicNumber;
use multdep_core::asymptotics::{self, LowerBoundParams, ProductEquationSpec};
use multdep_core::counting::{self, Budget, CountJob, CountParams, CountRecord, Setting};
use multdep_core::enumerate::{self, BaseField, EnumerationSpec, Mode};
use multdep_core::fields::{self, FieldInvariants};
use multdep_core::multdep;
use multdep_core::poly::IntPolynomial;
use multdep_core::quadratic;
use multdep_core::real::Real;
use multdep_core::special;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::{Command, Common, ModeArg, Setting as SettingArg};
use crate::report::{fmt_f64, fmt_opt, fmt_rad, interval, CliError, CliResult, Interval, Report};

const DEFAULT_VERIFY_BOUND: u32 = 16;

pub fn run(cmd: &Command, common: &Common) -> CliResult<Report> {
    if !(common.budget > 0.0) {
        return Err(CliError::Invalid("budget must be positive".into()));
    }
    if common.precision < 64 {
        return Err(CliError::Invalid("precision must be at least 64 bits".into()));
    }
    if common.shards == 0 {
        return Err(CliError::Invalid("shards must be at least 1".into()));
    }
    match cmd {
        Command::Enumerate { setting, mode, heights, sample } => enumerate_cmd(setting, *mode, heights, *sample, common),
        Command::Count { setting, mode, n, heights } => count_cmd(setting, *mode, *n, heights, common),
        Command::Constants { setting, field_file, n } => constants_cmd(setting, field_file.as_deref(), n, common),
        Command::Psi { x, y } => psi_cmd(*x, *y),
        Command::ProductCount { k, q, t, gammas } => product_cmd(*k, *q, t, gammas.as_deref(), common),
        Command::Lowerbound { n, height, primes, list } => lowerbound_cmd(*n, height, primes.as_deref(), *list, common),
        Command::VerifyTuple { values, bound } => verify_cmd(values, *bound),
        Command::SpecialSets { degree, heights } => special_cmd(*degree, heights),
        Command::FixedCoeffs { field, u, v, heights } => fixed_cmd(field, *u, *v, heights),
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    let v: Result<Vec<T>, _> = s.split(',').map(|x| x.trim().parse::<T>()).collect();
    match v {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(CliError::Invalid(format!("cannot parse {what} list '{s}'"))),
    }
}

fn parse_heights(s: &str) -> CliResult<Vec<BigRational>> {
    parse_list::<BigRational>(s, "height")
}

fn parse_field(s: &str) -> CliResult<BaseField> {
    Ok(quadratic::parse_field(s)?)
}

fn setting_of(s: &SettingArg) -> CliResult<Setting> {
    match (&s.field, s.degree) {
        (Some(f), None) => Ok(Setting::Field(parse_field(f)?)),
        (None, Some(d)) => Ok(Setting::Degree(d)),
        _ => Err(CliError::Invalid("give exactly one of --field or --degree".into())),
    }
}

fn h_label(h: &BigRational) -> String {
    h.to_string()
}

fn enumerate_cmd(setting: &SettingArg, mode: ModeArg, heights: &str, sample: Option<usize>, common: &Common) -> CliResult<Report> {
    let h = parse_heights(heights)?;
    let [h] = h.as_slice() else {
        return Err(CliError::Invalid("enumerate takes a single height".into()));
    };
    let integers = mode == ModeArg::Integers;
    let spec = match setting_of(setting)? {
        Setting::Field(k) => EnumerationSpec::field(if integers { Mode::IntegersInField } else { Mode::NumbersInField }, k, h.clone()),
        Setting::Degree(d) => {
            let size = enumerate::degree_box_size(d, h, integers);
            if size > common.budget {
                return Err(multdep_core::error::Error::Budget { estimate: size as u128, budget: common.budget as u128 }.into());
            }
            EnumerationSpec::degree(if integers { Mode::IntegersOfDegree } else { Mode::NumbersOfDegree }, d, h.clone())
        }
    };
    let nums = enumerate::enumerate(&spec)?.algebraic_numbers();
    let mut picks: Vec<usize> = (0..nums.len()).collect();
    if let Some(k) = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
        picks = index::sample(&mut rng, nums.len(), k.min(nums.len())).into_vec();
        picks.sort_unstable();
    }
    let mut rep = Report::table(&["index", "minpoly", "root_index", "re", "im"]);
    for i in picks {
        let x = &nums[i];
        let b = x.complex_box(64)?;
        let coeffs: Vec<String> = x.minpoly().coeffs().iter().map(ToString::to_string).collect();
        let minpoly = format!("[{}]", coeffs.join(","));
        rep.rows.push(vec![i.to_string(), minpoly.clone(), x.root_index().to_string(), fmt_f64(b.re.mid_f64()), fmt_f64(b.im.mid_f64())]);
        rep.records.push(json!({"index": i, "poly": serde_json::from_str::<Value>(&minpoly).unwrap_or(Value::Null), "root_index": x.root_index()}));
    }
    Ok(rep)
}

/// Runs one count, sharded across threads, with the fast path for pairs of rationals.
pub fn count_one(params: CountParams, budget: f64, shards: usize) -> CliResult<CountRecord> {
    let start = Instant::now();
    let fast = matches!(params.setting, Setting::Field(None)) && params.n == 2 && params.h.is_integer();
    let mut rec = if fast {
        let h = params.h.to_integer().to_u64().ok_or_else(|| CliError::Invalid("height too large".into()))?;
        counting::fast_count_pairs_rationals(params.integers, h)?
    } else {
        let job = CountJob::prepare(params, Budget(budget))?;
        let results: Vec<multdep_core::error::Result<CountRecord>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..shards).map(|i| {
                let job = &job;
                s.spawn(move || job.run_shard(i, shards))
            }).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut it = results.into_iter();
        let mut acc = it.next().expect("at least one shard")?;
        for r in it {
            acc.merge(&r?)?;
        }
        acc
    };
    rec.elapsed = start.elapsed().as_secs_f64();
    Ok(rec)
}

fn count_cmd(setting: &SettingArg, mode: ModeArg, n: u32, heights: &str, common: &Common) -> CliResult<Report> {
    let setting = setting_of(setting)?;
    let mut header: Vec<String> = ["mode", "n", "field_or_degree", "H", "total"].iter().map(|s| s.to_string()).collect();
    header.extend((0..n).map(|s| format!("s{s}")));
    header.extend(["main_term", "ratio", "elapsed_s", "main_term_rad", "ratio_rad", "undecided"].iter().map(|s| s.to_string()));
    let mut rep = Report { header, ..Default::default() };
    for h in parse_heights(heights)? {
        let params = CountParams { integers: mode == ModeArg::Integers, setting, n, h: h.clone() };
        let label = params.setting_label();
        let rec = count_one(params, common.budget, common.shards)?;
        let mt = Interval::from(&rec.main_term);
        let ratio = rec.ratio.as_ref().map(Interval::from);
        let mut row = vec![rec.params.mode_label().to_string(), n.to_string(), label.clone(), h_label(&h), rec.total.to_string()];
        row.extend(rec.strata.iter().map(ToString::to_string));
        row.extend([
            fmt_f64(mt.mid),
            fmt_opt(ratio.map(|r| r.mid)),
            format!("{:.3}", rec.elapsed),
            fmt_rad(mt.rad),
            ratio.map(|r| fmt_rad(r.rad)).unwrap_or_default(),
            rec.undecided.to_string(),
        ]);
        rep.rows.push(row);
        if let Some(r) = ratio {
            rep.plot.push((h_label(&h), r.mid));
        }
        if rec.undecided > 0 {
            rep.undecided = true;
        }
        rep.records.push(json!({
            "mode": rec.params.mode_label(),
            "n": n,
            "field_or_degree": label,
            "H": h_label(&h),
            "total": rec.total.to_string(),
            "strata": rec.strata.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "undecided": rec.undecided.to_string(),
            "main_term": mt,
            "ratio": ratio,
            "elapsed_s": rec.elapsed,
        }));
    }
    Ok(rep)
}

#[derive(Deserialize)]
struct InvariantsFile {
    d: u32,
    r1: u32,
    r2: u32,
    disc: i64,
    h: u64,
    reg: f64,
    w: u32,
    zeta2: f64,
}

fn real_from_f64(x: f64, prec: u32) -> CliResult<Real> {
    let q = BigRational::from_float(x).ok_or_else(|| CliError::Invalid(format!("not a finite number: {x}")))?;
    Ok(Real::from_rational(&q, prec))
}

fn read_invariants(path: &Path, prec: u32) -> CliResult<FieldInvariants> {
    let text = std::fs::read_to_string(path)?;
    let f: InvariantsFile = serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(FieldInvariants::custom(f.d, f.r1, f.r2, f.disc, f.h, real_from_f64(f.reg, prec)?, f.w, real_from_f64(f.zeta2, prec)?)?)
}

fn constants_cmd(setting: &SettingArg, field_file: Option<&Path>, n: &str, common: &Common) -> CliResult<Report> {
    let ns: Vec<u32> = parse_list(n, "n")?;
    if ns.iter().any(|&n| n < 1) {
        return Err(CliError::Invalid("n must be positive".into()));
    }
    let p = common.precision;
    let mut rep = Report::table(&["constant", "n", "mid", "rad"]);
    rep.json_primary = true;
    let push = |rep: &mut Report, name: &str, n: Option<u32>, r: &Real| {
        let i = Interval::from(r);
        rep.rows.push(vec![name.into(), n.map(|n| n.to_string()).unwrap_or_default(), fmt_f64(i.mid), fmt_rad(i.rad)]);
    };
    let record = if let (None, Some(d)) = (&setting.field, setting.degree) {
        let c5 = Real::from_rational(&fields::c5(d), p);
        let c6 = fields::c6(d, p);
        push(&mut rep, "C5", None, &c5);
        push(&mut rep, "C6", None, &c6);
        let mut per_n = Vec::new();
        for &n in &ns {
            let c7 = Real::from_rational(&fields::c7(n, d), p);
            let c8 = fields::c8(n, d, p);
            push(&mut rep, "C7", Some(n), &c7);
            push(&mut rep, "C8", Some(n), &c8);
            per_n.push(json!({"n": n, "C7": interval(&c7), "C7_exact": fields::c7(n, d).to_string(), "C8": interval(&c8)}));
        }
        json!({"degree": d, "C5": interval(&c5), "C5_exact": fields::c5(d).to_string(), "C6": interval(&c6), "by_n": per_n})
    } else {
        let inv = match (field_file, &setting.field) {
            (Some(path), _) => read_invariants(path, p)?,
            (None, Some(f)) => match parse_field(f)? {
                None => fields::invariants_rationals(p),
                Some(k) => fields::invariants_quadratic(k.m(), p)?,
            },
            (None, None) => return Err(CliError::Invalid("give --field, --field-file or --degree".into())),
        };
        let c1 = fields::c1(&inv, p);
        let c2 = fields::c2(&inv, p);
        push(&mut rep, "C1", None, &c1);
        push(&mut rep, "C2", None, &c2);
        let mut per_n = Vec::new();
        for &n in &ns {
            let c3 = fields::c3(n, &inv, p);
            let c4 = fields::c4(n, &inv, p);
            push(&mut rep, "C3", Some(n), &c3);
            push(&mut rep, "C4", Some(n), &c4);
            per_n.push(json!({"n": n, "C3": interval(&c3), "C4": interval(&c4)}));
        }
        json!({
            "field": inv.label(),
            "invariants": {
                "d": inv.d, "r1": inv.r1, "r2": inv.r2, "r": inv.r, "disc": inv.disc, "h": inv.h,
                "reg": interval(&inv.reg), "w": inv.w, "zeta2": interval(&inv.zeta2),
            },
            "C1": interval(&c1),
            "C2": interval(&c2),
            "by_n": per_n,
        })
    };
    rep.records.push(record);
    Ok(rep)
}

fn psi_cmd(x: u64, y: u64) -> CliResult<Report> {
    let exact = asymptotics::psi_exact(x, y)?;
    let est = asymptotics::psi_debruijn(x as f64, y as f64)?;
    let ratio = (exact as f64).ln() / est.z;
    let mut rep = Report::table(&["x", "y", "psi", "Z", "exp_Z", "u", "log_psi_over_Z"]);
    rep.rows.push(vec![x.to_string(), y.to_string(), exact.to_string(), fmt_f64(est.z), fmt_f64(est.estimate), fmt_f64(est.u), fmt_f64(ratio)]);
    rep.records.push(json!({"x": x, "y": y, "psi": exact, "Z": est.z, "exp_Z": est.estimate, "u": est.u, "log_psi_over_Z": ratio}));
    Ok(rep)
}

fn product_cmd(k: u32, q: u64, t: &str, gammas: Option<&str>, common: &Common) -> CliResult<Report> {
    let ts: Vec<f64> = parse_list(t, "T")?;
    let gammas: Vec<f64> = match gammas {
        Some(g) => parse_list(g, "gamma")?,
        None => vec![1.0; k as usize],
    };
    let gamma: f64 = gammas.iter().sum();
    let mut rep = Report::table(&["k", "q", "T", "N", "normalizer", "ratio"]);
    for t in ts {
        let spec = ProductEquationSpec { k, q, gammas: gammas.clone(), t };
        let count = asymptotics::product_equation_count(&spec, common.budget)?;
        let norm = t.powf(gamma) * t.ln().powi(((k - 1) * (k - 1)) as i32);
        let ratio = count as f64 / norm;
        rep.rows.push(vec![k.to_string(), q.to_string(), fmt_f64(t), count.to_string(), fmt_f64(norm), fmt_f64(ratio)]);
        rep.plot.push((fmt_f64(t), ratio));
        rep.records.push(json!({"k": k, "q": q, "gammas": gammas, "T": t, "N": count.to_string(), "normalizer": norm, "ratio": ratio}));
    }
    Ok(rep)
}

fn lowerbound_cmd(n: usize, heights: &str, primes: Option<&str>, list: bool, common: &Common) -> CliResult<Report> {
    let params = match primes {
        None => LowerBoundParams::default_for(n)?,
        Some(s) => {
            let ps: Vec<u64> = parse_list(s, "prime")?;
            if n % 2 == 1 || ps.len() != n - 2 {
                return Err(CliError::Invalid("need n even and n - 2 primes".into()));
            }
            let p = ps.iter().step_by(2).copied().collect();
            let q = ps.iter().skip(1).step_by(2).copied().collect();
            LowerBoundParams::new(n / 2, p, q)?
        }
    };
    let hs: Vec<u64> = parse_list(heights, "height")?;
    let mut rep = Report::table(&["n", "H", "T", "count", "normalizer", "ratio"]);
    for (i, &h) in hs.iter().enumerate() {
        let row = asymptotics::lower_bound_census(&params, h, common.budget)?;
        rep.rows.push(vec![n.to_string(), h.to_string(), row.t.to_string(), row.count.to_string(), fmt_f64(row.normalizer), fmt_f64(row.ratio)]);
        rep.plot.push((h.to_string(), row.ratio));
        let mut rec = json!({"n": n, "H": h, "T": row.t, "count": row.count.to_string(), "normalizer": row.normalizer, "ratio": row.ratio, "p": params.p, "q": params.q});
        if list && i == 0 {
            rec["tuples"] = json!(asymptotics::lower_bound_generate(&params, row.t, common.budget)?);
        }
        rep.records.push(rec);
    }
    Ok(rep)
}

pub fn parse_number(s: &str) -> CliResult<AlgebraicNumber> {
    let bad = || CliError::Invalid(format!("cannot parse number '{s}'"));
    if let Some(rest) = s.strip_prefix('[') {
        let (coeffs, idx) = rest.split_once(']').ok_or_else(bad)?;
        let idx: usize = match idx.strip_prefix('#') {
            Some(i) => i.parse().map_err(|_| bad())?,
            None if idx.is_empty() => 0,
            None => return Err(bad()),
        };
        let c: Vec<BigInt> = coeffs.split(',').map(|x| x.trim().parse::<BigInt>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        return Ok(AlgebraicNumber::new(IntPolynomial::new(c)?, idx)?);
    }
    let q: BigRational = s.parse().map_err(|_| bad())?;
    Ok(AlgebraicNumber::from_rational(&q)?)
}

fn verify_cmd(values: &[String], bound: Option<u32>) -> CliResult<Report> {
    let tuple: Vec<AlgebraicNumber> = values.iter().map(|s| parse_number(s)).collect::<CliResult<_>>()?;
    let bound = bound.unwrap_or(DEFAULT_VERIFY_BOUND);
    let cert = multdep::dependence(&tuple, bound)?;
    let rank = multdep::multiplicative_rank(&tuple, bound)?;
    let n = tuple.len();
    let mut rep = Report::table(&["tuple", "dependent", "relation", "rank", "method", "verified"]);
    rep.json_primary = true;
    let relation = cert.as_ref().map(|c| c.relation.clone());
    let fmt_rel = relation.as_ref().map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))).unwrap_or_default();
    let method = cert.as_ref().map(|c| format!("{:?}", c.method));
    let verified = cert.as_ref().map(|c| c.verified);
    let rank_value = (rank.s < n).then_some(rank.s);
    rep.rows.push(vec![
        values.join(" "),
        cert.is_some().to_string(),
        fmt_rel,
        rank_value.map(|s| s.to_string()).unwrap_or_default(),
        method.clone().unwrap_or_default(),
        verified.map(|v| v.to_string()).unwrap_or_default(),
    ]);
    rep.records.push(json!({
        "tuple": values,
        "dependent": cert.is_some(),
        "relation": relation,
        "rank": rank_value,
        "witness": rank.witness,
        "method": method,
        "verified": verified,
        "bound": bound,
    }));
    Ok(rep)
}

fn special_cmd(d: u32, heights: &str) -> CliResult<Report> {
    let hs: Vec<u64> = parse_list(heights, "height")?;
    let mut rep = Report::table(&["d", "H", "set", "count", "empirical_exponent", "bound_exponent"]);
    for h in hs {
        let c = special::count_special_sets(d, h)?;
        let rows = c.exponents();
        for r in &rows {
            rep.rows.push(vec![d.to_string(), h.to_string(), r.set.into(), r.count.to_string(), fmt_opt(r.empirical), fmt_f64(r.bound)]);
        }
        rep.records.push(json!({
            "d": d, "H": h, "C": c.c, "C_star": c.c_star, "E": c.e, "E_irreducible": c.e_irreducible, "F": c.f, "F_star": c.f_star,
            "exponents": rows.iter().map(|r| json!({"set": r.set, "count": r.count, "empirical": r.empirical, "bound": r.bound})).collect::<Vec<_>>(),
        }));
    }
    Ok(rep)
}

fn fixed_cmd(field: &str, u: u64, v: i64, heights: &str) -> CliResult<Report> {
    let k = parse_field(field)?;
    let mut rep = Report::table(&["field", "u", "v", "H", "count", "empirical_exponent"]);
    for h in parse_heights(heights)? {
        let r = counting::count_fixed_coeffs(k, u, v, &h)?;
        rep.rows.push(vec![field.into(), u.to_string(), v.to_string(), h_label(&h), r.count.to_string(), fmt_opt(r.empirical)]);
        rep.records.push(json!({"field": field, "u": u, "v": v, "H": h_label(&h), "count": r.count, "empirical": r.empirical}));
    }
    Ok(rep)
}
