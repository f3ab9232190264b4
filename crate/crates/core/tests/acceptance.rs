//! Acceptance suite: one PASS/FAIL line per criterion. Run with
//! `cargo test --test acceptance`. Snapshots live in `tests/golden/` and are
//! written on the first run, compared on later runs.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use liouville_lab::chowla::{averaged_chowla, correlation, log_chowla, pattern_census};
use liouville_lab::cli;
use liouville_lab::dirichlet::{
    build_decomposition, decomposition_identity, halasz_montgomery_ratio, mean_value_ratio, plancherel_check,
    random_points, turan_variance, DirichletPolynomial, ExceptionalSet, Layer, Provenance, QuadratureParams,
};
use liouville_lab::golden::{golden_record, Tolerance};
use liouville_lab::intervals::{variance_scan, Weight};
use liouville_lab::multiplicative::{sign_changes, smooth_constant_table, wirsing_mean, MultiplicativeFunction};
use serde_json::json;

type Check = std::result::Result<String, String>;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn c1_plancherel() -> Check {
    let params = QuadratureParams::default();
    let mut worst: f64 = 0.0;
    for trial in 0..20 {
        let poly = DirichletPolynomial::random_unit(1000, 2024, trial).map_err(e)?;
        for t in [1.0, 5.0, 25.0] {
            let r = plancherel_check(&poly, t, &params).map_err(e)?;
            worst = worst.max(r.rel_err);
            ensure(r.rel_err < 1e-3, format!("trial {trial}, T = {t}: rel_err {:.3e}", r.rel_err))?;
        }
    }
    // a single term gives 2|a|²/T on both sides
    let mut single_worst: f64 = 0.0;
    for n in [1u64, 7, 100] {
        let poly = DirichletPolynomial::from_pairs(&[(n, num_complex::Complex64::new(0.6, 0.8))], Provenance::Raw)
            .map_err(e)?;
        for t in [1.0, 5.0, 25.0] {
            let r = plancherel_check(&poly, t, &params).map_err(e)?;
            let want = 2.0 / t;
            let err = (r.lhs - want).abs().max((r.rhs - want).abs()) / want;
            single_worst = single_worst.max(err);
            ensure(err < 1e-9, format!("single term n = {n}, T = {t}: lhs {} rhs {}", r.lhs, r.rhs))?;
        }
    }
    Ok(format!("60 cases, max rel_err {worst:.2e}; single terms max {single_worst:.1e}"))
}

/// Distinct primes of `layer` dividing n, by trial division.
fn omega_in(n: u64, layer: &Layer) -> i64 {
    layer.primes().iter().filter(|&&p| n % p == 0).count() as i64
}

fn lambda_td(mut n: u64) -> i64 {
    let mut omega = 0;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            omega += 1;
        }
        p += 1;
    }
    if n > 1 {
        omega += 1;
    }
    if omega % 2 == 0 {
        1
    } else {
        -1
    }
}

fn c2_decomposition() -> Check {
    let x = 10_000u64;
    let configs = ["2:10", "2:10;11:40", "2:5;7:20;23:60"];
    let mut checked = 0u64;
    for cfg in configs {
        let layers = Layer::parse_list(cfg).map_err(e)?;
        let (d, poly) = build_decomposition(&layers, x).map_err(e)?;
        let check = decomposition_identity(&d, &poly).map_err(e)?;
        ensure(check.holds, format!("{cfg}: {} mismatches", check.mismatches.len()))?;
        // independent oracle on [X, 2X]
        for n in x..=2 * x {
            let want: i64 = lambda_td(n) * layers.iter().map(|l| omega_in(n, l)).product::<i64>();
            let got = poly.coeff(n);
            ensure(
                got.im == 0.0 && got.re == want as f64,
                format!("{cfg}: a({n}) = {got} but λ·Πω = {want}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("3 configurations, {checked} values exact"))
}

fn c3_mean_value() -> Check {
    let mut worst: f64 = 0.0;
    for trial in 0..20 {
        let poly = DirichletPolynomial::random_unit(512, 77, trial).map_err(e)?;
        let r = mean_value_ratio(&poly, 512.0).map_err(e)?;
        worst = worst.max(r.ratio);
        ensure(r.ratio <= std::f64::consts::TAU + 0.1, format!("trial {trial}: ratio {}", r.ratio))?;
    }
    Ok(format!("20 trials, max ratio {worst:.4}"))
}

fn c4_halasz_montgomery() -> Check {
    let p = 1000u64;
    let t = 10_000.0;
    let poly = DirichletPolynomial::prime_indicator(p).map_err(e)?;
    let step = 1.0 / (4.0 * (p as f64).ln());
    let mut worst = (0.0f64, 0.0f64);
    for trial in 0..5 {
        let set = ExceptionalSet::from_points(t, step, random_points(99, trial, 50, t)).map_err(e)?;
        let general = halasz_montgomery_ratio(&poly, &set, t, false).map_err(e)?;
        let prime = halasz_montgomery_ratio(&poly, &set, t, true).map_err(e)?;
        ensure(general.ratio <= 10.0, format!("trial {trial}: general ratio {}", general.ratio))?;
        ensure(prime.ratio <= 10.0, format!("trial {trial}: prime ratio {}", prime.ratio))?;
        // π(P)-scale main term: P/log P against N
        ensure(prime.denominator < general.denominator, format!("trial {trial}: prime denominator not smaller"))?;
        worst = (worst.0.max(general.ratio), worst.1.max(prime.ratio));
    }
    Ok(format!("5 sets, max general {:.4}, max prime {:.4}", worst.0, worst.1))
}

fn c5_variance() -> Check {
    let x = 10_000_000;
    let v: Vec<f64> = [16u64, 256, 4096]
        .iter()
        .map(|&h| variance_scan(x, h, 1, Weight::Lambda, &[]).map(|s| s.normalized_variance))
        .collect::<liouville_lab::Result<_>>()
        .map_err(e)?;
    ensure(v[2] < v[1] && v[1] < v[0], format!("not decreasing: {v:?}"))?;
    ensure(v[2] < 0.05, format!("h = 4096 value {}", v[2]))?;
    Ok(format!("h = 16, 256, 4096: {:.4e}, {:.4e}, {:.4e}", v[0], v[1], v[2]))
}

fn c6_patterns() -> Check {
    let n = 10_000_000;
    let c1 = pattern_census(n, 1).map_err(e)?;
    for f in &c1.frequencies {
        ensure((f - 0.5).abs() <= 0.005, format!("k = 1 frequency {f}"))?;
    }
    let c2 = pattern_census(n, 2).map_err(e)?;
    for f in &c2.frequencies {
        ensure((f - 0.25).abs() <= 0.03, format!("k = 2 frequency {f}"))?;
    }
    let c3 = pattern_census(n, 3).map_err(e)?;
    let min3 = c3.frequencies.iter().copied().fold(f64::INFINITY, f64::min);
    ensure(min3 > 0.05, format!("k = 3 minimum frequency {min3}"))?;
    let dev2 = c2.frequencies.iter().map(|f| (f - 0.25).abs()).fold(0.0, f64::max);
    Ok(format!("k=1 {:.5}/{:.5}, k=2 max |f − 1/4| {dev2:.5}, k=3 min {min3:.5}", c1.frequencies[0], c1.frequencies[1]))
}

fn c7_correlations() -> Check {
    let c = correlation(10_000_000, &[0, 1]).map_err(e)?;
    ensure(c.normalized.abs() < 0.01, format!("correlation normalized {}", c.normalized))?;
    let l = log_chowla(100_000_000, 1).map_err(e)?;
    ensure(l.normalized.abs() < 0.05, format!("log_chowla normalized {}", l.normalized))?;
    Ok(format!("correlation {:.3e}, log_chowla(1e8, 1) {:.3e}", c.normalized, l.normalized))
}

fn c8_averaged_chowla() -> Check {
    let (x, h) = (10_000u64, 3u64);
    let r = averaged_chowla(x, h, 2).map_err(e)?;
    let lam: Vec<i64> = (1..=x + h).map(lambda_td).collect();
    let mut total: u128 = 0;
    for h1 in 1..=h {
        for h2 in 1..=h {
            let s: i64 = (1..=x)
                .map(|n| lam[(n + h1 - 1) as usize] * lam[(n + h2 - 1) as usize])
                .sum();
            total += s.unsigned_abs() as u128;
        }
    }
    let want = total as f64 / ((h * h) as f64 * x as f64);
    ensure(r.total_abs == total, format!("total {} vs brute force {total}", r.total_abs))?;
    ensure(r.value == want, format!("value {} vs brute force {want}", r.value))?;
    Ok(format!("total {total}, value {want}"))
}

fn c9_wirsing() -> Check {
    let r = wirsing_mean(&MultiplicativeFunction::MobiusSquared, 10_000_000, 1_000_000).map_err(e)?;
    let target = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    ensure((r.empirical_mean - target).abs() < 1e-3, format!("empirical mean {}", r.empirical_mean))?;
    ensure((r.partial_product - target).abs() < 1e-3, format!("partial product {}", r.partial_product))?;
    Ok(format!("mean {:.7}, product {:.7}, 6/π² {target:.7}", r.empirical_mean, r.partial_product))
}

fn c10_sign_changes() -> Check {
    let r = sign_changes(&MultiplicativeFunction::Mobius, 1_000_000).map_err(e)?;
    ensure(r.proportion > 0.1, format!("proportion {}", r.proportion))?;
    let tols = BTreeMap::from([("*".to_string(), Tolerance::EXACT)]);
    golden_record(
        &golden_dir(),
        "acceptance-signchanges-mu",
        &json!({"f": "mu", "n": 1_000_000}),
        &serde_json::to_value(&r).map_err(e)?,
        &tols,
    )
    .map_err(e)?;
    Ok(format!("{} changes among {} nonzero, proportion {:.5}", r.count, r.nonzero, r.proportion))
}

fn c11_smooth() -> Check {
    let (lo, hi, samples, seed) = (1_000_000u64, 2_000_000u64, 10_000usize, 0u64);
    let rows = smooth_constant_table(&[0.3], samples, lo, hi, 20.0, seed).map_err(e)?;
    let row = &rows[0];
    ensure(row.all_found && row.not_found == 0, format!("{} N without a witness", row.not_found))?;
    let tols = BTreeMap::from([("*".to_string(), Tolerance::default())]);
    golden_record(
        &golden_dir(),
        "acceptance-smooth-table",
        &json!({"eps": [0.3], "samples": samples, "lo": lo, "hi": hi, "c": 20.0, "seed": seed}),
        &json!({ "rows": rows }),
        &tols,
    )
    .map_err(e)?;
    Ok(format!("{samples} samples, max offset {}, max offset/√N {:.4}", row.max_offset, row.max_ratio))
}

fn c12_turan() -> Check {
    let x = 10_000u64;
    let r = turan_variance(Layer::new(2, 10), x).map_err(e)?;
    ensure(r.ratio < 5.0, format!("ratio {}", r.ratio))?;
    let mut notes = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let s = turan_variance(Layer::new(p, p), x).map_err(e)?;
        let w = 1.0 / p as f64;
        let bernoulli = x as f64 * w * (1.0 - w);
        ensure(
            (s.variance - bernoulli).abs() <= 4.0 * w,
            format!("p = {p}: variance {} vs X·W(1 − W) = {bernoulli}", s.variance),
        )?;
        // exact count of multiples in [X, 2X]
        let c = (2 * x / p - (x - 1) / p) as f64;
        let exact = c * (1.0 - w) * (1.0 - w) + (x as f64 + 1.0 - c) * w * w;
        ensure((s.variance - exact).abs() < 1e-9 * exact, format!("p = {p}: {} vs exact {exact}", s.variance))?;
        notes.push(format!("{:.3}", s.variance - bernoulli));
    }
    Ok(format!("layer 2..10 ratio {:.4}; single-prime deviations {}", r.ratio, notes.join(", ")))
}

const GOLDEN_COMMANDS: &[&str] = &[
    "sieve --lo 1 --hi 2000",
    "variance --x 1000000 --h 16,256,4096 --thresholds 0.1,0.5",
    "patterns --n 1000000 --k 3",
    "correlate --n 1000000 --shifts 0,1,2",
    "avg-chowla --x 10000 --h 3 --k 2",
    "log-chowla --x 1000000 --shift 1",
    "discrepancy --n 100000 --f lambda",
    "plancherel --random 200 --t 5 --trials 3 --seed 7",
    "meanvalue --random 512 --t 512 --trials 3 --seed 11",
    "large-values --p 1000 --t 1000 --v 4",
    "hm-ratio --primes 1000 --t 10000 --seed 3 --prime-variant",
    "hm-ratio --random 300 --t 2000 --seed 3 --trials 2",
    "decompose --layers 2:10;11:40 --x 10000 --verify",
    "twisted --kind primes --x 100000 --t 0,1,10,100",
    "twisted --kind liouville --x 100000 --t 0,14.134725",
    "wirsing --f mu2 --n 1000000 --cutoff 100000",
    "signchanges --f mu --n 1000000",
    "smooth --n 1000000 --eps 0.3,0.5",
    "smooth --samples 200 --eps 0.3,0.5 --c 20",
    "shortlong --f lambda --x 100000 --h 100",
];

fn c13_determinism() -> Check {
    let dir = golden_dir();
    let dir = dir.to_str().ok_or("golden path is not UTF-8")?;
    for (i, cmd) in GOLDEN_COMMANDS.iter().enumerate() {
        let name = format!("determinism-{i:02}-{}", cmd.split_whitespace().next().unwrap());
        let mut outputs = Vec::new();
        for threads in ["1", "1", "4"] {
            let mut argv = vec!["liouville-lab"];
            argv.extend(cmd.split_whitespace());
            argv.extend(["--threads", threads, "--golden-dir", dir, "--golden-name", &name]);
            let out = cli::run(argv);
            ensure(out.code == 0, format!("`{cmd}` (threads {threads}): {}", out.stderr.trim()))?;
            outputs.push(out.stdout);
        }
        ensure(outputs[0] == outputs[1], format!("`{cmd}`: rerun differs"))?;
        ensure(outputs[0] == outputs[2], format!("`{cmd}`: threads 1 and 4 differ"))?;
    }
    Ok(format!("{} commands identical across reruns and threads 1, 4", GOLDEN_COMMANDS.len()))
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Check)> = vec![
        ("plancherel identity", Duration::from_secs(120), c1_plancherel),
        ("decomposition identity", Duration::from_secs(60), c2_decomposition),
        ("mean-value constant", Duration::from_secs(120), c3_mean_value),
        ("prime vs general Halász–Montgomery", Duration::from_secs(120), c4_halasz_montgomery),
        ("short-interval variance decay", Duration::from_secs(300), c5_variance),
        ("sign-pattern census", Duration::from_secs(180), c6_patterns),
        ("correlation and logarithmic Chowla", Duration::from_secs(600), c7_correlations),
        ("averaged Chowla oracle", Duration::MAX, c8_averaged_chowla),
        ("Wirsing mean of μ²", Duration::MAX, c9_wirsing),
        ("μ sign changes", Duration::MAX, c10_sign_changes),
        ("smooth numbers in short intervals", Duration::MAX, c11_smooth),
        ("Turán variance", Duration::MAX, c12_turan),
        ("determinism", Duration::MAX, c13_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > budget => Err(format!("{msg}; took {took:.1?}, budget {budget:?}")),
            r => r,
        };
        match result {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{:.1?}]", i + 1, took),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{:.1?}]", i + 1, took);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
