//! Command-line front end. [`run`] parses arguments, runs one subcommand and
//! returns what would be printed, so it can be driven in-process.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::chowla::{self, pattern_label};
use crate::dirichlet::{self, DirichletPolynomial, ExceptionalSet, Layer, QuadratureParams, TwistKind};
use crate::error::{Error, Result};
use crate::format::{normalize, to_normalized, Cell, Table};
use crate::golden::{self, GoldenOutcome, Tolerance};
use crate::intervals::{variance_scan, Weight};
use crate::multiplicative::{self as mf, MultiplicativeFunction};
use crate::sieve::{sieve_segment, FactorTable};

#[derive(Parser, Debug)]
#[command(name = "liouville-lab", version, about = "Liouville and Möbius statistics, Chowla correlations and Dirichlet polynomial checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Seed for randomized trials.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores). Never changes the output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Record or compare a golden snapshot in this directory
    /// (LIOUVILLE_LAB_GOLDEN takes precedence).
    #[arg(long, global = true)]
    pub golden_dir: Option<PathBuf>,
    /// Snapshot name (default: the subcommand name).
    #[arg(long, global = true)]
    pub golden_name: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
#[group(id = "poly", multiple = false)]
pub struct PolyArgs {
    /// CSV file of `n,re,im` rows.
    #[arg(long)]
    pub coeffs: Option<PathBuf>,
    /// a(n) = λ(n) for A ≤ n ≤ B.
    #[arg(long, value_name = "A,B", value_delimiter = ',', num_args = 2)]
    pub liouville_range: Option<Vec<u64>>,
    /// Seeded random unit coefficients on 1..=N.
    #[arg(long, value_name = "N")]
    pub random: Option<u64>,
    /// a(p) = 1 on primes p ≤ P.
    #[arg(long, value_name = "P")]
    pub primes: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate Ω, λ, μ, Λ on [lo, hi].
    Sieve {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        /// Also write the binary table cache (with a JSON sidecar).
        #[arg(long)]
        emit_cache: Option<PathBuf>,
    },
    /// Mean square of short-interval sums S(x, h) over x ∈ [X, 2X).
    Variance {
        #[arg(long)]
        x: u64,
        /// One or more interval lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        step: u64,
        #[arg(long, default_value = "lambda")]
        weight: Weight,
        /// ε values; reports #{x : |S| > εh}.
        #[arg(long, value_delimiter = ',')]
        thresholds: Vec<f64>,
        /// Also write the CSV table here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Frequencies of the 2^k sign patterns of (λ(n), …, λ(n+k−1)).
    Patterns {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Σ_{n≤N} λ(n+h₁)⋯λ(n+h_k).
    Correlate {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        shifts: Vec<u64>,
    },
    /// Averaged correlation over all shift tuples in [1, h]^k.
    AvgChowla {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        h: u64,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// (1/log x) Σ_{n≤x} λ(n)λ(n+shift)/n.
    LogChowla {
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 1)]
        shift: u64,
    },
    /// Largest homogeneous-progression partial sum of a ±1 function.
    Discrepancy {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "lambda")]
        f: String,
    },
    /// Exact window integral against the frequency-side integral.
    Plancherel {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        y_max: Option<f64>,
        /// Seeded trials for --random.
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
    /// ∫_{−T}^{T} |A(t)|² dt / ((T + N) Σ|a|²).
    Meanvalue {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
    /// Grid measure of {|t| ≤ T : |Σ a(p) p^{it}| ≥ π(P)/V}.
    LargeValues {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        v: f64,
        /// Grid step (default 1/(4 log P)).
        #[arg(long)]
        step: Option<f64>,
        /// Prime-supported coefficients (default a(p) = 1).
        #[arg(long)]
        coeffs: Option<PathBuf>,
        /// Include the flagged grid points.
        #[arg(long)]
        members: bool,
    },
    /// ∫ over a seeded random exceptional set, against the mean-value bound.
    HmRatio {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        t: f64,
        /// Random points making up the set.
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Cell width around each point (default 1/(4 log N)).
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        prime_variant: bool,
        #[arg(long, default_value_t = dirichlet::DEFAULT_HM_EPS)]
        eps: f64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
    /// Build the layered prime-block coefficient sequence.
    Decompose {
        /// Prime intervals, e.g. "2:10;100:1000".
        #[arg(long)]
        layers: String,
        #[arg(long)]
        x: u64,
        /// Check a(n) = λ(n) Π ω_layer(n) on [X, 2X].
        #[arg(long)]
        verify: bool,
        /// Write the coefficients as n,re,im CSV.
        #[arg(long)]
        emit_coeffs: Option<PathBuf>,
    },
    /// |Σ_{n≤x} λ(n) n^{it}| or |Σ_{p≤x} p^{it}| per t.
    Twisted {
        #[arg(long, default_value = "liouville")]
        kind: TwistKind,
        #[arg(long)]
        x: u64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        t: Vec<f64>,
    },
    /// Euler product, empirical mean and distance of a multiplicative function.
    Wirsing {
        #[arg(long, default_value = "mu2")]
        f: String,
        #[arg(long)]
        n: u64,
        /// Largest prime in the product (default min(N, 10⁶)).
        #[arg(long)]
        cutoff: Option<u64>,
    },
    /// Sign changes among the nonzero values f(1), …, f(N).
    Signchanges {
        #[arg(long, default_value = "mu")]
        f: String,
        #[arg(long)]
        n: u64,
    },
    /// First N^ε-smooth integer in [N, N + C√N], or a sampled table over N.
    Smooth {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_delimiter = ',', default_value = "0.5")]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 10.0)]
        c: f64,
        /// Sample this many N from [lo, hi] instead of a single N.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        lo: u64,
        #[arg(long, default_value_t = 2_000_000)]
        hi: u64,
    },
    /// Short sums of f against the scaled long average over [X, 2X].
    Shortlong {
        #[arg(long, default_value = "lambda")]
        f: String,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        h: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sieve { .. } => "sieve",
            Command::Variance { .. } => "variance",
            Command::Patterns { .. } => "patterns",
            Command::Correlate { .. } => "correlate",
            Command::AvgChowla { .. } => "avg-chowla",
            Command::LogChowla { .. } => "log-chowla",
            Command::Discrepancy { .. } => "discrepancy",
            Command::Plancherel { .. } => "plancherel",
            Command::Meanvalue { .. } => "meanvalue",
            Command::LargeValues { .. } => "large-values",
            Command::HmRatio { .. } => "hm-ratio",
            Command::Decompose { .. } => "decompose",
            Command::Twisted { .. } => "twisted",
            Command::Wirsing { .. } => "wirsing",
            Command::Signchanges { .. } => "signchanges",
            Command::Smooth { .. } => "smooth",
            Command::Shortlong { .. } => "shortlong",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Sieve { .. } | Command::Variance { .. } => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// Result of one subcommand, before formatting.
#[derive(Debug)]
pub struct Report {
    pub params: Value,
    pub result: Map<String, Value>,
    pub table: Option<Table>,
    pub tolerances: BTreeMap<String, Tolerance>,
    side_csv: Option<PathBuf>,
}

impl Report {
    fn new<P: Serialize, R: Serialize>(params: P, result: R) -> Result<Self> {
        let result = match serde_json::to_value(result)? {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Ok(Self {
            params: serde_json::to_value(params)?,
            result,
            table: None,
            tolerances: BTreeMap::from([("*".to_string(), Tolerance::default())]),
            side_csv: None,
        })
    }

    fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    fn insert<V: Serialize>(&mut self, key: &str, v: V) -> Result<()> {
        self.result.insert(key.into(), serde_json::to_value(v)?);
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs it. Exit codes: 0 on
/// success, 1 on runtime failure, 2 on usage errors.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: if e.is_usage() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let report = match g.threads {
        Some(0) => return Err(Error::InvalidParameter("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(|| dispatch(&cli.command, g.seed))?,
        None => dispatch(&cli.command, g.seed)?,
    };
    let format = g.format.unwrap_or(cli.command.default_format());
    let name = cli.command.name();
    let text = render(name, g.seed, &report, format)?;

    if let Some(path) = &report.side_csv {
        let table = report.table.clone().unwrap_or_else(|| Table::from_scalars(&report.result));
        std::fs::write(path, table.to_csv()?)?;
    }
    let mut stderr = String::new();
    if let Some(dir) = golden::golden_dir(g.golden_dir.as_deref()) {
        let snap_name = g.golden_name.as_deref().unwrap_or(name);
        let params = json!({"command": name, "params": report.params, "seed": g.seed});
        let payload = Value::Object(report.result.clone());
        match golden::golden_record(&dir, snap_name, &params, &payload, &report.tolerances)? {
            GoldenOutcome::Written(p) => stderr.push_str(&format!("golden: wrote {}\n", p.display())),
            GoldenOutcome::Matched(p) => stderr.push_str(&format!("golden: matched {}\n", p.display())),
        }
    }
    let stdout = match &g.output {
        Some(path) => {
            std::fs::write(path, &text)?;
            String::new()
        }
        None => text,
    };
    Ok(Outcome { code: 0, stdout, stderr })
}

/// Formats a report the way the CLI prints it.
pub fn render(name: &str, seed: u64, report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut obj = report.result.clone();
            obj.insert("command".into(), json!(name));
            obj.insert("params".into(), report.params.clone());
            obj.insert("seed".into(), json!(seed));
            let mut v = Value::Object(obj);
            normalize(&mut v);
            Ok(serde_json::to_string_pretty(&v)? + "\n")
        }
        Format::Csv => match &report.table {
            Some(t) => t.to_csv(),
            None => Table::from_scalars(&report.result).to_csv(),
        },
    }
}

fn load_poly(args: &PolyArgs, seed: u64, trial: u64) -> Result<DirichletPolynomial> {
    if let Some(path) = &args.coeffs {
        return DirichletPolynomial::read_csv(std::fs::File::open(path)?);
    }
    if let Some(r) = &args.liouville_range {
        let (a, b) = (r[0], r[1]);
        if a == 0 || a > b {
            return Err(Error::InvalidParameter(format!("--liouville-range {a},{b} must satisfy 1 ≤ A ≤ B")));
        }
        return DirichletPolynomial::liouville(a, b);
    }
    if let Some(n) = args.random {
        if n == 0 {
            return Err(Error::InvalidParameter("--random needs N ≥ 1".into()));
        }
        return DirichletPolynomial::random_unit(n, seed, trial);
    }
    if let Some(p) = args.primes {
        return DirichletPolynomial::prime_indicator(p);
    }
    Err(Error::InvalidParameter(
        "give coefficients with --coeffs, --liouville-range, --random or --primes".into(),
    ))
}

fn trial_count(args: &PolyArgs, trials: u64) -> Result<u64> {
    if trials == 0 {
        return Err(Error::InvalidParameter("--trials must be at least 1".into()));
    }
    if trials > 1 && args.random.is_none() {
        return Err(Error::InvalidParameter("--trials > 1 needs --random".into()));
    }
    Ok(trials)
}

/// One case flattens into the result; several become `cases` plus the worst value of `key`.
fn cases_report<P: Serialize, C: Serialize>(params: P, cases: Vec<C>, key: &str) -> Result<Report> {
    if cases.len() == 1 {
        return Report::new(params, &cases[0]);
    }
    let values: Vec<Value> = cases.iter().map(serde_json::to_value).collect::<std::result::Result<_, _>>()?;
    let worst = values
        .iter()
        .filter_map(|v| v.get(key).and_then(Value::as_f64))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut r = Report::new(params, json!({ "cases": values }))?;
    r.insert(&format!("max_{key}"), worst)?;
    Ok(r)
}

fn sieve_table(t: &FactorTable) -> Table {
    let mut table = Table::new(["n", "omega", "lambda", "mu", "mangoldt", "prime"]);
    for n in t.lo()..=t.hi() {
        table.push(vec![
            n.into(),
            (t.omega(n).unwrap() as u64).into(),
            (t.lambda(n).unwrap() as i64).into(),
            (t.mu(n).unwrap() as i64).into(),
            t.mangoldt(n).unwrap().into(),
            (t.is_prime(n).unwrap() as u64).into(),
        ]);
    }
    table
}

pub fn dispatch(cmd: &Command, seed: u64) -> Result<Report> {
    match cmd {
        Command::Sieve { lo, hi, emit_cache } => {
            let t = sieve_segment(*lo, *hi)?;
            if let Some(p) = emit_cache {
                t.write_cache(p)?;
            }
            let lam: i64 = t.lambda_values().iter().map(|&v| v as i64).sum();
            let mu: i64 = t.mu_values().iter().map(|&v| v as i64).sum();
            let primes = (t.lo()..=t.hi()).filter(|&n| t.is_prime(n).unwrap()).count();
            let psi: f64 = t.mangoldt_values().iter().sum();
            let summary = json!({
                "count": t.len(), "lambda_sum": lam, "mu_sum": mu, "prime_count": primes, "psi_increment": psi,
            });
            Ok(Report::new(json!({"lo": lo, "hi": hi}), summary)?.with_table(sieve_table(&t)))
        }
        Command::Variance {
            x,
            h,
            step,
            weight,
            thresholds,
            csv,
        } => {
            let mut header: Vec<String> = ["x_start", "h", "count", "mean_sq", "normalized_variance", "max_abs"]
                .map(String::from)
                .to_vec();
            header.extend(thresholds.iter().map(|t| format!("exceed_{}", crate::format::fmt_float(*t))));
            let mut table = Table::new(header);
            let mut rows = Vec::new();
            for &hh in h {
                let s = variance_scan(*x, hh, *step, *weight, thresholds)?;
                let mut row: Vec<Cell> = vec![
                    s.x_start.into(),
                    s.h.into(),
                    s.count.into(),
                    s.mean_sq.into(),
                    s.normalized_variance.into(),
                    s.max_abs.into(),
                ];
                row.extend(s.exceptional_counts.iter().map(|&(_, c)| Cell::from(c)));
                table.push(row);
                rows.push(s);
            }
            let params = json!({"x": x, "h": h, "step": step, "weight": weight, "thresholds": thresholds});
            let mut r = Report::new(params, json!({ "rows": rows }))?.with_table(table);
            r.side_csv = csv.clone();
            Ok(r)
        }
        Command::Patterns { n, k } => {
            let c = chowla::pattern_census(*n, *k)?;
            let mut table = Table::new(["pattern", "count", "frequency"]);
            let mut pats = Vec::new();
            for (code, (&count, &freq)) in c.counts.iter().zip(&c.frequencies).enumerate() {
                let label = pattern_label(code, c.k);
                table.push(vec![label.clone().into(), count.into(), freq.into()]);
                pats.push(json!({"pattern": label, "count": count, "frequency": freq}));
            }
            Ok(Report::new(json!({"n": n, "k": k}), json!({ "patterns": pats }))?.with_table(table))
        }
        Command::Correlate { n, shifts } => {
            let r = chowla::correlation(*n, shifts)?;
            Report::new(json!({"n": n, "shifts": shifts}), json!({"sum": r.sum, "normalized": r.normalized}))
        }
        Command::AvgChowla { x, h, k } => {
            let r = chowla::averaged_chowla(*x, *h, *k)?;
            Report::new(
                json!({"x": x, "h": h, "k": k}),
                json!({"value": r.value, "total_abs": r.total_abs.to_string(), "distinct_sets": r.distinct_sets}),
            )
        }
        Command::LogChowla { x, shift } => {
            let r = chowla::log_chowla(*x, *shift)?;
            Report::new(json!({"x": x, "shift": shift}), json!({"sum": r.sum, "normalized": r.normalized}))
        }
        Command::Discrepancy { n, f } => {
            let func = MultiplicativeFunction::parse(f)?;
            let d = chowla::discrepancy_scan(&func, *n)?;
            Report::new(
                json!({"n": n, "f": f}),
                json!({"max_abs": d.max_abs, "argmax_d": d.argmax_d, "argmax_n": d.argmax_n}),
            )
        }
        Command::Plancherel { poly, t, y_max, trials } => {
            let trials = trial_count(poly, *trials)?;
            let mut params = QuadratureParams::default();
            params.y_max = *y_max;
            let cases = (0..trials)
                .map(|i| dirichlet::plancherel_check(&load_poly(poly, seed, i)?, *t, &params))
                .collect::<Result<Vec<_>>>()?;
            cases_report(poly_params(poly, json!({"t": t, "y_max": y_max, "trials": trials})), cases, "rel_err")
        }
        Command::Meanvalue { poly, t, trials } => {
            let trials = trial_count(poly, *trials)?;
            let cases = (0..trials)
                .map(|i| dirichlet::mean_value_ratio(&load_poly(poly, seed, i)?, *t))
                .collect::<Result<Vec<_>>>()?;
            cases_report(poly_params(poly, json!({"t": t, "trials": trials})), cases, "ratio")
        }
        Command::LargeValues {
            p,
            t,
            v,
            step,
            coeffs,
            members,
        } => {
            let poly = match coeffs {
                Some(path) => DirichletPolynomial::read_csv(std::fs::File::open(path)?)?,
                None => DirichletPolynomial::prime_indicator(*p)?,
            };
            let step = step.unwrap_or(1.0 / (4.0 * (*p as f64).ln()));
            let lv = dirichlet::large_values_measure(&poly, *p, *t, *v, step)?;
            let mut out = json!({
                "pi_p": lv.pi_p,
                "threshold": lv.threshold,
                "grid_points": lv.grid_points,
                "member_count": lv.set.member_points.len(),
                "measure_estimate": lv.set.measure_estimate,
                "measure_bound": lv.measure_bound,
            });
            if *members {
                out["member_points"] = to_normalized(&lv.set.member_points)?;
            }
            let params = json!({"p": p, "t": t, "v": v, "step": step, "coeffs": coeffs});
            Report::new(params, out)
        }
        Command::HmRatio {
            poly,
            t,
            points,
            step,
            prime_variant,
            eps,
            trials,
        } => {
            let trials = trial_count(poly, *trials)?;
            let cases = (0..trials)
                .map(|i| {
                    let p = load_poly(poly, seed, i)?;
                    let cell = step.unwrap_or(1.0 / (4.0 * (p.support_hi().max(2) as f64).ln()));
                    let set = ExceptionalSet::from_points(*t, cell, dirichlet::random_points(seed, i, *points, *t))?;
                    dirichlet::halasz_montgomery_ratio_with(&p, &set, *t, *prime_variant, *eps, &QuadratureParams::default())
                })
                .collect::<Result<Vec<_>>>()?;
            let params = poly_params(
                poly,
                json!({"t": t, "points": points, "step": step, "prime_variant": prime_variant, "eps": eps, "trials": trials}),
            );
            cases_report(params, cases, "ratio")
        }
        Command::Decompose {
            layers,
            x,
            verify,
            emit_coeffs,
        } => {
            let layers = Layer::parse_list(layers)?;
            let (d, poly) = dirichlet::build_decomposition(&layers, *x)?;
            if let Some(path) = emit_coeffs {
                poly.write_csv(std::fs::File::create(path)?)?;
            }
            let info: Vec<Value> = d
                .layers
                .iter()
                .map(|l| {
                    json!({
                        "lo": l.layer.lo, "hi": l.layer.hi, "w": l.w,
                        "primes": l.blocks.iter().map(|b| b.primes.len()).sum::<usize>(),
                        "blocks": l.blocks.len(),
                    })
                })
                .collect();
            let mut out = json!({
                "layers": info,
                "support_lo": poly.support_lo(),
                "support_hi": poly.support_hi(),
                "nonzero": poly.nonzero().count(),
                "l1_mass": poly.l1_mass(),
            });
            if *verify {
                let check = dirichlet::decomposition_identity(&d, &poly)?;
                out["verified"] = json!(check.holds);
                out["checked"] = json!(check.checked);
                out["mismatches"] = json!(check.mismatches.len());
            }
            Report::new(json!({"layers": layers, "x": x}), out)
        }
        Command::Twisted { kind, x, t } => {
            let rows = dirichlet::twisted_sum_profile(*kind, *x, t)?;
            let mut table = Table::new(["t", "re", "im", "abs_sum", "trivial_bound", "ratio"]);
            for r in &rows {
                table.push(vec![r.t.into(), r.re.into(), r.im.into(), r.abs_sum.into(), r.trivial_bound.into(), r.ratio.into()]);
            }
            Ok(Report::new(json!({"kind": kind, "x": x, "t": t}), json!({ "rows": rows }))?.with_table(table))
        }
        Command::Wirsing { f, n, cutoff } => {
            let func = MultiplicativeFunction::parse(f)?;
            let cutoff = cutoff.unwrap_or((*n).clamp(2, 1_000_000));
            let r = mf::wirsing_mean(&func, *n, cutoff)?;
            Report::new(json!({"f": f, "n": n, "cutoff": cutoff}), r)
        }
        Command::Signchanges { f, n } => {
            let func = MultiplicativeFunction::parse(f)?;
            let r = mf::sign_changes(&func, *n)?;
            Report::new(json!({"f": f, "n": n}), r)
        }
        Command::Smooth {
            n,
            eps,
            c,
            samples,
            lo,
            hi,
        } => match (samples, n) {
            (Some(s), _) => {
                let rows = mf::smooth_constant_table(eps, *s, *lo, *hi, *c, seed)?;
                let mut table = Table::new(["eps", "samples", "all_found", "not_found", "max_offset", "max_ratio"]);
                for r in &rows {
                    table.push(vec![
                        r.eps_exponent.into(),
                        r.samples.into(),
                        r.all_found.to_string().into(),
                        r.not_found.into(),
                        r.max_offset.into(),
                        r.max_ratio.into(),
                    ]);
                }
                let params = json!({"eps": eps, "c": c, "samples": s, "lo": lo, "hi": hi});
                Ok(Report::new(params, json!({ "rows": rows }))?.with_table(table))
            }
            (None, Some(n)) => {
                let rows = eps
                    .iter()
                    .map(|&e| mf::smooth_in_interval(*n, e, *c))
                    .collect::<Result<Vec<_>>>()?;
                let params = json!({"n": n, "eps": eps, "c": c});
                if rows.len() == 1 {
                    Report::new(params, rows[0])
                } else {
                    Report::new(params, json!({ "rows": rows }))
                }
            }
            (None, None) => Err(Error::InvalidParameter("smooth needs --n or --samples".into())),
        },
        Command::Shortlong { f, x, h, step, eps } => {
            let func = MultiplicativeFunction::parse(f)?;
            let r = mf::short_vs_long(&func, *x, *h, *step, *eps)?;
            Report::new(json!({"f": f, "x": x, "h": h, "step": step, "eps": eps}), r)
        }
    }
}

fn poly_params(poly: &PolyArgs, mut extra: Value) -> Value {
    let source = if let Some(p) = &poly.coeffs {
        json!({"coeffs": path_string(p)})
    } else if let Some(r) = &poly.liouville_range {
        json!({"liouville_range": r})
    } else if let Some(n) = poly.random {
        json!({"random": n})
    } else {
        json!({"primes": poly.primes})
    };
    extra["source"] = source;
    extra
}

fn path_string(p: &Path) -> String {
    p.display().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("liouville-lab").chain(args.iter().copied()))
    }

    #[test]
    fn correlate_json() {
        let out = run_args(&["correlate", "--n", "8", "--shifts", "0,1"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["sum"], json!(-4));
        assert_eq!(v["normalized"], json!(-0.5));
        assert_eq!(v["seed"], json!(0));
    }

    #[test]
    fn usage_errors_exit_2() {
        let out = run_args(&["correlate", "--shifts", "0,0", "--n", "10"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("distinct"), "{}", out.stderr);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["correlate", "--n", "ten", "--shifts", "0"]).code, 2);
        assert_eq!(run_args(&["variance", "--x", "100", "--h", "200"]).code, 2);
    }

    #[test]
    fn runtime_errors_exit_1() {
        let out = run_args(&["correlate", "--n", "8", "--shifts", "0,1", "--output", "/nonexistent/dir/out.json"]);
        assert_eq!(out.code, 1);
        let out = run_args(&["discrepancy", "--n", "10", "--f", "mu"]);
        assert_eq!(out.code, 1);
    }

    #[test]
    fn variance_csv_header() {
        let out = run_args(&["variance", "--x", "100000", "--h", "100"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("x_start,h,count,mean_sq,normalized_variance,max_abs\n"));
        let out = run_args(&["variance", "--x", "100000", "--h", "10,100", "--thresholds", "0.1,0.5"]);
        let mut lines = out.stdout.lines();
        assert_eq!(
            lines.next().unwrap(),
            "x_start,h,count,mean_sq,normalized_variance,max_abs,exceed_0.1,exceed_0.5"
        );
        assert_eq!(lines.count(), 2);
    }

    #[test]
    fn help_exits_0() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("avg-chowla"));
    }

    #[test]
    fn thread_count_does_not_change_bytes() {
        for args in [
            vec!["patterns", "--n", "200000", "--k", "3"],
            vec!["variance", "--x", "200000", "--h", "16,256", "--thresholds", "0.1"],
            vec!["meanvalue", "--random", "64", "--t", "64", "--trials", "3", "--seed", "5"],
        ] {
            let mut a = args.clone();
            a.extend(["--threads", "1"]);
            let mut b = args.clone();
            b.extend(["--threads", "4"]);
            let (x, y) = (run_args(&a), run_args(&b));
            assert_eq!(x.code, 0, "{}", x.stderr);
            assert_eq!(x.stdout, y.stdout);
        }
    }

    #[test]
    fn golden_round_trip_via_cli() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let first = run_args(&["patterns", "--n", "10000", "--k", "2", "--golden-dir", d]);
        assert_eq!(first.code, 0, "{}", first.stderr);
        assert!(first.stderr.contains("wrote"));
        let again = run_args(&["patterns", "--n", "10000", "--k", "2", "--golden-dir", d]);
        assert!(again.stderr.contains("matched"));
        assert_eq!(first.stdout, again.stdout);
        let changed = run_args(&["patterns", "--n", "10001", "--k", "2", "--golden-dir", d]);
        assert_eq!(changed.code, 1);
        assert!(changed.stderr.contains("hash mismatch"));
    }
}
