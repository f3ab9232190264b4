//! Bounded real multiplicative functions: tabulation, mean values, pretentious
//! distance, short-versus-long averages, sign changes and smooth numbers.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chowla::Neumaier;
use crate::error::{Error, Result};
use crate::intervals::CHUNK;
use crate::sieve::{base_primes, isqrt, sieve_segment_with, SieveConfig, Segments, DEFAULT_SEGMENT_BUDGET};

/// Largest range [`MultiplicativeFunction::tabulate`] will hold in memory at once
/// for the short-versus-long scan.
pub const TABULATE_BUDGET: u64 = 1 << 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    CompletelyMultiplicative,
    Multiplicative,
}

/// Closed-form prime rules usable from JSON as `"rule": "<name>"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeRule {
    One,
    MinusOne,
    Zero,
    /// Non-principal character mod 4.
    Chi4,
    /// Non-principal character mod 3.
    Chi3,
}

impl PrimeRule {
    fn at(self, p: u64) -> f64 {
        match self {
            PrimeRule::One => 1.0,
            PrimeRule::MinusOne => -1.0,
            PrimeRule::Zero => 0.0,
            PrimeRule::Chi4 => match p % 4 {
                1 => 1.0,
                3 => -1.0,
                _ => 0.0,
            },
            PrimeRule::Chi3 => match p % 3 {
                1 => 1.0,
                2 => -1.0,
                _ => 0.0,
            },
        }
    }
}

/// How a multiplicative (not completely multiplicative) spec fills in f(p^k), k ≥ 2,
/// when no explicit entry is given.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerRule {
    /// f(p^k) = f(p)
    SameAsPrime,
    /// f(p^k) = f(p)^k
    Power,
    /// f(p^k) = 0
    Zero,
}

/// A user-defined function, usually read from JSON:
///
/// ```json
/// {"kind": "multiplicative", "primes": [[2, 0.0]], "default": 1.0, "power_rule": "same_as_prime"}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSpec {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<PrimeRule>,
    /// Explicit `[p, f(p)]` pairs; these take precedence over `rule` and `default`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<(u64, f64)>,
    /// f(p) for primes not covered by `primes` or `rule`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<f64>,
    /// Explicit `[p, k, f(p^k)]` triples, multiplicative kind only.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub prime_powers: Vec<(u64, u32, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_rule: Option<PowerRule>,
    #[serde(skip)]
    prime_table: HashMap<u64, f64>,
    #[serde(skip)]
    power_table: HashMap<(u64, u32), f64>,
}

impl CustomSpec {
    pub fn new(kind: Kind) -> Self {
        Self {
            kind,
            rule: None,
            primes: Vec::new(),
            default: None,
            prime_powers: Vec::new(),
            power_rule: None,
            prime_table: HashMap::new(),
            power_table: HashMap::new(),
        }
    }

    pub fn rule(mut self, rule: PrimeRule) -> Self {
        self.rule = Some(rule);
        self
    }

    pub fn prime(mut self, p: u64, value: f64) -> Self {
        self.primes.push((p, value));
        self
    }

    pub fn default_value(mut self, value: f64) -> Self {
        self.default = Some(value);
        self
    }

    pub fn prime_power(mut self, p: u64, k: u32, value: f64) -> Self {
        self.prime_powers.push((p, k, value));
        self
    }

    pub fn power_rule(mut self, rule: PowerRule) -> Self {
        self.power_rule = Some(rule);
        self
    }

    /// Checks bounds and builds lookup tables. Called by every constructor path.
    pub fn validate(mut self) -> Result<Self> {
        let bad = |n: u64, value: f64| Error::UnboundedValue { n, value };
        for &(p, v) in &self.primes {
            if !(v.abs() <= 1.0) {
                return Err(bad(p, v));
            }
        }
        if let Some(v) = self.default {
            if !(v.abs() <= 1.0) {
                return Err(Error::InvalidParameter(format!("default f(p) = {v} exceeds 1 in absolute value")));
            }
        }
        for &(p, k, v) in &self.prime_powers {
            if k < 2 {
                return Err(Error::InvalidParameter(format!(
                    "prime_powers entry for {p}^{k}: exponents start at 2, use `primes` for k = 1"
                )));
            }
            if !(v.abs() <= 1.0) {
                return Err(bad(p.saturating_pow(k), v));
            }
        }
        if self.kind == Kind::CompletelyMultiplicative
            && (!self.prime_powers.is_empty() || self.power_rule.is_some())
        {
            return Err(Error::InvalidParameter(
                "completely multiplicative specs take f(p^k) = f(p)^k; drop prime_powers/power_rule".into(),
            ));
        }
        self.prime_table = self.primes.iter().copied().collect();
        self.power_table = self.prime_powers.iter().map(|&(p, k, v)| ((p, k), v)).collect();
        Ok(self)
    }

    fn prime_value(&self, p: u64) -> Result<f64> {
        if let Some(&v) = self.prime_table.get(&p) {
            return Ok(v);
        }
        if let Some(rule) = self.rule {
            return Ok(rule.at(p));
        }
        self.default.ok_or(Error::MissingPrimePower { p, k: 1 })
    }

    fn prime_power_value(&self, p: u64, k: u32) -> Result<f64> {
        if k == 1 {
            return self.prime_value(p);
        }
        match self.kind {
            Kind::CompletelyMultiplicative => Ok(self.prime_value(p)?.powi(k as i32)),
            Kind::Multiplicative => {
                if let Some(&v) = self.power_table.get(&(p, k)) {
                    return Ok(v);
                }
                match self.power_rule {
                    Some(PowerRule::SameAsPrime) => self.prime_value(p),
                    Some(PowerRule::Power) => Ok(self.prime_value(p)?.powi(k as i32)),
                    Some(PowerRule::Zero) => Ok(0.0),
                    None => Err(Error::MissingPrimePower { p, k }),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MultiplicativeFunction {
    /// λ(n) = (−1)^Ω(n)
    Liouville,
    /// μ(n)
    Mobius,
    /// μ(n)², the squarefree indicator
    MobiusSquared,
    /// Indicator of n whose prime factors are all ≤ bound.
    Smooth { bound: u64 },
    /// f ≡ 1
    One,
    Custom(Box<CustomSpec>),
}

impl MultiplicativeFunction {
    pub fn constant_one() -> Self {
        MultiplicativeFunction::One
    }

    pub fn custom(spec: CustomSpec) -> Result<Self> {
        Ok(MultiplicativeFunction::Custom(Box::new(spec.validate()?)))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::custom(serde_json::from_str(s)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// Builtin names (`lambda`, `mu`, `mu2`, `one`, `smooth:B`) or a path to a JSON spec.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lambda" | "liouville" => Ok(Self::Liouville),
            "mu" | "mobius" => Ok(Self::Mobius),
            "mu2" | "squarefree" => Ok(Self::MobiusSquared),
            "one" => Ok(Self::One),
            _ => {
                if let Some(b) = s.strip_prefix("smooth:") {
                    let bound = b
                        .parse()
                        .map_err(|_| Error::InvalidParameter(format!("bad smoothness bound `{b}`")))?;
                    return Ok(Self::Smooth { bound });
                }
                let path = Path::new(s);
                if path.exists() {
                    Self::from_file(path)
                } else {
                    Err(Error::InvalidParameter(format!(
                        "unknown function `{s}`: expected lambda, mu, mu2, one, smooth:B or a JSON file"
                    )))
                }
            }
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Self::Liouville | Self::Smooth { .. } | Self::One => Kind::CompletelyMultiplicative,
            Self::Mobius | Self::MobiusSquared => Kind::Multiplicative,
            Self::Custom(c) => c.kind,
        }
    }

    pub fn prime_value(&self, p: u64) -> Result<f64> {
        self.prime_power_value(p, 1)
    }

    /// f(p^k) for prime p and k ≥ 1.
    pub fn prime_power_value(&self, p: u64, k: u32) -> Result<f64> {
        let v = match self {
            Self::Liouville => {
                if k % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
            Self::Mobius => {
                if k == 1 {
                    -1.0
                } else {
                    0.0
                }
            }
            Self::MobiusSquared => {
                if k == 1 {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Smooth { bound } => {
                if p <= *bound {
                    1.0
                } else {
                    0.0
                }
            }
            Self::One => 1.0,
            Self::Custom(c) => c.prime_power_value(p, k)?,
        };
        if !(v.abs() <= 1.0) {
            return Err(Error::UnboundedValue {
                n: p.saturating_pow(k),
                value: v,
            });
        }
        Ok(v)
    }

    /// f(n) for n in `[lo, hi]`, computed from factorization data.
    pub fn tabulate(&self, lo: u64, hi: u64) -> Result<Vec<f64>> {
        if lo == 0 {
            return Err(Error::ZeroLowerBound(lo));
        }
        if lo > hi {
            return Err(Error::RangeInverted { lo, hi });
        }
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        match self {
            Self::Custom(_) => {
                let primes = base_primes(isqrt(hi));
                let step = DEFAULT_SEGMENT_BUDGET / 2;
                let mut a = lo;
                loop {
                    let b = hi.min(a.saturating_add(step - 1));
                    out.extend(self.factoring_sieve(a, b, &primes)?);
                    if b == hi {
                        break;
                    }
                    a = b + 1;
                }
            }
            _ => {
                let cfg = match self {
                    Self::Smooth { .. } => SieveConfig::default().with_lpf(),
                    _ => SieveConfig::default(),
                };
                for seg in Segments::new(lo, hi, 0, cfg)? {
                    let t = &seg.table;
                    match self {
                        Self::Liouville => out.extend(t.lambda_values().into_iter().map(f64::from)),
                        Self::Mobius => out.extend(t.mu_values().into_iter().map(f64::from)),
                        Self::MobiusSquared => out.extend(
                            t.flags_slice()
                                .iter()
                                .map(|&f| f64::from(f & crate::sieve::FLAG_SQUAREFREE)),
                        ),
                        Self::Smooth { bound } => out.extend(
                            t.lpf_slice()
                                .expect("sieved with lpf")
                                .iter()
                                .map(|&q| if q <= *bound { 1.0 } else { 0.0 }),
                        ),
                        Self::One => out.extend(std::iter::repeat_n(1.0, t.len())),
                        Self::Custom(_) => unreachable!(),
                    }
                }
            }
        }
        Ok(out)
    }

    /// Trial-free factoring pass: divides each n by its small primes in place and
    /// multiplies in f(p^k); whatever remains above 1 is a single large prime.
    fn factoring_sieve(&self, lo: u64, hi: u64, primes: &[u64]) -> Result<Vec<f64>> {
        let len = (hi - lo + 1) as usize;
        let mut residual: Vec<u64> = (lo..=hi).collect();
        let mut value = vec![1.0f64; len];
        for &p in primes {
            if p * p > hi {
                break;
            }
            let mut powers: Vec<f64> = vec![1.0];
            let first = lo.div_ceil(p) * p;
            let mut m = first;
            while m <= hi {
                let i = (m - lo) as usize;
                let mut k = 0u32;
                while residual[i] % p == 0 {
                    residual[i] /= p;
                    k += 1;
                }
                while powers.len() <= k as usize {
                    let next = powers.len() as u32;
                    powers.push(self.prime_power_value(p, next)?);
                }
                value[i] *= powers[k as usize];
                m += p;
            }
        }
        let fixes: Vec<Result<()>> = residual
            .par_chunks(CHUNK)
            .zip(value.par_chunks_mut(CHUNK))
            .map(|(r, v)| {
                for (&q, f) in r.iter().zip(v.iter_mut()) {
                    if q > 1 {
                        *f *= self.prime_value(q)?;
                    }
                }
                Ok(())
            })
            .collect();
        fixes.into_iter().collect::<Result<()>>()?;
        Ok(value)
    }

    fn euler_factor(&self, p: u64) -> Result<f64> {
        let pf = p as f64;
        let local = if self.kind() == Kind::CompletelyMultiplicative {
            1.0 / (1.0 - self.prime_value(p)? / pf)
        } else {
            let mut acc = Neumaier::default();
            acc.add(1.0);
            let mut pk = 1.0;
            let mut k = 1;
            loop {
                pk /= pf;
                if pk < 1e-15 {
                    break;
                }
                acc.add(self.prime_power_value(p, k)? * pk);
                k += 1;
            }
            acc.value()
        };
        Ok((1.0 - 1.0 / pf) * local)
    }
}

impl fmt::Display for MultiplicativeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Liouville => write!(f, "lambda"),
            Self::Mobius => write!(f, "mu"),
            Self::MobiusSquared => write!(f, "mu2"),
            Self::Smooth { bound } => write!(f, "smooth:{bound}"),
            Self::One => write!(f, "one"),
            Self::Custom(_) => write!(f, "custom"),
        }
    }
}

/// Σ_{p≤X} (1 − f(p))/p
pub fn pretentious_distance(f: &MultiplicativeFunction, x: u64) -> Result<f64> {
    if x < 2 {
        return Err(Error::InvalidParameter(format!("X = {x} must be at least 2")));
    }
    let mut acc = Neumaier::default();
    for p in base_primes(x) {
        acc.add((1.0 - f.prime_value(p)?) / p as f64);
    }
    Ok(acc.value())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WirsingReport {
    pub n: u64,
    pub prime_cutoff: u64,
    /// Π_{p≤cutoff} (1 − 1/p)(1 + f(p)/p + f(p²)/p² + …)
    pub partial_product: f64,
    /// (1/N) Σ_{n≤N} f(n)
    pub empirical_mean: f64,
    /// (1/N) Σ_{n≤N} |f(n)|
    pub alpha: f64,
    /// Mean of f; the same quantity as `empirical_mean`.
    pub beta: f64,
    /// Σ_{p≤cutoff} (1 − f(p))/p
    pub distance: f64,
}

pub fn wirsing_mean(f: &MultiplicativeFunction, n: u64, prime_cutoff: u64) -> Result<WirsingReport> {
    if n == 0 || prime_cutoff < 2 {
        return Err(Error::InvalidParameter(format!(
            "need N ≥ 1 and cutoff ≥ 2, got N = {n}, cutoff = {prime_cutoff}"
        )));
    }
    let mut log_product = Neumaier::default();
    let mut zero_factor = false;
    for p in base_primes(prime_cutoff) {
        let e = f.euler_factor(p)?;
        if e <= 0.0 {
            zero_factor = true;
        } else {
            log_product.add(e.ln());
        }
    }
    let partial_product = if zero_factor { 0.0 } else { log_product.value().exp() };

    let mut sum = Neumaier::default();
    let mut abs_sum = Neumaier::default();
    let step = DEFAULT_SEGMENT_BUDGET;
    let mut a = 1;
    while a <= n {
        let b = n.min(a + step - 1);
        for v in f.tabulate(a, b)? {
            sum.add(v);
            abs_sum.add(v.abs());
        }
        a = b + 1;
    }
    let mean = sum.value() / n as f64;
    Ok(WirsingReport {
        n,
        prime_cutoff,
        partial_product,
        empirical_mean: mean,
        alpha: abs_sum.value() / n as f64,
        beta: mean,
        distance: pretentious_distance(f, prime_cutoff)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShortLongReport {
    pub x_start: u64,
    pub h: u64,
    pub step: u64,
    pub eps: f64,
    pub count: u64,
    /// (h/X) Σ_{X≤n≤2X} f(n)
    pub long_average: f64,
    pub median: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
    /// Fraction of sampled x with |S_f(x, h) − long_average| > eps·h.
    pub exceptional_fraction: f64,
}

/// Compares Σ_{x<n≤x+h} f(n) against the scaled long average for x ∈ [X, 2X) in steps.
pub fn short_vs_long(f: &MultiplicativeFunction, x: u64, h: u64, step: u64, eps: f64) -> Result<ShortLongReport> {
    let deviations = short_vs_long_deviations(f, x, h, step)?;
    let long_average = deviations.1;
    let mut devs = deviations.0;
    let count = devs.len() as u64;
    let exceptional = devs.iter().filter(|&&d| d > eps * h as f64).count();
    devs.sort_by(f64::total_cmp);
    let q = |p: f64| devs[((p * devs.len() as f64).ceil() as usize).clamp(1, devs.len()) - 1];
    Ok(ShortLongReport {
        x_start: x,
        h,
        step,
        eps,
        count,
        long_average,
        median: q(0.5),
        p90: q(0.9),
        p99: q(0.99),
        max: *devs.last().unwrap(),
        exceptional_fraction: exceptional as f64 / count as f64,
    })
}

/// Per-x deviations |S_f(x, h) − (h/X) Σ_{X≤n≤2X} f(n)| in scan order, and the long average.
pub fn short_vs_long_deviations(f: &MultiplicativeFunction, x: u64, h: u64, step: u64) -> Result<(Vec<f64>, f64)> {
    if h == 0 || step == 0 || x < h {
        return Err(Error::InvalidParameter(format!(
            "need X ≥ h ≥ 1 and step ≥ 1, got X = {x}, h = {h}, step = {step}"
        )));
    }
    let hi = 2 * x + h;
    if hi - x + 1 > TABULATE_BUDGET {
        return Err(Error::BudgetExceeded(format!("range [{x}, {hi}] exceeds {TABULATE_BUDGET} values")));
    }
    let vals = f.tabulate(x, hi)?;
    // prefix[i] = Σ f(n) for X ≤ n < X + i
    let mut prefix = Vec::with_capacity(vals.len() + 1);
    let mut acc = Neumaier::default();
    prefix.push(0.0);
    for &v in &vals {
        acc.add(v);
        prefix.push(acc.value());
    }
    let long_average = h as f64 / x as f64 * prefix[(x + 1) as usize];
    let devs = (0..x.div_ceil(step))
        .map(|j| {
            let off = (j * step) as usize;
            // S_f(x, h) = Σ_{x<n≤x+h}, i.e. indices off+1 ..= off+h
            let s = prefix[off + h as usize + 1] - prefix[off + 1];
            (s - long_average).abs()
        })
        .collect();
    Ok((devs, long_average))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SignChanges {
    pub n: u64,
    pub nonzero: u64,
    pub count: u64,
    pub proportion: f64,
}

/// Adjacent sign flips among the nonzero values f(1), …, f(N).
pub fn sign_changes(f: &MultiplicativeFunction, n: u64) -> Result<SignChanges> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("N = {n} must be at least 2")));
    }
    let vals = f.tabulate(1, n)?;
    Ok(count_sign_changes(&vals))
}

pub fn count_sign_changes(vals: &[f64]) -> SignChanges {
    let mut prev = 0.0f64;
    let (mut nonzero, mut count) = (0u64, 0u64);
    for &v in vals.iter().filter(|v| **v != 0.0) {
        nonzero += 1;
        if prev != 0.0 && (prev > 0.0) != (v > 0.0) {
            count += 1;
        }
        prev = v;
    }
    SignChanges {
        n: vals.len() as u64,
        nonzero,
        count,
        proportion: count as f64 / vals.len() as f64,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SmoothWitness {
    pub n: u64,
    pub eps_exponent: f64,
    pub c: f64,
    /// N^ε
    pub bound: f64,
    pub found: bool,
    pub witness: Option<u64>,
    /// witness − N
    pub offset: Option<u64>,
}

fn check_smooth_args(n: u64, eps: f64, c: f64) -> Result<()> {
    if n < 4 || !(eps > 0.0 && eps < 1.0) || !(c >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need N ≥ 4, 0 < ε < 1, C ≥ 0; got N = {n}, ε = {eps}, C = {c}"
        )));
    }
    Ok(())
}

fn interval_end(n: u64, c: f64) -> u64 {
    n + (c * (n as f64).sqrt()).floor() as u64
}

/// First integer in [N, N + C√N] whose largest prime factor is at most N^ε.
pub fn smooth_in_interval(n: u64, eps_exponent: f64, c: f64) -> Result<SmoothWitness> {
    check_smooth_args(n, eps_exponent, c)?;
    let bound = (n as f64).powf(eps_exponent);
    let end = interval_end(n, c);
    let table = sieve_segment_with(n, end, &SieveConfig::default().with_lpf().segment_budget(u64::MAX))?;
    let witness = table
        .lpf_slice()
        .unwrap()
        .iter()
        .position(|&q| q as f64 <= bound)
        .map(|i| n + i as u64);
    Ok(SmoothWitness {
        n,
        eps_exponent,
        c,
        bound,
        found: witness.is_some(),
        witness,
        offset: witness.map(|w| w - n),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmoothConstantRow {
    pub eps_exponent: f64,
    pub samples: usize,
    pub all_found: bool,
    pub not_found: usize,
    pub max_offset: u64,
    /// max over samples of offset/√N; an empirical stand-in for C(ε).
    pub max_ratio: f64,
}

/// Samples N uniformly from `[lo, hi]` and records how far past N the first
/// N^ε-smooth integer lies, for each ε. Uses one lpf sieve for all samples.
pub fn smooth_constant_table(
    eps_list: &[f64],
    samples: usize,
    lo: u64,
    hi: u64,
    c: f64,
    seed: u64,
) -> Result<Vec<SmoothConstantRow>> {
    if lo > hi {
        return Err(Error::RangeInverted { lo, hi });
    }
    for &eps in eps_list {
        check_smooth_args(lo, eps, c)?;
    }
    let end = interval_end(hi, c);
    let table = sieve_segment_with(lo, end, &SieveConfig::default().with_lpf().segment_budget(u64::MAX))?;
    let lpf = table.lpf_slice().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ns: Vec<u64> = (0..samples).map(|_| rng.random_range(lo..=hi)).collect();
    Ok(eps_list
        .iter()
        .map(|&eps| {
            let mut row = SmoothConstantRow {
                eps_exponent: eps,
                samples,
                all_found: true,
                not_found: 0,
                max_offset: 0,
                max_ratio: 0.0,
            };
            for &n in &ns {
                let bound = (n as f64).powf(eps);
                let a = (n - lo) as usize;
                let b = (interval_end(n, c) - lo) as usize;
                match lpf[a..=b].iter().position(|&q| q as f64 <= bound) {
                    Some(off) => {
                        row.max_offset = row.max_offset.max(off as u64);
                        row.max_ratio = row.max_ratio.max(off as f64 / (n as f64).sqrt());
                    }
                    None => {
                        row.all_found = false;
                        row.not_found += 1;
                    }
                }
            }
            row
        })
        .collect())
}
