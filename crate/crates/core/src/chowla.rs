//! Sign-pattern censuses and shifted correlations of the Liouville function.
//!
//! Windows are indexed by n = 1 ..= N − k + 1 so every window is complete.
//! Shifts are non-negative; any set of distinct integer shifts can be
//! translated to this form without changing the correlation's asymptotics.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intervals::CHUNK;
use crate::multiplicative::MultiplicativeFunction;
use crate::sieve::{SieveConfig, Segments};

pub const MAX_PATTERN_LEN: usize = 6;

/// Upper limit on (distinct correlation sums evaluated) × x for [`averaged_chowla`].
pub const AVERAGED_WORK_BUDGET: u64 = 1 << 37;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PatternCensus {
    pub n: u64,
    pub k: usize,
    /// Indexed by pattern code: bit j is set when λ(n + j) = −1.
    pub counts: Vec<u64>,
    /// `counts / N`.
    pub frequencies: Vec<f64>,
}

impl PatternCensus {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count_of(&self, signs: &[i8]) -> u64 {
        self.counts[pattern_code(signs)]
    }

    pub fn frequency_of(&self, signs: &[i8]) -> f64 {
        self.frequencies[pattern_code(signs)]
    }
}

/// Code of a sign tuple (ε₁, …, ε_k): bit j set when ε_{j+1} = −1.
pub fn pattern_code(signs: &[i8]) -> usize {
    signs
        .iter()
        .enumerate()
        .filter(|(_, &s)| s < 0)
        .map(|(j, _)| 1 << j)
        .sum()
}

/// `"+-+"`-style label of a pattern code.
pub fn pattern_label(code: usize, k: usize) -> String {
    (0..k)
        .map(|j| if code >> j & 1 == 1 { '-' } else { '+' })
        .collect()
}

/// Counts of n ≤ N − k + 1 whose signs (λ(n), …, λ(n+k−1)) match each pattern.
pub fn pattern_census(n: u64, k: usize) -> Result<PatternCensus> {
    if k == 0 || k > MAX_PATTERN_LEN {
        return Err(Error::InvalidParameter(format!(
            "pattern length k = {k} outside 1..={MAX_PATTERN_LEN}"
        )));
    }
    if n < k as u64 {
        return Err(Error::InvalidParameter(format!("N = {n} smaller than k = {k}")));
    }
    let last_start = n - k as u64 + 1;
    let mut counts = vec![0u64; 1 << k];
    for seg in Segments::new(1, last_start, k as u64 - 1, SieveConfig::default())? {
        let odd: Vec<u8> = seg.table.omega_slice().iter().map(|o| o & 1).collect();
        let starts = (seg.core_hi - seg.core_lo + 1) as usize;
        let parts: Vec<Vec<u64>> = (0..starts.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let a = c * CHUNK;
                let b = starts.min(a + CHUNK);
                let mut local = vec![0u64; 1 << k];
                let mut code = 0usize;
                for (j, &bit) in odd[a..a + k - 1].iter().enumerate() {
                    code |= (bit as usize) << j;
                }
                for i in a..b {
                    code |= (odd[i + k - 1] as usize) << (k - 1);
                    local[code] += 1;
                    code >>= 1;
                }
                local
            })
            .collect();
        for part in parts {
            for (c, p) in counts.iter_mut().zip(part) {
                *c += p;
            }
        }
    }
    let frequencies = counts.iter().map(|&c| c as f64 / n as f64).collect();
    Ok(PatternCensus {
        n,
        k,
        counts,
        frequencies,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationResult {
    pub n: u64,
    pub shifts: Vec<u64>,
    pub sum: i64,
    pub normalized: f64,
}

fn check_distinct(shifts: &[u64]) -> Result<()> {
    let mut sorted = shifts.to_vec();
    sorted.sort_unstable();
    match sorted.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::DuplicateShift(w[0])),
        None => Ok(()),
    }
}

/// Σ_{n≤N} λ(n+h₁)⋯λ(n+h_k) for distinct non-negative shifts.
pub fn correlation(n: u64, shifts: &[u64]) -> Result<CorrelationResult> {
    if shifts.is_empty() {
        return Err(Error::InvalidParameter("at least one shift is required".into()));
    }
    check_distinct(shifts)?;
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let max_shift = *shifts.iter().max().unwrap();
    if max_shift > n {
        return Err(Error::InvalidParameter(format!(
            "largest shift {max_shift} exceeds N = {n}"
        )));
    }
    let cfg = SieveConfig::default();
    let cfg = cfg.segment_budget(cfg.segment_budget.max(2 * max_shift + 1));
    let mut sum = 0i64;
    for seg in Segments::new(1, n, max_shift, cfg)? {
        let odd: Vec<u8> = seg.table.omega_slice().iter().map(|o| o & 1).collect();
        let len = (seg.core_hi - seg.core_lo + 1) as usize;
        sum += (0..len.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let (a, b) = (c * CHUNK, len.min((c + 1) * CHUNK));
                (a..b)
                    .map(|i| {
                        let parity = shifts.iter().fold(0u8, |p, &s| p ^ odd[i + s as usize]);
                        1 - 2 * parity as i64
                    })
                    .sum::<i64>()
            })
            .sum::<i64>();
    }
    Ok(CorrelationResult {
        n,
        shifts: shifts.to_vec(),
        sum,
        normalized: sum as f64 / n as f64,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AveragedChowla {
    pub x: u64,
    pub h: u64,
    pub k: u32,
    /// (1 / (h^k x)) Σ_{1≤h₁,…,h_k≤h} |Σ_{n≤x} λ(n+h₁)⋯λ(n+h_k)|
    pub value: f64,
    /// Σ over tuples of |correlation sum|, before normalisation.
    pub total_abs: u128,
    /// Distinct reduced shift sets that were actually summed.
    pub distinct_sets: usize,
}

/// Normalized averaged correlation over every shift tuple in [1, h]^k,
/// repeated shifts included. Repeated pairs cancel (λ² = 1), so each tuple is
/// reduced to the shifts of odd multiplicity and each reduced set is summed once.
pub fn averaged_chowla(x: u64, h: u64, k: u32) -> Result<AveragedChowla> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..=3")));
    }
    if h == 0 || x < h {
        return Err(Error::InvalidParameter(format!("need x ≥ h ≥ 1, got x = {x}, h = {h}")));
    }
    if k == 3 && h > 64 {
        return Err(Error::BudgetExceeded(format!("k = 3 requires h ≤ 64, got {h}")));
    }
    let tuples = nondecreasing_tuples(h, k);
    let mut sets: BTreeMap<Vec<u64>, u128> = BTreeMap::new();
    for (tuple, mult) in &tuples {
        *sets.entry(reduce_pairs(tuple)).or_default() += *mult as u128;
    }
    let work = sets.len() as u64 * x;
    if work > AVERAGED_WORK_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{} shift sets × x = {x} exceeds {AVERAGED_WORK_BUDGET}",
            sets.len()
        )));
    }
    let lambda = lambda_range(1, x + h)?;
    let total_abs: u128 = sets
        .par_iter()
        .map(|(set, mult)| shifted_product_sum(&lambda, x as usize, set).unsigned_abs() as u128 * mult)
        .sum();
    let denom = (h as f64).powi(k as i32) * x as f64;
    Ok(AveragedChowla {
        x,
        h,
        k,
        value: total_abs as f64 / denom,
        total_abs,
        distinct_sets: sets.len(),
    })
}

/// Non-decreasing tuples in [1, h]^k with the number of ordered tuples each represents.
fn nondecreasing_tuples(h: u64, k: u32) -> Vec<(Vec<u64>, u64)> {
    fn rec(h: u64, k: u32, from: u64, cur: &mut Vec<u64>, out: &mut Vec<(Vec<u64>, u64)>) {
        if cur.len() == k as usize {
            out.push((cur.clone(), ordered_count(cur)));
            return;
        }
        for a in from..=h {
            cur.push(a);
            rec(h, k, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(h, k, 1, &mut Vec::new(), &mut out);
    out
}

fn ordered_count(sorted: &[u64]) -> u64 {
    let fact = |m: usize| (1..=m as u64).product::<u64>();
    let mut denom = 1;
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&v| v == sorted[i]).count();
        denom *= fact(j);
        i += j;
    }
    fact(sorted.len()) / denom
}

fn reduce_pairs(sorted: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&v| v == sorted[i]).count();
        if j % 2 == 1 {
            out.push(sorted[i]);
        }
        i += j;
    }
    out
}

/// Σ_{n=1}^{x} Π_{s∈set} λ(n+s), with `lambda[i] = λ(i + 1)`.
fn shifted_product_sum(lambda: &[i8], x: usize, set: &[u64]) -> i64 {
    let at = |s: u64| &lambda[s as usize..s as usize + x];
    match set {
        [] => x as i64,
        [a] => at(*a).iter().map(|&v| v as i64).sum(),
        [a, b] => at(*a)
            .iter()
            .zip(at(*b))
            .map(|(&u, &v)| (u * v) as i64)
            .sum(),
        [a, b, c] => at(*a)
            .iter()
            .zip(at(*b))
            .zip(at(*c))
            .map(|((&u, &v), &w)| (u * v * w) as i64)
            .sum(),
        _ => (0..x)
            .map(|i| set.iter().map(|&s| lambda[i + s as usize] as i64).product::<i64>())
            .sum(),
    }
}

/// λ(lo), …, λ(hi) as a dense vector.
pub fn lambda_range(lo: u64, hi: u64) -> Result<Vec<i8>> {
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    for seg in Segments::new(lo, hi, 0, SieveConfig::default())? {
        out.extend(seg.table.lambda_values());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogChowla {
    pub x: u64,
    pub shift: u64,
    /// Σ_{n≤x} λ(n)λ(n+shift)/n
    pub sum: f64,
    /// `sum / log x`
    pub normalized: f64,
}

/// Logarithmically weighted two-point correlation, normalized by log x.
pub fn log_chowla(x: u64, shift: u64) -> Result<LogChowla> {
    if x < 2 || shift == 0 {
        return Err(Error::InvalidParameter(format!(
            "need x ≥ 2 and shift ≥ 1, got x = {x}, shift = {shift}"
        )));
    }
    let cfg = SieveConfig::default();
    let cfg = cfg.segment_budget(cfg.segment_budget.max(2 * shift + 1));
    let mut sum = 0.0;
    for seg in Segments::new(1, x, shift, cfg)? {
        let odd: Vec<u8> = seg.table.omega_slice().iter().map(|o| o & 1).collect();
        let len = (seg.core_hi - seg.core_lo + 1) as usize;
        let base = seg.core_lo;
        let parts: Vec<f64> = (0..len.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let (a, b) = (c * CHUNK, len.min((c + 1) * CHUNK));
                let mut acc = Neumaier::default();
                for i in a..b {
                    let term = 1.0 / (base + i as u64) as f64;
                    if odd[i] ^ odd[i + shift as usize] == 0 {
                        acc.add(term);
                    } else {
                        acc.add(-term);
                    }
                }
                acc.value()
            })
            .collect();
        for p in parts {
            sum += p;
        }
    }
    Ok(LogChowla {
        x,
        shift,
        sum,
        normalized: sum / (x as f64).ln(),
    })
}

/// Compensated (Neumaier) summation.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub n: u64,
    pub max_abs: i64,
    pub argmax_d: u64,
    pub argmax_n: u64,
}

/// max over d ≥ 1 and m with dm ≤ N of |Σ_{j≤m} f(jd)|, for f given by
/// `values[i] = f(i + 1)` with every value ±1. Ties go to the smallest d, then
/// the smallest m.
pub fn discrepancy_of_values(values: &[i8]) -> Result<Discrepancy> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if let Some(i) = values.iter().position(|&v| v == 0) {
        return Err(Error::ZeroValue(i as u64 + 1));
    }
    if let Some(i) = values.iter().position(|&v| v.abs() != 1) {
        return Err(Error::InvalidParameter(format!(
            "f({}) = {} is not ±1",
            i + 1,
            values[i]
        )));
    }
    let n = values.len() as u64;
    let best = (1..=n)
        .into_par_iter()
        .map(|d| {
            let mut s = 0i64;
            let mut best = (0i64, d, 0u64);
            for m in 1..=n / d {
                s += values[(m * d - 1) as usize] as i64;
                if s.abs() > best.0 {
                    best = (s.abs(), d, m);
                }
            }
            best
        })
        .reduce(
            || (-1, u64::MAX, u64::MAX),
            |a, b| {
                // larger value wins; ties go to the smaller (d, m)
                if a.0 > b.0 || (a.0 == b.0 && (a.1, a.2) <= (b.1, b.2)) {
                    a
                } else {
                    b
                }
            },
        );
    Ok(Discrepancy {
        n,
        max_abs: best.0,
        argmax_d: best.1,
        argmax_n: best.2,
    })
}

/// Erdős-discrepancy scan of a ±1-valued multiplicative function on [1, N].
pub fn discrepancy_scan(f: &MultiplicativeFunction, n: u64) -> Result<Discrepancy> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let values = f.tabulate(1, n)?;
    let signs: Vec<i8> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if v == 0.0 {
                Err(Error::ZeroValue(i as u64 + 1))
            } else if v == 1.0 || v == -1.0 {
                Ok(v as i8)
            } else {
                Err(Error::InvalidParameter(format!("f({}) = {v} is not ±1", i + 1)))
            }
        })
        .collect::<Result<_>>()?;
    discrepancy_of_values(&signs)
}
