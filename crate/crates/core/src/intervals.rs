//! Short-interval sums S(x, h) = Σ_{x<n≤x+h} w(n) and their statistics over a
//! scan of x ∈ [X, 2X).
//!
//! S(x, h) is a step function of real x that only jumps at integers, so for
//! integer h the unit-stride average over integer x equals the continuous
//! average over [X, 2X) exactly.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sieve::{FactorTable, SieveConfig, Segments};

/// x positions handled by one sliding window before it is re-primed.
pub(crate) const CHUNK: usize = 1 << 15;

pub const HIST_BIN_WIDTH: f64 = 0.25;
pub const HIST_RANGE: f64 = 6.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    Lambda,
    Mangoldt,
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" | "liouville" => Ok(Weight::Lambda),
            "mangoldt" | "vonmangoldt" => Ok(Weight::Mangoldt),
            other => Err(Error::InvalidParameter(format!("unknown weight `{other}`"))),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weight::Lambda => "lambda",
            Weight::Mangoldt => "mangoldt",
        })
    }
}

/// Exact Σ_{x<n≤x+h} w(n) read from `table`.
pub fn interval_sum(table: &FactorTable, x: u64, h: u64, weight: Weight) -> Result<f64> {
    if h == 0 {
        return Ok(0.0);
    }
    let (first, last) = (x + 1, x + h);
    for n in [first, last] {
        if !table.contains(n) {
            return Err(Error::OutOfRange {
                n,
                lo: table.lo(),
                hi: table.hi(),
            });
        }
    }
    let a = (first - table.lo()) as usize;
    let b = (last - table.lo()) as usize;
    Ok(match weight {
        Weight::Lambda => table.omega_slice()[a..=b]
            .iter()
            .map(|&o| 1 - 2 * (o & 1) as i64)
            .sum::<i64>() as f64,
        Weight::Mangoldt => (a..=b).map(|i| table.mangoldt_at(i)).sum(),
    })
}

/// Sums of every length-`h` window of `values`, in order.
///
/// The running sum is updated as `S ← S − v[k] + v[k+h]`; for integer types
/// this is exact.
pub fn window_sums<T>(values: &[T], h: usize) -> WindowSums<'_, T>
where
    T: Copy + Default + Add<Output = T> + Sub<Output = T>,
{
    WindowSums {
        values,
        h,
        pos: 0,
        sum: None,
    }
}

#[derive(Debug, Clone)]
pub struct WindowSums<'a, T> {
    values: &'a [T],
    h: usize,
    pos: usize,
    sum: Option<T>,
}

impl<T> Iterator for WindowSums<'_, T>
where
    T: Copy + Default + Add<Output = T> + Sub<Output = T>,
{
    type Item = T;

    fn next(&mut self) -> Option<T> {
        if self.pos + self.h > self.values.len() {
            return None;
        }
        let s = match self.sum {
            None => self.values[..self.h]
                .iter()
                .fold(T::default(), |acc, &v| acc + v),
            Some(prev) => prev - self.values[self.pos - 1] + self.values[self.pos + self.h - 1],
        };
        self.sum = Some(s);
        self.pos += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.values.len() + 1).saturating_sub(self.pos + self.h);
        (n, Some(n))
    }
}

/// Stream of `(x, S(x, h))` for λ and x = X, X+1, …, 2X−1.
pub struct MovingSumScan {
    x: u64,
    end: u64,
    h: usize,
    lambda: Vec<i64>,
    sum: i64,
}

/// Sliding-window scan of λ-sums over x ∈ [X, 2X).
pub fn moving_sum_scan(x_start: u64, h: u64) -> Result<MovingSumScan> {
    check_scan(x_start, h, 1)?;
    let table = crate::sieve::sieve_segment(x_start + 1, 2 * x_start - 1 + h)?;
    let lambda: Vec<i64> = table.lambda_values().into_iter().map(i64::from).collect();
    let sum = lambda[..h as usize].iter().sum();
    Ok(MovingSumScan {
        x: x_start,
        end: 2 * x_start,
        h: h as usize,
        lambda,
        sum,
    })
}

impl Iterator for MovingSumScan {
    type Item = (u64, i64);

    fn next(&mut self) -> Option<(u64, i64)> {
        if self.x >= self.end {
            return None;
        }
        let out = (self.x, self.sum);
        let i = (self.x - (self.end / 2)) as usize;
        if i + self.h < self.lambda.len() {
            self.sum += self.lambda[i + self.h] - self.lambda[i];
        }
        self.x += 1;
        Some(out)
    }
}

fn check_scan(x_start: u64, h: u64, step: u64) -> Result<()> {
    if h == 0 || step == 0 {
        return Err(Error::InvalidParameter("h and step must be at least 1".into()));
    }
    if h >= x_start {
        return Err(Error::InvalidParameter(format!(
            "interval length h = {h} must be smaller than X = {x_start}"
        )));
    }
    Ok(())
}

/// Number of sampled x in [X, 2X) at stride `step`.
pub fn sample_count(x_start: u64, step: u64) -> u64 {
    x_start.div_ceil(step)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_width: f64,
    pub lo: f64,
    pub hi: f64,
    pub underflow: u64,
    pub bins: Vec<u64>,
    pub overflow: u64,
}

impl Histogram {
    pub fn new() -> Self {
        let n = (2.0 * HIST_RANGE / HIST_BIN_WIDTH).round() as usize;
        Self {
            bin_width: HIST_BIN_WIDTH,
            lo: -HIST_RANGE,
            hi: HIST_RANGE,
            underflow: 0,
            bins: vec![0; n],
            overflow: 0,
        }
    }

    pub fn add(&mut self, v: f64) {
        if v < self.lo {
            self.underflow += 1;
        } else if v >= self.hi {
            self.overflow += 1;
        } else {
            let last = self.bins.len() - 1;
            let k = ((v - self.lo) / self.bin_width).floor() as usize;
            self.bins[k.min(last)] += 1;
        }
    }

    pub fn total(&self) -> u64 {
        self.underflow + self.overflow + self.bins.iter().sum::<u64>()
    }

    fn merge(&mut self, other: &Histogram) {
        self.underflow += other.underflow;
        self.overflow += other.overflow;
        for (a, b) in self.bins.iter_mut().zip(&other.bins) {
            *a += b;
        }
    }
}

impl Default for Histogram {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalSumStats {
    pub weight: Weight,
    pub x_start: u64,
    pub h: u64,
    pub step: u64,
    pub count: u64,
    pub mean_sq: f64,
    pub normalized_variance: f64,
    pub max_abs: f64,
    /// `(ε, #{x : |S(x,h)| > εh})`, in the order the thresholds were given.
    pub exceptional_counts: Vec<(f64, u64)>,
    /// Binned S(x,h)/√h (centered by h for the von Mangoldt weight).
    pub histogram: Histogram,
}

/// Partial statistics over a set of samples; merging is associative.
#[derive(Clone, Debug)]
struct Accum {
    count: u64,
    sum_sq_exact: u128,
    sum_sq_float: f64,
    max_abs: f64,
    exceed: Vec<u64>,
    hist: Histogram,
}

impl Accum {
    fn new(n_thresholds: usize) -> Self {
        Self {
            count: 0,
            sum_sq_exact: 0,
            sum_sq_float: 0.0,
            max_abs: 0.0,
            exceed: vec![0; n_thresholds],
            hist: Histogram::new(),
        }
    }

    #[inline]
    fn add(&mut self, s: f64, exact: Option<i64>, limits: &[f64], sqrt_h: f64) {
        self.count += 1;
        match exact {
            Some(v) => self.sum_sq_exact += (v as i128 * v as i128) as u128,
            None => self.sum_sq_float += s * s,
        }
        let a = s.abs();
        if a > self.max_abs {
            self.max_abs = a;
        }
        for (c, &lim) in self.exceed.iter_mut().zip(limits) {
            if a > lim {
                *c += 1;
            }
        }
        self.hist.add(s / sqrt_h);
    }

    fn merge(mut self, other: &Accum) -> Accum {
        self.count += other.count;
        self.sum_sq_exact += other.sum_sq_exact;
        self.sum_sq_float += other.sum_sq_float;
        self.max_abs = self.max_abs.max(other.max_abs);
        for (a, b) in self.exceed.iter_mut().zip(&other.exceed) {
            *a += b;
        }
        self.hist.merge(&other.hist);
        self
    }

    fn sum_sq(&self) -> f64 {
        self.sum_sq_exact as f64 + self.sum_sq_float
    }
}

/// Runs `visit(x, S(x,h))` over every x ∈ [x_lo, x_hi] with `(x − origin) % step == 0`,
/// where `values[i]` holds w(table_lo + i). Work is split into fixed chunks of
/// x so the partition, and hence any float rounding, never depends on the
/// thread count. Returns the per-chunk results in x order.
pub(crate) fn scan_chunks<T, R, F>(
    values: &[T],
    table_lo: u64,
    (x_lo, x_hi): (u64, u64),
    origin: u64,
    step: u64,
    h: usize,
    init: impl Fn() -> R + Sync,
    visit: F,
) -> Vec<R>
where
    T: Copy + Default + Send + Sync + Add<Output = T> + Sub<Output = T>,
    R: Send,
    F: Fn(&mut R, u64, T) + Sync,
{
    let n_x = (x_hi - x_lo + 1) as usize;
    (0..n_x.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let a = x_lo + (c * CHUNK) as u64;
            let b = x_hi.min(a + CHUNK as u64 - 1);
            let start = (a + 1 - table_lo) as usize;
            let len = (b - a) as usize + h;
            let mut acc = init();
            for (k, s) in window_sums(&values[start..start + len], h).enumerate() {
                let x = a + k as u64;
                if (x - origin) % step == 0 {
                    visit(&mut acc, x, s);
                }
            }
            acc
        })
        .collect()
}

/// Mean of S(x,h)² over x = X, X+step, … < 2X, plus exceptional counts and a
/// histogram. For the von Mangoldt weight the centered sum S − h is used.
pub fn variance_scan(
    x_start: u64,
    h: u64,
    step: u64,
    weight: Weight,
    thresholds: &[f64],
) -> Result<IntervalSumStats> {
    variance_scan_with(x_start, h, step, weight, thresholds, &SieveConfig::default())
}

pub fn variance_scan_with(
    x_start: u64,
    h: u64,
    step: u64,
    weight: Weight,
    thresholds: &[f64],
    config: &SieveConfig,
) -> Result<IntervalSumStats> {
    check_scan(x_start, h, step)?;
    let limits: Vec<f64> = thresholds.iter().map(|e| e * h as f64).collect();
    let sqrt_h = (h as f64).sqrt();
    let mut total = Accum::new(thresholds.len());
    // n = x + 1 ranges over [X+1, 2X]; each window needs h − 1 integers past it.
    let cfg = SieveConfig {
        segment_budget: config.segment_budget.max(2 * h),
        ..*config
    };
    for seg in Segments::new(x_start + 1, 2 * x_start, h - 1, cfg)? {
        let xs = (seg.core_lo - 1, seg.core_hi - 1);
        let t = &seg.table;
        let parts = match weight {
            Weight::Lambda => {
                let v: Vec<i64> = t.lambda_values().into_iter().map(i64::from).collect();
                scan_chunks(
                    &v,
                    t.lo(),
                    xs,
                    x_start,
                    step,
                    h as usize,
                    || Accum::new(thresholds.len()),
                    |acc, _, s| acc.add(s as f64, Some(s), &limits, sqrt_h),
                )
            }
            Weight::Mangoldt => {
                let v = t.mangoldt_values();
                let hf = h as f64;
                scan_chunks(
                    &v,
                    t.lo(),
                    xs,
                    x_start,
                    step,
                    h as usize,
                    || Accum::new(thresholds.len()),
                    |acc, _, s| acc.add(s - hf, None, &limits, sqrt_h),
                )
            }
        };
        total = parts.iter().fold(total, Accum::merge);
    }
    let mean_sq = total.sum_sq() / total.count as f64;
    Ok(IntervalSumStats {
        weight,
        x_start,
        h,
        step,
        count: total.count,
        mean_sq,
        normalized_variance: mean_sq / (h as f64 * h as f64),
        max_abs: total.max_abs,
        exceptional_counts: thresholds.iter().copied().zip(total.exceed).collect(),
        histogram: total.hist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::{mertens_lambda, sieve_segment};

    #[test]
    fn interval_sum_examples() {
        let t = sieve_segment(1, 10).unwrap();
        assert_eq!(interval_sum(&t, 2, 4, Weight::Lambda).unwrap(), 0.0);
        assert_eq!(
            interval_sum(&t, 0, 10, Weight::Lambda).unwrap(),
            mertens_lambda(10).unwrap() as f64
        );
        let psi = interval_sum(&t, 0, 10, Weight::Mangoldt).unwrap();
        assert!((psi - 7.832_014_180_505_1).abs() < 1e-12, "{psi}");
        assert!(matches!(
            interval_sum(&t, 5, 10, Weight::Lambda),
            Err(Error::OutOfRange { n: 15, .. })
        ));
    }

    #[test]
    fn window_sums_match_direct() {
        let v: Vec<i64> = vec![3, -1, 4, 1, -5, 9, 2, -6];
        let got: Vec<i64> = window_sums(&v, 3).collect();
        let want: Vec<i64> = v.windows(3).map(|w| w.iter().sum()).collect();
        assert_eq!(got, want);
        assert_eq!(window_sums(&v, 9).count(), 0);
    }

    #[test]
    fn h_one_has_unit_variance() {
        let s = variance_scan(1_000_000, 1, 1, Weight::Lambda, &[0.5]).unwrap();
        assert_eq!(s.count, 1_000_000);
        assert_eq!(s.normalized_variance, 1.0);
        assert_eq!(s.exceptional_counts, vec![(0.5, 1_000_000)]);
        assert_eq!(s.histogram.total(), s.count);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(variance_scan(100, 100, 1, Weight::Lambda, &[]).is_err());
        assert!(variance_scan(100, 0, 1, Weight::Lambda, &[]).is_err());
        assert!(variance_scan(100, 10, 0, Weight::Lambda, &[]).is_err());
    }

    #[test]
    fn moving_sum_steps_are_even() {
        let mut prev = None;
        for (_, s) in moving_sum_scan(10_000, 37).unwrap() {
            if let Some(p) = prev {
                assert!([-2, 0, 2].contains(&(s - p)));
            }
            prev = Some(s);
        }
    }

    #[test]
    fn moving_sum_coverage_identity() {
        // Σ_x S(x,h) = Σ_n λ(n)·#{x ∈ [X,2X) : x < n ≤ x+h}
        let (x0, h) = (5_000u64, 64u64);
        let total: i64 = moving_sum_scan(x0, h).unwrap().map(|(_, s)| s).sum();
        let t = sieve_segment(1, 2 * x0 + h).unwrap();
        let mut direct = 0i64;
        for n in x0 + 1..2 * x0 + h {
            let lo = x0.max(n.saturating_sub(h));
            let hi = (2 * x0 - 1).min(n - 1);
            if hi >= lo {
                direct += t.lambda(n).unwrap() as i64 * (hi - lo + 1) as i64;
            }
        }
        assert_eq!(total, direct);
    }

    #[test]
    fn small_segments_give_identical_stats() {
        let cfg = SieveConfig::default().segment_budget(5_000);
        for weight in [Weight::Lambda, Weight::Mangoldt] {
            let a = variance_scan(40_000, 100, 3, weight, &[0.1, 0.3]).unwrap();
            let b = variance_scan_with(40_000, 100, 3, weight, &[0.1, 0.3], &cfg).unwrap();
            assert_eq!(a.count, b.count);
            if weight == Weight::Lambda {
                assert_eq!(a.max_abs, b.max_abs);
                assert_eq!(a.mean_sq, b.mean_sq);
            }
            assert!((a.max_abs - b.max_abs).abs() <= 1e-9 * a.max_abs);
            assert_eq!(a.exceptional_counts, b.exceptional_counts);
            assert_eq!(a.histogram, b.histogram);
            assert!((a.mean_sq - b.mean_sq).abs() <= 1e-9 * a.mean_sq);
        }
    }

    #[test]
    fn mangoldt_scan_is_centered() {
        let s = variance_scan(200_000, 1000, 1, Weight::Mangoldt, &[0.2]).unwrap();
        // Cramér-model scale: the variance of ψ(x+h) − ψ(x) − h is about h log x.
        assert!(s.mean_sq > 0.0 && s.normalized_variance < 0.1, "{s:?}");
    }
}
