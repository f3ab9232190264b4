//! Numerical checks of the mean-value, large-value and Halász–Montgomery estimates.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::{integrate, Terms};
use super::{DirichletPolynomial, QuadratureParams};
use crate::chowla::Neumaier;
use crate::error::{Error, Result};
use crate::intervals::CHUNK;
use crate::sieve::{primes_in, SieveConfig, Segments};

/// Exponent slack in the prime-variant denominator.
pub const DEFAULT_HM_EPS: f64 = 0.1;

/// Largest x accepted by [`twisted_sum_profile`].
pub const TWISTED_MAX_X: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlancherelReport {
    pub t: f64,
    /// ∫_0^∞ |Σ_{x e^{−1/T} < n ≤ x e^{1/T}} a(n)|² dx/x, exact.
    pub lhs: f64,
    /// (2/π) ∫ |A(y)|² (sin(y/T)/y)² dy
    pub rhs: f64,
    pub rel_err: f64,
    pub y_max: f64,
    /// Two-rule quadrature error estimate, on the rhs scale.
    pub quad_error: f64,
    /// Contribution of |y| > y_max, modelled by Σ|a|² times the kernel tail.
    pub tail_estimate: f64,
    pub converged: bool,
}

/// (sin(y/T)/y)²
fn fejer_kernel(y: f64, t: f64) -> f64 {
    let u = y / t;
    if u.abs() < 1e-4 {
        (1.0 - u * u / 3.0) / (t * t)
    } else {
        let s = u.sin() / y;
        s * s
    }
}

/// ∫ |Σ_{n: lo(n) ≤ u < hi(n)} a(n)|² du for half-open windows, by sweeping endpoints.
fn window_square_integral(windows: impl Iterator<Item = (f64, f64, Complex64)>) -> f64 {
    let mut events: Vec<(f64, Complex64)> = Vec::new();
    for (lo, hi, a) in windows {
        events.push((lo, a));
        events.push((hi, -a));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut s = Complex64::new(0.0, 0.0);
    let mut acc = Neumaier::default();
    let mut i = 0;
    while i < events.len() {
        let u = events[i].0;
        while i < events.len() && events[i].0 == u {
            s += events[i].1;
            i += 1;
        }
        if i < events.len() {
            acc.add(s.norm_sqr() * (events[i].0 - u));
        }
    }
    acc.value()
}

fn symmetric_intervals(poly: &DirichletPolynomial, cuts: &[f64]) -> (Vec<(f64, f64)>, f64) {
    let pos: Vec<(f64, f64)> = cuts.windows(2).map(|w| (w[0], w[1])).collect();
    if poly.is_real() {
        (pos, 2.0)
    } else {
        let mut all: Vec<(f64, f64)> = pos.iter().map(|&(a, b)| (-b, -a)).collect();
        all.extend(pos);
        (all, 1.0)
    }
}

pub fn plancherel_check(poly: &DirichletPolynomial, t: f64, params: &QuadratureParams) -> Result<PlancherelReport> {
    if !(t >= 1.0) {
        return Err(Error::InvalidParameter(format!("T = {t} must be at least 1")));
    }
    let lhs = window_square_integral(poly.nonzero().map(|(n, a)| {
        let l = (n as f64).ln();
        (l - 1.0 / t, l + 1.0 / t, a)
    }));
    let y_max = params.resolve_y_max(poly);
    let terms = Terms::new(poly);
    let (intervals, mult) = symmetric_intervals(poly, &[0.0, y_max]);
    let q = integrate(&terms, &intervals, 2.0 / t, params, &|y| fejer_kernel(y, t)).scaled(mult);
    let tail = poly.l2_mass() * (std::f64::consts::PI / t - q.weight_integral);
    let c = 2.0 / std::f64::consts::PI;
    let rhs = c * (q.value + tail);
    let quad_error = c * q.error_estimate;
    Ok(PlancherelReport {
        t,
        lhs,
        rhs,
        rel_err: (lhs - rhs).abs() / lhs.max(f64::MIN_POSITIVE),
        y_max,
        quad_error,
        tail_estimate: c * tail,
        converged: quad_error <= params.tolerance * rhs.abs().max(f64::MIN_POSITIVE),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SaffariVaughanReport {
    pub h: f64,
    pub x: f64,
    pub c1: f64,
    pub c2: f64,
    /// ∫_0^∞ |Σ_{x<n≤x+h} a(n)|² dx, exact.
    pub lhs: f64,
    /// ∫ |A(y)|² min(h²/(c₁X)², 1/y²) dy
    pub rhs_integral: f64,
    /// (c₂²/c₁) X · rhs_integral
    pub denominator: f64,
    pub ratio: f64,
    pub y_max: f64,
    pub quad_error: f64,
    pub tail_estimate: f64,
}

pub fn saffari_vaughan_ratio(poly: &DirichletPolynomial, h: f64, x: f64, c1: f64, c2: f64) -> Result<SaffariVaughanReport> {
    saffari_vaughan_ratio_with(poly, h, x, c1, c2, &QuadratureParams::default())
}

pub fn saffari_vaughan_ratio_with(
    poly: &DirichletPolynomial,
    h: f64,
    x: f64,
    c1: f64,
    c2: f64,
    params: &QuadratureParams,
) -> Result<SaffariVaughanReport> {
    if !(c1 > 0.0 && c2 >= c1 && x > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < c1 ≤ c2 and X > 0, got c1 = {c1}, c2 = {c2}, X = {x}"
        )));
    }
    if !(h >= 1.0 && h <= c1 * x / 10.0) {
        return Err(Error::InvalidParameter(format!(
            "h = {h} outside [1, c1·X/10 = {}]",
            c1 * x / 10.0
        )));
    }
    let mut report = SaffariVaughanReport {
        h,
        x,
        c1,
        c2,
        lhs: 0.0,
        rhs_integral: 0.0,
        denominator: 0.0,
        ratio: 0.0,
        y_max: 0.0,
        quad_error: 0.0,
        tail_estimate: 0.0,
    };
    let (lo, hi) = match (poly.nonzero().next(), poly.nonzero().last()) {
        (Some(a), Some(b)) => (a.0 as f64, b.0 as f64),
        _ => return Ok(report),
    };
    if lo < c1 * x || hi > c2 * x {
        return Err(Error::InvalidParameter(format!(
            "support [{lo}, {hi}] not inside [c1·X, c2·X] = [{}, {}]",
            c1 * x,
            c2 * x
        )));
    }
    // n is counted for x ∈ [n − h, n)
    report.lhs = window_square_integral(poly.nonzero().map(|(n, a)| (n as f64 - h, n as f64, a)));

    let alpha = h / (c1 * x);
    let y0 = 1.0 / alpha;
    let y_max = params.resolve_y_max(poly).max(20.0 * y0);
    let terms = Terms::new(poly);
    let (intervals, mult) = symmetric_intervals(poly, &[0.0, y0, y_max]);
    let q = integrate(&terms, &intervals, 0.0, params, &|y: f64| (alpha * alpha).min(1.0 / (y * y))).scaled(mult);
    let tail = poly.l2_mass() * 2.0 / y_max;
    report.rhs_integral = q.value + tail;
    report.denominator = c2 * c2 / c1 * x * report.rhs_integral;
    report.ratio = report.lhs / report.denominator;
    report.y_max = y_max;
    report.quad_error = q.error_estimate;
    report.tail_estimate = tail;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanValueReport {
    pub t: f64,
    pub n: u64,
    /// ∫_{−T}^{T} |A(t)|² dt
    pub lhs: f64,
    /// (T + N) Σ |a(n)|²
    pub denominator: f64,
    pub ratio: f64,
    pub quad_error: f64,
}

pub fn mean_value_ratio(poly: &DirichletPolynomial, t: f64) -> Result<MeanValueReport> {
    mean_value_ratio_with(poly, t, &QuadratureParams::default())
}

pub fn mean_value_ratio_with(poly: &DirichletPolynomial, t: f64, params: &QuadratureParams) -> Result<MeanValueReport> {
    if !(t >= 1.0) {
        return Err(Error::InvalidParameter(format!("T = {t} must be at least 1")));
    }
    let n = poly.support_hi();
    let terms = Terms::new(poly);
    let (intervals, mult) = symmetric_intervals(poly, &[0.0, t]);
    let q = integrate(&terms, &intervals, 0.0, params, &|_| 1.0).scaled(mult);
    let denominator = (t + n as f64) * poly.l2_mass();
    Ok(MeanValueReport {
        t,
        n,
        lhs: q.value,
        denominator,
        ratio: if denominator > 0.0 { q.value / denominator } else { 0.0 },
        quad_error: q.error_estimate,
    })
}

/// Frequencies in [−T, T] flagged by a threshold test, each standing for the
/// cell of width `grid_step` around it (clipped to [−T, T]).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalSet {
    pub t: f64,
    pub grid_step: f64,
    pub member_points: Vec<f64>,
    /// Total length of the union of member cells.
    pub measure_estimate: f64,
}

impl ExceptionalSet {
    pub fn from_points(t: f64, grid_step: f64, mut points: Vec<f64>) -> Result<Self> {
        if !(t > 0.0 && grid_step > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "need T > 0 and step > 0, got T = {t}, step = {grid_step}"
            )));
        }
        if let Some(p) = points.iter().find(|p| !(p.abs() <= t)) {
            return Err(Error::InvalidParameter(format!("point {p} lies outside [−T, T]")));
        }
        points.sort_by(f64::total_cmp);
        let mut set = Self {
            t,
            grid_step,
            member_points: points,
            measure_estimate: 0.0,
        };
        set.measure_estimate = set.cells().iter().map(|(a, b)| b - a).sum();
        Ok(set)
    }

    pub fn is_empty(&self) -> bool {
        self.member_points.is_empty()
    }

    /// Disjoint intervals making up the set, in increasing order.
    pub fn cells(&self) -> Vec<(f64, f64)> {
        let half = self.grid_step / 2.0;
        let mut out: Vec<(f64, f64)> = Vec::new();
        for &p in &self.member_points {
            let (a, b) = ((p - half).max(-self.t), (p + half).min(self.t));
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LargeValues {
    pub set: ExceptionalSet,
    pub p: u64,
    pub v: f64,
    /// π(P)
    pub pi_p: u64,
    /// π(P)/V
    pub threshold: f64,
    pub grid_points: u64,
    /// (V² log T)^{1 + log T / log P}
    pub measure_bound: f64,
}

/// Grid points t = j·step in [−T, T] where |Σ a(p) p^{it}| ≥ π(P)/V.
pub fn large_values_measure(poly: &DirichletPolynomial, p: u64, t: f64, v: f64, grid_step: f64) -> Result<LargeValues> {
    if p < 2 || !(t > 0.0) || !(v >= 3.0) {
        return Err(Error::InvalidParameter(format!(
            "need P ≥ 2, T > 0, V ≥ 3; got P = {p}, T = {t}, V = {v}"
        )));
    }
    let max_step = 1.0 / (4.0 * (p as f64).ln());
    if !(grid_step > 0.0 && grid_step <= max_step) {
        return Err(Error::GridTooCoarse {
            step: grid_step,
            max: max_step,
        });
    }
    if poly.support_hi() > p {
        return Err(Error::InvalidParameter(format!(
            "coefficients extend to {} beyond P = {p}",
            poly.support_hi()
        )));
    }
    if !poly.is_prime_supported()? {
        return Err(Error::InvalidParameter("coefficients must vanish off the primes".into()));
    }
    if let Some((n, a)) = poly.nonzero().find(|(_, a)| a.norm() > 1.0 + 1e-12) {
        return Err(Error::UnboundedValue { n, value: a.norm() });
    }
    let pi_p = primes_in(2, p)?.len() as u64;
    let threshold = pi_p as f64 / v;
    let j = (t / grid_step).floor() as i64;
    let count = (2 * j + 1) as usize;
    let values = Terms::new(poly).abs_on_grid(-(j as f64) * grid_step, grid_step, count);
    let members = values
        .iter()
        .enumerate()
        .filter(|(_, &a)| a >= threshold)
        .map(|(i, _)| (i as i64 - j) as f64 * grid_step)
        .collect();
    let lt = t.ln();
    Ok(LargeValues {
        set: ExceptionalSet::from_points(t, grid_step, members)?,
        p,
        v,
        pi_p,
        threshold,
        grid_points: count as u64,
        measure_bound: (v * v * lt).powf(1.0 + lt / (p as f64).ln()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HmReport {
    pub prime_variant: bool,
    pub t: f64,
    /// N, or P for the prime variant.
    pub length: u64,
    pub measure: f64,
    /// ∫_ℰ |A(t)|² dt
    pub integral: f64,
    pub l2_mass: f64,
    pub denominator: f64,
    pub ratio: f64,
    pub quad_error: f64,
}

pub fn halasz_montgomery_ratio(poly: &DirichletPolynomial, set: &ExceptionalSet, t: f64, prime_variant: bool) -> Result<HmReport> {
    halasz_montgomery_ratio_with(poly, set, t, prime_variant, DEFAULT_HM_EPS, &QuadratureParams::default())
}

/// General: (N + |ℰ| T^{1/2} log T) Σ|a|².
/// Prime: (P/log P + |ℰ| P exp(−log P / (log(T+P))^{2/3+eps})) Σ|a|².
pub fn halasz_montgomery_ratio_with(
    poly: &DirichletPolynomial,
    set: &ExceptionalSet,
    t: f64,
    prime_variant: bool,
    eps: f64,
    params: &QuadratureParams,
) -> Result<HmReport> {
    if !(t > 1.0) {
        return Err(Error::InvalidParameter(format!("T = {t} must exceed 1")));
    }
    if set.member_points.iter().any(|p| p.abs() > t) {
        return Err(Error::InvalidParameter("exceptional set reaches outside [−T, T]".into()));
    }
    if prime_variant && !poly.is_prime_supported()? {
        return Err(Error::InvalidParameter("prime variant needs coefficients supported on primes".into()));
    }
    let length = poly.support_hi();
    let l2 = poly.l2_mass();
    let mut report = HmReport {
        prime_variant,
        t,
        length,
        measure: set.measure_estimate,
        integral: 0.0,
        l2_mass: l2,
        denominator: 0.0,
        ratio: 0.0,
        quad_error: 0.0,
    };
    let n = length as f64;
    report.denominator = if prime_variant {
        let lp = n.ln();
        (n / lp + set.measure_estimate * n * (-lp / (t + n).ln().powf(2.0 / 3.0 + eps)).exp()) * l2
    } else {
        (n + set.measure_estimate * t.sqrt() * t.ln()) * l2
    };
    if set.is_empty() {
        return Ok(report);
    }
    let q = integrate(&Terms::new(poly), &set.cells(), 0.0, params, &|_| 1.0);
    report.integral = q.value;
    report.quad_error = q.error_estimate;
    report.ratio = if report.denominator > 0.0 { q.value / report.denominator } else { 0.0 };
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistKind {
    Liouville,
    Primes,
}

impl std::str::FromStr for TwistKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "liouville" | "lambda" => Ok(TwistKind::Liouville),
            "primes" => Ok(TwistKind::Primes),
            _ => Err(Error::InvalidParameter(format!("unknown twist kind `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwistedRow {
    pub t: f64,
    pub re: f64,
    pub im: f64,
    pub abs_sum: f64,
    /// x for λ, π(x) for primes.
    pub trivial_bound: f64,
    pub ratio: f64,
}

/// |Σ_{n≤x} λ(n) n^{it}| or |Σ_{p≤x} p^{it}| against the trivial bound, per t.
pub fn twisted_sum_profile(kind: TwistKind, x: u64, t_values: &[f64]) -> Result<Vec<TwistedRow>> {
    if x == 0 {
        return Err(Error::InvalidParameter("x must be at least 1".into()));
    }
    if x > TWISTED_MAX_X {
        return Err(Error::BudgetExceeded(format!("x = {x} exceeds {TWISTED_MAX_X}")));
    }
    if let Some(t) = t_values.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter(format!("t = {t} is not finite")));
    }
    let mut sums = vec![(Neumaier::default(), Neumaier::default()); t_values.len()];
    let mut trivial = 0u64;
    for seg in Segments::new(1, x, 0, SieveConfig::default())? {
        let table = &seg.table;
        let terms: Vec<(f64, f64)> = match kind {
            TwistKind::Liouville => table
                .lambda_values()
                .into_iter()
                .enumerate()
                .map(|(i, l)| (((seg.core_lo + i as u64) as f64).ln(), l as f64))
                .collect(),
            TwistKind::Primes => (seg.core_lo..=seg.core_hi)
                .filter(|&n| table.is_prime(n).unwrap())
                .map(|n| ((n as f64).ln(), 1.0))
                .collect(),
        };
        trivial += terms.len() as u64;
        for (acc, &t) in sums.iter_mut().zip(t_values) {
            let parts: Vec<(f64, f64)> = terms
                .par_chunks(CHUNK)
                .map(|chunk| {
                    let (mut re, mut im) = (Neumaier::default(), Neumaier::default());
                    for &(l, a) in chunk {
                        let (s, c) = (t * l).sin_cos();
                        re.add(a * c);
                        im.add(a * s);
                    }
                    (re.value(), im.value())
                })
                .collect();
            for (r, i) in parts {
                acc.0.add(r);
                acc.1.add(i);
            }
        }
    }
    Ok(sums
        .iter()
        .zip(t_values)
        .map(|((re, im), &t)| {
            let (re, im) = (re.value(), im.value());
            let abs_sum = re.hypot(im);
            TwistedRow {
                t,
                re,
                im,
                abs_sum,
                trivial_bound: trivial as f64,
                ratio: if trivial > 0 { abs_sum / trivial as f64 } else { 0.0 },
            }
        })
        .collect())
}
