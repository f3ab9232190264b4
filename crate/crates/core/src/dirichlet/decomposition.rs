//! Prime-layer decompositions: coefficient sequences built by convolving λ over
//! dyadic prime blocks, and the counting identities they satisfy.

use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DirichletPolynomial, Provenance};
use crate::chowla::{lambda_range, Neumaier};
use crate::error::{Error, Result};
use crate::sieve::base_primes;

/// The primes in `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub lo: u64,
    pub hi: u64,
}

impl Layer {
    pub fn new(lo: u64, hi: u64) -> Self {
        Self { lo, hi }
    }

    pub fn primes(&self) -> Vec<u64> {
        base_primes(self.hi).into_iter().filter(|&p| p >= self.lo).collect()
    }

    /// Parses `"2:10;100:1000"`.
    pub fn parse_list(s: &str) -> Result<Vec<Layer>> {
        s.split(';').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
    }
}

impl FromStr for Layer {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("layer `{s}` is not of the form lo:hi"));
        let (a, b) = s.trim().split_once(':').ok_or_else(bad)?;
        Ok(Layer::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Block {
    /// 2^j · layer.lo
    pub lo: u64,
    /// min(2^{j+1} · layer.lo − 1, layer.hi)
    pub hi: u64,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerInfo {
    pub layer: Layer,
    pub blocks: Vec<Block>,
    /// Σ_{p∈layer} 1/p
    pub w: f64,
}

impl LayerInfo {
    fn new(layer: Layer) -> Self {
        let primes = layer.primes();
        let mut blocks = Vec::new();
        let mut lo = layer.lo;
        while lo <= layer.hi {
            let hi = (2 * lo - 1).min(layer.hi);
            blocks.push(Block {
                lo,
                hi,
                primes: primes.iter().copied().filter(|&p| p >= lo && p <= hi).collect(),
            });
            lo *= 2;
        }
        Self {
            layer,
            blocks,
            w: mertens_mass(&primes),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimeBlockDecomposition {
    pub x: u64,
    pub layers: Vec<LayerInfo>,
}

fn mertens_mass(primes: &[u64]) -> f64 {
    let mut acc = Neumaier::default();
    for &p in primes {
        acc.add(1.0 / p as f64);
    }
    acc.value()
}

fn check_layers(layers: &[Layer]) -> Result<()> {
    for (i, l) in layers.iter().enumerate() {
        if l.lo < 2 || l.lo > l.hi {
            return Err(Error::InvalidParameter(format!(
                "layer {i} = [{}, {}] must satisfy 2 ≤ lo ≤ hi",
                l.lo, l.hi
            )));
        }
    }
    for i in 0..layers.len() {
        for j in i + 1..layers.len() {
            if layers[i].lo.max(layers[j].lo) <= layers[i].hi.min(layers[j].hi) {
                return Err(Error::OverlappingLayers(i, j));
            }
        }
    }
    Ok(())
}

/// Materialises a(n) = Σ λ(p₁)⋯λ(p_L)λ(m) over n = p₁⋯p_L·m, with p_i in block
/// j_i of layer i and X/Π P_{j_i+1} ≤ m ≤ 2X/Π P_{j_i}, where P_j = 2^j · lo.
pub fn build_decomposition(layers: &[Layer], x: u64) -> Result<(PrimeBlockDecomposition, DirichletPolynomial)> {
    if layers.is_empty() {
        return Err(Error::InvalidParameter("at least one layer is required".into()));
    }
    check_layers(layers)?;
    let infos: Vec<LayerInfo> = layers.iter().map(|&l| LayerInfo::new(l)).collect();
    let mut min_product: u128 = 1;
    for (i, info) in infos.iter().enumerate() {
        let p = info
            .blocks
            .iter()
            .flat_map(|b| b.primes.first())
            .next()
            .ok_or_else(|| Error::InvalidParameter(format!("layer {i} contains no primes")))?;
        min_product *= *p as u128;
    }
    if min_product >= x as u128 {
        return Err(Error::InvalidParameter(format!(
            "product of the smallest layer primes ({min_product}) must be below X = {x}"
        )));
    }

    let m_max = (2 * x as u128 / min_product) as u64;
    let lambda = lambda_range(1, m_max.max(1))?;
    let sign: i64 = if layers.len() % 2 == 0 { 1 } else { -1 };
    let mut coeffs: Vec<i64> = Vec::new();

    struct Walk<'a> {
        infos: &'a [LayerInfo],
        lambda: &'a [i8],
        x: u128,
        sign: i64,
        coeffs: &'a mut Vec<i64>,
    }
    fn walk(w: &mut Walk, depth: usize, prod: u128, lower: u128, upper: u128) {
        if depth == w.infos.len() {
            // X/lower ≤ m ≤ 2X/upper
            let m_lo = w.x.div_ceil(lower).max(1);
            let m_hi = 2 * w.x / upper;
            for m in m_lo..=m_hi {
                let n = (prod * m) as usize;
                if w.coeffs.len() <= n {
                    w.coeffs.resize(n + 1, 0);
                }
                w.coeffs[n] += w.sign * w.lambda[m as usize - 1] as i64;
            }
            return;
        }
        let info = &w.infos[depth];
        for block in &info.blocks {
            let (pj, pj1) = (block.lo as u128, 2 * block.lo as u128);
            for &p in &block.primes {
                walk(w, depth + 1, prod * p as u128, lower * pj1, upper * pj);
            }
        }
    }
    walk(
        &mut Walk {
            infos: &infos,
            lambda: &lambda,
            x: x as u128,
            sign,
            coeffs: &mut coeffs,
        },
        0,
        1,
        1,
        1,
    );

    let first = coeffs.iter().position(|&c| c != 0);
    let poly = match first {
        Some(lo) => {
            let hi = coeffs.iter().rposition(|&c| c != 0).unwrap();
            DirichletPolynomial::new(
                lo as u64,
                coeffs[lo..=hi].iter().map(|&c| Complex64::new(c as f64, 0.0)).collect(),
                Provenance::Decomposition,
            )?
        }
        None => DirichletPolynomial::new(x, vec![Complex64::new(0.0, 0.0)], Provenance::Decomposition)?,
    };
    Ok((PrimeBlockDecomposition { x, layers: infos }, poly))
}

/// ω_layer(n) for n in `[lo, hi]`.
fn omega_counts(primes: &[u64], lo: u64, hi: u64) -> Vec<u32> {
    let mut out = vec![0u32; (hi - lo + 1) as usize];
    for &p in primes {
        let mut m = lo.div_ceil(p) * p;
        while m <= hi {
            out[(m - lo) as usize] += 1;
            m += p;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub x: u64,
    pub checked: u64,
    /// n in [X, 2X] where a(n) ≠ λ(n) Π ω_layer(n).
    pub mismatches: Vec<u64>,
    pub holds: bool,
}

/// Checks a(n) = λ(n) · Π_layers ω_layer(n) on [X, 2X].
pub fn decomposition_identity(decomp: &PrimeBlockDecomposition, poly: &DirichletPolynomial) -> Result<DecompositionCheck> {
    let x = decomp.x;
    let lambda = lambda_range(x, 2 * x)?;
    let omegas: Vec<Vec<u32>> = decomp
        .layers
        .iter()
        .map(|l| omega_counts(&l.layer.primes(), x, 2 * x))
        .collect();
    let mismatches: Vec<u64> = (x..=2 * x)
        .filter(|&n| {
            let i = (n - x) as usize;
            let want = lambda[i] as i64 * omegas.iter().map(|o| o[i] as i64).product::<i64>();
            poly.coeff(n) != Complex64::new(want as f64, 0.0)
        })
        .collect();
    Ok(DecompositionCheck {
        x,
        checked: x + 1,
        holds: mismatches.is_empty(),
        mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TuranReport {
    pub x: u64,
    pub layer: Layer,
    pub primes: usize,
    /// W = Σ_{p∈layer} 1/p
    pub w: f64,
    /// Σ_{X≤n≤2X} (ω(n) − W)²
    pub variance: f64,
    /// variance / (X W), 0 for an empty layer.
    pub ratio: f64,
}

pub fn turan_variance(layer: Layer, x: u64) -> Result<TuranReport> {
    if layer.lo > layer.hi {
        return Err(Error::RangeInverted {
            lo: layer.lo,
            hi: layer.hi,
        });
    }
    let primes = layer.primes();
    if primes.last().is_some_and(|&p| p >= x) {
        return Err(Error::InvalidParameter(format!("layer primes must stay below X = {x}")));
    }
    let w = mertens_mass(&primes);
    let mut acc = Neumaier::default();
    if !primes.is_empty() {
        for o in omega_counts(&primes, x, 2 * x) {
            let d = o as f64 - w;
            acc.add(d * d);
        }
    }
    let variance = acc.value();
    Ok(TuranReport {
        x,
        layer,
        primes: primes.len(),
        w,
        variance,
        ratio: if w > 0.0 { variance / (x as f64 * w) } else { 0.0 },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestrictedError {
    pub x: u64,
    pub layer: Layer,
    /// max over n ∈ [X, 2X] of |a(n) − b(n)|
    pub max_abs_error: f64,
    pub sum_abs_error: f64,
    /// Σ |a(n)| over [X, 2X]
    pub sum_abs_a: f64,
    pub relative_error: f64,
    pub nonzero_errors: u64,
    /// n ∈ [X, 2X] divisible by p² for some layer prime p.
    pub square_divisible: u64,
    /// Whether the error vanishes exactly off the square-divisible n.
    pub support_matches: bool,
    pub first_error_at: Option<u64>,
}

/// Compares a(n) = λ(n)·1[n has a layer prime factor] with the ω+1-weighted
/// factorisation b(n) = Σ_{p∈layer, pm=n} λ(p)λ(m)/(ω(m)+1) on [X, 2X].
pub fn restricted_factorization_error(layer: Layer, x: u64) -> Result<RestrictedError> {
    if layer.lo < 2 || layer.lo > layer.hi || layer.hi > 2 * x {
        return Err(Error::InvalidParameter(format!(
            "layer [{}, {}] must satisfy 2 ≤ lo ≤ hi ≤ 2X",
            layer.lo, layer.hi
        )));
    }
    let primes = layer.primes();
    let top = 2 * x;
    let lambda = lambda_range(1, top)?;
    let omega = omega_counts(&primes, 1, top);
    let len = (x + 1) as usize;
    let mut b = vec![0.0f64; len];
    for &p in &primes {
        for m in x.div_ceil(p)..=top / p {
            let n = p * m;
            if n < x || m == 0 {
                continue;
            }
            // λ(p) = −1
            b[(n - x) as usize] -= lambda[m as usize - 1] as f64 / (omega[m as usize - 1] + 1) as f64;
        }
    }
    let square_hit = {
        let mut hit = vec![false; len];
        for &p in &primes {
            let q = p * p;
            let mut m = x.div_ceil(q) * q;
            while m <= top {
                hit[(m - x) as usize] = true;
                m += q;
            }
        }
        hit
    };
    let mut report = RestrictedError {
        x,
        layer,
        max_abs_error: 0.0,
        sum_abs_error: 0.0,
        sum_abs_a: 0.0,
        relative_error: 0.0,
        nonzero_errors: 0,
        square_divisible: square_hit.iter().filter(|&&h| h).count() as u64,
        support_matches: true,
        first_error_at: None,
    };
    let (mut err_sum, mut a_sum) = (Neumaier::default(), Neumaier::default());
    for (i, &bn) in b.iter().enumerate() {
        let n = x + i as u64;
        let a = if omega[n as usize - 1] > 0 {
            lambda[n as usize - 1] as f64
        } else {
            0.0
        };
        let d = (a - bn).abs();
        a_sum.add(a.abs());
        let nonzero = d > 1e-12;
        if nonzero {
            err_sum.add(d);
            report.nonzero_errors += 1;
            report.max_abs_error = report.max_abs_error.max(d);
            report.first_error_at.get_or_insert(n);
        }
        if nonzero != square_hit[i] {
            report.support_matches = false;
        }
    }
    report.sum_abs_error = err_sum.value();
    report.sum_abs_a = a_sum.value();
    report.relative_error = if report.sum_abs_a > 0.0 {
        report.sum_abs_error / report.sum_abs_a
    } else {
        0.0
    };
    Ok(report)
}
