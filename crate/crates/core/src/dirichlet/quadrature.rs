//! Composite Gauss–Legendre integration of |A(y)|² w(y).
//!
//! On a run of equal panels the nodes of consecutive panels differ by a fixed
//! shift, so n^{iy} at every node is a fixed per-n phasor times a rotation that
//! advances by one multiplication per panel. Rotations are re-seeded from exact
//! values at the start of every block of panels, which also fixes the summation
//! order regardless of how blocks are scheduled.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::DirichletPolynomial;

const PANELS_PER_BLOCK: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureParams {
    /// Truncation point of frequency integrals over the whole line; `None` picks
    /// a default from the polynomial's support.
    pub y_max: Option<f64>,
    /// Gauss–Legendre nodes per panel.
    pub nodes: usize,
    /// Nodes of the coarser rule used for the error estimate.
    pub coarse_nodes: usize,
    /// Panels per period of the fastest oscillation in the integrand.
    pub panels_per_cycle: f64,
    /// Upper bound on panel width regardless of oscillation.
    pub max_panel_width: f64,
    /// Relative tolerance for the `converged` flag.
    pub tolerance: f64,
}

impl Default for QuadratureParams {
    fn default() -> Self {
        Self {
            y_max: None,
            nodes: 12,
            coarse_nodes: 8,
            panels_per_cycle: 2.0,
            max_panel_width: 1.0,
            tolerance: 1e-8,
        }
    }
}

impl QuadratureParams {
    pub fn y_max(mut self, y: f64) -> Self {
        self.y_max = Some(y);
        self
    }

    /// Truncation point used when `y_max` is unset: at least 2000 and twice the
    /// support, and further out for short polynomials where it costs little.
    pub fn default_y_max(poly: &DirichletPolynomial) -> f64 {
        let terms = poly.nonzero().count().max(1) as u64;
        (2 * poly.support_hi()).max(2000).max(1_000_000 / terms) as f64
    }

    pub(crate) fn resolve_y_max(&self, poly: &DirichletPolynomial) -> f64 {
        self.y_max.unwrap_or_else(|| Self::default_y_max(poly))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct QuadResult {
    /// ∫ |A|² w with the fine rule.
    pub value: f64,
    /// ∫ w with the fine rule (same nodes).
    pub weight_integral: f64,
    /// |fine − coarse| for ∫ |A|² w.
    pub error_estimate: f64,
    pub panels: usize,
}

impl std::ops::Add for QuadResult {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            value: self.value + o.value,
            weight_integral: self.weight_integral + o.weight_integral,
            error_estimate: self.error_estimate + o.error_estimate,
            panels: self.panels + o.panels,
        }
    }
}

impl QuadResult {
    pub fn scaled(self, c: f64) -> Self {
        Self {
            value: c * self.value,
            weight_integral: c * self.weight_integral,
            error_estimate: c.abs() * self.error_estimate,
            panels: self.panels,
        }
    }
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn new(n: usize) -> Self {
        let gl = GaussLegendre::new(NonZeroUsize::new(n.max(1)).unwrap());
        let (nodes, weights) = gl.as_node_weight_pairs().iter().copied().unzip();
        Self { nodes, weights }
    }
}

/// Nonzero terms of a polynomial in the form the integrator wants.
pub(crate) struct Terms {
    logs: Vec<f64>,
    coeffs: Vec<Complex64>,
    /// log(largest n / smallest n) over the nonzero support.
    pub(crate) spread: f64,
}

impl Terms {
    pub(crate) fn new(poly: &DirichletPolynomial) -> Self {
        let (logs, coeffs): (Vec<f64>, Vec<Complex64>) =
            poly.nonzero().map(|(n, a)| ((n as f64).ln(), a)).unzip();
        let spread = match (logs.first(), logs.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        };
        Self { logs, coeffs, spread }
    }

    /// |A(y)| at `y = start + j·step` for j in `0..count`, by phasor recurrence.
    pub(crate) fn abs_on_grid(&self, start: f64, step: f64, count: usize) -> Vec<f64> {
        const BLOCK: usize = 256;
        let rho: Vec<Complex64> = self.logs.iter().map(|&l| Complex64::from_polar(1.0, step * l)).collect();
        (0..count.div_ceil(BLOCK))
            .into_par_iter()
            .flat_map_iter(|b| {
                let j0 = b * BLOCK;
                let j1 = count.min(j0 + BLOCK);
                let y0 = start + j0 as f64 * step;
                let mut rot: Vec<Complex64> = self
                    .logs
                    .iter()
                    .zip(&self.coeffs)
                    .map(|(&l, &a)| a * Complex64::from_polar(1.0, y0 * l))
                    .collect();
                let mut out = Vec::with_capacity(j1 - j0);
                for _ in j0..j1 {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (r, p) in rot.iter_mut().zip(&rho) {
                        acc += *r;
                        *r *= p;
                    }
                    out.push(acc.norm());
                }
                out
            })
            .collect()
    }
}

/// ∫_a^b |A(y)|² w(y) dy on equal panels no wider than `width`, with one rule.
fn integrate_rule<W>(terms: &Terms, a: f64, b: f64, width: f64, rule: &Rule, weight: &W) -> (f64, f64, usize)
where
    W: Fn(f64) -> f64 + Sync,
{
    if b <= a {
        return (0.0, 0.0, 0);
    }
    let panels = ((b - a) / width).ceil().max(1.0) as usize;
    let half = (b - a) / (2 * panels) as f64;
    let k = rule.nodes.len();
    let n = terms.coeffs.len();
    // phi[i*k + j] = exp(i·half·x_j·log n_i)
    let mut phi = Vec::with_capacity(n * k);
    for &l in &terms.logs {
        for &x in &rule.nodes {
            phi.push(Complex64::from_polar(1.0, half * x * l));
        }
    }
    let rho: Vec<Complex64> = terms
        .logs
        .iter()
        .map(|&l| Complex64::from_polar(1.0, 2.0 * half * l))
        .collect();
    let parts: Vec<(f64, f64)> = (0..panels.div_ceil(PANELS_PER_BLOCK))
        .into_par_iter()
        .map(|blk| {
            let p0 = blk * PANELS_PER_BLOCK;
            let p1 = panels.min(p0 + PANELS_PER_BLOCK);
            let c0 = a + half * (2 * p0 + 1) as f64;
            let mut rot: Vec<Complex64> = terms
                .logs
                .iter()
                .zip(&terms.coeffs)
                .map(|(&l, &c)| c * Complex64::from_polar(1.0, c0 * l))
                .collect();
            let mut vals = vec![Complex64::new(0.0, 0.0); k];
            let (mut s, mut sw) = (0.0, 0.0);
            for p in p0..p1 {
                let c = a + half * (2 * p + 1) as f64;
                vals.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
                for (i, r) in rot.iter_mut().enumerate() {
                    let row = &phi[i * k..(i + 1) * k];
                    let b = *r;
                    for (v, f) in vals.iter_mut().zip(row) {
                        *v += b * f;
                    }
                    *r *= rho[i];
                }
                let (mut ps, mut pw) = (0.0, 0.0);
                for j in 0..k {
                    let w = rule.weights[j] * weight(c + half * rule.nodes[j]);
                    ps += w * vals[j].norm_sqr();
                    pw += w;
                }
                s += half * ps;
                sw += half * pw;
            }
            (s, sw)
        })
        .collect();
    let (s, sw) = parts.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    (s, sw, panels)
}

/// ∫ over the union of `intervals` of |A(y)|² w(y) dy, where `extra_freq` is the
/// fastest oscillation of w itself.
pub(crate) fn integrate<W>(
    terms: &Terms,
    intervals: &[(f64, f64)],
    extra_freq: f64,
    params: &QuadratureParams,
    weight: &W,
) -> QuadResult
where
    W: Fn(f64) -> f64 + Sync,
{
    let freq = terms.spread + extra_freq;
    let mut width = params.max_panel_width;
    if freq > 0.0 {
        width = width.min(std::f64::consts::TAU / (freq * params.panels_per_cycle));
    }
    let fine = Rule::new(params.nodes);
    let coarse = Rule::new(params.coarse_nodes);
    let mut out = QuadResult::default();
    for &(a, b) in intervals {
        let (v, w, panels) = integrate_rule(terms, a, b, width, &fine, weight);
        let (vc, _, _) = integrate_rule(terms, a, b, width, &coarse, weight);
        out = out
            + QuadResult {
                value: v,
                weight_integral: w,
                error_estimate: (v - vc).abs(),
                panels,
            };
    }
    out
}
