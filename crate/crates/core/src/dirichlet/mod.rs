//! Dirichlet polynomials A(y) = Σ a(n) n^{iy} and numerical checks of the
//! mean-value machinery built on them.

mod decomposition;
mod bounds;
mod quadrature;

use std::io::{Read, Write};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chowla::Neumaier;
use crate::error::{Error, Result};
use crate::sieve::{sieve_segment, SieveConfig, Segments};

pub use decomposition::{
    build_decomposition, decomposition_identity, restricted_factorization_error, turan_variance, Block,
    DecompositionCheck, Layer, LayerInfo, PrimeBlockDecomposition, RestrictedError, TuranReport,
};
pub use bounds::{
    halasz_montgomery_ratio, halasz_montgomery_ratio_with, large_values_measure, mean_value_ratio,
    mean_value_ratio_with, plancherel_check, saffari_vaughan_ratio, saffari_vaughan_ratio_with,
    twisted_sum_profile, ExceptionalSet, HmReport, LargeValues, MeanValueReport, PlancherelReport,
    SaffariVaughanReport, TwistKind, TwistedRow, DEFAULT_HM_EPS,
};
pub use quadrature::{QuadResult, QuadratureParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Raw,
    PrimeRestricted,
    Decomposition,
}

/// Coefficients a(n) for n in `[support_lo, support_hi]`; zero elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletPolynomial {
    support_lo: u64,
    coeffs: Vec<Complex64>,
    provenance: Provenance,
}

impl DirichletPolynomial {
    /// `coeffs[i]` is a(support_lo + i).
    pub fn new(support_lo: u64, coeffs: Vec<Complex64>, provenance: Provenance) -> Result<Self> {
        if support_lo == 0 {
            return Err(Error::ZeroLowerBound(0));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("a Dirichlet polynomial needs at least one coefficient".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidParameter(format!("a({}) is not finite", support_lo + i as u64)));
        }
        Ok(Self {
            support_lo,
            coeffs,
            provenance,
        })
    }

    pub fn from_real(support_lo: u64, coeffs: &[f64]) -> Result<Self> {
        Self::new(
            support_lo,
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
            Provenance::Raw,
        )
    }

    /// Sparse constructor from `(n, a(n))` pairs; repeated n are added.
    pub fn from_pairs(pairs: &[(u64, Complex64)], provenance: Provenance) -> Result<Self> {
        let lo = pairs.iter().map(|p| p.0).min().ok_or_else(|| {
            Error::InvalidParameter("a Dirichlet polynomial needs at least one coefficient".into())
        })?;
        let hi = pairs.iter().map(|p| p.0).max().unwrap();
        if lo == 0 {
            return Err(Error::ZeroLowerBound(0));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for &(n, c) in pairs {
            coeffs[(n - lo) as usize] += c;
        }
        Self::new(lo, coeffs, provenance)
    }

    /// a(n) = λ(n) on `[lo, hi]`.
    pub fn liouville(lo: u64, hi: u64) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(hi.saturating_sub(lo) as usize + 1);
        for seg in Segments::new(lo, hi, 0, SieveConfig::default())? {
            coeffs.extend(seg.table.lambda_values().into_iter().map(|l| Complex64::new(l as f64, 0.0)));
        }
        Self::new(lo, coeffs, Provenance::Raw)
    }

    /// a(p) = 1 for primes p ≤ P, zero elsewhere.
    pub fn prime_indicator(p_max: u64) -> Result<Self> {
        if p_max < 2 {
            return Err(Error::InvalidParameter(format!("P = {p_max} has no primes below it")));
        }
        let t = sieve_segment(2, p_max)?;
        let coeffs = (2..=p_max)
            .map(|n| Complex64::new(if t.is_prime(n).unwrap() { 1.0 } else { 0.0 }, 0.0))
            .collect();
        Self::new(2, coeffs, Provenance::PrimeRestricted)
    }

    /// a(n) = e^{iθ_n} for n ≤ N with θ_n uniform, drawn from stream `trial` of `seed`.
    pub fn random_unit(n: u64, seed: u64, trial: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let coeffs = (0..n)
            .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        Self::new(1, coeffs, Provenance::Raw)
    }

    /// Real coefficients uniform in [−1, 1] for n ≤ N, from stream `trial` of `seed`.
    pub fn random_real(n: u64, seed: u64, trial: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let coeffs = (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), 0.0))
            .collect();
        Self::new(1, coeffs, Provenance::Raw)
    }

    /// Reads `n,re,im` rows (a header row is optional).
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut pairs = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::InvalidParameter(format!("coefficient file: {e}")))?;
            if i == 0 && rec.get(0).is_some_and(|f| f.parse::<u64>().is_err()) {
                continue;
            }
            let field = |j: usize| -> Result<&str> {
                rec.get(j)
                    .ok_or_else(|| Error::InvalidParameter(format!("coefficient file row {}: expected n,re,im", i + 1)))
            };
            let bad = |what: &str| Error::InvalidParameter(format!("coefficient file row {}: bad {what}", i + 1));
            let n: u64 = field(0)?.parse().map_err(|_| bad("n"))?;
            let re: f64 = field(1)?.parse().map_err(|_| bad("re"))?;
            let im: f64 = match rec.get(2) {
                Some(s) if !s.is_empty() => s.parse().map_err(|_| bad("im"))?,
                _ => 0.0,
            };
            pairs.push((n, Complex64::new(re, im)));
        }
        Self::from_pairs(&pairs, Provenance::Raw)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(["n", "re", "im"]).map_err(io)?;
        for (n, c) in self.nonzero() {
            w.write_record([n.to_string(), c.re.to_string(), c.im.to_string()]).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn support_lo(&self) -> u64 {
        self.support_lo
    }

    pub fn support_hi(&self) -> u64 {
        self.support_lo + self.coeffs.len() as u64 - 1
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: u64) -> Complex64 {
        if n < self.support_lo || n > self.support_hi() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n - self.support_lo) as usize]
        }
    }

    /// `(n, a(n))` for every nonzero coefficient, in increasing n.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(i, &c)| (self.support_lo + i as u64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero().next().is_none()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Σ |a(n)|²
    pub fn l2_mass(&self) -> f64 {
        let mut acc = Neumaier::default();
        for c in &self.coeffs {
            acc.add(c.norm_sqr());
        }
        acc.value()
    }

    /// Σ |a(n)|
    pub fn l1_mass(&self) -> f64 {
        let mut acc = Neumaier::default();
        for c in &self.coeffs {
            acc.add(c.norm());
        }
        acc.value()
    }

    /// True when every nonzero coefficient sits on a prime.
    pub fn is_prime_supported(&self) -> Result<bool> {
        let t = sieve_segment(self.support_lo, self.support_hi())?;
        Ok(self.nonzero().all(|(n, _)| t.is_prime(n).unwrap()))
    }

    /// A(y) with compensated summation.
    pub fn evaluate(&self, y: f64) -> Complex64 {
        let (mut re, mut im) = (Neumaier::default(), Neumaier::default());
        for (n, a) in self.nonzero() {
            let v = a * Complex64::from_polar(1.0, y * (n as f64).ln());
            re.add(v.re);
            im.add(v.im);
        }
        Complex64::new(re.value(), im.value())
    }
}

/// `count` frequencies uniform in [−T, T], from a stream of `seed` disjoint
/// from the coefficient streams used by [`DirichletPolynomial::random_unit`].
pub fn random_points(seed: u64, trial: u64, count: usize, t: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial | 1 << 63);
    (0..count).map(|_| rng.random_range(-t..=t)).collect()
}
