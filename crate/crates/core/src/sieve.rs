//! Segmented sieve producing exact arithmetic-function tables.
//!
//! A [`FactorTable`] stores two bytes per integer: the number of prime factors
//! counted with multiplicity (Ω) and a flag byte. The Liouville, Möbius and von
//! Mangoldt functions are derived from those on demand. The largest prime
//! factor is only materialised when [`SieveConfig::with_lpf`] is set.
//!
//! Each segment is split into cache-sized blocks that are sieved independently
//! (and in parallel); the output does not depend on the number of threads.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_SEGMENT_BUDGET: u64 = 1 << 26;

const BLOCK: usize = 1 << 16;

pub const FLAG_SQUAREFREE: u8 = 0b001;
pub const FLAG_PRIME_POWER: u8 = 0b010;
pub const FLAG_PRIME: u8 = 0b100;

const CACHE_FORMAT: &str = "liouville-lab/factor-table";
const CACHE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    /// Largest number of integers a single table may hold.
    pub segment_budget: u64,
    /// Also record the largest prime factor of every entry (8 extra bytes each).
    pub with_lpf: bool,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            segment_budget: DEFAULT_SEGMENT_BUDGET,
            with_lpf: false,
        }
    }
}

impl SieveConfig {
    pub fn with_lpf(mut self) -> Self {
        self.with_lpf = true;
        self
    }

    pub fn segment_budget(mut self, budget: u64) -> Self {
        self.segment_budget = budget;
        self
    }
}

/// Per-integer arithmetic data over the contiguous range `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTable {
    lo: u64,
    hi: u64,
    omega: Vec<u8>,
    flags: Vec<u8>,
    lpf: Option<Vec<u64>>,
}

impl FactorTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn has_lpf(&self) -> bool {
        self.lpf.is_some()
    }

    #[inline]
    fn index(&self, n: u64) -> Result<usize> {
        if self.contains(n) {
            Ok((n - self.lo) as usize)
        } else {
            Err(Error::OutOfRange {
                n,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    /// Ω(n), prime factors counted with multiplicity.
    pub fn omega(&self, n: u64) -> Result<u8> {
        Ok(self.omega[self.index(n)?])
    }

    pub fn lambda(&self, n: u64) -> Result<i8> {
        self.index(n).map(|i| lambda_of(self.omega[i]))
    }

    pub fn mu(&self, n: u64) -> Result<i8> {
        self.index(n).map(|i| self.mu_at(i))
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        Ok(self.flags[self.index(n)?] & FLAG_PRIME != 0)
    }

    pub fn is_prime_power(&self, n: u64) -> Result<bool> {
        Ok(self.flags[self.index(n)?] & FLAG_PRIME_POWER != 0)
    }

    pub fn is_squarefree(&self, n: u64) -> Result<bool> {
        Ok(self.flags[self.index(n)?] & FLAG_SQUAREFREE != 0)
    }

    /// Λ(n): `log p` when n = p^k, zero otherwise.
    pub fn mangoldt(&self, n: u64) -> Result<f64> {
        self.index(n).map(|i| self.mangoldt_at(i))
    }

    /// Largest prime factor, `1` for n = 1. Requires a table sieved with lpf.
    pub fn lpf(&self, n: u64) -> Result<u64> {
        let i = self.index(n)?;
        match &self.lpf {
            Some(lpf) => Ok(lpf[i]),
            None => Err(Error::InvalidParameter(
                "table was sieved without largest-prime-factor data".into(),
            )),
        }
    }

    pub fn omega_slice(&self) -> &[u8] {
        &self.omega
    }

    pub fn flags_slice(&self) -> &[u8] {
        &self.flags
    }

    pub fn lpf_slice(&self) -> Option<&[u64]> {
        self.lpf.as_deref()
    }

    #[inline]
    pub(crate) fn mu_at(&self, i: usize) -> i8 {
        if self.flags[i] & FLAG_SQUAREFREE != 0 {
            lambda_of(self.omega[i])
        } else {
            0
        }
    }

    #[inline]
    pub(crate) fn mangoldt_at(&self, i: usize) -> f64 {
        if self.flags[i] & FLAG_PRIME_POWER == 0 {
            return 0.0;
        }
        let n = self.lo + i as u64;
        let p = match &self.lpf {
            Some(lpf) => lpf[i],
            None => integer_root(n, self.omega[i] as u32),
        };
        (p as f64).ln()
    }

    /// λ over the whole table as a dense `i8` vector.
    pub fn lambda_values(&self) -> Vec<i8> {
        self.omega.iter().map(|&o| lambda_of(o)).collect()
    }

    pub fn mu_values(&self) -> Vec<i8> {
        (0..self.len()).map(|i| self.mu_at(i)).collect()
    }

    pub fn mangoldt_values(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.mangoldt_at(i)).collect()
    }

    /// Appends a table that starts right after this one ends.
    pub fn concat(mut self, next: FactorTable) -> Result<FactorTable> {
        if next.lo != self.hi + 1 {
            return Err(Error::InvalidParameter(format!(
                "tables [{}, {}] and [{}, {}] are not adjacent",
                self.lo, self.hi, next.lo, next.hi
            )));
        }
        if self.lpf.is_some() != next.lpf.is_some() {
            return Err(Error::InvalidParameter(
                "cannot concatenate tables with and without lpf data".into(),
            ));
        }
        self.omega.extend_from_slice(&next.omega);
        self.flags.extend_from_slice(&next.flags);
        if let (Some(a), Some(b)) = (self.lpf.as_mut(), next.lpf) {
            a.extend(b);
        }
        self.hi = next.hi;
        Ok(self)
    }

    /// Writes the binary cache (`Ω: u8, flags: u8` per integer, n implicit by
    /// offset) plus a JSON sidecar at `<path>.json`.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let mut records = Vec::with_capacity(2 * self.len());
        for (&o, &f) in self.omega.iter().zip(&self.flags) {
            records.push(o);
            records.push(f);
        }
        let mut file = fs::File::create(path)?;
        file.write_all(&records)?;
        let sidecar = CacheSidecar {
            format: CACHE_FORMAT.into(),
            version: CACHE_VERSION,
            lo: self.lo,
            hi: self.hi,
            record_bytes: 2,
            fields: vec!["omega:u8".into(), "flags:u8".into()],
            flag_bits: FlagBits::default(),
        };
        fs::write(sidecar_path(path), serde_json::to_vec_pretty(&sidecar)?)?;
        Ok(())
    }

    pub fn read_cache(path: &Path) -> Result<FactorTable> {
        let sidecar: CacheSidecar = serde_json::from_slice(&fs::read(sidecar_path(path))?)?;
        if sidecar.format != CACHE_FORMAT || sidecar.version != CACHE_VERSION {
            return Err(Error::Cache(format!(
                "unsupported format {} v{}",
                sidecar.format, sidecar.version
            )));
        }
        if sidecar.lo == 0 || sidecar.lo > sidecar.hi {
            return Err(Error::Cache("bad range in sidecar".into()));
        }
        let records = fs::read(path)?;
        let len = (sidecar.hi - sidecar.lo + 1) as usize;
        if records.len() != 2 * len {
            return Err(Error::Cache(format!(
                "expected {} bytes, found {}",
                2 * len,
                records.len()
            )));
        }
        let omega = records.iter().step_by(2).copied().collect();
        let flags = records.iter().skip(1).step_by(2).copied().collect();
        Ok(FactorTable {
            lo: sidecar.lo,
            hi: sidecar.hi,
            omega,
            flags,
            lpf: None,
        })
    }
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheSidecar {
    format: String,
    version: u32,
    lo: u64,
    hi: u64,
    record_bytes: u32,
    fields: Vec<String>,
    flag_bits: FlagBits,
}

#[derive(Debug, Serialize, Deserialize)]
struct FlagBits {
    squarefree: u8,
    prime_power: u8,
    prime: u8,
}

impl Default for FlagBits {
    fn default() -> Self {
        Self {
            squarefree: FLAG_SQUAREFREE,
            prime_power: FLAG_PRIME_POWER,
            prime: FLAG_PRIME,
        }
    }
}

#[inline]
pub(crate) fn lambda_of(omega: u8) -> i8 {
    1 - 2 * (omega & 1) as i8
}

/// Largest r with r^k <= n.
pub fn integer_root(n: u64, k: u32) -> u64 {
    if k <= 1 || n <= 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

pub fn isqrt(n: u64) -> u64 {
    integer_root(n, 2)
}

/// All primes up to `limit`, by a plain sieve of Eratosthenes.
pub fn base_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 {
        return Err(Error::ZeroLowerBound(lo));
    }
    if lo > hi {
        return Err(Error::RangeInverted { lo, hi });
    }
    Ok(())
}

/// Sieves `[lo, hi]` with the default configuration.
pub fn sieve_segment(lo: u64, hi: u64) -> Result<FactorTable> {
    sieve_segment_with(lo, hi, &SieveConfig::default())
}

pub fn sieve_segment_with(lo: u64, hi: u64, config: &SieveConfig) -> Result<FactorTable> {
    check_range(lo, hi)?;
    let len = hi - lo + 1;
    if len > config.segment_budget {
        return Err(Error::SegmentTooLarge {
            len,
            budget: config.segment_budget,
        });
    }
    let primes = base_primes(isqrt(hi));
    Ok(sieve_with_primes(lo, hi, &primes, config.with_lpf))
}

pub(crate) fn sieve_with_primes(lo: u64, hi: u64, primes: &[u64], with_lpf: bool) -> FactorTable {
    let len = (hi - lo + 1) as usize;
    let mut omega = vec![0u8; len];
    let mut flags = vec![0u8; len];
    let mut lpf = with_lpf.then(|| vec![1u64; len]);
    let lpf_chunks: Vec<Option<&mut [u64]>> = match lpf.as_mut() {
        Some(v) => v.chunks_mut(BLOCK).map(Some).collect(),
        None => (0..len.div_ceil(BLOCK)).map(|_| None).collect(),
    };
    omega
        .par_chunks_mut(BLOCK)
        .zip(flags.par_chunks_mut(BLOCK))
        .zip(lpf_chunks.into_par_iter())
        .enumerate()
        .for_each(|(b, ((om, fl), lp))| {
            sieve_block(lo + (b * BLOCK) as u64, om, fl, lp, primes);
        });
    FactorTable {
        lo,
        hi,
        omega,
        flags,
        lpf,
    }
}

/// Sieves one block. `prod` accumulates the part of n made of primes up to
/// √hi; whatever is left over is a single prime above √hi.
fn sieve_block(
    lo: u64,
    omega: &mut [u8],
    flags: &mut [u8],
    mut lpf: Option<&mut [u64]>,
    primes: &[u64],
) {
    let len = omega.len();
    let hi = lo + len as u64 - 1;
    let mut prod = vec![1u64; len];
    let mut distinct = vec![0u8; len];
    flags.fill(FLAG_SQUAREFREE);

    for &p in primes {
        if p.saturating_mul(p) > hi {
            break;
        }
        let step = p as usize;
        let mut i = (lo.div_ceil(p) * p - lo) as usize;
        match lpf.as_deref_mut() {
            Some(lpf) => {
                while i < len {
                    omega[i] += 1;
                    prod[i] *= p;
                    distinct[i] += 1;
                    lpf[i] = p;
                    i += step;
                }
            }
            None => {
                while i < len {
                    omega[i] += 1;
                    prod[i] *= p;
                    distinct[i] += 1;
                    i += step;
                }
            }
        }

        let mut pk = p * p;
        let mut k = 2;
        while pk <= hi {
            let step = pk as usize;
            let mut i = (lo.div_ceil(pk) * pk - lo) as usize;
            if k == 2 {
                while i < len {
                    omega[i] += 1;
                    prod[i] *= p;
                    flags[i] &= !FLAG_SQUAREFREE;
                    i += step;
                }
            } else {
                while i < len {
                    omega[i] += 1;
                    prod[i] *= p;
                    i += step;
                }
            }
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
            k += 1;
        }
    }

    for i in 0..len {
        let n = lo + i as u64;
        if prod[i] < n {
            omega[i] += 1;
            distinct[i] += 1;
            if let Some(lpf) = lpf.as_deref_mut() {
                lpf[i] = n / prod[i];
            }
        }
        if distinct[i] == 1 {
            flags[i] |= FLAG_PRIME_POWER;
        }
        if omega[i] == 1 {
            flags[i] |= FLAG_PRIME;
        }
    }
}

/// A table plus the sub-range of it the caller should treat as its own; the
/// rest of the table is look-ahead shared with the next segment.
#[derive(Debug)]
pub struct Segment {
    pub core_lo: u64,
    pub core_hi: u64,
    pub table: FactorTable,
}

/// Streams `[lo, hi]` in budget-sized segments, each extended by `overlap`
/// integers of look-ahead past its core.
#[derive(Debug)]
pub struct Segments {
    next: u64,
    hi: u64,
    overlap: u64,
    config: SieveConfig,
    primes: Vec<u64>,
}

impl Segments {
    pub fn new(lo: u64, hi: u64, overlap: u64, config: SieveConfig) -> Result<Self> {
        check_range(lo, hi)?;
        if overlap >= config.segment_budget {
            return Err(Error::InvalidParameter(format!(
                "overlap {overlap} must be smaller than the segment budget {}",
                config.segment_budget
            )));
        }
        let top = hi.checked_add(overlap).ok_or_else(|| {
            Error::InvalidParameter("range end plus overlap overflows u64".into())
        })?;
        Ok(Self {
            next: lo,
            hi,
            overlap,
            config,
            primes: base_primes(isqrt(top)),
        })
    }
}

impl Iterator for Segments {
    type Item = Segment;

    fn next(&mut self) -> Option<Segment> {
        if self.next == 0 || self.next > self.hi {
            return None;
        }
        let core_len = self.config.segment_budget - self.overlap;
        let core_lo = self.next;
        let core_hi = self.hi.min(core_lo + core_len - 1);
        let table = sieve_with_primes(
            core_lo,
            core_hi + self.overlap,
            &self.primes,
            self.config.with_lpf,
        );
        // wraps to 0 only when core_hi == u64::MAX, which ends iteration
        self.next = core_hi.wrapping_add(1);
        Some(Segment {
            core_lo,
            core_hi,
            table,
        })
    }
}

/// L(x) = Σ_{n≤x} λ(n), streamed in segments.
pub fn mertens_lambda(x: u64) -> Result<i64> {
    mertens_lambda_with(x, &SieveConfig::default())
}

pub fn mertens_lambda_with(x: u64, config: &SieveConfig) -> Result<i64> {
    let mut total = 0i64;
    for seg in Segments::new(1, x, 0, *config)? {
        let odd = seg.table.omega.iter().filter(|&&o| o & 1 == 1).count() as i64;
        total += seg.table.len() as i64 - 2 * odd;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeList {
    pub lo: u64,
    pub hi: u64,
    pub primes: Vec<u64>,
}

impl PrimeList {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Exactly the primes in `[lo, hi]`, in increasing order.
pub fn primes_in(lo: u64, hi: u64) -> Result<PrimeList> {
    if lo > hi {
        return Err(Error::RangeInverted { lo, hi });
    }
    let mut primes = Vec::new();
    for seg in Segments::new(lo.max(1), hi, 0, SieveConfig::default())? {
        let t = &seg.table;
        primes.extend(
            t.flags
                .iter()
                .enumerate()
                .filter(|(_, &f)| f & FLAG_PRIME != 0)
                .map(|(i, _)| t.lo + i as u64),
        );
    }
    Ok(PrimeList { lo, hi, primes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            if k > 0 {
                out.push((d, k));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn small_table_matches_hand_values() {
        let t = sieve_segment(1, 10).unwrap();
        assert_eq!(t.lambda_values(), vec![1, -1, -1, 1, -1, 1, -1, -1, 1, 1]);
        assert_eq!(t.mu(4).unwrap(), 0);
        assert_eq!(t.mu(6).unwrap(), 1);
        assert!(matches!(t.mu(30), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn conventions_at_one() {
        let t = sieve_segment_with(1, 1, &SieveConfig::default().with_lpf()).unwrap();
        assert_eq!(t.omega(1).unwrap(), 0);
        assert_eq!(t.lambda(1).unwrap(), 1);
        assert_eq!(t.mu(1).unwrap(), 1);
        assert_eq!(t.mangoldt(1).unwrap(), 0.0);
        assert_eq!(t.lpf(1).unwrap(), 1);
        assert!(!t.is_prime(1).unwrap());
    }

    #[test]
    fn near_one_billion_agrees_with_trial_division() {
        let t = sieve_segment(999_999_990, 1_000_000_000).unwrap();
        assert_eq!(t.len(), 11);
        for n in t.lo()..=t.hi() {
            let omega: u32 = trial_division(n).iter().map(|&(_, k)| k).sum();
            assert_eq!(t.omega(n).unwrap() as u32, omega, "n = {n}");
            assert!(t.lambda(n).unwrap().abs() == 1);
        }
    }

    #[test]
    fn range_errors() {
        assert!(matches!(
            sieve_segment(10, 5),
            Err(Error::RangeInverted { lo: 10, hi: 5 })
        ));
        assert!(matches!(sieve_segment(0, 5), Err(Error::ZeroLowerBound(0))));
        let cfg = SieveConfig::default().segment_budget(100);
        assert!(matches!(
            sieve_segment_with(1, 101, &cfg),
            Err(Error::SegmentTooLarge { len: 101, budget: 100 })
        ));
    }

    #[test]
    fn mertens_small_values() {
        assert_eq!(mertens_lambda(1).unwrap(), 1);
        assert_eq!(mertens_lambda(10).unwrap(), 0);
        let partial: Vec<i64> = (1..=10).map(|x| mertens_lambda(x).unwrap()).collect();
        assert_eq!(partial, vec![1, 0, -1, 0, -1, 0, -1, -2, -1, 0]);
    }

    #[test]
    fn mertens_streaming_is_budget_independent() {
        let small = SieveConfig::default().segment_budget(1000);
        assert_eq!(
            mertens_lambda_with(123_457, &small).unwrap(),
            mertens_lambda(123_457).unwrap()
        );
    }

    #[test]
    fn primes_in_examples() {
        assert_eq!(primes_in(2, 10).unwrap().primes, vec![2, 3, 5, 7]);
        assert_eq!(primes_in(90, 100).unwrap().primes, vec![97]);
        assert_eq!(primes_in(1, 1).unwrap().primes, Vec::<u64>::new());
        assert!(primes_in(5, 2).is_err());
        let lo = 1_000_000;
        let expected: Vec<u64> = (lo..=lo + 100)
            .filter(|&n| trial_division(n) == vec![(n, 1)])
            .collect();
        assert_eq!(primes_in(lo, lo + 100).unwrap().primes, expected);
    }

    #[test]
    fn mangoldt_on_prime_powers() {
        let t = sieve_segment(1, 10).unwrap();
        let psi: f64 = (1..=10).map(|n| t.mangoldt(n).unwrap()).sum();
        let expected = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((psi - expected).abs() < 1e-12);
        let with_lpf = sieve_segment_with(1, 10, &SieveConfig::default().with_lpf()).unwrap();
        for n in 1..=10 {
            assert_eq!(t.mangoldt(n).unwrap(), with_lpf.mangoldt(n).unwrap());
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.bin");
        let t = sieve_segment(1000, 3000).unwrap();
        t.write_cache(&path).unwrap();
        assert_eq!(fs::read(&path).unwrap().len(), 2 * 2001);
        assert_eq!(FactorTable::read_cache(&path).unwrap(), t);
    }

    #[test]
    fn squarefree_density_at_ten_million() {
        let t = sieve_segment(1, 10_000_000).unwrap();
        let sf = t.flags_slice().iter().filter(|&&f| f & FLAG_SQUAREFREE != 0).count();
        let ratio = sf as f64 / 1e7;
        assert!((ratio - 0.607_927).abs() < 1e-3, "{ratio}");
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(1 << 40, 8), 32);
        assert_eq!(integer_root(u64::MAX, 2), 4_294_967_295);
        assert_eq!(integer_root(80, 4), 2);
        assert_eq!(integer_root(81, 4), 3);
    }

    proptest! {
        #[test]
        fn omega_and_lpf_agree_with_trial_division(lo in 1u64..5_000_000_000, len in 1u64..400) {
            let t = sieve_segment_with(lo, lo + len - 1, &SieveConfig::default().with_lpf()).unwrap();
            for n in t.lo()..=t.hi() {
                let f = trial_division(n);
                let omega: u32 = f.iter().map(|&(_, k)| k).sum();
                prop_assert_eq!(t.omega(n).unwrap() as u32, omega);
                prop_assert_eq!(t.lpf(n).unwrap(), f.last().map_or(1, |&(p, _)| p));
                prop_assert_eq!(t.is_squarefree(n).unwrap(), f.iter().all(|&(_, k)| k == 1));
                prop_assert_eq!(t.is_prime_power(n).unwrap(), f.len() == 1);
                let lam = t.lambda(n).unwrap();
                prop_assert_eq!(lam, if omega % 2 == 0 { 1 } else { -1 });
                prop_assert_eq!(t.mu(n).unwrap(), if t.is_squarefree(n).unwrap() { lam } else { 0 });
            }
        }

        #[test]
        fn segments_concatenate(a in 1u64..1_000_000, l1 in 1u64..70_000, l2 in 1u64..70_000) {
            let b = a + l1 - 1;
            let c = b + l2;
            let joined = sieve_segment(a, b).unwrap().concat(sieve_segment(b + 1, c).unwrap()).unwrap();
            prop_assert_eq!(joined, sieve_segment(a, c).unwrap());
        }

        #[test]
        fn lambda_completely_multiplicative(m in 1u64..3000, n in 1u64..3000) {
            static TABLE: std::sync::OnceLock<FactorTable> = std::sync::OnceLock::new();
            let t = TABLE.get_or_init(|| sieve_segment(1, 9_000_000).unwrap());
            prop_assert_eq!(t.lambda(m * n).unwrap(), t.lambda(m).unwrap() * t.lambda(n).unwrap());
        }
    }
}
