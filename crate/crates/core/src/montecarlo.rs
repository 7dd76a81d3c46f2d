//! Brute-force simulation of point-pair distances, and the empirical
//! machinery (ECDF, Kolmogorov-Smirnov statistics, sample moments) used to
//! hold the closed forms to account.
//!
//! Normal variates come from `rand_distr::StandardNormal` (a ziggurat
//! sampler) on ChaCha8 substreams, one stream per fixed block of 8192
//! pairs.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::distribution::DistanceDistribution;
use crate::error::{domain, Error, Result};
use crate::exec::{self, Execution};
use crate::moments::{check_dimension, mean_unchecked, variance_and_deficit, MomentSet};
use crate::rng::{self, DOMAIN_DIRECT};
use crate::specfun::{reg_gamma_pq_with, SpecFunConfig};

/// Asymptotic Kolmogorov-Smirnov coefficient for α = 0.01.
pub const KS_COEFFICIENT_01: f64 = 1.63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleSource {
    DirectSimulation,
    AnalyticSampler,
    External,
}

/// A sorted collection of observed or simulated distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSample {
    values: Vec<f64>,
    k: f64,
    seed: Option<u64>,
    source: SampleSource,
}

impl EmpiricalSample {
    /// Builds a sample from unsorted values. Values must be finite and
    /// non-negative and there must be at least one.
    pub fn new(
        mut values: Vec<f64>,
        k: f64,
        seed: Option<u64>,
        source: SampleSource,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(domain("distances must be finite and >= 0", bad));
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(Self::from_sorted(values, k, seed, source))
    }

    pub(crate) fn from_sorted(
        values: Vec<f64>,
        k: f64,
        seed: Option<u64>,
        source: SampleSource,
    ) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        Self {
            values,
            k,
            seed,
            source,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn source(&self) -> SampleSource {
        self.source
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Fraction of values `≤ r`.
    pub fn ecdf(&self, r: f64) -> f64 {
        let count = self.values.partition_point(|&v| v <= r);
        count as f64 / self.values.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// Outcome of a Kolmogorov-Smirnov test at α = 0.01.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub critical_value_01: f64,
    pub n_effective: f64,
    pub passed: bool,
}

impl KsResult {
    fn new(statistic: f64, n_effective: f64) -> Self {
        let critical_value_01 = KS_COEFFICIENT_01 / n_effective.sqrt();
        Self {
            statistic,
            critical_value_01,
            n_effective,
            passed: statistic < critical_value_01,
        }
    }
}

/// `n` distances `‖Ψ − Γ‖₂` between pairs of points with `k` i.i.d.
/// standard normal coordinates each.
pub fn simulate_pairs(k: f64, n: usize, seed: u64) -> Result<EmpiricalSample> {
    simulate_pairs_with(k, n, seed, Execution::default())
}

pub fn simulate_pairs_with(
    k: f64,
    n: usize,
    seed: u64,
    exec: Execution,
) -> Result<EmpiricalSample> {
    if !(k.is_finite() && k >= 1.0 && k.fract() == 0.0) {
        return Err(domain(
            "direct simulation needs an integer dimension >= 1",
            k,
        ));
    }
    if n == 0 {
        return Err(domain("sample size must be >= 1", 0.0));
    }
    let dims = k as usize;
    let lengths: Vec<usize> = rng::chunk_lengths(n).collect();
    let chunks = exec::map_indexed(lengths.len(), exec, |i| {
        let mut rng = rng::substream(seed, DOMAIN_DIRECT, i as u64);
        (0..lengths[i])
            .map(|_| {
                let mut sq = 0.0;
                for _ in 0..dims {
                    let psi: f64 = StandardNormal.sample(&mut rng);
                    let gamma: f64 = StandardNormal.sample(&mut rng);
                    let d = psi - gamma;
                    sq += d * d;
                }
                sq.sqrt()
            })
            .collect::<Vec<f64>>()
    });
    let mut values = chunks.concat();
    exec::sort_values(&mut values, exec);
    Ok(EmpiricalSample::from_sorted(
        values,
        k,
        Some(seed),
        SampleSource::DirectSimulation,
    ))
}

/// One-sample KS statistic of `sample` against the analytic law.
///
/// The supremum is taken exactly over both one-sided gaps at every sample
/// point.
pub fn ks_one_sample(sample: &EmpiricalSample, dist: &DistanceDistribution) -> Result<KsResult> {
    ks_one_sample_with(sample, dist, Execution::default())
}

pub fn ks_one_sample_with(
    sample: &EmpiricalSample,
    dist: &DistanceDistribution,
    exec: Execution,
) -> Result<KsResult> {
    if sample.source == SampleSource::DirectSimulation && sample.k != dist.k() {
        return Err(Error::DimensionMismatch {
            sample: sample.k,
            law: dist.k(),
        });
    }
    let statistic = ks_against(sample.values(), |r| dist.cdf(r), exec)?;
    Ok(KsResult::new(statistic, sample.len() as f64))
}

/// Exact one-sample KS statistic of sorted `values` against `cdf`.
pub fn ks_against<F>(values: &[f64], cdf: F, exec: Execution) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    const BLOCK: usize = 4096;
    let n = values.len() as f64;
    let blocks = values.len().div_ceil(BLOCK);
    let partial = exec::map_indexed(blocks, exec, |b| -> Result<f64> {
        let start = b * BLOCK;
        let end = (start + BLOCK).min(values.len());
        let mut worst: f64 = 0.0;
        for (i, &x) in values[start..end].iter().enumerate() {
            let f = cdf(x)?;
            let rank = (start + i) as f64;
            worst = worst.max((rank + 1.0) / n - f).max(f - rank / n);
        }
        Ok(worst)
    });
    partial
        .into_iter()
        .try_fold(0.0f64, |acc, block| block.map(|b| acc.max(b)))
}

/// Two-sample KS statistic between the ECDFs of `a` and `b`.
pub fn ks_two_sample(a: &EmpiricalSample, b: &EmpiricalSample) -> KsResult {
    let (xa, xb) = (a.values(), b.values());
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut statistic: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        statistic = statistic.max((i as f64 / na - j as f64 / nb).abs());
    }
    KsResult::new(statistic, na * nb / (na + nb))
}

/// Standard normal CDF, `Φ(z) = ½ ± ½·P(½, z²/2)`.
pub fn standard_normal_cdf(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    let (p, q) = reg_gamma_pq_with(0.5, 0.5 * z * z, &SpecFunConfig::default())
        .expect("a = 1/2 converges for every x");
    if z >= 0.0 {
        0.5 + 0.5 * p
    } else {
        0.5 * q
    }
}

/// KS test of the sample, centred on the closed-form mean and scaled by
/// `√μ2`, against the standard normal law.
pub fn ks_standardized_normal(sample: &EmpiricalSample, exec: Execution) -> Result<KsResult> {
    let k = sample.k();
    check_dimension(k)?;
    let mean = mean_unchecked(k);
    let sd = variance_and_deficit(k).0.sqrt();
    let z: Vec<f64> = sample.values().iter().map(|&r| (r - mean) / sd).collect();
    let statistic = ks_against(&z, |x| Ok(standard_normal_cdf(x)), exec)?;
    Ok(KsResult::new(statistic, sample.len() as f64))
}

/// Empirical raw moments, central moments about the sample mean (divisor
/// `n`), skewness and kurtosis.
///
/// Central moments accumulate in one pass with the incremental update of
/// Terriberry. A constant sample has `μ2 = 0`, so its skewness and
/// kurtosis are NaN.
pub fn sample_moments(sample: &EmpiricalSample) -> Result<MomentSet> {
    let n = sample.len();
    if n < 4 {
        return Err(Error::InsufficientData { needed: 4, got: n });
    }
    let mut raw = [0.0; 4];
    let (mut mean, mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0, 0.0);
    for (idx, &x) in sample.values().iter().enumerate() {
        let x2 = x * x;
        raw[1] += x2;
        raw[2] += x2 * x;
        raw[3] += x2 * x2;

        let count = (idx + 1) as f64;
        let delta = x - mean;
        let delta_n = delta / count;
        let delta_n2 = delta_n * delta_n;
        let term1 = delta * delta_n * (count - 1.0);
        mean += delta_n;
        m4 += term1 * delta_n2 * (count * count - 3.0 * count + 3.0) + 6.0 * delta_n2 * m2
            - 4.0 * delta_n * m3;
        m3 += term1 * delta_n * (count - 2.0) - 3.0 * delta_n * m2;
        m2 += term1;
    }
    let nf = n as f64;
    let mut raw = raw.map(|s| s / nf);
    raw[0] = mean;
    let central = [m2 / nf, m3 / nf, m4 / nf];
    Ok(MomentSet {
        k: sample.k(),
        raw,
        central,
        skewness: central[1] / central[0].powf(1.5),
        kurtosis: central[2] / (central[0] * central[0]),
    })
}
