//! The distance law itself.

use std::f64::consts::{FRAC_2_SQRT_PI, LN_2};

use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exec::{self, Execution};
use crate::moments::{check_dimension, mean_unchecked, variance_and_deficit};
use crate::montecarlo::{EmpiricalSample, SampleSource};
use crate::rng::{self, DOMAIN_ANALYTIC};
use crate::specfun::{ln_gamma_unchecked, reg_gamma_pq_with, SpecFunConfig};

const FRAC_1_SQRT_PI: f64 = 0.5 * FRAC_2_SQRT_PI;

/// Law of the Euclidean distance between two independent points with
/// i.i.d. standard normal coordinates in `k` dimensions.
///
/// `k` may be any real `k ≥ 1`; non-integer values are used when a
/// dataset's effective dimension is fitted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceDistribution {
    k: f64,
}

fn check_distance(r: f64) -> Result<()> {
    if r.is_nan() || r < 0.0 {
        Err(domain("distance must be >= 0", r))
    } else {
        Ok(())
    }
}

/// Density of `|p − q|` for independent standard normal `p`, `q`:
/// `e^(−x²/4) / √π`.
pub fn pdf_1d(x: f64) -> Result<f64> {
    check_distance(x)?;
    Ok((-0.25 * x * x).exp() * FRAC_1_SQRT_PI)
}

impl DistanceDistribution {
    pub fn new(k: f64) -> Result<Self> {
        check_dimension(k)?;
        Ok(Self { k })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `E[R]`.
    pub fn mean(&self) -> f64 {
        mean_unchecked(self.k)
    }

    /// `Var[R]`.
    pub fn variance(&self) -> f64 {
        variance_and_deficit(self.k).0
    }

    /// Density, evaluated in log space so that `k` up to 10⁶ neither
    /// overflows `2^(1−k)` nor underflows `R^(k−1)` prematurely.
    pub fn pdf(&self, r: f64) -> Result<f64> {
        check_distance(r)?;
        let k = self.k;
        if k == 1.0 {
            return pdf_1d(r);
        }
        if r == 0.0 || r.is_infinite() {
            return Ok(0.0);
        }
        let ln = (1.0 - k) * LN_2 - 0.25 * r * r + (k - 1.0) * r.ln() - ln_gamma_unchecked(0.5 * k);
        Ok(ln.exp())
    }

    fn tails(&self, r: f64) -> Result<(f64, f64)> {
        check_distance(r)?;
        reg_gamma_pq_with(0.5 * self.k, 0.25 * r * r, &SpecFunConfig::default())
    }

    /// `P(R ≤ r) = P(k/2, r²/4)`.
    pub fn cdf(&self, r: f64) -> Result<f64> {
        self.tails(r).map(|(p, _)| p)
    }

    /// `P(R > r) = Q(k/2, r²/4)`, evaluated directly for tail precision.
    pub fn survival(&self, r: f64) -> Result<f64> {
        self.tails(r).map(|(_, q)| q)
    }

    /// Inverse CDF for `p ∈ [0, 1)`.
    ///
    /// Newton iteration from the mean, safeguarded by bisection on a bracket
    /// that starts at `[0, mean + 12 sd]` and is widened if needed. Upper
    /// quantiles are solved against the survival function.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&p) {
            return Err(domain("quantile probability must lie in [0, 1)", p));
        }
        if p == 0.0 {
            return Ok(0.0);
        }
        let upper = p > 0.5;
        let target = if upper { 1.0 - p } else { p };
        // Increasing in r, zero at the root.
        let residual = |r: f64| -> Result<f64> {
            let (lo, hi) = self.tails(r)?;
            Ok(if upper { target - hi } else { lo - target })
        };

        let mean = self.mean();
        let sd = self.variance().sqrt();
        let mut lo = 0.0;
        let mut hi = mean + 12.0 * sd;
        while residual(hi)? < 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        let mut r = mean.clamp(lo, hi);
        const MAX_STEPS: usize = 200;
        for _ in 0..MAX_STEPS {
            let g = residual(r)?;
            if g == 0.0 {
                return Ok(r);
            }
            if g < 0.0 {
                lo = r;
            } else {
                hi = r;
            }
            let density = self.pdf(r)?;
            let newton = r - g / density;
            let next = if density > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (next - r).abs() <= f64::EPSILON * r || hi - lo <= 2.0 * f64::EPSILON * hi {
                return Ok(next);
            }
            r = next;
        }
        Err(Error::Convergence {
            routine: "distance quantile",
            iterations: MAX_STEPS,
        })
    }

    /// `n` i.i.d. draws, generated as `R = 2√G` with `G ~ Gamma(k/2, 1)`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<EmpiricalSample> {
        self.sample_with(n, seed, Execution::default())
    }

    pub fn sample_with(&self, n: usize, seed: u64, exec: Execution) -> Result<EmpiricalSample> {
        if n == 0 {
            return Err(domain("sample size must be >= 1", 0.0));
        }
        let gamma = Gamma::new(0.5 * self.k, 1.0).expect("shape validated by constructor");
        let lengths: Vec<usize> = rng::chunk_lengths(n).collect();
        let chunks = exec::map_indexed(lengths.len(), exec, |i| {
            let mut rng = rng::substream(seed, DOMAIN_ANALYTIC, i as u64);
            (0..lengths[i])
                .map(|_| 2.0 * gamma.sample(&mut rng).sqrt())
                .collect::<Vec<f64>>()
        });
        let mut values = chunks.concat();
        exec::sort_values(&mut values, exec);
        Ok(EmpiricalSample::from_sorted(
            values,
            self.k,
            Some(seed),
            SampleSource::AnalyticSampler,
        ))
    }
}
