//! Applying the distance law to data: standardization, pairwise distances,
//! significance of individual distances, dataset fit reports, effective
//! dimension and the relative-contrast experiment.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::distribution::DistanceDistribution;
use crate::error::{domain, Error, Result};
use crate::exec::{self, Execution};
use crate::moments::{mean_unchecked, variance_and_deficit};
use crate::montecarlo::{ks_one_sample_with, EmpiricalSample, KsResult, SampleSource};
use crate::rng::{self, DOMAIN_CONTRAST, DOMAIN_DATASET};

/// Tolerance on column means and standard deviations for data to count as
/// standardized.
pub const STANDARDIZED_TOLERANCE: f64 = 1e-9;

/// Minimum row count accepted by [`fit_report`].
pub const MIN_FIT_ROWS: usize = 10;

/// Row-major numeric dataset: rows are observations, columns are features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    standardized: bool,
}

impl DatasetMatrix {
    /// Wraps row-major `data`. Missing (NaN) or infinite values are
    /// rejected rather than imputed.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows < 2 || cols < 1 {
            return Err(Error::InvalidDataset(format!(
                "need at least 2 rows and 1 column, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidDataset(format!(
                "{} values do not fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite value at row {}, column {}",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self {
            rows,
            cols,
            data,
            standardized: false,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::InvalidDataset(format!(
                "row {i} has {} values, expected {cols}",
                rows[i].len()
            )));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_standardized(&self) -> bool {
        self.standardized
    }

    fn column_stats(&self, c: usize) -> (f64, f64) {
        let n = self.rows as f64;
        let mean = (0..self.rows)
            .map(|r| self.data[r * self.cols + c])
            .sum::<f64>()
            / n;
        let ss = (0..self.rows)
            .map(|r| {
                let d = self.data[r * self.cols + c] - mean;
                d * d
            })
            .sum::<f64>();
        (mean, (ss / (n - 1.0)).sqrt())
    }

    /// Accepts data that is already standardized, marking it as such.
    /// Fails with [`Error::NotStandardized`] if any column's mean or
    /// standard deviation is off by more than [`STANDARDIZED_TOLERANCE`].
    pub fn assume_standardized(mut self) -> Result<Self> {
        for c in 0..self.cols {
            let (mean, sd) = self.column_stats(c);
            if mean.abs() > STANDARDIZED_TOLERANCE || (sd - 1.0).abs() > STANDARDIZED_TOLERANCE {
                return Err(Error::NotStandardized);
            }
        }
        self.standardized = true;
        Ok(self)
    }
}

/// Column-wise transform to zero mean and unit sample standard deviation
/// (divisor `n − 1`).
pub fn standardize(data: &DatasetMatrix) -> Result<DatasetMatrix> {
    let stats: Vec<(f64, f64)> = (0..data.cols).map(|c| data.column_stats(c)).collect();
    for (c, &(mean, sd)) in stats.iter().enumerate() {
        if sd.is_nan() || sd <= 1e-12 * mean.abs() {
            return Err(Error::ConstantColumn { column: c });
        }
    }
    let out = data
        .data
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let (mean, sd) = stats[i % data.cols];
            (v - mean) / sd
        })
        .collect();
    Ok(DatasetMatrix {
        rows: data.rows,
        cols: data.cols,
        data: out,
        standardized: true,
    })
}

/// All `rows·(rows−1)/2` Euclidean distances between observations, sorted.
pub fn pairwise_distances(data: &DatasetMatrix) -> Result<EmpiricalSample> {
    pairwise_distances_with(data, Execution::default())
}

pub fn pairwise_distances_with(data: &DatasetMatrix, exec: Execution) -> Result<EmpiricalSample> {
    if !data.standardized {
        return Err(Error::NotStandardized);
    }
    let per_row = exec::map_indexed(data.rows, exec, |i| {
        let a = data.row(i);
        ((i + 1)..data.rows)
            .map(|j| {
                a.iter()
                    .zip(data.row(j))
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect::<Vec<f64>>()
    });
    let mut values = per_row.concat();
    exec::sort_values(&mut values, exec);
    Ok(EmpiricalSample::from_sorted(
        values,
        data.cols as f64,
        None,
        SampleSource::External,
    ))
}

/// Which tail of the law a distance is judged against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// Significantly close pairs: `P(R ≤ observed)`.
    Lower,
    /// Significantly distant pairs: `P(R > observed)`.
    Upper,
}

pub fn distance_pvalue(dist: &DistanceDistribution, observed: f64, tail: Tail) -> Result<f64> {
    match tail {
        Tail::Lower => dist.cdf(observed),
        Tail::Upper => dist.survival(observed),
    }
}

/// Real `κ ≥ 1` at which the law's mean distance equals `mean_distance`.
///
/// The mean `2Γ((κ+1)/2)/Γ(κ/2)` is increasing in `κ` and satisfies
/// `2κ − 1 < mean² < 2κ`, which brackets the root. Means below the `κ = 1`
/// value return 1.
pub fn effective_dimension(mean_distance: f64) -> Result<f64> {
    if !(mean_distance.is_finite() && mean_distance > 0.0) {
        return Err(domain(
            "mean distance must be finite and > 0",
            mean_distance,
        ));
    }
    if mean_distance <= mean_unchecked(1.0) {
        return Ok(1.0);
    }
    let sq = mean_distance * mean_distance;
    let mut lo = (0.5 * sq).max(1.0);
    let mut hi = 0.5 * (sq + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mean_unchecked(mid) < mean_distance {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Comparison of a dataset's pairwise distances with the law for its
/// feature count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "FitReportRecord", into = "FitReportRecord")]
pub struct FitReport {
    pub k: usize,
    pub n_pairs: usize,
    pub ks: KsResult,
    pub mean_observed: f64,
    pub mean_expected: f64,
    pub variance_observed: f64,
    pub variance_expected: f64,
    pub effective_dimension: f64,
    /// Set when distances share endpoints. They are then dependent, and
    /// the KS critical value (which assumes independent draws) is only
    /// indicative.
    pub dependence_caveat: bool,
}

/// Flat wire form of [`FitReport`].
#[derive(Serialize, Deserialize)]
struct FitReportRecord {
    k: usize,
    n_pairs: usize,
    ks_statistic: f64,
    ks_critical_01: f64,
    ks_passed: bool,
    mean_observed: f64,
    mean_expected: f64,
    variance_observed: f64,
    variance_expected: f64,
    effective_dimension: f64,
    dependence_caveat: bool,
}

impl From<FitReport> for FitReportRecord {
    fn from(r: FitReport) -> Self {
        Self {
            k: r.k,
            n_pairs: r.n_pairs,
            ks_statistic: r.ks.statistic,
            ks_critical_01: r.ks.critical_value_01,
            ks_passed: r.ks.passed,
            mean_observed: r.mean_observed,
            mean_expected: r.mean_expected,
            variance_observed: r.variance_observed,
            variance_expected: r.variance_expected,
            effective_dimension: r.effective_dimension,
            dependence_caveat: r.dependence_caveat,
        }
    }
}

impl From<FitReportRecord> for FitReport {
    fn from(r: FitReportRecord) -> Self {
        Self {
            k: r.k,
            n_pairs: r.n_pairs,
            ks: KsResult {
                statistic: r.ks_statistic,
                critical_value_01: r.ks_critical_01,
                n_effective: r.n_pairs as f64,
                passed: r.ks_passed,
            },
            mean_observed: r.mean_observed,
            mean_expected: r.mean_expected,
            variance_observed: r.variance_observed,
            variance_expected: r.variance_expected,
            effective_dimension: r.effective_dimension,
            dependence_caveat: r.dependence_caveat,
        }
    }
}

pub fn fit_report(data: &DatasetMatrix) -> Result<FitReport> {
    fit_report_with(data, Execution::default())
}

pub fn fit_report_with(data: &DatasetMatrix, exec: Execution) -> Result<FitReport> {
    if !data.standardized {
        return Err(Error::NotStandardized);
    }
    if data.rows < MIN_FIT_ROWS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_ROWS,
            got: data.rows,
        });
    }
    let k = data.cols as f64;
    let law = DistanceDistribution::new(k)?;
    let distances = pairwise_distances_with(data, exec)?;
    let ks = ks_one_sample_with(&distances, &law, exec)?;
    let n = distances.len() as f64;
    let mean_observed = distances.mean();
    let variance_observed = distances
        .values()
        .iter()
        .map(|v| (v - mean_observed) * (v - mean_observed))
        .sum::<f64>()
        / (n - 1.0);
    Ok(FitReport {
        k: data.cols,
        n_pairs: distances.len(),
        ks,
        mean_observed,
        mean_expected: law.mean(),
        variance_observed,
        variance_expected: variance_and_deficit(k).0,
        effective_dimension: effective_dimension(mean_observed)?,
        dependence_caveat: data.rows > 2,
    })
}

/// A `rows × cols` matrix of i.i.d. standard normal entries, the null
/// model the law describes. Row `i` is drawn from its own substream.
pub fn simulate_gaussian_dataset(rows: usize, cols: usize, seed: u64) -> Result<DatasetMatrix> {
    if rows < 2 || cols < 1 {
        return Err(Error::InvalidDataset(format!(
            "need at least 2 rows and 1 column, got {rows}x{cols}"
        )));
    }
    let data = (0..rows)
        .flat_map(|i| {
            let mut rng = rng::substream(seed, DOMAIN_DATASET, i as u64);
            (0..cols)
                .map(move |_| StandardNormal.sample(&mut rng))
                .collect::<Vec<f64>>()
        })
        .collect();
    DatasetMatrix::new(rows, cols, data)
}

/// One realization of the nearest/farthest-neighbor experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContrastRow {
    pub k: usize,
    pub seed: u64,
    pub d_max: f64,
    pub d_min: f64,
    /// `(d_max − d_min) / d_min`.
    pub contrast: f64,
}

/// For each `k`, draws a standard-normal query point and `n_points`
/// standard-normal data points and records the query's farthest and
/// nearest distances. Each row depends only on `(k, seed)`.
pub fn relative_contrast_curve(
    k_values: &[usize],
    n_points: usize,
    seed: u64,
) -> Result<Vec<ContrastRow>> {
    relative_contrast_curve_with(k_values, n_points, seed, Execution::default())
}

pub fn relative_contrast_curve_with(
    k_values: &[usize],
    n_points: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<ContrastRow>> {
    if n_points < 3 {
        return Err(domain(
            "relative contrast needs at least 3 points",
            n_points as f64,
        ));
    }
    if let Some(&bad) = k_values.iter().find(|&&k| k == 0) {
        return Err(domain("dimension k must be >= 1", bad as f64));
    }
    exec::map_indexed(k_values.len(), exec, |i| {
        let k = k_values[i];
        let mut rng = rng::substream(seed, DOMAIN_CONTRAST, k as u64);
        let mut draw = || -> f64 { StandardNormal.sample(&mut rng) };
        let query: Vec<f64> = (0..k).map(|_| draw()).collect();
        let (mut d_min, mut d_max) = (f64::INFINITY, 0.0f64);
        for _ in 0..n_points {
            let sq: f64 = query
                .iter()
                .map(|q| {
                    let d = q - draw();
                    d * d
                })
                .sum();
            let d = sq.sqrt();
            d_min = d_min.min(d);
            d_max = d_max.max(d);
        }
        if d_min <= 0.0 {
            return Err(domain(
                "nearest distance is zero; contrast undefined",
                d_min,
            ));
        }
        Ok(ContrastRow {
            k,
            seed,
            d_max,
            d_min,
            contrast: (d_max - d_min) / d_min,
        })
    })
    .into_iter()
    .collect()
}
