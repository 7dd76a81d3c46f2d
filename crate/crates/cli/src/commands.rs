use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use gaussdist::figures::{grid, FIGURE_STEP};
use gaussdist::{
    fit_report, ks_one_sample, moment_set, relative_contrast_curve, simulate_pairs, standardize,
    DistanceDistribution, Figure,
};
use serde::{Deserialize, Serialize};

use crate::dataset::read_dataset;
use crate::error::{CliError, CliResult, EXIT_OK, EXIT_STATISTICAL_FAIL};
use crate::format::num;
use crate::sample_file::{read_sample, write_sample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Pdf,
    Cdf,
    Survival,
    Quantile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// `2√G` with `G ~ Gamma(k/2, 1)`.
    Analytic,
    /// Distances between simulated Gaussian point pairs.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    Fig2,
    Fig4,
}

impl From<FigureArg> for Figure {
    fn from(f: FigureArg) -> Self {
        match f {
            FigureArg::Fig2 => Figure::Fig2,
            FigureArg::Fig4 => Figure::Fig4,
        }
    }
}

/// Opens `path` for writing, or stdout when absent.
pub fn open_output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    match path {
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| CliError::input(format!("cannot create {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn open_input(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::input(format!("cannot open {}: {e}", path.display())))
}

/// Parses `start:stop:step`.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::usage(format!("grid '{spec}' must be start:stop:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<CliResult<_>>()?;
    grid(v[0], v[1], v[2]).map_err(|e| CliError::usage(format!("grid '{spec}': {e}")))
}

pub fn eval(out: &mut dyn Write, which: Which, k: f64, points: &[f64]) -> CliResult<u8> {
    let law = DistanceDistribution::new(k)?;
    let (x_name, y_name) = match which {
        Which::Pdf => ("r", "pdf"),
        Which::Cdf => ("r", "cdf"),
        Which::Survival => ("r", "survival"),
        Which::Quantile => ("p", "quantile"),
    };
    writeln!(out, "{x_name},{y_name}")?;
    for &x in points {
        let y = match which {
            Which::Pdf => law.pdf(x)?,
            Which::Cdf => law.cdf(x)?,
            Which::Survival => law.survival(x)?,
            Which::Quantile => law.quantile(x)?,
        };
        writeln!(out, "{},{}", num(x), num(y))?;
    }
    Ok(EXIT_OK)
}

pub fn moments(out: &mut dyn Write, ks: &[f64]) -> CliResult<u8> {
    if ks.is_empty() {
        return Err(CliError::usage("at least one dimension is required"));
    }
    let sets = ks
        .iter()
        .map(|&k| moment_set(k))
        .collect::<Result<Vec<_>, _>>()?;
    writeln!(out, "k,m1,m2,m3,m4,mu2,mu3,mu4,skewness,kurtosis")?;
    for s in sets {
        let cells: Vec<String> = [s.k]
            .iter()
            .chain(&s.raw)
            .chain(&s.central)
            .chain([&s.skewness, &s.kurtosis])
            .map(|&v| num(v))
            .collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(EXIT_OK)
}

pub fn sample(out: &mut dyn Write, k: f64, n: usize, seed: u64, method: Method) -> CliResult<u8> {
    if n == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    let (s, name) = match method {
        Method::Analytic => (DistanceDistribution::new(k)?.sample(n, seed)?, "analytic"),
        Method::Direct => (simulate_pairs(k, n, seed)?, "direct"),
    };
    write_sample(out, &s, name)?;
    Ok(EXIT_OK)
}

/// Result of testing a sample file against the law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleTestReport {
    pub k: f64,
    pub n: usize,
    pub ks_statistic: f64,
    pub ks_critical_01: f64,
    pub ks_passed: bool,
    pub mean_observed: f64,
    pub mean_expected: f64,
    /// Divisor `n − 1`; absent for a single value.
    pub variance_observed: Option<f64>,
    pub variance_expected: f64,
}

pub fn test(out: &mut dyn Write, path: &Path, k: f64, json: bool) -> CliResult<u8> {
    let law = DistanceDistribution::new(k)?;
    let sample = read_sample(open_input(path)?, k)?;
    let ks = ks_one_sample(&sample, &law)?;
    let n = sample.len();
    let mean = sample.mean();
    let variance = (n > 1).then(|| {
        sample
            .values()
            .iter()
            .map(|v| (v - mean).powi(2))
            .sum::<f64>()
            / (n - 1) as f64
    });
    let report = SampleTestReport {
        k,
        n,
        ks_statistic: ks.statistic,
        ks_critical_01: ks.critical_value_01,
        ks_passed: ks.passed,
        mean_observed: mean,
        mean_expected: law.mean(),
        variance_observed: variance,
        variance_expected: law.variance(),
    };
    if json {
        serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
        writeln!(out)?;
    } else {
        let rows = [
            ("k", num(report.k)),
            ("n", report.n.to_string()),
            ("ks statistic", num(report.ks_statistic)),
            ("ks critical (0.01)", num(report.ks_critical_01)),
            (
                "result",
                if report.ks_passed { "pass" } else { "FAIL" }.to_string(),
            ),
            ("mean observed", num(report.mean_observed)),
            ("mean expected", num(report.mean_expected)),
            (
                "variance observed",
                report.variance_observed.map_or("n/a".into(), num),
            ),
            ("variance expected", num(report.variance_expected)),
        ];
        for (name, value) in rows {
            writeln!(out, "{name:<20}{value}")?;
        }
    }
    Ok(if report.ks_passed {
        EXIT_OK
    } else {
        EXIT_STATISTICAL_FAIL
    })
}

pub fn diagnose(
    out: &mut dyn Write,
    path: &Path,
    delimiter: u8,
    standardize_data: bool,
) -> CliResult<u8> {
    let data = read_dataset(open_input(path)?, delimiter)?;
    let data = if standardize_data {
        standardize(&data)?
    } else {
        data.assume_standardized().map_err(|_| {
            CliError::input(
                "data is not standardized (column means 0, sds 1); drop --no-standardize to standardize it",
            )
        })?
    };
    let report = fit_report(&data)?;
    serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(EXIT_OK)
}

/// Metadata written next to the plot data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotMetadata {
    pub figure: String,
    pub title: String,
    pub data_file: String,
    pub x_column: String,
    pub series: Vec<String>,
    pub dimensions: Vec<u32>,
    pub r_start: f64,
    pub r_stop: f64,
    pub step: f64,
    pub points: usize,
    pub generator: String,
}

pub fn sidecar_path(output: &Path) -> PathBuf {
    output.with_extension("json")
}

pub fn plotdata(figure: Figure, output: &Path) -> CliResult<u8> {
    let sidecar = sidecar_path(output);
    if sidecar == output {
        return Err(CliError::usage(
            "plot data output must not have a .json extension",
        ));
    }
    let series = figure.series()?;
    let mut out = open_output(Some(output))?;
    let labels: Vec<String> = series.iter().map(|s| s.label.clone()).collect();
    writeln!(out, "r,{}", labels.join(","))?;
    let rows = series[0].points.len();
    for i in 0..rows {
        let mut line = num(series[0].points[i].0);
        for s in &series {
            line.push(',');
            line.push_str(&num(s.points[i].1));
        }
        writeln!(out, "{line}")?;
    }
    out.flush()?;

    let (r_start, r_stop) = figure.range();
    let meta = PlotMetadata {
        figure: figure.name().to_string(),
        title: figure.title().to_string(),
        data_file: output
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default(),
        x_column: "r".to_string(),
        series: labels,
        dimensions: figure.dimensions().to_vec(),
        r_start,
        r_stop,
        step: FIGURE_STEP,
        points: rows,
        generator: format!("gaussdist {}", env!("CARGO_PKG_VERSION")),
    };
    let mut side = open_output(Some(&sidecar))?;
    serde_json::to_writer_pretty(&mut side, &meta).map_err(io::Error::from)?;
    writeln!(side)?;
    side.flush()?;
    Ok(EXIT_OK)
}

pub fn contrast(
    out: &mut dyn Write,
    ks: &[usize],
    n_points: usize,
    seeds: u64,
    first_seed: u64,
) -> CliResult<u8> {
    if ks.is_empty() {
        return Err(CliError::usage("at least one dimension is required"));
    }
    if n_points < 3 {
        return Err(CliError::usage("--n-points must be at least 3"));
    }
    if seeds == 0 {
        return Err(CliError::usage("--seeds must be at least 1"));
    }
    let mut sums = vec![0.0; ks.len()];
    writeln!(out, "kind,k,seed,d_max,d_min,contrast")?;
    for seed in first_seed..first_seed + seeds {
        for (i, row) in relative_contrast_curve(ks, n_points, seed)?
            .iter()
            .enumerate()
        {
            sums[i] += row.contrast;
            writeln!(
                out,
                "seed,{},{},{},{},{}",
                row.k,
                row.seed,
                num(row.d_max),
                num(row.d_min),
                num(row.contrast)
            )?;
        }
    }
    for (k, sum) in ks.iter().zip(sums) {
        writeln!(out, "mean,{k},,,,{}", num(sum / seeds as f64))?;
    }
    Ok(EXIT_OK)
}
