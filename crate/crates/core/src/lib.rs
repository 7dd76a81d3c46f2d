//! Distribution of Euclidean distances between independent random points
//! whose coordinates are i.i.d. standard normal.
//!
//! For two such points in `k` dimensions the distance `R` has
//!
//! ```text
//! f(R; k) = 2^(1-k) e^(-R²/4) R^(k-1) / Γ(k/2)
//! F(R; k) = P(k/2, R²/4)
//! E[Rⁿ]   = 2ⁿ Γ((k+n)/2) / Γ(k/2)
//! ```
//!
//! where `P` is the regularized lower incomplete gamma function. The crate
//! provides the closed forms ([`distribution`], [`moments`]), the special
//! functions behind them ([`specfun`]), a brute-force simulation oracle and
//! goodness-of-fit machinery ([`montecarlo`]), and tools for applying the
//! law to real datasets ([`diagnostics`]).
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default). Every stochastic routine takes an explicit seed and
//! produces identical output regardless of thread count or feature set.

pub mod diagnostics;
pub mod distribution;
mod error;
pub mod exec;
pub mod figures;
pub mod moments;
pub mod montecarlo;
mod rng;
pub mod specfun;

pub use diagnostics::{
    distance_pvalue, effective_dimension, fit_report, fit_report_with, pairwise_distances,
    pairwise_distances_with, relative_contrast_curve, relative_contrast_curve_with,
    simulate_gaussian_dataset, standardize, ContrastRow, DatasetMatrix, FitReport, Tail,
};
pub use distribution::{pdf_1d, DistanceDistribution};
pub use error::{Error, Result};
pub use exec::Execution;
pub use figures::{Figure, PlotSeries};
pub use moments::{central_moment, kurtosis, moment_set, raw_moment, skewness, MomentSet};
pub use montecarlo::{
    ks_against, ks_one_sample, ks_one_sample_with, ks_standardized_normal, ks_two_sample,
    sample_moments, simulate_pairs, simulate_pairs_with, standard_normal_cdf, EmpiricalSample,
    KsResult, SampleSource,
};
pub use specfun::{gamma_ratio, log_gamma, reg_gamma_p, reg_gamma_q, SpecFunConfig};
