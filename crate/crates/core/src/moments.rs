//! Closed-form moments of the distance law.
//!
//! With `m1 = E[R] = 2Γ((k+1)/2)/Γ(k/2)` the higher raw moments collapse
//! through the gamma recurrence:
//!
//! ```text
//! m2 = 2k        m3 = (2k + 2) m1        m4 = 4k(k + 2)
//! ```
//!
//! Substituting these into the binomial expansions of the central moments
//! leaves everything as a function of the variance `μ2 = 2k − m1²`:
//!
//! ```text
//! μ3 = 2 m1 (1 − μ2)
//! μ4 = 8k (μ2 − 1) + 8 μ2 − 3 μ2²
//! ```
//!
//! `μ2` tends to 1 from below, so `1 − μ2` is the quantity that must be
//! carried with full relative precision. For `k > 64` it comes from its
//! asymptotic series in `2/k`, which avoids subtracting two numbers of
//! size `2k`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::{gamma_ratio_unchecked, half_ratio};

/// Above this dimension the variance deficit `1 − μ2` is evaluated from its
/// asymptotic series.
pub const VARIANCE_SERIES_THRESHOLD: f64 = 64.0;

/// Coefficients of `1 − μ2` in powers of `t = 2/k`, starting at `t¹`.
const VARIANCE_DEFICIT_SERIES: [f64; 10] = [
    1.0 / 8.0,
    1.0 / 32.0,
    -5.0 / 512.0,
    -23.0 / 2048.0,
    53.0 / 16384.0,
    593.0 / 65536.0,
    -5165.0 / 2_097_152.0,
    -110_123.0 / 8_388_608.0,
    231_743.0 / 67_108_864.0,
    8_113_223.0 / 268_435_456.0,
];

/// Raw, central and standardized moments of the distance law for one `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    pub k: f64,
    /// `E[Rⁿ]` for n = 1..=4.
    pub raw: [f64; 4],
    /// `E[(R − m1)ⁿ]` for n = 2..=4.
    pub central: [f64; 3],
    pub skewness: f64,
    pub kurtosis: f64,
}

impl MomentSet {
    pub fn mean(&self) -> f64 {
        self.raw[0]
    }

    pub fn variance(&self) -> f64 {
        self.central[0]
    }
}

pub(crate) fn check_dimension(k: f64) -> Result<()> {
    if k.is_finite() && k >= 1.0 {
        Ok(())
    } else {
        Err(domain("dimension k must be finite and >= 1", k))
    }
}

pub(crate) fn mean_unchecked(k: f64) -> f64 {
    2.0 * half_ratio(0.5 * k)
}

/// `(μ2, 1 − μ2)`, each to full relative precision.
pub(crate) fn variance_and_deficit(k: f64) -> (f64, f64) {
    if k > VARIANCE_SERIES_THRESHOLD {
        let t = 2.0 / k;
        let mut acc = 0.0;
        for &c in VARIANCE_DEFICIT_SERIES.iter().rev() {
            acc = acc * t + c;
        }
        let deficit = acc * t;
        (1.0 - deficit, deficit)
    } else {
        let m1 = mean_unchecked(k);
        let var = 2.0 * k - m1 * m1;
        (var, 1.0 - var)
    }
}

/// `n`-th raw moment `2ⁿ Γ((k+n)/2) / Γ(k/2)`.
pub fn raw_moment(k: f64, n: u32) -> Result<f64> {
    check_dimension(k)?;
    if n == 0 {
        return Err(domain("raw moment order must be >= 1", 0.0));
    }
    let ratio = gamma_ratio_unchecked(0.5 * (k + n as f64), 0.5 * k);
    Ok(2f64.powi(n as i32) * ratio)
}

fn central_unchecked(k: f64, n: u32) -> f64 {
    let (var, deficit) = variance_and_deficit(k);
    match n {
        2 => var,
        3 => 2.0 * mean_unchecked(k) * deficit,
        4 => -8.0 * k * deficit + 8.0 * var - 3.0 * var * var,
        _ => unreachable!("order checked by caller"),
    }
}

/// Central moment of order 2, 3 or 4 about the mean.
pub fn central_moment(k: f64, n: u32) -> Result<f64> {
    check_dimension(k)?;
    if !(2..=4).contains(&n) {
        return Err(domain("central moment order must be 2, 3 or 4", n as f64));
    }
    Ok(central_unchecked(k, n))
}

/// Skewness `γ1 = μ3 / μ2^(3/2)`.
pub fn skewness(k: f64) -> Result<f64> {
    check_dimension(k)?;
    Ok(central_unchecked(k, 3) / central_unchecked(k, 2).powf(1.5))
}

/// Kurtosis `β2 = μ4 / μ2²` (3 for a normal law).
pub fn kurtosis(k: f64) -> Result<f64> {
    check_dimension(k)?;
    let var = central_unchecked(k, 2);
    Ok(central_unchecked(k, 4) / (var * var))
}

pub fn moment_set(k: f64) -> Result<MomentSet> {
    check_dimension(k)?;
    let raw = [1, 2, 3, 4].map(|n| raw_moment(k, n).expect("dimension already checked"));
    let central = [2, 3, 4].map(|n| central_unchecked(k, n));
    Ok(MomentSet {
        k,
        raw,
        central,
        skewness: central[1] / central[0].powf(1.5),
        kurtosis: central[2] / (central[0] * central[0]),
    })
}
