//! Density curves for plotting.

use serde::{Deserialize, Serialize};

use crate::distribution::DistanceDistribution;
use crate::error::{domain, Result};

/// Dimensions overlaid in the multi-dimension density figure.
pub const OVERLAY_DIMENSIONS: [u32; 11] = [1, 2, 3, 4, 5, 10, 20, 30, 40, 50, 100];

/// Grid step shared by both figures.
pub const FIGURE_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    /// The one-dimensional density over `[0, 6]`.
    Fig2,
    /// Densities for every entry of [`OVERLAY_DIMENSIONS`] over `[0, 18]`.
    Fig4,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig4 => "fig4",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Figure::Fig2 => "Density of the absolute difference between two standard normal values",
            Figure::Fig4 => "Densities of pairwise Gaussian-point distances for several dimensions",
        }
    }

    pub fn dimensions(self) -> &'static [u32] {
        match self {
            Figure::Fig2 => &OVERLAY_DIMENSIONS[..1],
            Figure::Fig4 => &OVERLAY_DIMENSIONS,
        }
    }

    /// `(start, stop)` of the distance axis.
    pub fn range(self) -> (f64, f64) {
        match self {
            Figure::Fig2 => (0.0, 6.0),
            // Covers the k = 100 bulk: mean ≈ 14.1, sd ≈ 1.
            Figure::Fig4 => (0.0, 18.0),
        }
    }

    pub fn series(self) -> Result<Vec<PlotSeries>> {
        let (start, stop) = self.range();
        self.dimensions()
            .iter()
            .map(|&k| PlotSeries::density(k as f64, start, stop, FIGURE_STEP))
            .collect()
    }
}

/// A labelled density curve, sorted by distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSeries {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Grid `start + i·step` for `i = 0..=⌊(stop − start)/step⌉`, computed by
/// index. When `1/step` is a whole number `m` the points are `start + i/m`,
/// so a step of 0.01 yields 0.07 rather than 0.07000000000000001.
pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(domain("grid step must be > 0", step));
    }
    if !(start.is_finite() && stop.is_finite() && start <= stop) {
        return Err(domain("grid needs finite start <= stop", start));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    let per_unit = (1.0 / step).round();
    if per_unit >= 1.0 && (per_unit * step - 1.0).abs() < 1e-12 {
        Ok((0..=count).map(|i| start + i as f64 / per_unit).collect())
    } else {
        Ok((0..=count).map(|i| start + i as f64 * step).collect())
    }
}

impl PlotSeries {
    pub fn density(k: f64, start: f64, stop: f64, step: f64) -> Result<Self> {
        let law = DistanceDistribution::new(k)?;
        let points = grid(start, stop, step)?
            .into_iter()
            .map(|r| Ok((r, law.pdf(r)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            label: format!("k={k}"),
            points,
        })
    }
}
