use rayon::prelude::*;

use super::{EstimateError, PointCloud};

/// Fewest points the slice estimator accepts over all its strips.
pub const MIN_SLICE_POINTS: usize = 1000;
const MIN_SCALES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Box,
    Correlation,
    Slice,
}

/// Least-squares fit over a window of scales.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DimensionReport {
    pub method: Method,
    pub estimate: f64,
    pub slope_stderr: f64,
    pub r_squared: f64,
    /// Strictly decreasing.
    pub scales: Vec<f64>,
    /// Occupied cells (box, slice) or `sum mu(B)^2` (correlation).
    pub counts_or_sums: Vec<f64>,
}

impl DimensionReport {
    /// `(scale, statistic, ln scale, ln statistic)` per scale.
    pub fn rows(&self) -> Vec<(f64, f64, f64, f64)> {
        self.scales
            .iter()
            .zip(&self.counts_or_sums)
            .map(|(&r, &s)| (r, s, r.ln(), s.ln()))
            .collect()
    }
}

/// `2^-k` for `k` in `k_min..=k_max`.
pub fn dyadic_scales(k_min: u32, k_max: u32) -> Vec<f64> {
    (k_min..=k_max).map(|k| 0.5f64.powi(k as i32)).collect()
}

/// Exponents `k` with `scale = 2^-k`, sorted so scales decrease.
fn exponents(scales: &[f64]) -> Result<Vec<u32>, EstimateError> {
    if scales.len() < MIN_SCALES {
        return Err(EstimateError::TooFewScales {
            need: MIN_SCALES,
            got: scales.len(),
        });
    }
    let mut ks = scales
        .iter()
        .map(|&r| {
            let k = -r.log2();
            let rounded = k.round();
            if !(r > 0.0 && r <= 1.0) || (k - rounded).abs() > 1e-9 || rounded > 31.0 {
                Err(EstimateError::NotDyadic(r.to_string()))
            } else {
                Ok(rounded as u32)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    ks.sort_unstable();
    if ks.windows(2).any(|w| w[0] == w[1]) {
        return Err(EstimateError::RepeatedScale);
    }
    Ok(ks)
}

/// Half-open cell index `floor(t 2^k)`, the closing edge folded into the last cell.
fn cell(t: f64, k: u32) -> u64 {
    let n = 1u64 << k;
    ((t * n as f64) as u64).min(n - 1)
}

fn sorted_keys(points: &[(f64, f64)], k: u32) -> Vec<u64> {
    let mut keys: Vec<u64> = points
        .iter()
        .map(|&(x, y)| (cell(x, k) << 32) | cell(y, k))
        .collect();
    keys.sort_unstable();
    keys
}

/// Occupancy counts of the non-empty cells, in key order.
fn runs(sorted: &[u64]) -> Vec<u64> {
    sorted
        .chunk_by(|a, b| a == b)
        .map(|c| c.len() as u64)
        .collect()
}

/// Slope, its standard error and r^2 of `y` on `x`.
fn fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let sse: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - my - slope * (a - mx)).powi(2))
        .sum::<f64>()
        .max(0.0);
    let stderr = if x.len() > 2 {
        (sse / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    let r2 = if syy > 0.0 { 1.0 - sse / syy } else { 1.0 };
    (slope, stderr, r2)
}

fn report(method: Method, ks: &[u32], stats: Vec<f64>, sign: f64) -> Result<DimensionReport, EstimateError> {
    if stats.iter().any(|&s| s <= 0.0) {
        return Err(EstimateError::Degenerate("zero statistic at some scale"));
    }
    let scales: Vec<f64> = ks.iter().map(|&k| 0.5f64.powi(k as i32)).collect();
    let x: Vec<f64> = scales.iter().map(|r| sign * r.ln()).collect();
    let y: Vec<f64> = stats.iter().map(|s| s.ln()).collect();
    let (estimate, slope_stderr, r_squared) = fit(&x, &y);
    Ok(DimensionReport {
        method,
        // an exactly flat statistic fits slope zero; avoid printing -0
        estimate: estimate + 0.0,
        slope_stderr,
        r_squared,
        scales,
        counts_or_sums: stats,
    })
}

/// Slope of `ln N(r)` against `ln(1/r)`, `N(r)` the number of occupied
/// dyadic cells.
pub fn box_dimension(cloud: &PointCloud, scales: &[f64]) -> Result<DimensionReport, EstimateError> {
    if cloud.is_empty() {
        return Err(EstimateError::EmptyCloud);
    }
    let ks = exponents(scales)?;
    let counts: Vec<f64> = ks
        .par_iter()
        .map(|&k| runs(&sorted_keys(&cloud.points, k)).len() as f64)
        .collect();
    report(Method::Box, &ks, counts, -1.0)
}

/// Slope of `ln sum mu(B)^2` against `ln r` over dyadic cells: `tau(2)`.
pub fn correlation_dimension(cloud: &PointCloud, scales: &[f64]) -> Result<DimensionReport, EstimateError> {
    if cloud.is_empty() {
        return Err(EstimateError::EmptyCloud);
    }
    let ks = exponents(scales)?;
    let n = cloud.len() as f64;
    let sums: Vec<f64> = ks
        .par_iter()
        .map(|&k| {
            runs(&sorted_keys(&cloud.points, k))
                .iter()
                .map(|&m| (m as f64 / n).powi(2))
                .sum()
        })
        .collect();
    report(Method::Correlation, &ks, sums, 1.0)
}

/// Strips averaged by the slice estimator, centred at the x-quantiles
/// `(j + 1/2) / SLICE_STRIPS`.
pub const SLICE_STRIPS: usize = 64;
/// Strips holding fewer points are skipped.
pub const MIN_STRIP_POINTS: usize = 100;

/// One-dimensional box counting of the heights of the points in vertical
/// strips of width `strip_width`. The statistic at each scale is the
/// geometric mean of the occupied-cell counts over the usable strips, so a
/// single strip whose fibre spans a handful of cells does not decide the fit.
pub fn slice_dimension(
    cloud: &PointCloud,
    strip_width: f64,
    scales: &[f64],
) -> Result<DimensionReport, EstimateError> {
    if cloud.is_empty() {
        return Err(EstimateError::EmptyCloud);
    }
    let ks = exponents(scales)?;
    let finest = 0.5f64.powi(*ks.last().unwrap() as i32);
    if !(strip_width >= finest) {
        return Err(EstimateError::StripTooNarrow);
    }
    let mut pts = cloud.points.clone();
    pts.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let half = strip_width / 2.0;
    let strips: Vec<&[(f64, f64)]> = (0..SLICE_STRIPS)
        .map(|j| {
            let centre = pts[(pts.len() * (2 * j + 1)) / (2 * SLICE_STRIPS)].0;
            let lo = pts.partition_point(|p| p.0 < centre - half);
            let hi = pts.partition_point(|p| p.0 <= centre + half);
            &pts[lo..hi]
        })
        .filter(|s| s.len() >= MIN_STRIP_POINTS)
        .collect();
    let total: usize = strips.iter().map(|s| s.len()).sum();
    if strips.len() < SLICE_STRIPS / 2 || total < MIN_SLICE_POINTS {
        return Err(EstimateError::StripTooSparse {
            got: total,
            need: MIN_SLICE_POINTS,
        });
    }
    let log_counts: Vec<Vec<f64>> = strips
        .par_iter()
        .map(|strip| {
            ks.iter()
                .map(|&k| {
                    let mut cells: Vec<u64> = strip.iter().map(|&(_, y)| cell(y, k)).collect();
                    cells.sort_unstable();
                    cells.dedup();
                    (cells.len() as f64).ln()
                })
                .collect()
        })
        .collect();
    let m = log_counts.len() as f64;
    let stats: Vec<f64> = (0..ks.len())
        .map(|i| (log_counts.iter().map(|c| c[i]).sum::<f64>() / m).exp())
        .collect();
    report(Method::Slice, &ks, stats, -1.0)
}
