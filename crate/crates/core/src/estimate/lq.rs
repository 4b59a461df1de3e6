use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EstimateError, PointCloud};

/// Random subintervals tested per diagnostic.
pub const INTERVAL_TRIALS: usize = 1000;
const INTERVAL_SEED: u64 = 0x5eed_1a7e_d0c5_0001;

/// Histogram view of the density of the x-marginal.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DensityDiagnostics {
    pub q: f64,
    pub bins: usize,
    /// `(1/bins) sum phi_j^q` for the histogram density `phi`.
    pub c_q_estimate: f64,
    /// Largest `mu(I) / (C_q^(1/q) |I|^(1 - 1/q))` over the tested intervals.
    pub worst_interval_ratio: f64,
}

pub fn lq_density_diagnostics(cloud: &PointCloud, q: f64, bins: usize) -> Result<DensityDiagnostics, EstimateError> {
    if cloud.is_empty() {
        return Err(EstimateError::EmptyCloud);
    }
    if !(q > 1.0 && q.is_finite()) {
        return Err(EstimateError::Parameter("q must exceed 1".into()));
    }
    if bins < 16 {
        return Err(EstimateError::Parameter("need at least 16 bins".into()));
    }
    let n = cloud.len() as f64;
    let mut counts = vec![0u64; bins];
    for &(x, _) in &cloud.points {
        counts[((x * bins as f64) as usize).min(bins - 1)] += 1;
    }
    let c_q: f64 = counts
        .iter()
        .map(|&k| (k as f64 / n * bins as f64).powf(q))
        .sum::<f64>()
        / bins as f64;

    let mut xs: Vec<f64> = cloud.points.iter().map(|p| p.0).collect();
    xs.sort_unstable_by(f64::total_cmp);
    let mut rng = ChaCha8Rng::seed_from_u64(INTERVAL_SEED ^ cloud.seed);
    let scale = c_q.powf(1.0 / q);
    let mut worst = 0.0f64;
    for _ in 0..INTERVAL_TRIALS {
        let (a, b) = (rng.random::<f64>(), rng.random::<f64>());
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if hi <= lo {
            continue;
        }
        let inside = xs.partition_point(|&x| x <= hi) - xs.partition_point(|&x| x < lo);
        let mass = inside as f64 / n;
        worst = worst.max(mass / (scale * (hi - lo).powf(1.0 - 1.0 / q)));
    }
    Ok(DensityDiagnostics {
        q,
        bins,
        c_q_estimate: c_q,
        worst_interval_ratio: worst,
    })
}

/// Diagnostics at each bin count, to see whether `C_q` settles or grows.
pub fn lq_refinement(cloud: &PointCloud, q: f64, bins: &[usize]) -> Result<Vec<DensityDiagnostics>, EstimateError> {
    bins.iter().map(|&b| lq_density_diagnostics(cloud, q, b)).collect()
}
