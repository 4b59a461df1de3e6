use rayon::prelude::*;

use crate::model::{level_composites, AffineIfs};

use super::{guard, SeparationError, PAIR_LIMIT};

/// Number of ordered word pairs of length `level` with different first
/// symbols whose `L b^level`-fattened cylinders meet.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PairCountReport {
    pub level: usize,
    #[serde(rename = "L")]
    pub l: f64,
    pub count: u64,
    /// `ln(count) / level`, absent when nothing intersects.
    pub rate: Option<f64>,
    /// `ln(N^2 c^2)`, the asymptotic ceiling for the rate.
    pub growth_bound: f64,
}

struct Strip {
    first: usize,
    x0: f64,
    x1: f64,
    y0: f64,
    slope: f64,
    height: f64,
}

impl Strip {
    fn lower(&self, x: f64) -> f64 {
        self.y0 + self.slope * (x - self.x0)
    }
}

/// The two fattened strips meet iff the difference of their lower edges,
/// a linear function on the common x-range, enters `[-(h1 + 2r), h2 + 2r]`.
fn fattened_meet(a: &Strip, b: &Strip, r: f64) -> bool {
    let lo = a.x0.max(b.x0);
    let hi = a.x1.min(b.x1);
    if lo > hi {
        return false;
    }
    let delta = |x: f64| a.lower(x) - b.lower(x);
    let (d_lo, d_hi) = {
        let (p, q) = (delta(lo), delta(hi));
        (p.min(q), p.max(q))
    };
    d_lo <= b.height + 2.0 * r && d_hi >= -(a.height + 2.0 * r)
}

pub fn count_intersecting_pairs(
    system: &AffineIfs<f64>,
    level: usize,
    l: f64,
) -> Result<PairCountReport, SeparationError> {
    let (c, b) = system.homogeneous_diagonal().ok_or(SeparationError::NotHomogeneous)?;
    if level == 0 {
        return Err(SeparationError::ZeroLevel);
    }
    if !(l.is_finite() && l >= 0.0) {
        return Err(SeparationError::BadFattening);
    }
    let n = system.len();
    guard("ordered word pairs", (n as f64).powi(2 * level as i32), PAIR_LIMIT)?;

    let block = n.pow(level as u32 - 1);
    let mut strips: Vec<Strip> = level_composites(system, level)
        .iter()
        .enumerate()
        .map(|(k, comp)| Strip {
            first: k / block,
            x0: comp.u_total,
            x1: comp.u_total + comp.c_total,
            y0: comp.v_total,
            slope: comp.shear_total / comp.c_total,
            height: comp.b_total,
        })
        .collect();
    strips.sort_by(|p, q| p.x0.total_cmp(&q.x0).then(p.first.cmp(&q.first)));
    let r = l * b.powi(level as i32);

    let unordered: u64 = (0..strips.len())
        .into_par_iter()
        .map(|i| {
            let a = &strips[i];
            strips[i + 1..]
                .iter()
                .take_while(|s| s.x0 <= a.x1)
                .filter(|s| s.first != a.first && fattened_meet(a, s, r))
                .count() as u64
        })
        .sum();
    let count = 2 * unordered;
    Ok(PairCountReport {
        level,
        l,
        count,
        rate: (count > 0).then(|| (count as f64).ln() / level as f64),
        growth_bound: ((n * n) as f64 * c * c).ln(),
    })
}
