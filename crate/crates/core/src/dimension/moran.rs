use crate::model::{AffineIfs, Axis};
use crate::scalar::Real;

use super::DimensionError;

/// Upper end of the initial exponent bracket; doubled while too small.
const INITIAL_BRACKET: f64 = 4.0;

/// Root of a strictly decreasing `f` with `f(lo) >= 0`, bisected down to
/// adjacent floating-point values. The bracket's upper end is grown by
/// doubling until `f(hi) < 0`.
pub(crate) fn bisect_decreasing<T: Real, F: Fn(T) -> T>(f: F, lo: T) -> T {
    let mut lo = lo;
    let mut hi = lo + T::lit(INITIAL_BRACKET);
    while f(hi) >= T::zero() {
        lo = hi;
        hi = hi + hi;
        assert!(hi.is_finite(), "no sign change for a decreasing Moran map");
    }
    if f(lo) <= T::zero() {
        return lo;
    }
    for _ in 0..400 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let value = f(mid);
        if value == T::zero() {
            return mid;
        }
        if value > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // endpoint with the smaller residual
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Solution `s` of `sum r_i^s = 1`.
pub fn similarity_dimension<T: Real>(ratios: &[T]) -> Result<T, DimensionError> {
    if ratios.is_empty() {
        return Err(DimensionError::Domain("similarity dimension of an empty list".into()));
    }
    if let Some(r) = ratios.iter().find(|r| !(**r > T::zero() && **r < T::one())) {
        return Err(DimensionError::Domain(format!(
            "contraction ratio {} outside (0,1)",
            r.to_f64_lossy()
        )));
    }
    let f = |s: T| ratios.iter().fold(T::zero(), |acc, &r| acc + r.powf(s)) - T::one();
    Ok(bisect_decreasing(f, T::zero()))
}

/// Similarity dimensions of both coordinate projections, their clamped
/// values and the two Moran exponents whose maximum is the affinity dimension.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AffinityResult<T> {
    pub s_x: T,
    pub s_y: T,
    pub s_hat_x: T,
    pub s_hat_y: T,
    pub d_x: T,
    pub d_y: T,
    pub dim_aff: T,
    pub dominant: Axis,
}

/// Tolerance for declaring `d_x = d_y`.
pub const TIE_TOLERANCE: f64 = 1e-12;

fn mixed_moran<T: Real>(primary: &[T], secondary: &[T], s_hat: T) -> T {
    // sum primary^s_hat * secondary^(d - s_hat) decreases in d because every
    // secondary ratio is below one.
    let f = |d: T| {
        primary
            .iter()
            .zip(secondary)
            .fold(T::zero(), |acc, (&p, &q)| acc + p.powf(s_hat) * q.powf(d - s_hat))
            - T::one()
    };
    bisect_decreasing(f, s_hat)
}

pub fn affinity_dimension<T: Real>(system: &AffineIfs<T>) -> AffinityResult<T> {
    let cs: Vec<T> = system.maps().iter().map(|m| m.c).collect();
    let bs: Vec<T> = system.maps().iter().map(|m| m.b).collect();
    let s_x = similarity_dimension(&cs).expect("validated ratios");
    let s_y = similarity_dimension(&bs).expect("validated ratios");
    let s_hat_x = s_x.min(T::one());
    let s_hat_y = s_y.min(T::one());
    let d_x = mixed_moran(&cs, &bs, s_hat_x);
    let d_y = mixed_moran(&bs, &cs, s_hat_y);
    let dominant = if (d_x - d_y).abs() <= T::lit(TIE_TOLERANCE) {
        Axis::Tie
    } else if d_x > d_y {
        Axis::X
    } else {
        Axis::Y
    };
    AffinityResult {
        s_x,
        s_y,
        s_hat_x,
        s_hat_y,
        d_x,
        d_y,
        dim_aff: d_x.max(d_y),
        dominant,
    }
}

/// Left side minus one of the x-Moran equation, for residual checks.
pub fn moran_residual_x<T: Real>(system: &AffineIfs<T>, s_hat: T, d: T) -> T {
    system
        .maps()
        .iter()
        .fold(T::zero(), |acc, m| acc + m.c.powf(s_hat) * m.b.powf(d - s_hat))
        - T::one()
}

/// Left side minus one of the y-Moran equation.
pub fn moran_residual_y<T: Real>(system: &AffineIfs<T>, s_hat: T, d: T) -> T {
    system
        .maps()
        .iter()
        .fold(T::zero(), |acc, m| acc + m.b.powf(s_hat) * m.c.powf(d - s_hat))
        - T::one()
}
