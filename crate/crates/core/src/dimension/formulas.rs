use crate::model::AffineIfs;
use crate::scalar::Real;

use super::DimensionError;

/// Closed-form affinity dimension of a homogeneous system with `c > b`.
///
/// `log N / -log c` when `Nc < 1`, otherwise `1 + log(Nc) / -log b`; both
/// branches equal 1 at `Nc = 1`.
pub fn homogeneous_affinity<T: Real>(n: usize, c: T, b: T) -> Result<T, DimensionError> {
    if n == 0 {
        return Err(DimensionError::Domain("need at least one map".into()));
    }
    let unit = |t: T| t > T::zero() && t < T::one();
    if !unit(c) || !unit(b) {
        return Err(DimensionError::Domain("c and b must lie in (0,1)".into()));
    }
    if c <= b {
        return Err(DimensionError::Domain(
            "closed form needs c > b; use the y-dominated formula".into(),
        ));
    }
    let n = T::from_usize(n).unwrap();
    let nc = n * c;
    Ok(if nc < T::one() {
        n.ln() / -c.ln()
    } else {
        T::one() + nc.ln() / -b.ln()
    })
}

/// Entropy and the two Lyapunov exponents of a Bernoulli measure.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LyapunovInputs<T> {
    pub p: Vec<T>,
    pub h: T,
    pub chi_h: T,
    pub chi_v: T,
}

impl<T: Real> LyapunovInputs<T> {
    pub fn new(system: &AffineIfs<T>, p: &[T]) -> Result<Self, DimensionError> {
        if p.len() != system.len() {
            return Err(DimensionError::Domain(format!(
                "probability vector has {} entries for {} maps",
                p.len(),
                system.len()
            )));
        }
        if p.iter().any(|&q| q < T::zero() || !q.is_finite()) {
            return Err(DimensionError::Domain("negative probability".into()));
        }
        let total = p.iter().fold(T::zero(), |a, &q| a + q);
        if (total - T::one()).abs() > T::lit(1e-9) {
            return Err(DimensionError::Domain("probabilities do not sum to 1".into()));
        }
        let mut h = T::zero();
        let mut chi_h = T::zero();
        let mut chi_v = T::zero();
        for (&q, m) in p.iter().zip(system.maps()) {
            if q > T::zero() {
                h = h - q * q.ln();
            }
            chi_h = chi_h - q * m.c.ln();
            chi_v = chi_v - q * m.b.ln();
        }
        Ok(Self {
            p: p.to_vec(),
            h,
            chi_h,
            chi_v,
        })
    }

    pub fn uniform(system: &AffineIfs<T>) -> Self {
        let q = T::one() / T::from_usize(system.len()).unwrap();
        Self::new(system, &vec![q; system.len()]).expect("uniform vector is valid")
    }

    /// Three-case Lyapunov dimension for the x-dominated case
    /// (`chi_h <= chi_v`). Not clamped to the ambient dimension.
    pub fn dimension(&self) -> Result<T, DimensionError> {
        let (h, ch, cv) = (self.h, self.chi_h, self.chi_v);
        if ch > cv {
            return Err(DimensionError::Domain(
                "x does not dominate (chi_H > chi_V); swap the roles of the axes".into(),
            ));
        }
        // first matching branch wins at the boundaries, where neighbours agree
        Ok(if h <= ch {
            h / ch
        } else if h <= ch + cv {
            (h + cv - ch) / cv
        } else {
            T::lit(2.0) * h / (ch + cv)
        })
    }
}

pub fn lyapunov_dimension<T: Real>(system: &AffineIfs<T>, p: &[T]) -> Result<T, DimensionError> {
    LyapunovInputs::new(system, p)?.dimension()
}

/// Dimension profile `b -> dim` of the three-map example family for fixed `c`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PhaseProfile<T> {
    pub c: T,
    /// `b* = 1/(3c)`.
    pub breakpoint: T,
    pub points: Vec<(T, T)>,
}

/// `1 + log(3c)/-log b`, the pre-transition branch.
pub fn phase_branch<T: Real>(c: T, b: T) -> T {
    T::one() + (T::lit(3.0) * c).ln() / -b.ln()
}

pub fn phase_transition_profile<T: Real>(c: T, b_grid: &[T]) -> Result<PhaseProfile<T>, DimensionError> {
    let lower = T::one() / T::lit(3.0).sqrt();
    if !(c > lower && c < T::one()) {
        return Err(DimensionError::Domain(format!(
            "c = {} outside (1/sqrt 3, 1)",
            c.to_f64_lossy()
        )));
    }
    let half = c / T::lit(2.0);
    let breakpoint = T::one() / (T::lit(3.0) * c);
    let points = b_grid
        .iter()
        .map(|&b| {
            if !(b > T::zero() && b <= half) {
                return Err(DimensionError::Domain(format!(
                    "b = {} outside (0, c/2]",
                    b.to_f64_lossy()
                )));
            }
            let dim = if b <= breakpoint {
                phase_branch(c, b)
            } else {
                T::lit(2.0)
            };
            Ok((b, dim))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PhaseProfile {
        c,
        breakpoint,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TriangularMap;
    use approx::assert_abs_diff_eq;

    fn homogeneous(n: usize, c: f64, b: f64) -> AffineIfs<f64> {
        let step = if n > 1 { (1.0 - c) / (n - 1) as f64 } else { 0.0 };
        AffineIfs::new(
            (0..n)
                .map(|i| TriangularMap::new(c, b, 0.0, i as f64 * step, 0.0))
                .collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn closed_form_values() {
        assert_abs_diff_eq!(homogeneous_affinity(2, 0.7, 0.3).unwrap(), 1.279468, epsilon = 1e-6);
        assert_abs_diff_eq!(homogeneous_affinity(2, 0.5, 0.25).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(homogeneous_affinity(2, 0.4, 0.1).unwrap(), 0.756471, epsilon = 1e-6);
        // c = 8/9, b = 3/8 sits exactly on the phase breakpoint
        assert_abs_diff_eq!(homogeneous_affinity(3, 8.0 / 9.0, 3.0 / 8.0).unwrap(), 2.0, epsilon = 1e-12);
        assert!(homogeneous_affinity(2, 0.3, 0.3).is_err());
        assert!(homogeneous_affinity(2, 0.3, 0.4).is_err());
    }

    #[test]
    fn continuity_at_nc_one() {
        let below: f64 = homogeneous_affinity(2, 0.5 - 1e-12, 0.25).unwrap();
        let above = homogeneous_affinity(2, 0.5 + 1e-12, 0.25).unwrap();
        assert!((below - above).abs() < 1e-10);
    }

    #[test]
    fn lyapunov_middle_case() {
        let s = homogeneous(2, 0.7, 0.3);
        let inputs = LyapunovInputs::uniform(&s);
        assert_abs_diff_eq!(inputs.h, 0.693147, epsilon = 1e-6);
        assert_abs_diff_eq!(inputs.chi_h, 0.356675, epsilon = 1e-6);
        assert_abs_diff_eq!(inputs.chi_v, 1.203973, epsilon = 1e-6);
        assert_abs_diff_eq!(inputs.dimension().unwrap(), 1.279468, epsilon = 1e-6);
    }

    #[test]
    fn lyapunov_point_mass() {
        let s = homogeneous(2, 0.7, 0.3);
        assert_eq!(lyapunov_dimension(&s, &[1.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn lyapunov_third_case_unclamped() {
        let maps = (0..8)
            .map(|i| TriangularMap::new(0.9, 0.9, 0.0, 0.1 * (i % 2) as f64, 0.1 * (i / 2) as f64 / 3.0))
            .collect();
        let s = AffineIfs::new(maps, None).unwrap();
        let inputs = LyapunovInputs::uniform(&s);
        assert!(inputs.h > inputs.chi_h + inputs.chi_v);
        let expected = 2.0 * 8f64.ln() / (-2.0 * 0.9f64.ln());
        assert_abs_diff_eq!(inputs.dimension().unwrap(), expected, epsilon = 1e-12);
        assert_abs_diff_eq!(expected, 19.74, epsilon = 0.01);
    }

    #[test]
    fn lyapunov_rejects_y_domination() {
        let s = AffineIfs::new(vec![TriangularMap::new(0.2, 0.5, 0.0, 0.0, 0.0)], None).unwrap();
        assert!(lyapunov_dimension(&s, &[1.0]).is_err());
        assert!(lyapunov_dimension(&homogeneous(2, 0.7, 0.3), &[0.7, 0.7]).is_err());
    }

    #[test]
    fn phase_profile_values() {
        let c = 8.0 / 9.0;
        let p = phase_transition_profile(c, &[0.2, 0.375, 0.4, c / 2.0]).unwrap();
        assert_abs_diff_eq!(p.breakpoint, 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(p.points[0].1, 1.609423, epsilon = 1e-6);
        assert_abs_diff_eq!(p.points[1].1, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(phase_branch(c, p.breakpoint), 2.0, epsilon = 1e-12);
        assert_eq!(p.points[2].1, 2.0);
        assert_eq!(p.points[3].1, 2.0);
    }

    #[test]
    fn no_transition_below_sqrt_two_thirds() {
        let c = 0.7;
        let grid: Vec<f64> = (1..=35).map(|k| k as f64 / 100.0).collect();
        let p = phase_transition_profile(c, &grid).unwrap();
        assert!(p.points.iter().all(|&(_, d)| d < 2.0));
        let last = p.points.last().unwrap().1;
        assert_abs_diff_eq!(last, 1.706727, epsilon = 1e-6);
        assert!(p.points.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn phase_profile_domain() {
        assert!(phase_transition_profile(0.5, &[0.1]).is_err());
        assert!(phase_transition_profile(0.8, &[0.41]).is_err());
        assert!(phase_transition_profile(0.8, &[0.0]).is_err());
    }
}
