use crate::model::{words, AffineIfs};
use crate::projective::Interval;
use crate::scalar::Scalar;

use super::lift::{lift_3d, LiftedComposite, LiftedIfs};
use super::polygon::{linf_distance, minkowski_linf_distance};
use super::{guard, SeparationError, SSP_WORD_LIMIT};

/// The open set `(s, 1-s)^2 x (lo, hi)` whose images are tested.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CertificateBox<T> {
    pub shrink: T,
    pub interval: Interval<T>,
}

/// All level-`level` images of the box are pairwise at max-metric distance
/// at least `margin > 0`, and every first-level image lies in the box.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SspCertificate<T> {
    pub level: usize,
    pub margin: T,
    pub region: CertificateBox<T>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LevelAttempt {
    pub level: usize,
    pub images: usize,
    /// A pair of words whose images meet.
    pub overlap: Option<(Vec<usize>, Vec<usize>)>,
}

/// `Unknown` only means the search gave up; it does not refute separation.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub enum SspOutcome<T> {
    Certified {
        certificate: SspCertificate<T>,
        attempts: Vec<LevelAttempt>,
    },
    Unknown {
        region: CertificateBox<T>,
        attempts: Vec<LevelAttempt>,
    },
}

impl<T> SspOutcome<T> {
    pub fn certificate(&self) -> Option<&SspCertificate<T>> {
        match self {
            SspOutcome::Certified { certificate, .. } => Some(certificate),
            SspOutcome::Unknown { .. } => None,
        }
    }

    pub fn attempts(&self) -> &[LevelAttempt] {
        match self {
            SspOutcome::Certified { attempts, .. } | SspOutcome::Unknown { attempts, .. } => attempts,
        }
    }
}

fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

/// Corners of `[s, 1-s]^2` in convex order.
fn square<T: Scalar>(s: &T) -> [(T, T); 4] {
    let lo = s.clone();
    let hi = T::one() - s.clone();
    [
        (lo.clone(), lo.clone()),
        (hi.clone(), lo.clone()),
        (hi.clone(), hi.clone()),
        (lo.clone(), hi),
    ]
}

fn square_is_invariant<T: Scalar>(lifted: &LiftedIfs<T>, s: &T) -> bool {
    let lo = s.clone();
    let hi = T::one() - s.clone();
    lifted.maps().iter().all(|m| {
        square(s).iter().all(|(x, y)| {
            let (a, b) = m.planar.apply(x, y);
            a >= lo && a <= hi && b >= lo && b <= hi
        })
    })
}

/// Largest of `eps, eps/2, eps/4, ...` (64 halvings) whose square is mapped
/// into itself, or zero.
fn invariant_shrink<T: Scalar>(lifted: &LiftedIfs<T>, eps: &T) -> T {
    let mut s = eps.clone();
    for _ in 0..64 {
        if square_is_invariant(lifted, &s) {
            return s;
        }
        s = s / two();
    }
    T::zero()
}

/// The fixed-point hull, widened to unit radius when it is a single point so
/// that the open set is non-empty.
fn third_factor<T: Scalar>(lifted: &LiftedIfs<T>) -> Interval<T> {
    let i = lifted.interval().clone();
    if i.diameter().is_zero() {
        Interval {
            lo: i.lo.clone() - T::one(),
            hi: i.hi + T::one(),
        }
    } else {
        i
    }
}

struct Image<T> {
    corners: [(T, T); 4],
    x_lo: T,
    x_hi: T,
    z_lo: T,
    z_hi: T,
}

fn image<T: Scalar>(comp: &LiftedComposite<T>, region: &CertificateBox<T>) -> Image<T> {
    let corners = square(&region.shrink).map(|(x, y)| comp.planar.apply(&x, &y));
    let c = &comp.planar;
    let x_lo = c.c_total.clone() * region.shrink.clone() + c.u_total.clone();
    let x_hi = c.c_total.clone() * (T::one() - region.shrink.clone()) + c.u_total.clone();
    Image {
        corners,
        x_lo,
        x_hi,
        z_lo: comp.projective.apply(&region.interval.lo),
        z_hi: comp.projective.apply(&region.interval.hi),
    }
}

fn gap<T: Scalar>(a_lo: &T, a_hi: &T, b_lo: &T, b_hi: &T) -> T {
    let left = b_lo.clone() - a_hi.clone();
    let right = a_lo.clone() - b_hi.clone();
    let g = if left > right { left } else { right };
    if g > T::zero() {
        g
    } else {
        T::zero()
    }
}

/// Minimum pairwise margin, or the indices of a touching pair.
fn level_margin<T: Scalar>(images: &[Image<T>]) -> Result<T, (usize, usize)> {
    let mut order: Vec<usize> = (0..images.len()).collect();
    order.sort_by(|&i, &j| images[i].x_lo.partial_cmp(&images[j].x_lo).unwrap());
    let mut best: Option<T> = None;
    for (k, &i) in order.iter().enumerate() {
        let a = &images[i];
        for &j in &order[k + 1..] {
            let b = &images[j];
            let x_gap = b.x_lo.clone() - a.x_hi.clone();
            if matches!(&best, Some(m) if x_gap >= *m) {
                break;
            }
            let z_gap = gap(&a.z_lo, &a.z_hi, &b.z_lo, &b.z_hi);
            if matches!(&best, Some(m) if z_gap >= *m) {
                continue;
            }
            let xy = linf_distance(&a.corners, &b.corners);
            let margin = if xy > z_gap { xy } else { z_gap };
            if margin.is_zero() {
                return Err((i, j));
            }
            if best.as_ref().is_none_or(|m| margin < *m) {
                best = Some(margin);
            }
        }
    }
    // a lone image has no pair to certify
    best.ok_or((0, 0))
}

/// Searches levels `1..=max_level` for pairwise disjoint images of the box
/// `(eps', 1-eps')^2 x I` under the lifted system, `I` the fixed-point hull
/// of the forward Furstenberg system and `eps'` the largest halving of `eps`
/// whose square is mapped into itself.
pub fn ssp_certificate<T: Scalar>(
    system: &AffineIfs<T>,
    max_level: usize,
    eps: &T,
) -> Result<SspOutcome<T>, SeparationError> {
    if !(*eps > T::zero() && *eps < T::one() / two()) {
        return Err(SeparationError::BadShrink);
    }
    if max_level == 0 {
        return Err(SeparationError::ZeroLevel);
    }
    guard(
        "level-n images",
        (system.len() as f64).powi(max_level as i32),
        SSP_WORD_LIMIT,
    )?;
    let lifted = lift_3d(system)?;
    let region = CertificateBox {
        shrink: invariant_shrink(&lifted, eps),
        interval: third_factor(&lifted),
    };
    let mut attempts = Vec::new();
    for level in 1..=max_level {
        let images: Vec<Image<T>> = lifted
            .level_composites(level)
            .iter()
            .map(|c| image(c, &region))
            .collect();
        let n = images.len();
        match level_margin(&images) {
            Ok(margin) => {
                attempts.push(LevelAttempt {
                    level,
                    images: n,
                    overlap: None,
                });
                return Ok(SspOutcome::Certified {
                    certificate: SspCertificate {
                        level,
                        margin,
                        region,
                    },
                    attempts,
                });
            }
            Err((i, j)) => {
                let all: Vec<Vec<usize>> = words(system.len(), level).collect();
                attempts.push(LevelAttempt {
                    level,
                    images: n,
                    overlap: (n > 1).then(|| (all[i].clone(), all[j].clone())),
                });
            }
        }
    }
    Ok(SspOutcome::Unknown { region, attempts })
}

/// Recomputes the margin of a certificate by mapping box corners through
/// the individual maps word by word and comparing every pair through the
/// Minkowski difference. `None` when the box is not mapped into itself or
/// some pair of images touches.
pub fn verify_certificate<T: Scalar>(
    system: &AffineIfs<T>,
    certificate: &SspCertificate<T>,
) -> Result<Option<T>, SeparationError> {
    let lifted = lift_3d(system)?;
    let region = &certificate.region;
    let lo = region.shrink.clone();
    let hi = T::one() - lo.clone();
    let corners = square(&lo);
    let n_maps = lifted.len();

    let contained = lifted.maps().iter().all(|m| {
        let planar = corners.iter().all(|(x, y)| {
            let (a, b) = m.planar.apply(x, y);
            a >= lo && a <= hi && b >= lo && b <= hi
        });
        let z = [&region.interval.lo, &region.interval.hi]
            .iter()
            .all(|z| region.interval.contains(&m.projective.apply(z)));
        planar && z
    });
    if !contained {
        return Ok(None);
    }

    let images: Vec<(Vec<(T, T)>, T, T)> = words(n_maps, certificate.level)
        .map(|w| {
            let poly = corners
                .iter()
                .map(|p| {
                    w.iter().rev().fold(p.clone(), |(x, y), &s| lifted.maps()[s].planar.apply(&x, &y))
                })
                .collect();
            let z = |z0: &T| {
                w.iter()
                    .rev()
                    .fold(z0.clone(), |z, &s| lifted.maps()[s].projective.apply(&z))
            };
            (poly, z(&region.interval.lo), z(&region.interval.hi))
        })
        .collect();

    let mut best: Option<T> = None;
    for (i, a) in images.iter().enumerate() {
        for b in &images[i + 1..] {
            let xy = minkowski_linf_distance(&a.0, &b.0);
            let z = gap(&a.1, &a.2, &b.1, &b.2);
            let m = if xy > z { xy } else { z };
            if m.is_zero() {
                return Ok(None);
            }
            if best.as_ref().is_none_or(|b| m < *b) {
                best = Some(m);
            }
        }
    }
    Ok(best)
}
