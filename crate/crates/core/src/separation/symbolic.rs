use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::model::{HighPrecision, Number, SystemDocument};
use crate::projective::ScalarIfsKind;
use crate::scalar::Rational;

use super::{delta_guard, SeparationError};

/// An offset of the homogeneous system: exact, or the single irrational one.
#[derive(Debug, Clone, PartialEq)]
pub enum Offset {
    Exact(Rational),
    Symbolic(HighPrecision),
}

/// `(p1 / scale + tau * p2) / q^level`: the difference of two level-n points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationTerm {
    pub p1: BigInt,
    pub p2: BigInt,
    pub level: usize,
    pub q: BigInt,
    /// Common denominator of the exact offsets; 1 for integer offsets.
    pub scale: BigInt,
}

impl fmt::Display for SeparationTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale.is_one() {
            write!(f, "({} + tau*{}) / {}^{}", self.p1, self.p2, self.q, self.level)
        } else {
            write!(
                f,
                "({}/{} + tau*{}) / {}^{}",
                self.p1, self.scale, self.p2, self.q, self.level
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicDeltaReport {
    pub level: usize,
    pub words: usize,
    pub q: BigInt,
    pub scale: BigInt,
    /// Label of the symbolic offset.
    pub tau: String,
    /// Pairs of distinct words landing on the same point (`p1 = p2 = 0`).
    pub coincident_pairs: u64,
    /// Pairs with `p2 = 0` and `p1 != 0`.
    pub rational_pairs: u64,
    /// Exact lower bound `1/(scale q^n)` on every gap with `p2 = 0, p1 != 0`;
    /// present when such pairs exist.
    pub certified_floor: Option<Rational>,
    /// Exact smallest gap among those pairs.
    pub rational_min_gap: Option<Rational>,
    /// Smallest gap among pairs with `p2 != 0`, evaluated with the rational
    /// approximation of `tau`. Evidence only.
    pub symbolic_min_gap: Option<f64>,
    /// Bound on the evaluation error of `symbolic_min_gap`.
    pub symbolic_error_bound: Option<f64>,
    pub witness: Option<SeparationTerm>,
    /// Some pair with `p2 != 0` cannot be told apart from zero: `tau` may be
    /// rational.
    pub possible_rationality: bool,
    /// `|p1|, |p2| <= (2q)^n` over all pairs.
    pub coefficient_bound_holds: bool,
    pub min_gap_float: f64,
}

fn pairs(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

fn spread(values: impl Iterator<Item = BigInt>) -> BigInt {
    let (lo, hi) = values.fold((None::<BigInt>, None::<BigInt>), |(lo, hi), v| {
        let lo = Some(lo.map_or(v.clone(), |l| l.min(v.clone())));
        let hi = Some(hi.map_or(v.clone(), |h| h.max(v)));
        (lo, hi)
    });
    match (lo, hi) {
        (Some(l), Some(h)) => h - l,
        _ => BigInt::zero(),
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Splits every level-n difference of the homogeneous system
/// `x -> (p/q) x + offset_i` into a rational part and a multiple of the one
/// symbolic offset `tau`. Gaps with no `tau` component are integers over
/// `scale q^n` and hence certified; the others are only evaluated.
pub fn delta_n_symbolic(
    ratio: &Rational,
    offsets: &[Offset],
    n: usize,
) -> Result<SymbolicDeltaReport, SeparationError> {
    if n == 0 {
        return Err(SeparationError::ZeroLevel);
    }
    if offsets.is_empty() {
        return Err(SeparationError::Empty);
    }
    if !(ratio > &Rational::zero() && ratio < &Rational::one()) {
        return Err(SeparationError::BadRatio);
    }
    let symbolic: Vec<&HighPrecision> = offsets
        .iter()
        .filter_map(|o| match o {
            Offset::Symbolic(h) => Some(h),
            Offset::Exact(_) => None,
        })
        .collect();
    if symbolic.len() != 1 {
        return Err(SeparationError::SymbolicCount(symbolic.len()));
    }
    let tau = symbolic[0];
    delta_guard(offsets.len(), n)?;

    let p = ratio.numer().clone();
    let q = ratio.denom().clone();
    let scale = offsets.iter().fold(BigInt::one(), |acc, o| match o {
        Offset::Exact(r) => acc.lcm(r.denom()),
        Offset::Symbolic(_) => acc,
    });
    // integer coefficients (a_i, e_i) of each offset: a_i / scale + tau e_i
    let coeffs: Vec<(BigInt, BigInt)> = offsets
        .iter()
        .map(|o| match o {
            Offset::Exact(r) => (r.numer() * (&scale / r.denom()), BigInt::zero()),
            Offset::Symbolic(_) => (BigInt::zero(), BigInt::one()),
        })
        .collect();

    // P(w) = sum_k coeff(w_k) p^(k-1) q^(n-k+1), built by prefixing symbols
    let mut level: Vec<(BigInt, BigInt)> = vec![(BigInt::zero(), BigInt::zero())];
    let mut q_pow = BigInt::one();
    for _ in 0..n {
        q_pow *= &q;
        let scaled: Vec<(BigInt, BigInt)> = level.iter().map(|(a, e)| (&p * a, &p * e)).collect();
        level = coeffs
            .iter()
            .flat_map(|(a, e)| {
                let lead = (a * &q_pow, e * &q_pow);
                scaled
                    .iter()
                    .map(move |(sa, se)| (&lead.0 + sa, &lead.1 + se))
            })
            .collect();
    }
    let words = level.len();
    let denominator = &scale * &q_pow;

    let bound = num_traits::pow(BigInt::from(2) * &q, n);
    let coefficient_bound_holds = spread(level.iter().map(|t| t.0.clone())) <= bound
        && spread(level.iter().map(|t| t.1.clone())) <= bound;

    // channel p2 = 0: sort by (P2, P1) and look inside runs of equal P2
    let mut by_group = level.clone();
    by_group.sort_unstable_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.cmp(&y.0)));
    let mut coincident_pairs = 0u64;
    let mut group_pairs = 0u64;
    let mut rational_min: Option<BigInt> = None;
    let mut start = 0;
    while start < by_group.len() {
        let mut end = start + 1;
        while end < by_group.len() && by_group[end].1 == by_group[start].1 {
            end += 1;
        }
        group_pairs += pairs((end - start) as u64);
        let group = &by_group[start..end];
        let mut run = 1u64;
        for w in group.windows(2) {
            if w[1].0 == w[0].0 {
                run += 1;
            } else {
                coincident_pairs += pairs(run);
                run = 1;
                let g = &w[1].0 - &w[0].0;
                if rational_min.as_ref().is_none_or(|m| &g < m) {
                    rational_min = Some(g);
                }
            }
        }
        coincident_pairs += pairs(run);
        start = end;
    }
    let rational_pairs = group_pairs - coincident_pairs;
    let certified_floor = (rational_pairs > 0).then(|| Rational::new(BigInt::one(), denominator.clone()));
    let rational_min_gap = rational_min.map(|g| Rational::new(g, denominator.clone()));

    // channel p2 != 0: the closest pair from different groups is adjacent in
    // value order, so sorting by the approximate value suffices
    let approx = tau.approx();
    let (t_num, t_den) = (approx.numer().clone(), approx.denom().clone());
    let shifted = &scale * &t_num;
    let mut by_value: Vec<(BigInt, &(BigInt, BigInt))> = level
        .iter()
        .map(|t| (&t.0 * &t_den + &shifted * &t.1, t))
        .collect();
    by_value.sort_unstable_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1 .1.cmp(&y.1 .1)));
    let value_den = &denominator * &t_den;
    let mut best: Option<(Rational, Rational, SeparationTerm)> = None;
    let mut possible_rationality = false;
    for w in by_value.windows(2) {
        let (a, b) = (w[0].1, w[1].1);
        if a.1 == b.1 {
            continue;
        }
        let gap = Rational::new(&w[1].0 - &w[0].0, value_den.clone());
        let dp2 = &b.1 - &a.1;
        let err = Rational::from_integer(dp2.abs()) * tau.error_bound() / Rational::from_integer(q_pow.clone());
        if gap <= err {
            possible_rationality = true;
        }
        if best.as_ref().is_none_or(|(g, _, _)| &gap < g) {
            let term = SeparationTerm {
                p1: &b.0 - &a.0,
                p2: dp2,
                level: n,
                q: q.clone(),
                scale: scale.clone(),
            };
            best = Some((gap, err, term));
        }
    }

    let symbolic_min_gap = best.as_ref().map(|(g, _, _)| to_f64(g));
    let min_gap_float = [rational_min_gap.as_ref().map(to_f64), symbolic_min_gap]
        .into_iter()
        .flatten()
        .chain((coincident_pairs > 0).then_some(0.0))
        .fold(f64::INFINITY, f64::min);
    Ok(SymbolicDeltaReport {
        level: n,
        words,
        q,
        scale,
        tau: tau.label().to_string(),
        coincident_pairs,
        rational_pairs,
        certified_floor,
        rational_min_gap,
        symbolic_min_gap,
        symbolic_error_bound: best.as_ref().map(|(_, e, _)| to_f64(e)),
        witness: best.map(|(_, _, t)| t),
        possible_rationality,
        coefficient_bound_holds,
        min_gap_float,
    })
}

/// Ratio and offsets of a one-dimensional system induced by a homogeneous
/// document, keeping irrational literals symbolic. Supports the projections
/// and both Furstenberg systems.
pub fn line_system_offsets(
    doc: &SystemDocument,
    kind: ScalarIfsKind,
) -> Result<(Rational, Vec<Offset>), SeparationError> {
    let first = doc.maps.first().ok_or(SeparationError::Empty)?;
    let exact = |n: &Number| n.exact().cloned().ok_or(SeparationError::BadRatio);
    let (c, b) = (exact(&first.c)?, exact(&first.b)?);
    for m in &doc.maps {
        if exact(&m.c)? != c || exact(&m.b)? != b {
            return Err(SeparationError::NotHomogeneous);
        }
    }
    let (ratio, scale): (Rational, Rational) = match kind {
        ScalarIfsKind::HorizontalProjection | ScalarIfsKind::Custom => (c.clone(), Rational::one()),
        ScalarIfsKind::VerticalProjection => (b.clone(), Rational::one()),
        ScalarIfsKind::FurstenbergForward if c > b => (&b / &c, Rational::one() / &c),
        ScalarIfsKind::FurstenbergBackward if b > c => (&c / &b, -Rational::one() / &b),
        _ => return Err(SeparationError::Projective(crate::projective::ProjectiveError::NotYDominated)),
    };
    let offsets = doc
        .maps
        .iter()
        .map(|m| {
            let lit = match kind {
                ScalarIfsKind::HorizontalProjection | ScalarIfsKind::Custom => &m.u,
                ScalarIfsKind::VerticalProjection => &m.v,
                _ => &m.d,
            };
            match lit {
                Number::Exact { value, .. } => Offset::Exact(value * &scale),
                Number::Irrational { value, .. } => Offset::Symbolic(value.scale(&scale)),
            }
        })
        .collect();
    Ok((ratio, offsets))
}
