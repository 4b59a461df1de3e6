use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::projective::ScalarIfs;
use crate::scalar::Rational;

use super::{delta_guard, SeparationError};

/// Minimal gap between distinct level-n points sharing a derivative; infinite
/// when no two words share one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaValue {
    Finite(Rational),
    Infinite,
}

impl DeltaValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            DeltaValue::Finite(r) => Some(r),
            DeltaValue::Infinite => None,
        }
    }
}

impl fmt::Display for DeltaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaValue::Finite(r) => write!(f, "{r}"),
            DeltaValue::Infinite => f.write_str("inf"),
        }
    }
}

fn common_denominator<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

fn min_adjacent_gap(sorted: &[BigInt]) -> Option<BigInt> {
    sorted.windows(2).map(|w| &w[1] - &w[0]).min()
}

/// Equal ratios `p/q`: every level-n point is `M / (D q^(n-1))` for an
/// integer `M`, so the gap reduces to sorting integers.
fn homogeneous(p: &BigInt, q: &BigInt, offsets: &[Rational], n: usize) -> DeltaValue {
    let d = common_denominator(offsets.iter());
    let a: Vec<BigInt> = offsets
        .iter()
        .map(|o| o.numer() * (&d / o.denom()))
        .collect();
    let mut level: Vec<BigInt> = a.clone();
    let mut q_pow = BigInt::one();
    for _ in 1..n {
        q_pow *= q;
        let scaled: Vec<BigInt> = level.iter().map(|m| p * m).collect();
        level = a
            .iter()
            .flat_map(|ai| {
                let lead = ai * &q_pow;
                scaled.iter().map(move |m| &lead + m)
            })
            .collect();
    }
    level.sort_unstable();
    match min_adjacent_gap(&level) {
        Some(gap) => DeltaValue::Finite(Rational::new(gap, d * q_pow)),
        None => DeltaValue::Infinite,
    }
}

/// Mixed ratios: points are compared only within groups of equal derivative.
fn heterogeneous(s: &ScalarIfs<Rational>, n: usize) -> DeltaValue {
    let mut level: Vec<(Rational, Rational)> = vec![(Rational::one(), Rational::zero())];
    for _ in 0..n {
        level = s
            .maps()
            .iter()
            .flat_map(|m| {
                level
                    .iter()
                    .map(move |(deriv, value)| (&m.ratio * deriv, &m.ratio * value + &m.offset))
            })
            .collect();
    }
    level.sort_unstable();
    level
        .windows(2)
        .filter(|w| w[0].0 == w[1].0)
        .map(|w| &w[1].1 - &w[0].1)
        .min()
        .map_or(DeltaValue::Infinite, DeltaValue::Finite)
}

/// `min |psi_i(0) - psi_j(0)|` over distinct words `i != j` of length `n`
/// with equal derivatives, in exact arithmetic. Coinciding points give zero.
pub fn delta_n_exact(s: &ScalarIfs<Rational>, n: usize) -> Result<DeltaValue, SeparationError> {
    if n == 0 {
        return Err(SeparationError::ZeroLevel);
    }
    delta_guard(s.len(), n)?;
    let r0 = &s.maps()[0].ratio;
    if s.maps().iter().all(|m| &m.ratio == r0) {
        let offsets: Vec<Rational> = s.maps().iter().map(|m| m.offset.clone()).collect();
        Ok(homogeneous(r0.numer(), r0.denom(), &offsets, n))
    } else {
        Ok(heterogeneous(s, n))
    }
}
