use crate::model::{AffineComposite, AffineIfs, TriangularMap};
use crate::projective::{derive_scalar_ifs, invariant_interval, AffineMap1d, Interval, ScalarIfsKind};
use crate::scalar::Scalar;

use super::SeparationError;

/// `(x, y, z) -> (S_i(x, y), f_i(z))` with `f_i` the forward Furstenberg map.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedMap<T> {
    pub planar: TriangularMap<T>,
    pub projective: AffineMap1d<T>,
}

impl<T: Scalar> LiftedMap<T> {
    pub fn apply(&self, p: &(T, T, T)) -> (T, T, T) {
        let (x, y) = self.planar.apply(&p.0, &p.1);
        (x, y, self.projective.apply(&p.2))
    }
}

/// Composed lifted map of a word.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedComposite<T> {
    pub planar: AffineComposite<T>,
    pub projective: AffineMap1d<T>,
}

impl<T: Scalar> LiftedComposite<T> {
    pub fn identity() -> Self {
        Self {
            planar: AffineComposite::identity(),
            projective: AffineMap1d {
                ratio: T::one(),
                offset: T::zero(),
            },
        }
    }

    /// `self o inner`.
    pub fn then_inner(&self, inner: &Self) -> Self {
        let outer = &self.projective;
        Self {
            planar: self.planar.then_inner(&inner.planar),
            projective: AffineMap1d {
                ratio: outer.ratio.clone() * inner.projective.ratio.clone(),
                offset: outer.apply(&inner.projective.offset),
            },
        }
    }

    pub fn apply(&self, p: &(T, T, T)) -> (T, T, T) {
        let (x, y) = self.planar.apply(&p.0, &p.1);
        (x, y, self.projective.apply(&p.2))
    }
}

/// The lifted system together with the invariant interval of its third factor.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedIfs<T> {
    maps: Vec<LiftedMap<T>>,
    interval: Interval<T>,
}

impl<T: Scalar> LiftedIfs<T> {
    pub fn maps(&self) -> &[LiftedMap<T>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Fixed-point hull of the projective maps.
    pub fn interval(&self) -> &Interval<T> {
        &self.interval
    }

    pub fn compose(&self, word: &[usize]) -> Result<LiftedComposite<T>, SeparationError> {
        word.iter().try_fold(LiftedComposite::identity(), |acc, &s| {
            let m = self.maps.get(s).ok_or(crate::model::WordError::SymbolOutOfRange {
                symbol: s,
                position: 0,
                len: self.maps.len(),
            })?;
            Ok(acc.then_inner(&LiftedComposite {
                planar: AffineComposite::from_map(&m.planar),
                projective: m.projective.clone(),
            }))
        })
    }

    /// Composites of every level-`n` word, indexed like `model::words`.
    pub fn level_composites(&self, n: usize) -> Vec<LiftedComposite<T>> {
        let base: Vec<LiftedComposite<T>> = self
            .maps
            .iter()
            .map(|m| LiftedComposite {
                planar: AffineComposite::from_map(&m.planar),
                projective: m.projective.clone(),
            })
            .collect();
        let mut level = vec![LiftedComposite::identity()];
        for _ in 0..n {
            level = level
                .iter()
                .flat_map(|prefix| base.iter().map(move |m| prefix.then_inner(m)))
                .collect();
        }
        level
    }
}

/// Pairs every planar map with its forward Furstenberg map. Needs `c_i > b_i`.
pub fn lift_3d<T: Scalar>(system: &AffineIfs<T>) -> Result<LiftedIfs<T>, SeparationError> {
    let f = derive_scalar_ifs(system, ScalarIfsKind::FurstenbergForward)?;
    let interval = invariant_interval(&f)?;
    let maps = system
        .maps()
        .iter()
        .zip(f.maps())
        .map(|(planar, projective)| LiftedMap {
            planar: planar.clone(),
            projective: projective.clone(),
        })
        .collect();
    Ok(LiftedIfs { maps, interval })
}
