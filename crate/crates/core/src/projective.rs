//! One-dimensional systems induced by a triangular IFS: the coordinate
//! projections H and V, and the forward (F) and backward (B) actions on the
//! projective line, identified with the vertical line `{(1, z)}`.

use std::fmt;

use crate::model::AffineIfs;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum ScalarIfsKind {
    /// `h_i(x) = c_i x + u_i`
    HorizontalProjection,
    /// `phi_i(y) = b_i y + v_i`
    VerticalProjection,
    /// `f_i(z) = (b_i/c_i) z + d_i/c_i`, needs `c_i > b_i`
    FurstenbergForward,
    /// `g_i(z) = (c/b) z - d_i/b`, needs a homogeneous system with `c < b`
    FurstenbergBackward,
    /// Built directly from coefficients.
    Custom,
}

impl fmt::Display for ScalarIfsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarIfsKind::HorizontalProjection => "H",
            ScalarIfsKind::VerticalProjection => "V",
            ScalarIfsKind::FurstenbergForward => "F",
            ScalarIfsKind::FurstenbergBackward => "B",
            ScalarIfsKind::Custom => "custom",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProjectiveError {
    #[error("forward Furstenberg system needs c_i > b_i for every map (fails for map {0})")]
    NotXDominated(usize),
    #[error("backward Furstenberg system needs a homogeneous system with c < b")]
    NotYDominated,
    #[error("map {0} is not a strict contraction")]
    NotContracting(usize),
    #[error("invariant interval needs positive ratios (map {0})")]
    NonPositiveRatio(usize),
    #[error("a scalar system needs at least one map")]
    Empty,
    #[error("natural projection of an empty word")]
    EmptyWord,
    #[error("symbol {0} out of range")]
    SymbolOutOfRange(usize),
}

/// `x -> ratio * x + offset`
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap1d<T> {
    pub ratio: T,
    pub offset: T,
}

impl<T: Scalar> AffineMap1d<T> {
    pub fn apply(&self, x: &T) -> T {
        self.ratio.clone() * x.clone() + self.offset.clone()
    }

    pub fn fixed_point(&self) -> T {
        self.offset.clone() / (T::one() - self.ratio.clone())
    }
}

/// A self-similar IFS on the line.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarIfs<T> {
    maps: Vec<AffineMap1d<T>>,
    kind: ScalarIfsKind,
}

impl<T: Scalar> ScalarIfs<T> {
    pub fn new(maps: Vec<AffineMap1d<T>>, kind: ScalarIfsKind) -> Result<Self, ProjectiveError> {
        if maps.is_empty() {
            return Err(ProjectiveError::Empty);
        }
        if let Some(i) = maps.iter().position(|m| m.ratio.abs() >= T::one()) {
            return Err(ProjectiveError::NotContracting(i));
        }
        Ok(Self { maps, kind })
    }

    pub fn from_pairs(pairs: &[(T, T)]) -> Result<Self, ProjectiveError> {
        Self::new(
            pairs
                .iter()
                .map(|(r, o)| AffineMap1d {
                    ratio: r.clone(),
                    offset: o.clone(),
                })
                .collect(),
            ScalarIfsKind::Custom,
        )
    }

    pub fn maps(&self) -> &[AffineMap1d<T>] {
        &self.maps
    }

    pub fn kind(&self) -> ScalarIfsKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// `psi_w(x) = psi_{w_1}(... psi_{w_n}(x))`.
    pub fn apply_word(&self, word: &[usize], x: &T) -> Result<T, ProjectiveError> {
        word.iter().rev().try_fold(x.clone(), |acc, &s| {
            self.maps
                .get(s)
                .map(|m| m.apply(&acc))
                .ok_or(ProjectiveError::SymbolOutOfRange(s))
        })
    }

    pub fn map_scalar<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> ScalarIfs<U> {
        ScalarIfs {
            maps: self
                .maps
                .iter()
                .map(|m| AffineMap1d {
                    ratio: f(&m.ratio),
                    offset: f(&m.offset),
                })
                .collect(),
            kind: self.kind,
        }
    }
}

pub fn derive_scalar_ifs<T: Scalar>(system: &AffineIfs<T>, kind: ScalarIfsKind) -> Result<ScalarIfs<T>, ProjectiveError> {
    let maps = system.maps();
    let mk = |ratio: T, offset: T| AffineMap1d { ratio, offset };
    let list: Vec<AffineMap1d<T>> = match kind {
        ScalarIfsKind::HorizontalProjection | ScalarIfsKind::Custom => {
            maps.iter().map(|m| mk(m.c.clone(), m.u.clone())).collect()
        }
        ScalarIfsKind::VerticalProjection => maps.iter().map(|m| mk(m.b.clone(), m.v.clone())).collect(),
        ScalarIfsKind::FurstenbergForward => {
            if let Some(i) = maps.iter().position(|m| m.c <= m.b) {
                return Err(ProjectiveError::NotXDominated(i));
            }
            maps.iter()
                .map(|m| mk(m.b.clone() / m.c.clone(), m.d.clone() / m.c.clone()))
                .collect()
        }
        ScalarIfsKind::FurstenbergBackward => {
            let (c, b) = system.homogeneous_diagonal().ok_or(ProjectiveError::NotYDominated)?;
            if c >= b {
                return Err(ProjectiveError::NotYDominated);
            }
            maps.iter()
                .map(|m| mk(c.clone() / b.clone(), -(m.d.clone() / b.clone())))
                .collect()
        }
    };
    let kind = if kind == ScalarIfsKind::Custom {
        ScalarIfsKind::HorizontalProjection
    } else {
        kind
    };
    ScalarIfs::new(list, kind)
}

/// Closed interval `[lo, hi]`; `lo == hi` is allowed.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn diameter(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, x: &T) -> bool {
        *x >= self.lo && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval<T>) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }

    /// Image under an increasing affine map.
    pub fn image(&self, m: &AffineMap1d<T>) -> Interval<T> {
        Interval {
            lo: m.apply(&self.lo),
            hi: m.apply(&self.hi),
        }
    }
}

/// Convex hull of the fixed points: the smallest interval mapped into itself
/// by every map when all ratios are positive.
pub fn invariant_interval<T: Scalar>(s: &ScalarIfs<T>) -> Result<Interval<T>, ProjectiveError> {
    if let Some(i) = s.maps().iter().position(|m| m.ratio <= T::zero()) {
        return Err(ProjectiveError::NonPositiveRatio(i));
    }
    let mut points = s.maps().iter().map(AffineMap1d::fixed_point);
    let first = points.next().ok_or(ProjectiveError::Empty)?;
    let (lo, hi) = points.fold((first.clone(), first), |(lo, hi), p| {
        let lo = if p < lo { p.clone() } else { lo };
        let hi = if p > hi { p } else { hi };
        (lo, hi)
    });
    Ok(Interval { lo, hi })
}

/// Truncated natural projection of a finite word.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ProjectedPrefix<T> {
    /// `psi_w(anchor)` with the anchor at the left end of the invariant interval.
    pub value: T,
    /// `|prod ratios| * diam(I)`, bounding the distance to the projection of
    /// any infinite continuation of the word.
    pub error_bound: T,
}

pub fn project_prefix<T: Scalar>(s: &ScalarIfs<T>, word: &[usize]) -> Result<ProjectedPrefix<T>, ProjectiveError> {
    if word.is_empty() {
        return Err(ProjectiveError::EmptyWord);
    }
    let interval = invariant_interval(s)?;
    let value = s.apply_word(word, &interval.lo)?;
    let contraction = word
        .iter()
        .fold(T::one(), |acc, &k| acc * s.maps()[k].ratio.abs());
    Ok(ProjectedPrefix {
        value,
        error_bound: contraction * interval.diameter(),
    })
}
