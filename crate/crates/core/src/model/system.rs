use std::fmt;

use crate::scalar::{Rational, Scalar};

/// One lower-triangular affine map
/// `(x, y) -> (c x + u, d x + b y + v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularMap<T> {
    pub c: T,
    pub b: T,
    pub d: T,
    pub u: T,
    pub v: T,
}

impl<T: Scalar> TriangularMap<T> {
    pub fn new(c: T, b: T, d: T, u: T, v: T) -> Self {
        Self { c, b, d, u, v }
    }

    pub fn apply(&self, x: &T, y: &T) -> (T, T) {
        (
            self.c.clone() * x.clone() + self.u.clone(),
            self.d.clone() * x.clone() + self.b.clone() * y.clone() + self.v.clone(),
        )
    }

    /// Images of the unit-square corners (0,0), (1,0), (0,1), (1,1).
    pub fn square_image(&self) -> [(T, T); 4] {
        let z = T::zero();
        let o = T::one();
        [
            self.apply(&z, &z),
            self.apply(&o, &z),
            self.apply(&z, &o),
            self.apply(&o, &o),
        ]
    }

    pub fn map_scalar<U, F: Fn(&T) -> U>(&self, f: F) -> TriangularMap<U> {
        TriangularMap {
            c: f(&self.c),
            b: f(&self.b),
            d: f(&self.d),
            u: f(&self.u),
            v: f(&self.v),
        }
    }

    fn violations(&self, index: usize, out: &mut Vec<Violation>) {
        let zero = T::zero();
        let one = T::one();
        let mut push = |field: &'static str, message: &str| {
            out.push(Violation {
                map: index,
                field,
                message: message.to_string(),
            })
        };
        let in_open_unit = |t: &T| *t > zero && *t < one;
        if !in_open_unit(&self.c) {
            push("c", "c out of (0,1)");
        }
        if !in_open_unit(&self.b) {
            push("b", "b out of (0,1)");
        }
        let corners = self.square_image();
        let inside = |t: &T| *t >= zero && *t <= one;
        if !corners.iter().all(|(x, _)| inside(x)) {
            push("u", "image of [0,1]^2 leaves the square horizontally");
        }
        if !corners.iter().all(|(_, y)| inside(y)) {
            push("v", "image of [0,1]^2 leaves the square vertically");
        }
    }
}

/// A single failed invariant of a system description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Zero-based map index.
    pub map: usize,
    pub field: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "map {}: {}", self.map + 1, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("a system needs at least one map")]
    Empty,
    #[error("invalid system: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Violations(Vec<Violation>),
}

impl ValidationError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            ValidationError::Empty => &[],
            ValidationError::Violations(v) => v,
        }
    }
}

/// Coordinate axis used for domination statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Tie,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Tie => "tie",
        })
    }
}

/// A validated planar triangular IFS. Map order defines the symbols:
/// symbol `i` (zero-based) is `maps()[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineIfs<T> {
    maps: Vec<TriangularMap<T>>,
    label: Option<String>,
}

impl<T: Scalar> AffineIfs<T> {
    /// Validates every map and reports all violations at once.
    pub fn new(maps: Vec<TriangularMap<T>>, label: Option<String>) -> Result<Self, ValidationError> {
        if maps.is_empty() {
            return Err(ValidationError::Empty);
        }
        let mut violations = Vec::new();
        for (i, m) in maps.iter().enumerate() {
            m.violations(i, &mut violations);
        }
        if !violations.is_empty() {
            return Err(ValidationError::Violations(violations));
        }
        Ok(Self { maps, label })
    }

    /// Homogeneous system with shared diagonal `(c, b)`.
    pub fn homogeneous(
        c: T,
        b: T,
        shears_and_translations: &[(T, T, T)],
        label: Option<String>,
    ) -> Result<Self, ValidationError> {
        let maps = shears_and_translations
            .iter()
            .map(|(d, u, v)| TriangularMap::new(c.clone(), b.clone(), d.clone(), u.clone(), v.clone()))
            .collect();
        Self::new(maps, label)
    }

    pub fn maps(&self) -> &[TriangularMap<T>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// All `c_i` equal and all `b_i` equal.
    pub fn is_diag_homogeneous(&self) -> bool {
        let first = &self.maps[0];
        self.maps.iter().all(|m| m.c == first.c && m.b == first.b)
    }

    /// Shared diagonal `(c, b)` of a diagonally homogeneous system.
    pub fn homogeneous_diagonal(&self) -> Option<(T, T)> {
        self.is_diag_homogeneous()
            .then(|| (self.maps[0].c.clone(), self.maps[0].b.clone()))
    }

    /// For homogeneous systems: `c > b` means x dominates, `b > c` means y.
    pub fn dominant_axis(&self) -> Option<Axis> {
        let (c, b) = self.homogeneous_diagonal()?;
        Some(if c > b {
            Axis::X
        } else if b > c {
            Axis::Y
        } else {
            Axis::Tie
        })
    }

    pub fn map_scalar<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> AffineIfs<U> {
        AffineIfs {
            maps: self.maps.iter().map(|m| m.map_scalar(&f)).collect(),
            label: self.label.clone(),
        }
    }

    pub fn to_f64(&self) -> AffineIfs<f64> {
        self.map_scalar(|t| t.to_f64_lossy())
    }
}

impl AffineIfs<f64> {
    /// Exact binary value of every coefficient.
    pub fn to_exact(&self) -> AffineIfs<Rational> {
        self.map_scalar(|t| Rational::from_float(*t).expect("finite coefficient"))
    }
}
