//! Dimension theory toolkit for planar self-affine iterated function systems
//! whose maps have lower-triangular linear parts.
//!
//! Geometry is generic over [`scalar::Scalar`] (floats or exact rationals),
//! formulas over [`scalar::Real`]. The aliases below fix the common choices.

pub mod dimension;
pub mod estimate;
pub mod model;
pub mod projective;
pub mod registry;
pub mod scalar;
pub mod separation;

pub use scalar::{Rational, Real, Scalar};

/// Double-precision system.
pub type Ifs = model::AffineIfs<f64>;
/// Exact rational system.
pub type ExactIfs = model::AffineIfs<Rational>;
pub type Map = model::TriangularMap<f64>;
pub type Composite = model::AffineComposite<f64>;
pub type Cylinder = model::CylinderParallelogram<f64>;
pub type LineIfs = projective::ScalarIfs<f64>;
pub type ExactLineIfs = projective::ScalarIfs<Rational>;
