//! Triangular affine systems: validated types, parsing, composition and
//! cylinder geometry.

mod compose;
mod document;
mod number;
mod system;

pub use compose::{
    compose, cylinder, level_composites, words, AffineComposite, CylinderParallelogram, WordError,
};
pub use document::{parse_system, serialize_system, DocumentError, MapLiterals, SystemDocument, ToLiteral};
pub use number::{parse_rational, HighPrecision, Number, NumberError, DEFAULT_PRECISION_BITS};
pub use system::{AffineIfs, Axis, TriangularMap, ValidationError, Violation};
