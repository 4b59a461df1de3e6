//! Separation evidence: strong-separation certificates for the lifted
//! three-dimensional system, exact minimal gaps between level-n points of a
//! one-dimensional system, and counts of intersecting cylinder pairs.

mod delta;
mod lift;
mod pairs;
mod polygon;
mod ssp;
mod symbolic;

pub use delta::{delta_n_exact, DeltaValue};
pub use lift::{lift_3d, LiftedComposite, LiftedIfs, LiftedMap};
pub use pairs::{count_intersecting_pairs, PairCountReport};
pub use polygon::{linf_distance, polygons_intersect};
pub use ssp::{ssp_certificate, verify_certificate, CertificateBox, SspCertificate, SspOutcome};
pub use symbolic::{delta_n_symbolic, line_system_offsets, Offset, SeparationTerm, SymbolicDeltaReport};

use crate::model::WordError;
use crate::projective::ProjectiveError;

/// Most level-n images the certificate search will enumerate.
pub const SSP_WORD_LIMIT: f64 = 1e7;
/// Most ordered word pairs the pair counter will consider.
pub const PAIR_LIMIT: f64 = 1e8;
/// Largest `n log N` accepted by the gap enumerations.
pub const DELTA_LOG_LIMIT: f64 = 50.0;
/// Hard cap on words actually materialised by the gap enumerations.
pub const DELTA_WORD_LIMIT: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeparationError {
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("enumeration guard exceeded: {what} needs {size:e}, limit {limit:e}")]
    Guard {
        what: &'static str,
        size: f64,
        limit: f64,
    },
    #[error("shrink parameter must lie in (0, 1/2)")]
    BadShrink,
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("pair counting needs a diagonally homogeneous system")]
    NotHomogeneous,
    #[error("fattening constant L must be finite and non-negative")]
    BadFattening,
    #[error("ratio must be a rational in (0,1)")]
    BadRatio,
    #[error("expected exactly one symbolic offset, found {0}")]
    SymbolicCount(usize),
    #[error("gap enumeration needs at least one map")]
    Empty,
}

impl SeparationError {
    pub fn is_guard(&self) -> bool {
        matches!(self, SeparationError::Guard { .. })
    }
}

fn guard(what: &'static str, size: f64, limit: f64) -> Result<(), SeparationError> {
    if size > limit {
        Err(SeparationError::Guard { what, size, limit })
    } else {
        Ok(())
    }
}

fn delta_guard(n_maps: usize, n: usize) -> Result<(), SeparationError> {
    let log_size = n as f64 * (n_maps as f64).ln();
    guard("n log N", log_size, DELTA_LOG_LIMIT)?;
    guard("words", (n_maps as f64).powi(n as i32), DELTA_WORD_LIMIT as f64)
}
