//! Dimension formulas: similarity and affinity dimension (Moran equations
//! solved by bisection), the homogeneous closed form, Lyapunov dimension,
//! theorem selection and the phase-transition profile.

mod formulas;
mod moran;
mod theorems;

pub use formulas::{
    homogeneous_affinity, lyapunov_dimension, phase_branch, phase_transition_profile, LyapunovInputs,
    PhaseProfile,
};
pub use moran::{
    affinity_dimension, moran_residual_x, moran_residual_y, similarity_dimension, AffinityResult,
    TIE_TOLERANCE,
};
pub use theorems::{assumption_c5, theorem_dimension, AssumptionCheck, Theorem, TheoremVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimensionError {
    #[error("domain error: {0}")]
    Domain(String),
}
