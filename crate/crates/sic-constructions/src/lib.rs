//! Equiangular lines from Weyl–Heisenberg orbits: displacement operators,
//! builtin fiducials for `d ∈ {2, 3, 8}` and Appleby-form candidates.

pub mod displacement;
pub mod fiducial;

pub use displacement::{binary_displacement, displacement, omega, orbit, theta, DisplacementGroup};
pub use fiducial::{
    almost_flat_params, appleby_amplitudes, appleby_candidates, appleby_quartic, builtin_fiducial, jacobi_symbol,
    real_roots_in_unit_interval, verify_sic, wh_orbit, AlmostFlatBranch, ApplebyCandidate, FiducialCandidate, FiducialSource,
    SicReport,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SicError {
    #[error("no builtin construction in dimension {0}")]
    UnsupportedDimension(usize),
    #[error("Appleby candidates need odd d ≥ 3, got {0}")]
    NeedOddDimension(usize),
    #[error("vector has {found} coordinates, group acts on dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("fiducial vector is zero")]
    ZeroVector,
    #[error(transparent)]
    LineSet(#[from] lineset_core::LineSetError),
    #[error(transparent)]
    Jacobi(#[from] jacobi_bounds::JacobiError),
}
