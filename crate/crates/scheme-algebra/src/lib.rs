//! Algebraic structure of a line set: the Schur-idempotent (angle mask)
//! decomposition, association-scheme closure with eigenmatrices and Krein
//! parameters, Jacobi idempotents, Gram-matrix algebras and the Seidel
//! two-eigenvalue test for real equiangular sets.
//!
//! Angles are `|⟨a,b⟩|²` throughout, except in [`seidel`], where the
//! equiangular parameter is reported both as the inner product `α` and as
//! the angle `α²`.

pub mod algebra;
pub mod scheme;
pub mod seidel;

pub use algebra::{gram_algebra_check, jacobi_idempotents, GramAlgebraReport, JacobiIdempotents};
pub use scheme::{relation_masks, scheme_from_lineset, scheme_from_lineset_seeded, SchemeReport, SpectralData, CLOSURE_TOL, DEFAULT_SEED};
pub use seidel::{seidel_analysis, SeidelReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SchemeError {
    #[error("Seidel analysis needs a real line set")]
    NotReal,
    #[error("line set is not equiangular ({0} distinct angles)")]
    NotEquiangular(usize),
    #[error("common angle is zero, so there is no Seidel matrix")]
    ZeroAngle,
    #[error("entry ({i}, {j}) of (G − I)/α is {value}, not ±1")]
    NotSeidel { i: usize, j: usize, value: f64 },
    #[error(transparent)]
    LineSet(#[from] lineset_core::LineSetError),
    #[error(transparent)]
    Jacobi(#[from] jacobi_bounds::JacobiError),
}

/// Groups eigenvalues after sorting; consecutive gaps above `tol`
/// start a new cluster. Returns `(mean, count)`.
pub(crate) fn cluster_eigenvalues(mut values: Vec<f64>, tol: f64) -> Vec<(f64, usize)> {
    values.sort_by(f64::total_cmp);
    lineset_core::cluster_sorted(&values, tol).into_iter().map(|(m, c, _)| (m, c)).collect()
}
