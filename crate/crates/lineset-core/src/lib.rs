//! Finite sets of complex or real lines: the `LineSet` model with its JSON
//! format, degree sets, t-design strength via Jacobi pair sums, MUB and
//! equiangular certificates, dephasing and complex-to-real doubling.

pub mod analysis;
pub mod lineset;
pub mod transform;

pub use analysis::{
    cluster_sorted, design_strength, design_strength_eps, gram_degree_set, snap_rational, verify_equiangular, verify_mub,
    DegreeSetReport, DesignReport, EquiangularReport, MubReport, DEFAULT_DESIGN_EPS,
};
pub use lineset::{angle, inner, norm_sqr, Field, LineSet, DEFAULT_TOL};
pub use transform::{canonical_dephase, double_vector, real_doubling};

pub use nalgebra::DMatrix;
pub use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LineSetError {
    #[error("malformed line set{}: {reason}", index.map(|i| format!(" (vector {i})")).unwrap_or_default())]
    Malformed { index: Option<usize>, reason: String },
    #[error("invalid basis labels: {0}")]
    BadLabels(String),
    #[error("vectors {i} and {j} span the same line")]
    DuplicateLine { i: usize, j: usize },
    #[error("basis labels are required")]
    MissingLabels,
    #[error("cells are not orthonormal: {cells:?}")]
    NonOrthonormal { cells: Vec<(usize, f64)> },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("first basis is singular")]
    SingularBasis,
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Jacobi(#[from] jacobi_bounds::JacobiError),
}

/// Unitarity defect `max |(U*U − I)_{ij}|`.
pub fn unitary_defect(u: &CMatrix) -> f64 {
    let n = u.ncols();
    let p = u.adjoint() * u;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p[(i, j)] - want).norm());
        }
    }
    worst
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}
