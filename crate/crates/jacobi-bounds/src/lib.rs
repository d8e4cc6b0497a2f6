//! Univariate Jacobi polynomials on complex projective space and the bounds
//! they give on line sets: absolute, relative (in the `g` and `h` bases),
//! Welch, flat equiangular and MUB counts, plus the real-case restatements.
//!
//! All polynomial arithmetic is exact over `BigRational`.

pub mod bounds;
pub mod dims;
pub mod family;

pub use bounds::{
    absolute_bound, annihilator_bound, equiangular_relative_bound, flat_eal_bound, mub_bound, real_absolute_bound,
    real_mub_gate, relative_bound, welch_bound, BoundMode, BoundQuery, Hypothesis, RealMubGate, RelativeBound,
};
pub use dims::{binomial, dim_harm, dim_harm_real, dim_hom, dim_hom_real};
pub use family::{
    annihilator, eval_exact, eval_f64, explicit_g, explicit_h, fmt_rational, int, parse_rational, plain_rational,
    rat, recurrence_table, JacobiFamily, Kind, Rat, RatPoly, DEFAULT_MAX_K,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum JacobiError {
    #[error("dimension must be at least 2 (got {0})")]
    InvalidDimension(i64),
    #[error("degrees must be nonnegative (got {0})")]
    NegativeDegree(i64),
    #[error("degree {k} exceeds the cached depth {max_k}; deepen the family first")]
    BeyondCache { k: usize, max_k: usize },
    #[error("explicit formula and recurrence disagree at d = {d}, k = {k} ({kind:?})")]
    RecurrenceMismatch { d: u32, k: usize, kind: Kind },
    #[error("constant coefficient c_0 is zero")]
    ZeroConstantCoefficient,
    #[error("invalid bound query: {0}")]
    InvalidQuery(String),
}

/// `jacobi_poly(fam, k, kind)`: exact coefficients, lowest degree first.
pub fn jacobi_poly(fam: &JacobiFamily, k: usize, kind: Kind) -> Result<RatPoly, JacobiError> {
    fam.poly(k, kind).map(|p| p.to_vec())
}

/// `expand_in_basis(fam, poly, kind)`.
pub fn expand_in_basis(fam: &JacobiFamily, poly: &[Rat], kind: Kind) -> Result<RatPoly, JacobiError> {
    fam.expand(poly, kind)
}
