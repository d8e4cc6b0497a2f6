//! Generalized Pauli displacements over `Z_d` and over `GF(2)³`.

use lineset_core::{angle, CMatrix, Field, LineSet};
use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::SicError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DisplacementGroup {
    /// `X(j)Y(k)` for `j, k ∈ Z_d`.
    Cyclic(usize),
    /// `X(a)Y(b)` for `a, b ∈ GF(2)³` acting on `C⁸`.
    BinaryTriple,
}

/// `θ = −e^{iπ/d}`.
pub fn theta(d: usize) -> Complex64 {
    -Complex64::from_polar(1.0, std::f64::consts::PI / d as f64)
}

/// `ω = θ²`.
pub fn omega(d: usize) -> Complex64 {
    let t = theta(d);
    t * t
}

/// `X(j)Y(k)` with `X(j): e_x ↦ e_{x+j}` and `Y(k): e_x ↦ ω^{kx} e_x`.
pub fn displacement(d: usize, j: usize, k: usize) -> CMatrix {
    let w = omega(d);
    let mut m = CMatrix::zeros(d, d);
    for x in 0..d {
        m[((x + j) % d, x)] = w.powu(((k * x) % d) as u32);
    }
    m
}

/// `X(a)Y(b)` on `C⁸` with `X(a): e_x ↦ e_{x⊕a}` and `Y(b): e_x ↦ (−1)^{b·x} e_x`.
pub fn binary_displacement(a: usize, b: usize) -> CMatrix {
    let mut m = CMatrix::zeros(8, 8);
    for x in 0..8 {
        let sign = if (b & x).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        m[(x ^ a, x)] = Complex64::new(sign, 0.0);
    }
    m
}

impl DisplacementGroup {
    pub fn dim(&self) -> usize {
        match self {
            DisplacementGroup::Cyclic(d) => *d,
            DisplacementGroup::BinaryTriple => 8,
        }
    }

    /// All operators, in lexicographic `(j, k)` order.
    pub fn operators(&self) -> Vec<CMatrix> {
        match *self {
            DisplacementGroup::Cyclic(d) => (0..d).flat_map(|j| (0..d).map(move |k| displacement(d, j, k))).collect(),
            DisplacementGroup::BinaryTriple => (0..8).flat_map(|a| (0..8).map(move |b| binary_displacement(a, b))).collect(),
        }
    }
}

/// The orbit of `v` under `group`, deduplicated projectively in generation order.
pub fn orbit(group: DisplacementGroup, v: &[Complex64], tol: f64) -> Result<LineSet, SicError> {
    let d = group.dim();
    if v.len() != d {
        return Err(SicError::DimensionMismatch { expected: d, found: v.len() });
    }
    let col = DVector::from_column_slice(v);
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for op in group.operators() {
        let w: Vec<Complex64> = (&op * &col).iter().copied().collect();
        if out.iter().all(|u| angle(u, &w) <= 1.0 - tol) {
            out.push(w);
        }
    }
    Ok(LineSet::from_unnormalized(d, Field::Complex, out, None, tol)?)
}
