//! Angle-preserving transforms of basis sets and the complex-to-real doubling.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::lineset::{Field, LineSet};
use crate::LineSetError;

/// Maps `B_0` to the identity by `B_0*` and makes the first entry of every
/// column of the later bases real and nonnegative.
pub fn canonical_dephase(bases: &[DMatrix<Complex64>]) -> Result<Vec<DMatrix<Complex64>>, LineSetError> {
    let Some(b0) = bases.first() else {
        return Ok(Vec::new());
    };
    let d = b0.nrows();
    if b0.ncols() != d || b0.clone().lu().determinant().norm() < 1e-12 {
        return Err(LineSetError::SingularBasis);
    }
    let adj = b0.adjoint();
    let mut out = Vec::with_capacity(bases.len());
    for (k, b) in bases.iter().enumerate() {
        let mut m = &adj * b;
        if k > 0 {
            for mut col in m.column_iter_mut() {
                let lead = col.iter().copied().find(|z| z.norm() > 1e-12);
                if let Some(z) = lead {
                    let phase = z.conj() / z.norm();
                    col.iter_mut().for_each(|e| *e *= phase);
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// `a + ib ↦ (a₁, b₁, …, a_d, b_d)` and `(b₁, −a₁, …, b_d, −a_d)`.
pub fn double_vector(v: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut v1 = Vec::with_capacity(2 * v.len());
    let mut v2 = Vec::with_capacity(2 * v.len());
    for z in v {
        v1.push(Complex64::new(z.re, 0.0));
        v1.push(Complex64::new(z.im, 0.0));
        v2.push(Complex64::new(z.im, 0.0));
        v2.push(Complex64::new(-z.re, 0.0));
    }
    (v1, v2)
}

/// Real line set in `R^{2d}` with vectors `v₁, v₂` emitted consecutively; both
/// inherit the label of their source.
pub fn real_doubling(x: &LineSet) -> Result<LineSet, LineSetError> {
    let mut vectors = Vec::with_capacity(2 * x.len());
    for v in x.vectors() {
        let (a, b) = double_vector(v);
        vectors.push(a);
        vectors.push(b);
    }
    let labels = x.labels().map(|l| l.iter().flat_map(|&c| [c, c]).collect());
    LineSet::new(2 * x.dim(), Field::Real, vectors, labels, x.tol())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_unit_vector() {
        let x = LineSet::new(2, Field::Complex, vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]], None, 1e-9)
            .unwrap();
        let y = real_doubling(&x).unwrap();
        let re: Vec<Vec<f64>> = y.vectors().iter().map(|v| v.iter().map(|z| z.re).collect()).collect();
        assert_eq!(re, vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, -1.0, 0.0, 0.0]]);
    }

    #[test]
    fn singular_first_basis() {
        let z = DMatrix::<Complex64>::zeros(2, 2);
        assert!(matches!(canonical_dephase(&[z]), Err(LineSetError::SingularBasis)));
    }
}
