//! Seidel matrices of real equiangular line sets.
//!
//! For unit vectors with `|⟨a,b⟩| = α` the Gram matrix is `G = I + αS` with
//! `S` symmetric, zero on the diagonal and `±1` elsewhere. Here `α` is the
//! inner product; the angle used by the degree-set code is `α²`.

use lineset_core::{gram_degree_set, Field, LineSet};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::{cluster_eigenvalues, SchemeError};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeidelReport {
    pub n: usize,
    pub d: usize,
    /// Common inner product `α`.
    pub alpha_inner: f64,
    /// Common angle `α²`.
    pub alpha_angle: f64,
    /// Rows of `S`, entries in `{−1, 0, 1}`.
    pub seidel: Vec<Vec<i8>>,
    /// Distinct eigenvalues of `S`, increasing, with multiplicities.
    pub spectrum: Vec<(f64, usize)>,
    pub two_eigenvalue: bool,
    /// `d(1−α²)/(1−dα²)`, when `dα² < 1`.
    pub relative_bound: Option<f64>,
    pub relative_tight: bool,
    /// `{−1/α^{(n−d)}, ((n−d)/(dα))^{(d)}}`, when the relative bound is met.
    pub predicted_spectrum: Option<Vec<(f64, usize)>>,
    pub spectrum_matches: Option<bool>,
}

impl SeidelReport {
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |i, j| self.seidel[i][j] as f64)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn seidel_analysis(x: &LineSet) -> Result<SeidelReport, SchemeError> {
    if x.field() != Field::Real {
        return Err(SchemeError::NotReal);
    }
    let degrees = gram_degree_set(x)?;
    if degrees.s != 1 {
        return Err(SchemeError::NotEquiangular(degrees.s));
    }
    let alpha_angle = degrees.angles[0];
    if degrees.zero_present {
        return Err(SchemeError::ZeroAngle);
    }
    let alpha = alpha_angle.sqrt();
    let (n, d, tol) = (x.len(), x.dim(), x.tol());
    let g = x.gram();
    let mut seidel = vec![vec![0i8; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let value = g[(i, j)].re / alpha;
            if (value.abs() - 1.0).abs() > tol || g[(i, j)].im.abs() > tol {
                return Err(SchemeError::NotSeidel { i, j, value });
            }
            seidel[i][j] = if value > 0.0 { 1 } else { -1 };
        }
    }
    let s = DMatrix::from_fn(n, n, |i, j| seidel[i][j] as f64);
    let eig = SymmetricEigen::new(s);
    let spectrum = cluster_eigenvalues(eig.eigenvalues.iter().copied().collect(), tol.max(1e-12) * n as f64);
    let two_eigenvalue = spectrum.len() == 2;

    let df = d as f64;
    let denom = 1.0 - df * alpha_angle;
    let relative_bound = (denom > tol).then(|| df * (1.0 - alpha_angle) / denom);
    let relative_tight = relative_bound.is_some_and(|b| (b - n as f64).abs() <= 1e-6);
    let predicted_spectrum = relative_tight.then(|| {
        let low = (-1.0 / alpha, n - d);
        let high = ((n - d) as f64 / (df * alpha), d);
        let mut out: Vec<(f64, usize)> = [low, high].into_iter().filter(|&(_, m)| m > 0).collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    });
    let spectrum_matches = predicted_spectrum.as_ref().map(|want| {
        want.len() == spectrum.len()
            && want.iter().zip(&spectrum).all(|((w, wm), (e, em))| (w - e).abs() <= 1e-6 * (1.0 + w.abs()) && wm == em)
    });
    Ok(SeidelReport {
        n,
        d,
        alpha_inner: alpha,
        alpha_angle,
        seidel,
        spectrum,
        two_eigenvalue,
        relative_bound,
        relative_tight,
        predicted_spectrum,
        spectrum_matches,
    })
}
