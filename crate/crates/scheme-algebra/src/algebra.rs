//! Jacobi idempotents and the Gram-matrix algebra `span{G ∘ A_i}`.

use jacobi_bounds::{eval_f64, JacobiFamily};
use lineset_core::{Complex64, LineSet};
use nalgebra::DMatrix;
use serde::Serialize;

use crate::scheme::relation_masks;
use crate::SchemeError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiIdempotents {
    /// `(E_r)_{ab} = g_r(|⟨a,b⟩|²)/|X|` for `r = 0..=e`.
    #[serde(skip)]
    pub matrices: Vec<DMatrix<f64>>,
    /// `tr E_r = g_r(1)`.
    pub traces: Vec<f64>,
    /// `residuals[i][j] = max |E_iE_j − δ_ij E_i|` entrywise.
    pub residuals: Vec<Vec<f64>>,
    pub max_residual: f64,
}

/// Builds `E_0, …, E_e` and measures how far they are from orthogonal
/// idempotents. The family is deepened when `e` exceeds its cache.
pub fn jacobi_idempotents(x: &LineSet, fam: &JacobiFamily, e: usize) -> Result<JacobiIdempotents, SchemeError> {
    let fam = fam.deepen(e)?;
    let n = x.len();
    let angles = x.angle_matrix();
    let matrices: Vec<DMatrix<f64>> = (0..=e)
        .map(|r| {
            let g = fam.g(r)?;
            Ok(DMatrix::from_fn(n, n, |a, b| {
                let t = if a == b { 1.0 } else { angles[a * n + b] };
                eval_f64(g, t) / n as f64
            }))
        })
        .collect::<Result<_, SchemeError>>()?;
    let traces = matrices.iter().map(|m| m.trace()).collect();
    let mut residuals = vec![vec![0.0; e + 1]; e + 1];
    let mut max_residual: f64 = 0.0;
    for i in 0..=e {
        for j in 0..=e {
            let mut prod = &matrices[i] * &matrices[j];
            if i == j {
                prod -= &matrices[i];
            }
            let worst = prod.amax();
            residuals[i][j] = worst;
            max_residual = max_residual.max(worst);
        }
    }
    Ok(JacobiIdempotents { matrices, traces, residuals, max_residual })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramAlgebraReport {
    /// Angles of the relations that contribute a nonzero `A′_i`.
    pub angles: Vec<f64>,
    /// Largest normalized distance from `A′_iA′_j` to `span{A′_k}`.
    pub closure_residual: f64,
    pub closed: bool,
    /// Least-squares fit `G² ≈ aG + bI`.
    pub quadratic: (f64, f64),
    /// Normalized residual of that fit.
    pub quadratic_residual: f64,
}

impl GramAlgebraReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Inner product `Σ conj(x) y` of two matrices.
fn frob(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> Complex64 {
    x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// `A′_i = G ∘ A_i` over the angle masks, together with `A′_0 = I`. Relations
/// at angle zero give `A′_i = 0` and are left out of the span.
pub fn gram_algebra_check(x: &LineSet) -> Result<GramAlgebraReport, SchemeError> {
    let n = x.len();
    let tol = x.tol();
    let (angles, rel) = relation_masks(x)?;
    let g = x.gram();
    let keep: Vec<usize> = std::iter::once(0).chain((1..=angles.len()).filter(|&i| angles[i - 1] > tol)).collect();
    let basis: Vec<DMatrix<Complex64>> = keep
        .iter()
        .map(|&i| DMatrix::from_fn(n, n, |a, b| if rel[a * n + b] == i { g[(a, b)] } else { Complex64::new(0.0, 0.0) }))
        .collect();
    let norms: Vec<f64> = basis.iter().map(|b| frob(b, b).re).collect();

    let mut closure_residual: f64 = 0.0;
    for bi in &basis {
        for bj in &basis {
            let m = bi * bj;
            let total = m.norm();
            if total == 0.0 {
                continue;
            }
            let mut rest = m.clone();
            for (bk, nk) in basis.iter().zip(&norms) {
                let c = frob(bk, &m) / *nk;
                rest -= bk * c;
            }
            closure_residual = closure_residual.max(rest.norm() / total);
        }
    }

    let g2 = &g * &g;
    let id: DMatrix<Complex64> = DMatrix::identity(n, n);
    let (gg, gi, ii) = (frob(&g, &g).re, frob(&g, &id).re, n as f64);
    let (rg, ri) = (frob(&g, &g2).re, frob(&id, &g2).re);
    let det = gg * ii - gi * gi;
    let (qa, qb) = if det.abs() > 1e-12 * gg * ii {
        ((rg * ii - ri * gi) / det, (gg * ri - gi * rg) / det)
    } else {
        (rg / gg, 0.0)
    };
    let fit = &g2 - &g * Complex64::new(qa, 0.0) - &id * Complex64::new(qb, 0.0);
    let quadratic_residual = fit.norm() / g2.norm();

    Ok(GramAlgebraReport {
        angles: keep[1..].iter().map(|&i| angles[i - 1]).collect(),
        closure_residual,
        closed: closure_residual <= crate::CLOSURE_TOL,
        quadratic: (qa, qb),
        quadratic_residual,
    })
}
