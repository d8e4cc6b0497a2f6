//! Association schemes from degree-set masks.

use jacobi_bounds::JacobiFamily;
use lineset_core::{design_strength, gram_degree_set, LineSet};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::SchemeError;

/// Threshold on the normalized closure residual.
pub const CLOSURE_TOL: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 0x11e5_5eed;

const EIGEN_TOL: f64 = 1e-7;
const MAX_SPLIT_DEPTH: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemeReport {
    /// Number of lines `v`.
    pub v: usize,
    /// Number of non-identity relations `s`.
    pub classes: usize,
    /// Angle `α_i` of relation `i ≥ 1` (index 0 holds `α_1`).
    pub angles: Vec<f64>,
    /// `k_i = p_ii(0)`, with `k_0 = 1`.
    pub valencies: Vec<usize>,
    /// Largest normalized distance from `A_iA_j` to `span{A_k}`.
    pub closure_residual: f64,
    pub closed: bool,
    pub design_strength: usize,
    /// Whether the strength reaches `2(s−1)`.
    pub predicted_closed: bool,
    /// `p_ij(k)` indexed `[i][j][k]`: the least-squares coefficients of `A_iA_j`.
    pub intersection_numbers: Vec<Vec<Vec<f64>>>,
    /// Spectral data, present only when the masks close.
    pub spectral: Option<SpectralData>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralData {
    /// `P[j][i]`: eigenvalue of `A_i` on `E_j`.
    pub p: Vec<Vec<f64>>,
    /// `Q[i][j]`: coefficient of `A_i` in `vE_j`.
    pub q: Vec<Vec<f64>>,
    /// `rank E_j`.
    pub multiplicities: Vec<usize>,
    /// `max |(PQ − vI)_{ij}|`.
    pub pq_residual: f64,
    /// `q_ij(k)` indexed `[i][j][k]`.
    pub krein: Vec<Vec<Vec<f64>>>,
    pub min_krein: f64,
    /// `max |p_ij(k) − (1/v)Σ_l P_li P_lj Q_kl|` against the counted values.
    pub reconstruction_residual: f64,
    /// Number of common eigenspaces found; equals `s + 1` for a scheme.
    pub idempotents: usize,
}

impl SchemeReport {
    /// Closure, `PQ = vI` within `10⁻⁸·v` and Krein parameters `≥ −10⁻⁸`.
    pub fn certified(&self) -> bool {
        self.closed
            && self.spectral.as_ref().is_some_and(|sp| {
                sp.idempotents == self.classes + 1 && sp.pq_residual <= 1e-8 * self.v as f64 && sp.min_krein >= -1e-8
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Relation index of every ordered pair, row-major: `0` on the diagonal and
/// `i ≥ 1` for the pairs whose angle clusters at `angles[i − 1]`.
pub fn relation_masks(x: &LineSet) -> Result<(Vec<f64>, Vec<usize>), SchemeError> {
    let degrees = gram_degree_set(x)?;
    let n = x.len();
    let angles = x.angle_matrix();
    let mut rel = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let t = angles[a * n + b];
                let nearest = degrees
                    .angles
                    .iter()
                    .enumerate()
                    .min_by(|(_, p), (_, q)| (t - *p).abs().total_cmp(&(t - *q).abs()))
                    .map(|(i, _)| i)
                    .unwrap_or(0);
                rel[a * n + b] = nearest + 1;
            }
        }
    }
    Ok((degrees.angles, rel))
}

fn mask_matrices(n: usize, classes: usize, rel: &[usize]) -> Vec<DMatrix<f64>> {
    (0..=classes).map(|i| DMatrix::from_fn(n, n, |a, b| if rel[a * n + b] == i { 1.0 } else { 0.0 })).collect()
}

pub fn scheme_from_lineset(x: &LineSet, fam: &JacobiFamily) -> Result<SchemeReport, SchemeError> {
    scheme_from_lineset_seeded(x, fam, DEFAULT_SEED)
}

/// As [`scheme_from_lineset`], with the seed of the random combinations used
/// for simultaneous diagonalization.
pub fn scheme_from_lineset_seeded(x: &LineSet, fam: &JacobiFamily, seed: u64) -> Result<SchemeReport, SchemeError> {
    let n = x.len();
    let (angles, rel) = relation_masks(x)?;
    let s = angles.len();
    let a = mask_matrices(n, s, &rel);
    let sizes: Vec<usize> = (0..=s).map(|k| rel.iter().filter(|&&r| r == k).count()).collect();
    let valencies: Vec<usize> = sizes.iter().map(|&c| c / n.max(1)).collect();

    let mut closure_residual: f64 = 0.0;
    let mut p = vec![vec![vec![0.0; s + 1]; s + 1]; s + 1];
    for i in 0..=s {
        for j in 0..=s {
            let m = &a[i] * &a[j];
            let mut coeff = vec![0.0; s + 1];
            for (idx, &r) in rel.iter().enumerate() {
                coeff[r] += m[(idx / n, idx % n)];
            }
            for (c, &size) in coeff.iter_mut().zip(&sizes) {
                *c /= size as f64;
            }
            let norm = m.norm();
            if norm > 0.0 {
                let mut diff = 0.0;
                for (idx, &r) in rel.iter().enumerate() {
                    diff += (m[(idx / n, idx % n)] - coeff[r]).powi(2);
                }
                closure_residual = closure_residual.max(diff.sqrt() / norm);
            }
            p[i][j] = coeff;
        }
    }
    let closed = closure_residual <= CLOSURE_TOL;

    let need = 2 * s.saturating_sub(1);
    let t_max = need.max(1).min(fam.max_k());
    let strength = design_strength(x, fam, t_max)?.strength;

    let spectral = closed.then(|| spectral_data(&a, &p, &sizes, seed));
    Ok(SchemeReport {
        v: n,
        classes: s,
        angles,
        valencies,
        closure_residual,
        closed,
        design_strength: strength,
        predicted_closed: strength >= need,
        intersection_numbers: p,
        spectral,
    })
}

fn spectral_data(a: &[DMatrix<f64>], p_counted: &[Vec<Vec<f64>>], sizes: &[usize], seed: u64) -> SpectralData {
    let n = a[0].nrows();
    let s = a.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks = Vec::new();
    split(a, DMatrix::identity(n, n), &mut rng, 0, &mut blocks);

    let ones = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut spaces: Vec<(DMatrix<f64>, Vec<f64>)> = blocks
        .into_iter()
        .map(|u| {
            let r = u.ncols() as f64;
            let eig = a.iter().map(|ai| (u.transpose() * ai * &u).trace() / r).collect();
            (u, eig)
        })
        .collect();
    let trivial = spaces
        .iter()
        .enumerate()
        .map(|(j, (u, _))| (j, (u.transpose() * &ones).norm()))
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .map(|(j, _)| j)
        .unwrap_or(0);
    let first = spaces.swap_remove(trivial);
    spaces.sort_by(|x, y| {
        x.1.iter().zip(&y.1).skip(1).map(|(l, r)| r.total_cmp(l)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    spaces.insert(0, first);

    let m = spaces.len();
    let p: Vec<Vec<f64>> = spaces.iter().map(|(_, e)| e.clone()).collect();
    let multiplicities: Vec<usize> = spaces.iter().map(|(u, _)| u.ncols()).collect();
    let mut q = vec![vec![0.0; m]; s + 1];
    for (j, (u, _)) in spaces.iter().enumerate() {
        let e = u * u.transpose();
        for (i, ai) in a.iter().enumerate() {
            let k = (sizes[i] / n) as f64;
            q[i][j] = e.component_mul(ai).sum() / k;
        }
    }

    let v = n as f64;
    let mut pq_residual: f64 = 0.0;
    if m == s + 1 {
        for r in 0..m {
            for c in 0..m {
                let entry: f64 = (0..=s).map(|l| p[r][l] * q[l][c]).sum();
                let want = if r == c { v } else { 0.0 };
                pq_residual = pq_residual.max((entry - want).abs());
            }
        }
    } else {
        pq_residual = f64::INFINITY;
    }

    let mut krein = vec![vec![vec![0.0; m]; m]; m];
    let mut min_krein = f64::INFINITY;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let val: f64 = (0..=s).map(|l| q[l][i] * q[l][j] * p[k][l]).sum::<f64>() / v;
                min_krein = min_krein.min(val);
                krein[i][j][k] = val;
            }
        }
    }

    let mut reconstruction_residual: f64 = 0.0;
    if m == s + 1 {
        for i in 0..=s {
            for j in 0..=s {
                for k in 0..=s {
                    let val: f64 = (0..m).map(|l| p[l][i] * p[l][j] * q[k][l]).sum::<f64>() / v;
                    reconstruction_residual = reconstruction_residual.max((val - p_counted[i][j][k]).abs());
                }
            }
        }
    } else {
        reconstruction_residual = f64::INFINITY;
    }

    SpectralData { p, q, multiplicities, pq_residual, krein, min_krein, reconstruction_residual, idempotents: m }
}

fn is_common_eigenspace(a: &[DMatrix<f64>], u: &DMatrix<f64>) -> bool {
    let r = u.ncols() as f64;
    a.iter().all(|ai| {
        let w = ai * u;
        let lambda = (u.transpose() * &w).trace() / r;
        (w - u * lambda).norm() <= EIGEN_TOL * (1.0 + ai.norm()) * r.sqrt()
    })
}

fn split(a: &[DMatrix<f64>], u: DMatrix<f64>, rng: &mut ChaCha8Rng, depth: usize, out: &mut Vec<DMatrix<f64>>) {
    if is_common_eigenspace(a, &u) || depth >= MAX_SPLIT_DEPTH {
        out.push(u);
        return;
    }
    let r = u.ncols();
    let mut m = DMatrix::zeros(r, r);
    for ai in a {
        let c: f64 = rng.random_range(-1.0..1.0);
        m += (u.transpose() * ai * &u) * c;
    }
    let m = (&m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let scale = 1.0 + eig.eigenvalues.amax();
    let mut start = 0;
    for end in 1..=r {
        if end == r || eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] > EIGEN_TOL * scale {
            let cols: Vec<DVector<f64>> = order[start..end].iter().map(|&c| eig.eigenvectors.column(c).into_owned()).collect();
            let sub = &u * DMatrix::from_columns(&cols);
            split(a, sub, rng, depth + 1, out);
            start = end;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lineset_core::{Complex64, Field};

    #[test]
    fn orthonormal_basis_is_the_trivial_two_class_scheme() {
        let e = |i: usize| (0..3).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect::<Vec<_>>();
        let x = LineSet::new(3, Field::Real, vec![e(0), e(1), e(2)], None, 1e-9).unwrap();
        let r = scheme_from_lineset(&x, &JacobiFamily::new(3).unwrap()).unwrap();
        assert_eq!(r.classes, 1);
        assert_eq!(r.valencies, vec![1, 2]);
        assert!(r.certified());
        let sp = r.spectral.unwrap();
        assert_eq!(sp.multiplicities, vec![1, 2]);
        assert!((sp.p[1][1] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_line_has_no_relations() {
        let x = LineSet::new(2, Field::Real, vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]], None, 1e-9).unwrap();
        let r = scheme_from_lineset(&x, &JacobiFamily::new(2).unwrap()).unwrap();
        assert_eq!(r.classes, 0);
        assert!(r.certified());
    }
}
