//! Degree sets, Jacobi pair sums and the MUB / equiangular certificates.

use jacobi_bounds::{equiangular_relative_bound, JacobiFamily, Kind, Rat};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::lineset::LineSet;
use crate::LineSetError;

pub const DEFAULT_DESIGN_EPS: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeSetReport {
    /// Cluster means of `|⟨a,b⟩|²` over unordered distinct pairs, increasing.
    pub angles: Vec<f64>,
    pub multiplicities: Vec<usize>,
    /// Largest deviation of a pair from its cluster mean.
    pub spread: f64,
    pub s: usize,
    pub zero_present: bool,
    pub pairs: usize,
}

/// Splits sorted values wherever consecutive gaps exceed `tol`.
pub fn cluster_sorted(values: &[f64], tol: f64) -> Vec<(f64, usize, f64)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            let block = &values[start..i];
            if !block.is_empty() {
                let mean = block.iter().sum::<f64>() / block.len() as f64;
                let spread = block.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
                out.push((mean, block.len(), spread));
            }
            start = i;
        }
    }
    out
}

pub fn gram_degree_set(x: &LineSet) -> Result<DegreeSetReport, LineSetError> {
    let tol = x.tol();
    let mut values = Vec::with_capacity(x.len() * x.len().saturating_sub(1) / 2);
    for (i, j, a) in x.pair_angles() {
        if a > 1.0 - tol {
            return Err(LineSetError::DuplicateLine { i, j });
        }
        values.push(a);
    }
    values.sort_by(f64::total_cmp);
    let clusters = cluster_sorted(&values, tol);
    let zero_present = clusters.first().is_some_and(|c| c.0.abs() <= tol);
    Ok(DegreeSetReport {
        angles: clusters.iter().map(|c| c.0).collect(),
        multiplicities: clusters.iter().map(|c| c.1).collect(),
        spread: clusters.iter().map(|c| c.2).fold(0.0, f64::max),
        s: clusters.len(),
        zero_present,
        pairs: values.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DesignReport {
    /// `T_r` for `r = 1..=t_max` (index 0 holds `r = 1`).
    pub t_values: Vec<f64>,
    /// `T_r / (g_r(1)/|X|)`, the quantity compared against `eps`.
    pub relative: Vec<f64>,
    pub strength: usize,
    pub eps: f64,
}

pub fn design_strength(x: &LineSet, fam: &JacobiFamily, t_max: usize) -> Result<DesignReport, LineSetError> {
    design_strength_eps(x, fam, t_max, DEFAULT_DESIGN_EPS)
}

/// `T_r = (1/|X|²) Σ_{a,b} g_r(|⟨a,b⟩|²)`, summed row-major in stored order.
pub fn design_strength_eps(x: &LineSet, fam: &JacobiFamily, t_max: usize, eps: f64) -> Result<DesignReport, LineSetError> {
    if fam.d() as usize != x.dim() {
        return Err(LineSetError::DimensionMismatch { expected: x.dim(), found: fam.d() as usize });
    }
    if t_max > fam.max_k() {
        return Err(LineSetError::Jacobi(jacobi_bounds::JacobiError::BeyondCache { k: t_max, max_k: fam.max_k() }));
    }
    let n = x.len();
    let angles = x.angle_matrix();
    let mut t_values = Vec::with_capacity(t_max);
    let mut relative = Vec::with_capacity(t_max);
    let mut strength = 0;
    let mut passing = true;
    for r in 1..=t_max {
        let g: Vec<f64> = fam.g(r)?.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let eval = |t: f64| g.iter().rev().fold(0.0, |acc, c| acc * t + c);
        let mut total = 0.0;
        for row in angles.chunks(n) {
            total += row.iter().map(|&a| eval(a)).sum::<f64>();
        }
        let tr = total / (n * n) as f64;
        let scale = fam.value_at_one(r, Kind::G)?.to_f64().unwrap_or(f64::NAN) / n as f64;
        let rel = tr / scale;
        if passing && rel <= eps {
            strength = r;
        } else {
            passing = false;
        }
        t_values.push(tr);
        relative.push(rel);
    }
    Ok(DesignReport { t_values, relative, strength, eps })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MubReport {
    pub unbiased: bool,
    pub alpha: f64,
    pub count: usize,
    /// Largest `| |⟨a,b⟩|² − 1/d |` over cross-cell pairs.
    pub max_deviation: f64,
    pub failures: Vec<String>,
}

pub fn verify_mub(x: &LineSet) -> Result<MubReport, LineSetError> {
    let cells = x.cells().ok_or(LineSetError::MissingLabels)?;
    let d = x.dim();
    let tol = x.tol();
    let mut bad = Vec::new();
    for (c, cell) in cells.iter().enumerate() {
        let worst = cell
            .iter()
            .flat_map(|&i| cell.iter().map(move |&j| (i, j)))
            .map(|(i, j)| {
                let ip = crate::lineset::inner(x.vector(i), x.vector(j));
                let want = if i == j { 1.0 } else { 0.0 };
                (ip - want).norm()
            })
            .fold(0.0, f64::max);
        if worst > tol {
            bad.push((c, worst));
        }
    }
    if !bad.is_empty() {
        return Err(LineSetError::NonOrthonormal { cells: bad });
    }
    let alpha = 1.0 / d as f64;
    let mut max_dev: f64 = 0.0;
    let mut failures = Vec::new();
    for (ci, a) in cells.iter().enumerate() {
        for (cj, b) in cells.iter().enumerate().skip(ci + 1) {
            let dev = a
                .iter()
                .flat_map(|&i| b.iter().map(move |&j| (i, j)))
                .map(|(i, j)| (x.angle(i, j) - alpha).abs())
                .fold(0.0, f64::max);
            max_dev = max_dev.max(dev);
            if dev > tol {
                failures.push(format!("cells {ci} and {cj}: max angle deviation {dev:.3e}"));
            }
        }
    }
    Ok(MubReport { unbiased: failures.is_empty(), alpha, count: cells.len(), max_deviation: max_dev, failures })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquiangularReport {
    pub equiangular: bool,
    pub alpha: f64,
    /// `α` snapped to a rational with denominator at most 10⁶, rendered `p/q`.
    pub alpha_exact: Option<String>,
    pub relative_bound: Option<String>,
    pub relative_equality: bool,
    pub t1: f64,
    /// Whether `T₁ ≈ 0` agrees with `relative_equality`.
    pub t1_consistent: bool,
}

pub fn verify_equiangular(x: &LineSet, fam: &JacobiFamily) -> Result<EquiangularReport, LineSetError> {
    let deg = gram_degree_set(x)?;
    let design = design_strength(x, fam, 1)?;
    let t1_rel = design.relative[0];
    let equiangular = deg.s == 1;
    let alpha = deg.angles.first().copied().unwrap_or(0.0);
    let (mut alpha_exact, mut bound_text, mut equality) = (None, None, false);
    if equiangular {
        let a = snap_rational(alpha, 1_000_000);
        alpha_exact = Some(jacobi_bounds::plain_rational(&a));
        if let Some(b) = equiangular_relative_bound(x.dim() as u32, &a) {
            equality = b == Rat::from_integer(BigInt::from(x.len()));
            bound_text = Some(jacobi_bounds::plain_rational(&b));
        }
    }
    let t1_zero = t1_rel <= DEFAULT_DESIGN_EPS;
    Ok(EquiangularReport {
        equiangular,
        alpha,
        alpha_exact,
        relative_bound: bound_text,
        relative_equality: equality,
        t1: design.t_values[0],
        t1_consistent: !equiangular || t1_zero == equality,
    })
}

/// Best rational approximation with denominator at most `max_den`, from the
/// continued-fraction convergents and the last semiconvergent.
pub fn snap_rational(x: f64, max_den: u64) -> Rat {
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let max_den = max_den as u128;
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let a = a as u128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den {
            let k = (max_den - q0) / q1;
            let (ps, qs) = (k * p1 + p0, k * q1 + q0);
            let err_s = (ps as f64 / qs as f64 - x.abs()).abs();
            let err_c = (p1 as f64 / q1 as f64 - x.abs()).abs();
            if k > 0 && err_s < err_c {
                (p1, q1) = (ps, qs);
            }
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a as f64;
        if frac < 1e-15 || (p1 as f64 / q1 as f64 - x.abs()).abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return Rat::zero();
    }
    let r = Rat::new(BigInt::from(p1), BigInt::from(q1));
    if neg {
        -r
    } else {
        r
    }
}
