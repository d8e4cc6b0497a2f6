use jacobi_bounds::JacobiFamily;
use lineset_core::{design_strength, gram_degree_set, LineSet, LineSetError};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::displacement::{orbit, DisplacementGroup};
use crate::SicError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum FiducialSource {
    Builtin,
    Appleby { root_index: usize, y: f64 },
    User,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiducialCandidate {
    pub d: usize,
    pub vector: Vec<Complex64>,
    pub source: FiducialSource,
    pub group: DisplacementGroup,
}

impl FiducialCandidate {
    /// Normalizes `vector`; the group is cyclic on `Z_d`.
    pub fn user(vector: Vec<Complex64>) -> Result<Self, SicError> {
        let d = vector.len();
        let n = vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if d == 0 || n < 1e-300 || !n.is_finite() {
            return Err(SicError::ZeroVector);
        }
        Ok(FiducialCandidate {
            d,
            vector: vector.into_iter().map(|z| z / n).collect(),
            source: FiducialSource::User,
            group: DisplacementGroup::Cyclic(d),
        })
    }
}

pub fn wh_orbit(v: &FiducialCandidate, tol: f64) -> Result<LineSet, SicError> {
    orbit(v.group, &v.vector, tol)
}

/// `d = 2`: `(√(3+√3), e^{iπ/4}√(3−√3))/√6`; `d = 3`: `(1,1,0)/√2`;
/// `d = 8`: Hoggar's `(0,0,s,t,s,−s,0,r)/√6` under the `GF(2)³` group.
pub fn builtin_fiducial(d: usize) -> Result<FiducialCandidate, SicError> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let r3 = 3f64.sqrt();
    let (vector, group) = match d {
        2 => {
            let k = 1.0 / 6f64.sqrt();
            (vec![c((3.0 + r3).sqrt() * k, 0.0), Complex64::from_polar((3.0 - r3).sqrt() * k, std::f64::consts::FRAC_PI_4)], DisplacementGroup::Cyclic(2))
        }
        3 => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            (vec![c(h, 0.0), c(h, 0.0), c(0.0, 0.0)], DisplacementGroup::Cyclic(3))
        }
        8 => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let (s, t, r, z) = (c(h, h), c(h, -h), c(2f64.sqrt(), 0.0), c(0.0, 0.0));
            let k = 1.0 / 6f64.sqrt();
            (vec![z, z, s, t, s, -s, z, r].into_iter().map(|x| x * k).collect(), DisplacementGroup::BinaryTriple)
        }
        _ => return Err(SicError::UnsupportedDimension(d)),
    };
    Ok(FiducialCandidate { d, vector, source: FiducialSource::Builtin, group })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SicReport {
    pub is_sic: bool,
    pub count: usize,
    pub equiangular: bool,
    pub alpha: f64,
    /// Largest `| |⟨a,b⟩|² − 1/(d+1) |` over distinct pairs.
    pub max_deviation: f64,
    pub strength: usize,
}

/// `|X| = d²`, equiangular, and `α = 1/(d+1)` within the set's tolerance.
pub fn verify_sic(x: &LineSet) -> Result<SicReport, SicError> {
    let d = x.dim();
    let target = 1.0 / (d as f64 + 1.0);
    let max_deviation = x.pair_angles().iter().map(|p| (p.2 - target).abs()).fold(0.0, f64::max);
    let (equiangular, alpha) = match gram_degree_set(x) {
        Ok(r) => (r.s == 1, r.angles.first().copied().unwrap_or(0.0)),
        Err(LineSetError::DuplicateLine { .. }) => (false, 1.0),
        Err(e) => return Err(e.into()),
    };
    let fam = JacobiFamily::with_depth(d as u32, 3)?;
    let strength = design_strength(x, &fam, 3)?.strength;
    let is_sic = x.len() == d * d && equiangular && max_deviation <= x.tol();
    Ok(SicReport { is_sic, count: x.len(), equiangular, alpha, max_deviation, strength })
}

/// Jacobi symbol `(x | d)` for odd positive `d`.
pub fn jacobi_symbol(x: i64, d: u64) -> i32 {
    assert!(d % 2 == 1, "Jacobi symbol needs odd d");
    let mut a = x.rem_euclid(d as i64) as u64;
    let mut n = d;
    let mut sign = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 { sign } else { 0 }
}

/// Amplitudes `a = √((1−1/√(d+1))/d)` and `b = √((1+(d−1)/√(d+1))/d)`.
pub fn appleby_amplitudes(d: usize) -> (f64, f64) {
    let df = d as f64;
    let s = (df + 1.0).sqrt();
    (((1.0 - 1.0 / s) / df).sqrt(), ((1.0 + (df - 1.0) / s) / df).sqrt())
}

/// Coefficients (constant first) of
/// `(2by+(d−1)ay²−a)² + 4(1−y²)(b−ay)² − 1/(a²(d+1))`.
pub fn appleby_quartic(d: usize) -> [f64; 5] {
    let (a, b) = appleby_amplitudes(d);
    let df = d as f64;
    [
        a * a + 4.0 * b * b - 1.0 / (a * a * (df + 1.0)),
        -12.0 * a * b,
        2.0 * a * a * (3.0 - df),
        4.0 * a * b * (df + 1.0),
        a * a * ((df - 1.0).powi(2) - 4.0),
    ]
}

fn eval(c: &[f64], y: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * y + k)
}

fn eval_deriv(c: &[f64], y: f64) -> f64 {
    c.iter().enumerate().skip(1).rev().fold(0.0, |acc, (i, &k)| acc * y + i as f64 * k)
}

/// Real roots in `[−1, 1]`: companion-matrix eigenvalues, one Newton step
/// (kept only when it lowers the residual), roots outside the interval by more than `1e−9` dropped.
pub fn real_roots_in_unit_interval(coeffs: &[f64]) -> Vec<f64> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|x| x.abs() <= 1e-12 * scale) {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let comp = DMatrix::from_fn(n, n, |i, j| if j == n - 1 { -c[i] / lead } else if i == j + 1 { 1.0 } else { 0.0 });
    let mut roots: Vec<f64> = Vec::new();
    for z in comp.complex_eigenvalues().iter() {
        if z.im.abs() > 1e-6 {
            continue;
        }
        let mut y = z.re;
        let dy = eval_deriv(&c, y);
        if dy.abs() > 1e-300 {
            let polished = y - eval(&c, y) / dy;
            if eval(&c, polished).abs() < eval(&c, y).abs() {
                y = polished;
            }
        }
        if y.abs() > 1.0 + 1e-9 {
            continue;
        }
        let y = y.clamp(-1.0, 1.0);
        if roots.iter().all(|r| (r - y).abs() > 1e-9) {
            roots.push(y);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

#[derive(Clone, Debug)]
pub struct ApplebyCandidate {
    pub candidate: FiducialCandidate,
    /// Quartic value at the root.
    pub residual: f64,
    pub report: SicReport,
}

/// One candidate per real root: `v_0 = b`, `v_x = a·e^{i·arccos(y)·(x|d)}`.
pub fn appleby_candidates(d: usize, tol: f64) -> Result<Vec<ApplebyCandidate>, SicError> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(SicError::NeedOddDimension(d));
    }
    let (a, b) = appleby_amplitudes(d);
    let quartic = appleby_quartic(d);
    let mut out = Vec::new();
    for (root_index, y) in real_roots_in_unit_interval(&quartic).into_iter().enumerate() {
        let phi = y.acos();
        let vector: Vec<Complex64> = (0..d)
            .map(|x| if x == 0 { Complex64::new(b, 0.0) } else { Complex64::from_polar(a, phi * jacobi_symbol(x as i64, d as u64) as f64) })
            .collect();
        let candidate = FiducialCandidate { d, vector, source: FiducialSource::Appleby { root_index, y }, group: DisplacementGroup::Cyclic(d) };
        let report = verify_sic(&wh_orbit(&candidate, tol)?)?;
        out.push(ApplebyCandidate { candidate, residual: eval(&quartic, y), report });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlmostFlatBranch {
    /// Squared modulus of the `d − 1` flat entries.
    pub a2: f64,
    /// Squared modulus of the distinguished entry.
    pub b2: f64,
    /// Whether both squared moduli are nonnegative.
    pub feasible: bool,
}

/// Both sign branches `a² = (1 ± 1/√(d+1))/d`, `b² = (1 ∓ (d−1)/√(d+1))/d`.
pub fn almost_flat_params(d: usize) -> Result<[AlmostFlatBranch; 2], SicError> {
    if d < 2 {
        return Err(SicError::UnsupportedDimension(d));
    }
    let df = d as f64;
    let s = 1.0 / (df + 1.0).sqrt();
    let branch = |sign: f64| {
        let a2 = (1.0 + sign * s) / df;
        let b2 = (1.0 - sign * (df - 1.0) * s) / df;
        assert!(((df - 1.0) * a2 + b2 - 1.0).abs() < 1e-12, "unit norm");
        AlmostFlatBranch { a2, b2, feasible: a2 >= -1e-15 && b2 >= -1e-15 }
    };
    Ok([branch(-1.0), branch(1.0)])
}
