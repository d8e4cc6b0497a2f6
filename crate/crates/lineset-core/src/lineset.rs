use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::LineSetError;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Complex,
    Real,
}

/// A finite list of unit vectors in `C^d` (or `R^d`), optionally partitioned
/// into labelled cells of size `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSet {
    dim: usize,
    field: Field,
    vectors: Vec<Vec<Complex64>>,
    labels: Option<Vec<usize>>,
    tol: f64,
}

#[derive(Serialize, Deserialize)]
struct LineSetFile {
    dim: usize,
    field: Field,
    tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<usize>>,
    vectors: Vec<Vec<[f64; 2]>>,
}

pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `|⟨u,v⟩|²`.
pub fn angle(u: &[Complex64], v: &[Complex64]) -> f64 {
    inner(u, v).norm_sqr()
}

impl LineSet {
    pub fn new(
        dim: usize,
        field: Field,
        vectors: Vec<Vec<Complex64>>,
        labels: Option<Vec<usize>>,
        tol: f64,
    ) -> Result<Self, LineSetError> {
        if dim == 0 {
            return Err(LineSetError::Malformed { index: None, reason: "dimension must be positive".into() });
        }
        if vectors.is_empty() {
            return Err(LineSetError::Malformed { index: None, reason: "a line set needs at least one vector".into() });
        }
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(LineSetError::Malformed { index: None, reason: format!("invalid tolerance {tol}") });
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(LineSetError::Malformed {
                    index: Some(i),
                    reason: format!("expected {dim} coordinates, found {}", v.len()),
                });
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(LineSetError::Malformed { index: Some(i), reason: "non-finite coordinate".into() });
            }
            let n = norm_sqr(v).sqrt();
            if (n - 1.0).abs() > tol.max(1e-12) {
                return Err(LineSetError::Malformed { index: Some(i), reason: format!("norm {n} is not 1") });
            }
            if field == Field::Real && v.iter().any(|z| z.im.abs() > tol.max(1e-12)) {
                return Err(LineSetError::Malformed { index: Some(i), reason: "complex entry in a real line set".into() });
            }
        }
        if let Some(l) = &labels {
            check_labels(l, vectors.len(), dim)?;
        }
        Ok(LineSet { dim, field, vectors, labels, tol })
    }

    /// Normalizes every vector first; zero vectors are rejected.
    pub fn from_unnormalized(
        dim: usize,
        field: Field,
        vectors: Vec<Vec<Complex64>>,
        labels: Option<Vec<usize>>,
        tol: f64,
    ) -> Result<Self, LineSetError> {
        let mut out = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.into_iter().enumerate() {
            let n = norm_sqr(&v).sqrt();
            if n < 1e-300 {
                return Err(LineSetError::Malformed { index: Some(i), reason: "zero vector".into() });
            }
            out.push(v.into_iter().map(|z| z / n).collect());
        }
        Self::new(dim, field, out, labels, tol)
    }

    /// Columns of each basis, labelled by basis index.
    pub fn from_bases(bases: &[DMatrix<Complex64>], tol: f64) -> Result<Self, LineSetError> {
        let Some(first) = bases.first() else {
            return Err(LineSetError::Malformed { index: None, reason: "no bases".into() });
        };
        let d = first.nrows();
        let mut vectors: Vec<Vec<Complex64>> = Vec::new();
        let mut labels = Vec::new();
        for (b, m) in bases.iter().enumerate() {
            if m.nrows() != d || m.ncols() != d {
                return Err(LineSetError::Malformed { index: Some(b), reason: "bases must be square of equal size".into() });
            }
            for c in 0..d {
                vectors.push(m.column(c).iter().copied().collect());
                labels.push(b);
            }
        }
        let real = vectors.iter().flatten().all(|z| z.im.abs() <= tol.max(1e-12));
        Self::new(d, if real { Field::Real } else { Field::Complex }, vectors, Some(labels), tol)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn with_labels(self, labels: Option<Vec<usize>>) -> Result<Self, LineSetError> {
        Self::new(self.dim, self.field, self.vectors, labels, self.tol)
    }

    /// Index lists of the labelled cells, in order of first appearance.
    pub fn cells(&self) -> Option<Vec<Vec<usize>>> {
        let labels = self.labels.as_ref()?;
        let mut order: Vec<usize> = Vec::new();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match order.iter().position(|&x| x == l) {
                Some(p) => cells[p].push(i),
                None => {
                    order.push(l);
                    cells.push(vec![i]);
                }
            }
        }
        Some(cells)
    }

    pub fn angle(&self, i: usize, j: usize) -> f64 {
        angle(&self.vectors[i], &self.vectors[j])
    }

    /// Row-major `n × n` matrix of `|⟨a,b⟩|²`.
    pub fn angle_matrix(&self) -> Vec<f64> {
        let n = self.len();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            out[i * n + i] = norm_sqr(&self.vectors[i]).powi(2);
            for j in i + 1..n {
                let a = self.angle(i, j);
                out[i * n + j] = a;
                out[j * n + i] = a;
            }
        }
        out
    }

    pub fn gram(&self) -> DMatrix<Complex64> {
        let n = self.len();
        DMatrix::from_fn(n, n, |i, j| inner(&self.vectors[i], &self.vectors[j]))
    }

    /// `(i, j, |⟨v_i, v_j⟩|²)` for `i < j`.
    pub fn pair_angles(&self) -> Vec<(usize, usize, f64)> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j, self.angle(i, j)));
            }
        }
        out
    }

    /// `U·X`; the field becomes complex unless `U` is real.
    pub fn apply_unitary(&self, u: &DMatrix<Complex64>) -> Result<Self, LineSetError> {
        if u.nrows() != self.dim || u.ncols() != self.dim {
            return Err(LineSetError::Malformed { index: None, reason: "unitary has the wrong size".into() });
        }
        let vectors: Vec<Vec<Complex64>> = self
            .vectors
            .iter()
            .map(|v| {
                let col = nalgebra::DVector::from_column_slice(v);
                (u * col).iter().copied().collect()
            })
            .collect();
        let real = self.field == Field::Real && u.iter().all(|z| z.im.abs() <= 1e-14);
        let field = if real { Field::Real } else { Field::Complex };
        Self::from_unnormalized(self.dim, field, vectors, self.labels.clone(), self.tol)
    }

    /// Multiplies vector `i` by the unit scalar `phases[i]`.
    pub fn rephase(&self, phases: &[Complex64]) -> Result<Self, LineSetError> {
        let vectors = self.vectors.iter().zip(phases).map(|(v, &p)| v.iter().map(|z| z * p).collect()).collect();
        Self::from_unnormalized(self.dim, Field::Complex, vectors, self.labels.clone(), self.tol)
    }

    pub fn to_json(&self) -> String {
        let file = LineSetFile {
            dim: self.dim,
            field: self.field,
            tol: self.tol,
            labels: self.labels.clone(),
            vectors: self.vectors.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect()).collect(),
        };
        serde_json::to_string_pretty(&file).expect("line sets always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, LineSetError> {
        let file: LineSetFile = serde_json::from_str(text).map_err(|e| LineSetError::Json(e.to_string()))?;
        let vectors = file.vectors.into_iter().map(|v| v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()).collect();
        Self::new(file.dim, file.field, vectors, file.labels, file.tol)
    }

    /// `i,j,angle` rows for every unordered pair, with a header line.
    pub fn angles_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["i", "j", "angle"]).expect("in-memory csv");
        for (i, j, a) in self.pair_angles() {
            w.write_record([i.to_string(), j.to_string(), format!("{a:.15e}")]).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }

    pub fn read(path: &Path) -> Result<Self, LineSetError> {
        let text = std::fs::read_to_string(path).map_err(|e| LineSetError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), LineSetError> {
        std::fs::write(path, self.to_json()).map_err(|e| LineSetError::Io(format!("{}: {e}", path.display())))
    }
}

fn check_labels(labels: &[usize], n: usize, dim: usize) -> Result<(), LineSetError> {
    if labels.len() != n {
        return Err(LineSetError::BadLabels(format!("{} labels for {n} vectors", labels.len())));
    }
    let mut counts = std::collections::BTreeMap::new();
    for &l in labels {
        *counts.entry(l).or_insert(0usize) += 1;
    }
    if let Some((l, c)) = counts.iter().find(|(_, &c)| c != dim) {
        return Err(LineSetError::BadLabels(format!("cell {l} has {c} vectors, expected {dim}")));
    }
    Ok(())
}
