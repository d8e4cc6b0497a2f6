//! Mutually unbiased bases: Wootters–Fields over `GF(q)` and `GR(4^m)`,
//! Alltop cubics, spin-model triples, tensor products, commutative
//! semifields, and the order-6 complex Hadamard families.

mod field;
mod hadamard;
mod semifield;
mod spin;

use std::collections::BTreeMap;

use finite_algebra::AlgebraError;
use lineset_core::{unitary_defect, CMatrix, LineSet, LineSetError};
use num_complex::Complex64;
use serde::Serialize;

pub use field::{alltop_equivalence_probe, alltop_mubs, wf_mubs};
pub use hadamard::{haagerup_invariants, hadamard6, hadamard6_d, hadamard6_parameter, Hadamard6Family};
pub use semifield::{semifield_mubs, SemifieldAxiom, SemifieldTable};
pub use spin::{spin_model_matrix, spin_model_mubs, tensor_mubs};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MubError {
    #[error("{0} is not a prime power greater than 1")]
    NotPrimePower(u64),
    #[error("construction needs characteristic > 3, got {0}")]
    SmallCharacteristic(u64),
    #[error("construction needs odd characteristic, got {0}")]
    EvenCharacteristic(u64),
    #[error("semifield axiom '{axiom}' fails at {witnesses:?}")]
    Semifield { axiom: SemifieldAxiom, witnesses: Vec<u32> },
    #[error("semifield table: {0}")]
    BadTable(String),
    #[error("parameter {name} = {value} is not on the unit circle")]
    NotUnimodular { name: &'static str, value: Complex64 },
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("basis {index} is not unitary (defect {defect:.3e})")]
    NotUnitary { index: usize, defect: f64 },
    #[error("bases {i} and {j} are not unbiased (deviation {deviation:.3e})")]
    NotFlat { i: usize, j: usize, deviation: f64 },
    #[error("bases must be square of dimension {0}")]
    Shape(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    LineSet(#[from] LineSetError),
}

/// Construction tag plus its parameters, as strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub method: String,
    pub params: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new(method: &str) -> Self {
        Provenance { method: method.to_string(), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.method)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct MubFamily {
    d: usize,
    bases: Vec<CMatrix>,
    provenance: Provenance,
}

pub const FAMILY_TOL: f64 = 1e-9;

impl MubFamily {
    /// Validates unitarity and pairwise flatness within `FAMILY_TOL`.
    pub fn new(bases: Vec<CMatrix>, provenance: Provenance) -> Result<Self, MubError> {
        let d = bases.first().map_or(0, |b| b.nrows());
        if d == 0 {
            return Err(MubError::Shape(0));
        }
        for (index, b) in bases.iter().enumerate() {
            if b.nrows() != d || b.ncols() != d {
                return Err(MubError::Shape(d));
            }
            let defect = unitary_defect(b);
            if defect > FAMILY_TOL {
                return Err(MubError::NotUnitary { index, defect });
            }
        }
        let flat = 1.0 / (d as f64).sqrt();
        for i in 0..bases.len() {
            for j in i + 1..bases.len() {
                let m = bases[i].adjoint() * &bases[j];
                let deviation = m.iter().map(|z| (z.norm() - flat).abs()).fold(0.0, f64::max);
                if deviation > FAMILY_TOL {
                    return Err(MubError::NotFlat { i, j, deviation });
                }
            }
        }
        Ok(MubFamily { d, bases, provenance })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn bases(&self) -> &[CMatrix] {
        &self.bases
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// All basis columns, labelled by basis index.
    pub fn to_lineset(&self, tol: f64) -> Result<LineSet, LineSetError> {
        LineSet::from_bases(&self.bases, tol)
    }

    pub fn truncate(mut self, k: usize) -> Self {
        self.bases.truncate(k.max(1));
        self
    }
}

pub(crate) fn root_of_unity(n: u64, k: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k % n) as f64 / n as f64)
}
