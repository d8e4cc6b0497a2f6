use lineset_core::{kron, CMatrix};
use nalgebra::DVector;
use num_complex::Complex64;

use crate::{MubError, MubFamily, Provenance};

/// `W_{ij} = θ^{(i−j)²}` with `θ = e^{iπ(n+1)/n}`, so `θ² = e^{2πi/n}`.
pub fn spin_model_matrix(n: usize) -> CMatrix {
    let theta = std::f64::consts::PI * (n as f64 + 1.0) / n as f64;
    CMatrix::from_fn(n, n, |i, j| {
        let k = (i as i64 - j as i64).pow(2) as f64;
        Complex64::from_polar(1.0, theta * k)
    })
}

/// `{I, W/√n, D₀W/n}` where `(D₀)_{ii} = √n·(W^{(−)})_{i,0}`.
pub fn spin_model_mubs(n: usize) -> Result<MubFamily, MubError> {
    if n < 2 {
        return Err(MubError::Degenerate(format!("spin model needs n ≥ 2, got {n}")));
    }
    let w = spin_model_matrix(n);
    let rt = (n as f64).sqrt();
    let d0 = CMatrix::from_diagonal(&DVector::from_fn(n, |i, _| w[(i, 0)].inv() * rt));
    let b1 = &w / Complex64::new(rt, 0.0);
    let b2 = (&d0 * &w) / Complex64::new(n as f64, 0.0);
    MubFamily::new(vec![CMatrix::identity(n, n), b1, b2], Provenance::new("spin").with("n", n))
}

/// Basewise Kronecker products of the first `min(|F1|, |F2|)` bases.
pub fn tensor_mubs(f1: &MubFamily, f2: &MubFamily) -> Result<MubFamily, MubError> {
    let k = f1.len().min(f2.len());
    let bases = f1.bases().iter().zip(f2.bases()).take(k).map(|(a, b)| kron(a, b)).collect();
    let prov = Provenance::new("tensor").with("left", &f1.provenance).with("right", &f2.provenance);
    MubFamily::new(bases, prov)
}
