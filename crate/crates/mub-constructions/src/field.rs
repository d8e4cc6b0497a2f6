use finite_algebra::{prime_power, GaloisField, GaloisRing};
use lineset_core::{canonical_dephase, CMatrix};

use crate::{root_of_unity, MubError, MubFamily, Provenance};

fn field_for(q: u64) -> Result<GaloisField, MubError> {
    let (p, m) = prime_power(q).ok_or(MubError::NotPrimePower(q))?;
    Ok(GaloisField::new(p as u32, m, None)?)
}

/// `{I} ∪ {W_z}`: `(W_z)_{x,y} = q^{-1/2} ω^{tr(zx² + 2yx)}` for odd `q`, and
/// `q^{-1/2} i^{tr(zx² + 2yx)}` over the Teichmüller set of `GR(4^m)` for `q = 2^m`.
pub fn wf_mubs(q: u64) -> Result<MubFamily, MubError> {
    let (p, m) = prime_power(q).ok_or(MubError::NotPrimePower(q))?;
    let n = q as usize;
    let scale = 1.0 / (q as f64).sqrt();
    let mut bases = vec![CMatrix::identity(n, n)];
    let provenance;
    if p == 2 {
        let r = GaloisRing::new(m)?;
        let t = r.teichmuller_set();
        for &z in t {
            bases.push(CMatrix::from_fn(n, n, |ix, iy| {
                let (x, y) = (t[ix], t[iy]);
                let e = r.add(r.mul(z, r.mul(x, x)), r.mul(2, r.mul(y, x)));
                root_of_unity(4, r.trace(e) as u64) * scale
            }));
        }
        provenance = Provenance::new("wf").with("q", q).with("ring", r.descriptor());
    } else {
        let f = field_for(q)?;
        let two = f.from_int(2);
        for z in f.elements() {
            bases.push(CMatrix::from_fn(n, n, |x, y| {
                let (x, y) = (x as u32, y as u32);
                let e = f.add(f.mul(z, f.mul(x, x)), f.mul(two, f.mul(y, x)));
                root_of_unity(p, f.trace(e) as u64) * scale
            }));
        }
        provenance = Provenance::new("wf").with("q", q).with("field", f.descriptor());
    }
    MubFamily::new(bases, provenance)
}

/// `{I} ∪ {A_z}` with `(A_z)_{x,y} = q^{-1/2} ω^{tr((x+z)³ + y(x+z))}`.
pub fn alltop_mubs(q: u64) -> Result<MubFamily, MubError> {
    let f = field_for(q)?;
    let p = f.p() as u64;
    if p <= 3 {
        return Err(MubError::SmallCharacteristic(p));
    }
    let n = q as usize;
    let scale = 1.0 / (q as f64).sqrt();
    let mut bases = vec![CMatrix::identity(n, n)];
    for z in f.elements() {
        bases.push(CMatrix::from_fn(n, n, |x, y| {
            let s = f.add(x as u32, z);
            let e = f.add(f.pow(s, 3), f.mul(y as u32, s));
            root_of_unity(p, f.trace(e) as u64) * scale
        }));
    }
    MubFamily::new(bases, Provenance::new("alltop").with("q", q).with("field", f.descriptor()))
}

/// Largest deviation of `|entry|` from `q^{-1/2}` over
/// `canonical_dephase([A₀, A_a])` for every `a ≥ 1`.
pub fn alltop_equivalence_probe(fam: &MubFamily) -> Result<f64, MubError> {
    let b = fam.bases();
    let flat = 1.0 / (fam.d() as f64).sqrt();
    let mut worst: f64 = 0.0;
    for a in 2..b.len() {
        let out = canonical_dephase(&[b[1].clone(), b[a].clone()])?;
        worst = out[1].iter().map(|z| (z.norm() - flat).abs()).fold(worst, f64::max);
    }
    Ok(worst)
}
