//! Order-6 complex Hadamard matrices.

use std::str::FromStr;

use lineset_core::CMatrix;
use num_complex::Complex64;

use crate::MubError;

const UNIT_TOL: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Hadamard6Family {
    /// Symmetric family in one parameter `t`.
    Sym,
    /// Two parameters `s, t`; the character table of `Z₆` at `s = t = 1`.
    Char,
    /// Three parameters with `stu + s + t + u + 2 = 0`; `u` may be omitted.
    Skew,
}

impl FromStr for Hadamard6Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sym" => Ok(Hadamard6Family::Sym),
            "char" => Ok(Hadamard6Family::Char),
            "skew" => Ok(Hadamard6Family::Skew),
            other => Err(format!("unknown Hadamard family '{other}' (sym, char, skew)")),
        }
    }
}

fn unit(name: &'static str, value: Complex64) -> Result<Complex64, MubError> {
    if (value.norm() - 1.0).abs() > UNIT_TOL {
        return Err(MubError::NotUnimodular { name, value });
    }
    Ok(value)
}

fn from_rows(rows: [[Complex64; 6]; 6]) -> CMatrix {
    CMatrix::from_fn(6, 6, |i, j| rows[i][j])
}

fn check(h: CMatrix) -> Result<CMatrix, MubError> {
    let defect = (h.adjoint() * &h - CMatrix::identity(6, 6) * Complex64::new(6.0, 0.0)).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if defect > 1e-9 {
        return Err(MubError::Degenerate(format!("H*H differs from 6I by {defect:.3e}")));
    }
    Ok(h)
}

/// Builds a member of the chosen family and checks `H*H = 6I`.
///
/// Parameters: `Sym` takes `[t]`, `Char` takes `[s, t]`, `Skew` takes
/// `[s, t]` or `[s, t, u]`.
pub fn hadamard6(family: Hadamard6Family, params: &[Complex64]) -> Result<CMatrix, MubError> {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let arity = |lo: usize, hi: usize| {
        if params.len() < lo || params.len() > hi {
            Err(MubError::Degenerate(format!("{family:?} takes {lo}..={hi} parameters, got {}", params.len())))
        } else {
            Ok(())
        }
    };
    let h = match family {
        Hadamard6Family::Sym => {
            arity(1, 1)?;
            let t = unit("t", params[0])?;
            let tb = t.conj();
            from_rows([
                [one; 6],
                [one, -one, i, -i, -i, i],
                [one, i, -one, t, -t, -i],
                [one, -i, -tb, -one, i, tb],
                [one, -i, tb, i, -one, -tb],
                [one, i, -i, -t, t, -one],
            ])
        }
        Hadamard6Family::Char => {
            arity(2, 2)?;
            let s = unit("s", params[0])?;
            let t = unit("t", params[1])?;
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
            let w2 = w * w;
            from_rows([
                [one; 6],
                [one, one, w, w, w2, w2],
                [one, one, w2, w2, w, w],
                [one, -one, s, -s, t, -t],
                [one, -one, s * w, -s * w, t * w2, -t * w2],
                [one, -one, s * w2, -s * w2, t * w, -t * w],
            ])
        }
        Hadamard6Family::Skew => {
            arity(2, 3)?;
            let s = unit("s", params[0])?;
            let t = unit("t", params[1])?;
            let u = match params.get(2) {
                Some(&u) => u,
                None => {
                    let den = s * t + one;
                    if den.norm() < UNIT_TOL {
                        return Err(MubError::Degenerate("st = −1 leaves u undetermined".into()));
                    }
                    -(s + t + 2.0) / den
                }
            };
            let u = unit("u", u)?;
            let c = (s * t * u + s + t + u + 2.0).norm();
            if c > 1e-9 {
                return Err(MubError::Degenerate(format!("stu + s + t + u + 2 = {c:.3e} ≠ 0")));
            }
            let (sb, tb, ub) = (s.conj(), t.conj(), u.conj());
            from_rows([
                [one; 6],
                [one, -one, -s, s, tb, -tb],
                [one, -sb, -one, u, sb, -u],
                [one, sb, ub, one, (s * t * u).conj(), tb],
                [one, t, s, s * t * u, one, u],
                [one, -t, -ub, t, ub, -one],
            ])
        }
    };
    check(h)
}

/// `d = (1−√3)/2 + i·√(√3/2)`.
pub fn hadamard6_parameter() -> Complex64 {
    let r3 = 3f64.sqrt();
    Complex64::new((1.0 - r3) / 2.0, (r3 / 2.0).sqrt())
}

/// The isolated skew matrix built from `d`, with entries `(2,1) = −d̄` and
/// `(5,2) = d̄²` (zero-based).
pub fn hadamard6_d() -> CMatrix {
    let d = hadamard6_parameter();
    let one = Complex64::new(1.0, 0.0);
    let (d2, d3) = (d * d, d * d * d);
    let (db, db2, db3) = (d.conj(), d2.conj(), d3.conj());
    from_rows([
        [one; 6],
        [one, -one, -d, -d2, d2, d],
        [one, -db, one, d2, -d3, d2],
        [one, -db2, db2, -one, d2, -d2],
        [one, db2, -db3, db2, one, -d],
        [one, db, db2, -db2, -db, -one],
    ])
}

/// Sorted, deduplicated set of `h_{ij} h_{kl} h̄_{il} h̄_{kj}`, rounded to
/// `digits` decimals; equal for equivalent Hadamard matrices.
pub fn haagerup_invariants(h: &CMatrix, digits: i32) -> Vec<(i64, i64)> {
    let n = h.nrows();
    let scale = 10f64.powi(digits);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let z = h[(i, j)] * h[(k, l)] * h[(i, l)].conj() * h[(k, j)].conj();
                    let quant = |x: f64| (x * scale).round() as i64;
                    out.push((quant(z.re), quant(z.im)));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}
