//! Absolute, relative, Welch, flat and MUB bounds.
//!
//! Relative bounds never decide applicability on their own: each evaluation
//! returns the bound `F(1)/c_0` together with the sign conditions it rests on.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use crate::dims::{dim_hom, dim_hom_real};
use crate::family::{annihilator, eval_exact, int, JacobiFamily, Kind, Rat, RatPoly};
use crate::JacobiError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoundMode {
    /// `F(α_i) ≤ 0`, `c_r ≥ 0` in the `g` basis: `|X| ≤ F(1)/c_0`.
    SdistG,
    /// `α_i F(α_i) ≤ 0`, `c_r ≥ 0` in the `h` basis: `|X| ≤ F(1)/c_0`.
    SdistH,
    /// t-design, `F(α_i) ≥ 0`, `c_r ≤ 0` for `r > t` in the `g` basis: `|X| ≥ F(1)/c_0`.
    DesignG,
    /// t-design, `α_i F(α_i) ≥ 0`, `c_r ≤ 0` for `r ≥ t` in the `h` basis: `|X| ≥ F(1)/c_0`.
    DesignH,
}

impl BoundMode {
    pub fn kind(self) -> Kind {
        match self {
            BoundMode::SdistG | BoundMode::DesignG => Kind::G,
            BoundMode::SdistH | BoundMode::DesignH => Kind::H,
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, BoundMode::SdistG | BoundMode::SdistH)
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundMode::SdistG => "sdist-g",
            BoundMode::SdistH => "sdist-h",
            BoundMode::DesignG => "design-g",
            BoundMode::DesignH => "design-h",
        }
    }
}

impl std::str::FromStr for BoundMode {
    type Err = JacobiError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sdist-g" => Ok(BoundMode::SdistG),
            "sdist-h" => Ok(BoundMode::SdistH),
            "design-g" => Ok(BoundMode::DesignG),
            "design-h" => Ok(BoundMode::DesignH),
            other => Err(JacobiError::InvalidQuery(format!("unknown mode {other}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundQuery {
    pub d: u32,
    pub angles: Vec<Rat>,
    pub mode: BoundMode,
    /// Coefficients `c_r` of `F` in the basis selected by `mode`.
    pub coeffs: Vec<Rat>,
    /// Design strength, required by the design modes.
    pub t: Option<usize>,
}

impl BoundQuery {
    /// Sorts and deduplicates the angles.
    pub fn new(d: u32, mut angles: Vec<Rat>, mode: BoundMode, coeffs: Vec<Rat>, t: Option<usize>) -> Self {
        angles.sort();
        angles.dedup();
        BoundQuery { d, angles, mode, coeffs, t }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hypothesis {
    pub label: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelativeBound {
    pub mode: BoundMode,
    pub bound: Rat,
    pub hypotheses: Vec<Hypothesis>,
}

impl RelativeBound {
    pub fn applicable(&self) -> bool {
        self.hypotheses.iter().all(|h| h.ok)
    }
}

/// `|X| ≤ dim Hom(s,s)`, or `dim Hom(s,s−1)` when 0 is an angle.
pub fn absolute_bound(d: u32, s: u32, zero_in_a: bool) -> Result<BigInt, JacobiError> {
    if s == 0 {
        return Err(JacobiError::InvalidQuery("s must be at least 1".into()));
    }
    let s = s as i64;
    dim_hom(d as i64, s, if zero_in_a { s - 1 } else { s })
}

/// Real projective analogue: `|X| ≤ dim Hom(2s)` over `R^d`.
pub fn real_absolute_bound(d: u32, s: u32) -> Result<BigInt, JacobiError> {
    if s == 0 {
        return Err(JacobiError::InvalidQuery("s must be at least 1".into()));
    }
    dim_hom_real(d as i64, 2 * s as i64)
}

pub fn relative_bound(fam: &JacobiFamily, q: &BoundQuery) -> Result<RelativeBound, JacobiError> {
    if fam.d() != q.d {
        return Err(JacobiError::InvalidQuery(format!("family has d = {}, query d = {}", fam.d(), q.d)));
    }
    let kind = q.mode.kind();
    let c0 = q.coeffs.first().cloned().unwrap_or_else(Rat::zero);
    if c0.is_zero() {
        return Err(JacobiError::ZeroConstantCoefficient);
    }
    let f: RatPoly = fam.synthesize(&q.coeffs, kind)?;
    let f1 = eval_exact(&f, &Rat::one());
    let bound = &f1 / &c0;
    let mut hyps = Vec::new();
    let weighted = matches!(q.mode, BoundMode::SdistH | BoundMode::DesignH);
    for a in &q.angles {
        let v = eval_exact(&f, a);
        let v = if weighted { v * a } else { v };
        let (label, ok) = if q.mode.is_upper() {
            (if weighted { format!("α·F(α) ≤ 0 at α = {a}") } else { format!("F(α) ≤ 0 at α = {a}") }, !v.is_positive())
        } else {
            (if weighted { format!("α·F(α) ≥ 0 at α = {a}") } else { format!("F(α) ≥ 0 at α = {a}") }, !v.is_negative())
        };
        hyps.push(Hypothesis { label, ok });
    }
    hyps.push(Hypothesis { label: "c_0 > 0".into(), ok: c0.is_positive() });
    match q.mode {
        BoundMode::SdistG | BoundMode::SdistH => {
            for (r, c) in q.coeffs.iter().enumerate().skip(1) {
                hyps.push(Hypothesis { label: format!("c_{r} ≥ 0"), ok: !c.is_negative() });
            }
        }
        BoundMode::DesignG | BoundMode::DesignH => {
            let t = q.t.ok_or_else(|| JacobiError::InvalidQuery("design modes need t".into()))?;
            hyps.push(Hypothesis { label: "F(1) > 0".into(), ok: f1.is_positive() });
            let first = if q.mode == BoundMode::DesignG { t + 1 } else { t };
            for (r, c) in q.coeffs.iter().enumerate().skip(first.max(1)) {
                hyps.push(Hypothesis { label: format!("c_{r} ≤ 0"), ok: !c.is_positive() });
            }
        }
    }
    Ok(RelativeBound { mode: q.mode, bound, hypotheses: hyps })
}

/// Relative bound with `F` the annihilator of the angles (of the nonzero
/// angles for the `h` modes).
pub fn annihilator_bound(
    fam: &JacobiFamily,
    angles: &[Rat],
    mode: BoundMode,
    t: Option<usize>,
) -> Result<RelativeBound, JacobiError> {
    let roots: Vec<Rat> = match mode.kind() {
        Kind::G => angles.to_vec(),
        Kind::H => angles.iter().filter(|a| !a.is_zero()).cloned().collect(),
    };
    let f = annihilator(&roots);
    let coeffs = fam.expand(&f, mode.kind())?;
    let q = BoundQuery::new(fam.d(), angles.to_vec(), mode, coeffs, t);
    relative_bound(fam, &q)
}

/// `d(1−α)/(1−dα)`, the equiangular relative bound; `None` unless `α < 1/d`.
pub fn equiangular_relative_bound(d: u32, alpha: &Rat) -> Option<Rat> {
    let d = int(d as i64);
    let den = Rat::one() - &d * alpha;
    den.is_positive().then(|| d * (Rat::one() - alpha) / den)
}

/// Smallest angle allowed for `n` lines in `C^d`: `(n−d)/(d(n−1))`.
pub fn welch_bound(d: u32, n: u64) -> Result<Rat, JacobiError> {
    if n < 2 {
        return Err(JacobiError::InvalidQuery("Welch bound needs n ≥ 2".into()));
    }
    let (d, n) = (d as i64, n as i64);
    Ok(Rat::new(BigInt::from(n - d), BigInt::from(d * (n - 1))))
}

/// At most `k² − k + 1` flat equiangular lines in `C^k`.
pub fn flat_eal_bound(k: u64) -> u64 {
    k * k - k + 1
}

/// `d(d+1)` lines, i.e. `d+1` bases.
pub fn mub_bound(d: u32) -> (u64, u64) {
    let d = d as u64;
    (d * (d + 1), d + 1)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RealMubGate {
    /// At most this many real mutually unbiased bases.
    AtMost(u64),
    /// `d ≢ 0 mod 4`: no real Hadamard matrix beyond order 2, so a flat
    /// second basis is impossible; at most 2 bases.
    NoFlatBasis,
}

impl fmt::Display for RealMubGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealMubGate::AtMost(n) => write!(f, "{n}"),
            RealMubGate::NoFlatBasis => write!(f, "≤2 (no real flat basis: d ≢ 0 mod 4)"),
        }
    }
}

/// Upper bound on real MUBs in `R^d`: 2 if `d = 4s` with `s` non-square,
/// 3 if `s` is odd, otherwise `d/2 + 1`.
pub fn real_mub_gate(d: u32) -> RealMubGate {
    if !d.is_multiple_of(4) {
        return RealMubGate::NoFlatBasis;
    }
    let s = (d / 4) as u64;
    let r = s.sqrt();
    if r * r != s {
        RealMubGate::AtMost(2)
    } else if s % 2 == 1 {
        RealMubGate::AtMost(3)
    } else {
        RealMubGate::AtMost(d as u64 / 2 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::rat;

    #[test]
    fn absolute_bounds() {
        assert_eq!(absolute_bound(5, 1, false).unwrap(), BigInt::from(25));
        assert_eq!(absolute_bound(6, 2, true).unwrap(), BigInt::from(126));
        assert_eq!(absolute_bound(7, 1, true).unwrap(), BigInt::from(7));
        assert_eq!(real_absolute_bound(3, 1).unwrap(), BigInt::from(6));
    }

    #[test]
    fn equiangular_upper_bound() {
        let fam = JacobiFamily::new(3).unwrap();
        let alpha = rat(2, 9);
        let b = annihilator_bound(&fam, std::slice::from_ref(&alpha), BoundMode::SdistG, None).unwrap();
        assert_eq!(b.bound, int(7));
        assert!(b.applicable());
        assert_eq!(equiangular_relative_bound(3, &alpha), Some(int(7)));
    }

    #[test]
    fn mub_annihilator() {
        for d in 2..9i64 {
            let fam = JacobiFamily::new(d as u32).unwrap();
            let angles = vec![int(0), rat(1, d)];
            let g = annihilator_bound(&fam, &angles, BoundMode::SdistG, None).unwrap();
            assert_eq!(g.bound, int(d * (d + 1)));
            assert!(g.applicable());
            let h = annihilator_bound(&fam, &angles, BoundMode::SdistH, None).unwrap();
            assert_eq!(h.bound, int(d * (d + 1)));
            assert!(h.applicable());
        }
    }

    #[test]
    fn mub_expansion_coefficients() {
        for d in 2..12i64 {
            let fam = JacobiFamily::new(d as u32).unwrap();
            let f = annihilator(&[int(0), rat(1, d)]);
            let c = fam.expand(&f, Kind::G).unwrap();
            assert_eq!(c[0], rat(d - 1, d * d * (d + 1)));
            assert_eq!(c[1], rat(3 * d - 2, d * d * (d + 1) * (d + 2)));
            assert_eq!(c[2], rat(4, d * (d + 1) * (d + 2) * (d + 3)));
        }
    }

    #[test]
    fn design_lower_bound_flags() {
        let fam = JacobiFamily::new(2).unwrap();
        let angles = vec![int(0), rat(1, 2)];
        let b = annihilator_bound(&fam, &angles, BoundMode::DesignG, Some(2)).unwrap();
        assert_eq!(b.bound, int(6));
        assert!(b.applicable());
        assert!(annihilator_bound(&fam, &angles, BoundMode::DesignG, None).is_err());
    }

    #[test]
    fn zero_constant_rejected() {
        let fam = JacobiFamily::new(3).unwrap();
        let q = BoundQuery::new(3, vec![], BoundMode::SdistG, vec![int(0), int(1)], None);
        assert_eq!(relative_bound(&fam, &q), Err(JacobiError::ZeroConstantCoefficient));
    }

    #[test]
    fn sic_angle_gives_d_squared() {
        for d in 2..20u32 {
            let b = equiangular_relative_bound(d, &rat(1, d as i64 + 1)).unwrap();
            assert_eq!(b, int((d * d) as i64));
        }
    }

    #[test]
    fn welch_and_flat() {
        for d in 2..10u32 {
            assert_eq!(welch_bound(d, (d * d) as u64).unwrap(), rat(1, d as i64 + 1));
        }
        assert_eq!(flat_eal_bound(3), 7);
        assert!(welch_bound(3, 1).is_err());
    }

    #[test]
    fn real_gate() {
        assert_eq!(real_mub_gate(4), RealMubGate::AtMost(3));
        assert_eq!(real_mub_gate(8), RealMubGate::AtMost(2));
        assert_eq!(real_mub_gate(12), RealMubGate::AtMost(2));
        assert_eq!(real_mub_gate(16), RealMubGate::AtMost(9));
        assert_eq!(real_mub_gate(36), RealMubGate::AtMost(3));
        assert_eq!(real_mub_gate(6), RealMubGate::NoFlatBasis);
    }
}
