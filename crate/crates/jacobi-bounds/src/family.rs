//! Jacobi polynomials `g_k`, `h_k` for the unit sphere of `C^d` and their
//! partial sums `p_k = Σ g_r`, `q_k = Σ h_r`.
//!
//! Coefficient lists are exact rationals, lowest degree first. Every cached
//! polynomial is produced by the explicit formula and checked against the
//! three-term recurrence at construction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::JacobiError;

pub type Rat = BigRational;
pub type RatPoly = Vec<Rat>;

pub const DEFAULT_MAX_K: usize = 12;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Zonal polynomials of `Harm(k,k)`.
    G,
    /// Zonal polynomials of `Harm(k+1,k)`.
    H,
}

#[derive(Clone, Debug)]
pub struct JacobiFamily {
    d: u32,
    max_k: usize,
    g: Vec<RatPoly>,
    h: Vec<RatPoly>,
}

pub fn rat(n: i64, m: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(m))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn factorial(n: i64) -> BigInt {
    (1..=n.max(0)).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn poly_add(a: &[Rat], b: &[Rat]) -> RatPoly {
    let n = a.len().max(b.len());
    let zero = Rat::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect())
}

pub fn poly_scale(a: &[Rat], c: &Rat) -> RatPoly {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn poly_mul(a: &[Rat], b: &[Rat]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Shifts by one degree: `p(x) ↦ x·p(x)`.
pub fn poly_shift(a: &[Rat]) -> RatPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero()];
    out.extend_from_slice(a);
    out
}

pub fn eval_exact(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

pub fn eval_f64(p: &[Rat], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
}

/// Polynomial with the given roots, `Π (x − r)`.
pub fn annihilator(roots: &[Rat]) -> RatPoly {
    roots.iter().fold(vec![Rat::one()], |acc, r| poly_mul(&acc, &[-r.clone(), Rat::one()]))
}

impl JacobiFamily {
    pub fn new(d: u32) -> Result<Self, JacobiError> {
        Self::with_depth(d, DEFAULT_MAX_K)
    }

    pub fn with_depth(d: u32, max_k: usize) -> Result<Self, JacobiError> {
        if d < 2 {
            return Err(JacobiError::InvalidDimension(d as i64));
        }
        let g: Vec<RatPoly> = (0..=max_k).map(|k| explicit_g(d, k)).collect();
        let h: Vec<RatPoly> = (0..=max_k).map(|k| explicit_h(d, k)).collect();
        let fam = JacobiFamily { d, max_k, g, h };
        for kind in [Kind::G, Kind::H] {
            let rec = fam.recurrence(kind, max_k);
            let cached = fam.table(kind);
            if let Some(k) = (0..=max_k).find(|&k| rec[k] != cached[k]) {
                return Err(JacobiError::RecurrenceMismatch { d, k, kind });
            }
        }
        Ok(fam)
    }

    /// A family with at least `k` cached levels. Deeper requests recompute the
    /// whole table, which is quadratic in `k` with growing rationals.
    pub fn deepen(&self, k: usize) -> Result<Self, JacobiError> {
        if k <= self.max_k {
            return Ok(self.clone());
        }
        Self::with_depth(self.d, k)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    fn table(&self, kind: Kind) -> &[RatPoly] {
        match kind {
            Kind::G => &self.g,
            Kind::H => &self.h,
        }
    }

    pub fn poly(&self, k: usize, kind: Kind) -> Result<&[Rat], JacobiError> {
        self.table(kind)
            .get(k)
            .map(|p| p.as_slice())
            .ok_or(JacobiError::BeyondCache { k, max_k: self.max_k })
    }

    pub fn g(&self, k: usize) -> Result<&[Rat], JacobiError> {
        self.poly(k, Kind::G)
    }

    pub fn h(&self, k: usize) -> Result<&[Rat], JacobiError> {
        self.poly(k, Kind::H)
    }

    /// `p_k = g_0 + … + g_k` or `q_k = h_0 + … + h_k`.
    pub fn partial_sum(&self, k: usize, kind: Kind) -> Result<RatPoly, JacobiError> {
        let mut acc = Vec::new();
        for r in 0..=k {
            acc = poly_add(&acc, self.poly(r, kind)?);
        }
        Ok(acc)
    }

    pub fn eval(&self, k: usize, kind: Kind, x: f64) -> Result<f64, JacobiError> {
        Ok(eval_f64(self.poly(k, kind)?, x))
    }

    pub fn eval_exact(&self, k: usize, kind: Kind, x: &Rat) -> Result<Rat, JacobiError> {
        Ok(eval_exact(self.poly(k, kind)?, x))
    }

    /// `g_k(1)` as an exact rational.
    pub fn value_at_one(&self, k: usize, kind: Kind) -> Result<Rat, JacobiError> {
        self.eval_exact(k, kind, &Rat::one())
    }

    /// The polynomials `0..=k` generated by the three-term recurrence with
    /// `λ_k = k/(d+2k−1)` and `μ_k = (k+1)/(d+2k)`.
    pub fn recurrence(&self, kind: Kind, k: usize) -> Vec<RatPoly> {
        recurrence_table(self.d, kind, k)
    }

    /// Coefficients `c_r` with `poly = Σ c_r basis_r`.
    pub fn expand(&self, poly: &[Rat], kind: Kind) -> Result<RatPoly, JacobiError> {
        let poly = trim(poly.to_vec());
        let Some(deg) = poly.len().checked_sub(1) else {
            return Ok(Vec::new());
        };
        if deg > self.max_k {
            return Err(JacobiError::BeyondCache { k: deg, max_k: self.max_k });
        }
        let basis = self.table(kind);
        let mut rest = poly;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for r in (0..=deg).rev() {
            let lead = rest.get(r).cloned().unwrap_or_else(Rat::zero);
            if lead.is_zero() {
                continue;
            }
            let c = lead / &basis[r][r];
            rest = poly_add(&rest, &poly_scale(&basis[r], &-c.clone()));
            coeffs[r] = c;
        }
        debug_assert!(rest.is_empty());
        Ok(trim(coeffs))
    }

    /// Inverse of [`Self::expand`].
    pub fn synthesize(&self, coeffs: &[Rat], kind: Kind) -> Result<RatPoly, JacobiError> {
        let mut acc = Vec::new();
        for (r, c) in coeffs.iter().enumerate() {
            acc = poly_add(&acc, &poly_scale(self.poly(r, kind)?, c));
        }
        Ok(acc)
    }
}

/// `g_k(x) = ((d+2k−1)/(d−1)!) Σ_r (−1)^r (d+2k−r−2)! / (r! ((k−r)!)²) x^{k−r}`.
pub fn explicit_g(d: u32, k: usize) -> RatPoly {
    let (d, k) = (d as i64, k as i64);
    let pre = Rat::new(BigInt::from(d + 2 * k - 1), factorial(d - 1));
    let mut out = vec![Rat::zero(); k as usize + 1];
    for r in 0..=k {
        let num = factorial(d + 2 * k - r - 2);
        let den = factorial(r) * factorial(k - r) * factorial(k - r);
        let sign = if r % 2 == 0 { 1 } else { -1 };
        out[(k - r) as usize] = &pre * Rat::new(num * sign, den);
    }
    trim(out)
}

/// `h_k(x) = ((d+2k)/(d−1)!) Σ_r (−1)^r (d+2k−r−1)! / (r! (k−r+1)! (k−r)!) x^{k−r}`.
pub fn explicit_h(d: u32, k: usize) -> RatPoly {
    let (d, k) = (d as i64, k as i64);
    let pre = Rat::new(BigInt::from(d + 2 * k), factorial(d - 1));
    let mut out = vec![Rat::zero(); k as usize + 1];
    for r in 0..=k {
        let num = factorial(d + 2 * k - r - 1);
        let den = factorial(r) * factorial(k - r + 1) * factorial(k - r);
        let sign = if r % 2 == 0 { 1 } else { -1 };
        out[(k - r) as usize] = &pre * Rat::new(num * sign, den);
    }
    trim(out)
}

fn lambda(d: i64, k: i64) -> Rat {
    rat(k, d + 2 * k - 1)
}

fn mu(d: i64, k: i64) -> Rat {
    rat(k + 1, d + 2 * k)
}

/// Recurrence
/// `g_{k+1} = [(x + (λ_k−1)μ_k + λ_k(μ_{k−1}−1)) g_k − (λ_{k−1}−1)(μ_{k−1}−1) g_{k−1}] / (λ_{k+1}μ_k)`,
/// `h_{k+1} = [(x + λ_{k+1}(μ_k−1) + (λ_k−1)μ_k) h_k − (λ_k−1)(μ_{k−1}−1) h_{k−1}] / (λ_{k+1}μ_{k+1})`,
/// seeded with `g_0 = 1`, `h_0 = d` and zero at index −1.
pub fn recurrence_table(d: u32, kind: Kind, k_max: usize) -> Vec<RatPoly> {
    let di = d as i64;
    let one = Rat::one();
    let mut out: Vec<RatPoly> = vec![match kind {
        Kind::G => vec![one.clone()],
        Kind::H => vec![int(di)],
    }];
    for k in 0..k_max as i64 {
        let cur = &out[k as usize];
        let prev: RatPoly = if k == 0 { Vec::new() } else { out[k as usize - 1].clone() };
        let mu_prev = if k == 0 { Rat::zero() } else { mu(di, k - 1) };
        let lam_prev = if k == 0 { Rat::zero() } else { lambda(di, k - 1) };
        let (shift, back, denom) = match kind {
            Kind::G => (
                (lambda(di, k) - &one) * mu(di, k) + lambda(di, k) * (&mu_prev - &one),
                (&lam_prev - &one) * (&mu_prev - &one),
                lambda(di, k + 1) * mu(di, k),
            ),
            Kind::H => (
                lambda(di, k + 1) * (mu(di, k) - &one) + (lambda(di, k) - &one) * mu(di, k),
                (lambda(di, k) - &one) * (&mu_prev - &one),
                lambda(di, k + 1) * mu(di, k + 1),
            ),
        };
        let lin = poly_add(&poly_shift(cur), &poly_scale(cur, &shift));
        let next = poly_add(&lin, &poly_scale(&prev, &-back));
        out.push(poly_scale(&next, &(one.clone() / denom)));
    }
    out
}

/// `p/q (≈ float)`, or just `p` for integers.
pub fn fmt_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{} (≈ {})", r.numer(), r.denom(), fmt_float(r.to_f64().unwrap_or(f64::NAN)))
    }
}

/// `num/den` for CSV export.
pub fn plain_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_float(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

/// Parses `a`, `a/b` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let (a, b): (BigInt, BigInt) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        return (!b.is_zero()).then(|| Rat::new(a, b));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits: String = format!("{}{}", ip.trim_start_matches('-'), fp);
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rat::new(num, den);
        return Some(if neg { -r } else { r });
    }
    s.parse::<BigInt>().ok().map(Rat::from_integer)
}

pub fn is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g1_d3() {
        assert_eq!(explicit_g(3, 1), vec![int(-4), int(12)]);
    }

    #[test]
    fn g2_at_one_d3() {
        let fam = JacobiFamily::new(3).unwrap();
        assert_eq!(fam.value_at_one(2, Kind::G).unwrap(), int(27));
    }

    #[test]
    fn h1_at_one_d2() {
        let fam = JacobiFamily::new(2).unwrap();
        assert_eq!(fam.value_at_one(1, Kind::H).unwrap(), int(4));
        assert_eq!(crate::dim_harm(2, 2, 1).unwrap(), num_bigint::BigInt::from(4));
        assert_eq!(fam.h(0).unwrap(), &[int(2)]);
    }

    #[test]
    fn known_low_degree_forms() {
        for d in 2..8i64 {
            let fam = JacobiFamily::new(d as u32).unwrap();
            assert_eq!(fam.g(1).unwrap(), &[int(-(d + 1)), int(d * (d + 1))]);
            let c = rat(d * (d + 3), 4);
            let g2: RatPoly = vec![int(2), int(-4 * (d + 1)), int((d + 1) * (d + 2))];
            assert_eq!(fam.g(2).unwrap(), poly_scale(&g2, &c).as_slice());
            let c = rat(d * (d + 2), 2);
            assert_eq!(fam.h(1).unwrap(), poly_scale(&[int(-2), int(d + 1)], &c).as_slice());
            let c = rat(d * (d + 1) * (d + 4), 12);
            let h2: RatPoly = vec![int(6), int(-6 * (d + 2)), int((d + 2) * (d + 3))];
            assert_eq!(fam.h(2).unwrap(), poly_scale(&h2, &c).as_slice());
        }
    }

    #[test]
    fn expansion_of_linear_annihilator() {
        for d in 2..10i64 {
            let fam = JacobiFamily::new(d as u32).unwrap();
            let alpha = rat(1, 7);
            let c = fam.expand(&[-alpha.clone(), int(1)], Kind::G).unwrap();
            assert_eq!(c, vec![rat(1, d) - alpha, rat(1, d * (d + 1))]);
        }
        let fam = JacobiFamily::new(4).unwrap();
        assert_eq!(fam.expand(&[int(1)], Kind::G).unwrap(), vec![int(1)]);
    }

    #[test]
    fn beyond_cache_is_an_error() {
        let fam = JacobiFamily::with_depth(3, 4).unwrap();
        assert!(matches!(fam.g(5), Err(JacobiError::BeyondCache { k: 5, max_k: 4 })));
        assert!(fam.deepen(6).unwrap().g(6).is_ok());
    }

    #[test]
    fn rational_io() {
        assert_eq!(parse_rational("2/9"), Some(rat(2, 9)));
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rational("-0.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fmt_rational(&rat(2, 9)), "2/9 (≈ 0.222222)");
        assert_eq!(fmt_rational(&int(42)), "42");
        assert_eq!(plain_rational(&rat(-3, 4)), "-3/4");
    }

    #[test]
    fn dimension_one_rejected() {
        assert!(JacobiFamily::new(1).is_err());
    }
}
