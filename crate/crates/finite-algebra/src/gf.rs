//! Finite fields `GF(p^m)` as quotients `GF(p)[x]/(f)`.
//!
//! An element is encoded as the integer `Σ c_i p^i` of its coefficient vector,
//! so `0` is zero, `1` is one and `p` is the class of `x` (for `m ≥ 2`).
//! Multiplication goes through discrete log tables built at construction.

use crate::poly::{self, Poly};
use crate::{is_prime, AlgebraError};

/// Encoded field element.
pub type GfElem = u32;

const MAX_ORDER: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Poly,
    primitive: GfElem,
    exp: Vec<GfElem>,
    log: Vec<u32>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

/// `gf_create(p, m, modulus)`.
pub fn gf_create(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<GaloisField, AlgebraError> {
    GaloisField::new(p, m, modulus)
}

impl GaloisField {
    /// Builds `GF(p^m)`. Without an explicit modulus the smallest primitive
    /// polynomial is used, ordered by the integer `Σ c_i p^i` of its lower
    /// coefficients.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(AlgebraError::InvalidDegree(m));
        }
        let q64 = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER);
        let Some(q64) = q64 else {
            return Err(AlgebraError::TooLarge(format!("GF({p}^{m})")));
        };
        let q = q64 as u32;
        let modulus = match modulus {
            Some(f) => {
                let f = poly::trim(f.iter().map(|&c| c % p).collect());
                if poly::degree(&f) != Some(m as usize) {
                    return Err(AlgebraError::InvalidModulus(format!(
                        "expected degree {m}, got {:?}",
                        poly::degree(&f)
                    )));
                }
                if f[m as usize] != 1 {
                    return Err(AlgebraError::InvalidModulus("modulus is not monic".into()));
                }
                if !poly::is_irreducible(&f, p) {
                    return Err(AlgebraError::InvalidModulus(format!(
                        "{f:?} is reducible over GF({p})"
                    )));
                }
                f
            }
            None => smallest_primitive(p, m),
        };
        let mut field = GaloisField { p, m, q, modulus, primitive: 0, exp: Vec::new(), log: Vec::new() };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        for g in 1..self.q {
            let gp = self.to_poly(g);
            let mut exp = Vec::with_capacity(n);
            let mut cur: Poly = vec![1];
            let mut ok = true;
            for i in 0..n {
                let e = self.from_poly(&cur);
                if i > 0 && e == 1 {
                    ok = false;
                    break;
                }
                exp.push(e);
                cur = poly::mulmod(&cur, &gp, &self.modulus, self.p);
            }
            if ok {
                let mut log = vec![0u32; self.q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.primitive = g;
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field order `q = p^m`.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, little-endian, `m + 1` coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Generator of the multiplicative group used for the log tables.
    pub fn primitive_element(&self) -> GfElem {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> {
        0..self.q
    }

    pub fn contains(&self, x: GfElem) -> bool {
        x < self.q
    }

    fn check(&self, x: GfElem) -> Result<(), AlgebraError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AlgebraError::NotInField { element: x as u64, order: self.q as u64 })
        }
    }

    pub fn coeffs(&self, mut x: GfElem) -> Vec<u32> {
        let mut out = vec![0; self.m as usize];
        for c in out.iter_mut() {
            *c = x % self.p;
            x /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, c: &[u32]) -> GfElem {
        c.iter().rev().fold(0, |acc, &ci| acc * self.p + ci % self.p)
    }

    fn to_poly(&self, x: GfElem) -> Poly {
        poly::trim(self.coeffs(x))
    }

    fn from_poly(&self, f: &[u32]) -> GfElem {
        self.from_coeffs(f)
    }

    /// Image of an integer under `Z → GF(p) ⊆ GF(q)`.
    pub fn from_int(&self, k: i64) -> GfElem {
        k.rem_euclid(self.p as i64) as GfElem
    }

    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: GfElem) -> GfElem {
        let mut a = a;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: GfElem, b: GfElem) -> GfElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: GfElem) -> Option<GfElem> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: GfElem, b: GfElem) -> Option<GfElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: GfElem, e: u64) -> GfElem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `θ^i` for the table generator `θ`.
    pub fn exp(&self, i: u64) -> GfElem {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log to the base of [`Self::primitive_element`].
    pub fn log(&self, a: GfElem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn frobenius(&self, a: GfElem) -> GfElem {
        self.pow(a, self.p as u64)
    }

    /// Absolute trace `x + x^p + … + x^{p^{m−1}}`, returned in `0..p`.
    pub fn trace(&self, x: GfElem) -> u32 {
        let t = self.relative_trace(x, 1);
        debug_assert!(t < self.p, "absolute trace must lie in the prime field");
        t
    }

    /// Checked form of [`Self::trace`].
    pub fn try_trace(&self, x: GfElem) -> Result<u32, AlgebraError> {
        self.check(x)?;
        Ok(self.trace(x))
    }

    /// Trace to the subfield of order `p^e`: `Σ_{j < m/e} x^{p^{ej}}`.
    pub fn relative_trace(&self, x: GfElem, e: u32) -> GfElem {
        assert!(e > 0 && self.m.is_multiple_of(e), "subfield degree must divide m");
        let step = (self.p as u64).pow(e);
        let mut acc = 0;
        let mut cur = x;
        for _ in 0..self.m / e {
            acc = self.add(acc, cur);
            cur = self.pow(cur, step);
        }
        acc
    }

    /// `GF(p^m)/c0,c1,…,cm`.
    pub fn descriptor(&self) -> String {
        let cs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("GF({}^{})/{}", self.p, self.m, cs.join(","))
    }
}

/// Whether `x` has multiplicative order `p^m − 1` modulo `f`.
fn x_is_primitive(f: &[u32], p: u32, m: u32) -> bool {
    let n = (p as u64).pow(m) - 1;
    let x: Poly = vec![0, 1];
    if poly::powmod(&x, n, f, p) != vec![1] {
        return false;
    }
    prime_factors(n).into_iter().all(|r| poly::powmod(&x, n / r, f, p) != vec![1])
}

fn smallest_primitive(p: u32, m: u32) -> Poly {
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut f: Poly = Vec::with_capacity(m as usize + 1);
        let mut c = code;
        for _ in 0..m {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        if x_is_primitive(&f, p, m) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_trace_is_identity() {
        let f = gf_create(2, 1, None).unwrap();
        for x in f.elements() {
            assert_eq!(f.trace(x), x);
        }
    }

    #[test]
    fn default_moduli() {
        assert_eq!(gf_create(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(gf_create(3, 2, None).unwrap().modulus(), &[2, 1, 1]);
        assert_eq!(gf_create(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf9_trace_is_x_plus_x_cubed() {
        let f = gf_create(3, 2, None).unwrap();
        let mut fibres = [0; 3];
        for x in f.elements() {
            let t = f.add(x, f.pow(x, 3));
            assert!(t < 3);
            assert_eq!(f.trace(x), t);
            fibres[t as usize] += 1;
        }
        assert_eq!(fibres, [3, 3, 3]);
    }

    #[test]
    fn gf4_trace_of_one_vanishes() {
        let f = gf_create(2, 2, None).unwrap();
        assert_eq!(f.trace(1), 0);
        assert_eq!(f.trace(0), 0);
    }

    #[test]
    fn gf8_trace_kernel_has_four_elements() {
        let f = gf_create(2, 3, None).unwrap();
        assert_eq!(f.elements().filter(|&x| f.trace(x) == 0).count(), 4);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(gf_create(4, 1, None), Err(AlgebraError::NotPrime(4))));
        assert!(gf_create(2, 2, Some(&[1, 0, 1])).is_err());
        assert!(gf_create(2, 2, Some(&[1, 1, 2])).is_err());
        assert!(gf_create(3, 2, Some(&[1, 0, 1])).is_ok());
    }

    #[test]
    fn non_primitive_modulus_still_cyclic() {
        // x^2 + 1 is irreducible over GF(3) but x has order 4, not 8.
        let f = gf_create(3, 2, Some(&[1, 0, 1])).unwrap();
        let g = f.primitive_element();
        assert_eq!((1..9).map(|i| f.exp(i)).filter(|&e| e == 1).count(), 1);
        assert_eq!(f.pow(g, 8), 1);
        assert_ne!(f.pow(g, 4), 1);
    }

    #[test]
    fn descriptor_format() {
        assert_eq!(gf_create(3, 2, None).unwrap().descriptor(), "GF(3^2)/2,1,1");
    }

    #[test]
    fn trace_rejects_foreign_element() {
        let f = gf_create(3, 1, None).unwrap();
        assert!(f.try_trace(7).is_err());
    }
}
