//! The Galois ring `GR(4^m) = Z₄[x]/(h)`.
//!
//! `h` is the Hensel lift of the default primitive `GF(2^m)` modulus `f`, so
//! that `h | x^{2^m−1} − 1` over `Z₄`. Elements are encoded as `Σ c_i 4^i`.
//!
//! | operation        | meaning                                         |
//! |------------------|-------------------------------------------------|
//! | `teichmuller(a)` | the lift `â ∈ T` of a field element `a`          |
//! | `decompose(z)`   | the unique `(x̂, ŷ)` with `z = x̂ + 2ŷ`            |
//! | `trace(z)`       | `Σ_j x̂^{2^j} + 2ŷ^{2^j}`, an element of `Z₄`       |

use crate::gf::{GaloisField, GfElem};
use crate::poly::{self, Poly};
use crate::AlgebraError;

pub type GrElem = u32;

const MAX_M: u32 = 10;

#[derive(Clone, Debug)]
pub struct GaloisRing {
    m: u32,
    size: u32,
    lift_modulus: Poly,
    field: GaloisField,
    xi: GrElem,
    /// Teichmüller lift indexed by encoded field element.
    lift: Vec<GrElem>,
    /// `T = {0, 1, ξ, …, ξ^{2^m−2}}` in that order.
    teichmuller: Vec<GrElem>,
}

/// `gr_create(m)`.
pub fn gr_create(m: u32) -> Result<GaloisRing, AlgebraError> {
    GaloisRing::new(m)
}

/// Lifts a monic factor `f` of `x^n − 1` over `GF(2)` to a monic factor over `Z₄`.
///
/// With `f·g = x^n − 1` mod 2, `a·f + b·g = 1` mod 2 and `2c = (x^n − 1) − f·g`
/// mod 4, the lift is `f + 2·(b·c mod f)`.
pub fn hensel_lift(f: &[u32], n: u64) -> Result<Poly, AlgebraError> {
    let mut u: Poly = vec![0; n as usize + 1];
    u[0] = 3;
    u[n as usize] = 1;
    let u2 = poly::scale(&u, 1, 2);
    let (g, r) = poly::divrem(&u2, f, 2);
    if !r.is_empty() {
        return Err(AlgebraError::InvalidModulus(format!("{f:?} does not divide x^{n} - 1 mod 2")));
    }
    let (one, _a, b) = poly::ext_gcd(f, &g, 2);
    if one != vec![1] {
        return Err(AlgebraError::InvalidModulus("x^n - 1 has a repeated factor".into()));
    }
    let two_c = poly::sub(&u, &poly::mul(f, &g, 4), 4);
    if two_c.iter().any(|&c| c % 2 != 0) {
        return Err(AlgebraError::Internal("u - fg is not divisible by 2".into()));
    }
    let c: Poly = poly::trim(two_c.iter().map(|&x| x / 2).collect());
    let v = poly::rem(&poly::mul(&b, &c, 2), f, 2);
    let h = poly::add(f, &poly::scale(&v, 2, 4), 4);
    let (_, rem) = poly::divrem(&u, &h, 4);
    if !rem.is_empty() {
        return Err(AlgebraError::Internal(format!("lift {h:?} does not divide x^{n} - 1 mod 4")));
    }
    Ok(h)
}

impl GaloisRing {
    pub fn new(m: u32) -> Result<Self, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::InvalidDegree(m));
        }
        if m > MAX_M {
            return Err(AlgebraError::TooLarge(format!("GR(4^{m})")));
        }
        let field = GaloisField::new(2, m, None)?;
        let n = (1u64 << m) - 1;
        let lift_modulus = hensel_lift(field.modulus(), n)?;
        let mut ring = GaloisRing {
            m,
            size: 4u32.pow(m),
            lift_modulus,
            field,
            xi: 0,
            lift: Vec::new(),
            teichmuller: Vec::new(),
        };
        ring.xi = ring.from_poly(&poly::rem(&[0, 1], &ring.lift_modulus, 4));
        let q = 1usize << m;
        let mut lift = vec![0; q];
        let mut teich = vec![0];
        // The field generator is the class of x, so ξ^k lifts θ^k.
        let theta = ring.field.primitive_element();
        let x_class = ring.field.from_coeffs(&[0, 1]);
        let x_class = if m == 1 { 1 } else { x_class };
        if theta != x_class {
            return Err(AlgebraError::Internal("default modulus is not primitive".into()));
        }
        let mut cur: GrElem = 1;
        for k in 0..n {
            let a = ring.field.exp(k);
            lift[a as usize] = cur;
            teich.push(cur);
            cur = ring.mul(cur, ring.xi);
        }
        if cur != 1 {
            return Err(AlgebraError::Internal("ξ does not have order 2^m - 1".into()));
        }
        ring.lift = lift;
        ring.teichmuller = teich;
        Ok(ring)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of ring elements, `4^m`.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn lift_modulus(&self) -> &[u32] {
        &self.lift_modulus
    }

    /// The residue field `GF(2^m)`.
    pub fn residue_field(&self) -> &GaloisField {
        &self.field
    }

    pub fn xi(&self) -> GrElem {
        self.xi
    }

    pub fn teichmuller_set(&self) -> &[GrElem] {
        &self.teichmuller
    }

    pub fn elements(&self) -> impl Iterator<Item = GrElem> {
        0..self.size
    }

    pub fn coeffs(&self, mut z: GrElem) -> Vec<u32> {
        let mut out = vec![0; self.m as usize];
        for c in out.iter_mut() {
            *c = z % 4;
            z /= 4;
        }
        out
    }

    pub fn from_coeffs(&self, c: &[u32]) -> GrElem {
        c.iter().rev().fold(0, |acc, &ci| acc * 4 + ci % 4)
    }

    fn from_poly(&self, f: &[u32]) -> GrElem {
        self.from_coeffs(f)
    }

    /// Image of an integer in `Z₄ ⊆ R`.
    pub fn from_int(&self, k: i64) -> GrElem {
        k.rem_euclid(4) as GrElem
    }

    pub fn add(&self, a: GrElem, b: GrElem) -> GrElem {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 4).collect();
        self.from_coeffs(&s)
    }

    pub fn neg(&self, a: GrElem) -> GrElem {
        let s: Vec<u32> = self.coeffs(a).iter().map(|x| (4 - x) % 4).collect();
        self.from_coeffs(&s)
    }

    pub fn sub(&self, a: GrElem, b: GrElem) -> GrElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GrElem, b: GrElem) -> GrElem {
        let pa = poly::trim(self.coeffs(a));
        let pb = poly::trim(self.coeffs(b));
        self.from_poly(&poly::mulmod(&pa, &pb, &self.lift_modulus, 4))
    }

    pub fn pow(&self, a: GrElem, mut e: u64) -> GrElem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduction `R → GF(2^m)`.
    pub fn reduce(&self, z: GrElem) -> GfElem {
        let c: Vec<u32> = self.coeffs(z).iter().map(|x| x % 2).collect();
        self.field.from_coeffs(&c)
    }

    pub fn teichmuller(&self, a: GfElem) -> GrElem {
        self.lift[a as usize]
    }

    /// Splits `z = x̂ + 2ŷ` with `x̂, ŷ ∈ T`.
    pub fn decompose(&self, z: GrElem) -> (GrElem, GrElem) {
        let xh = self.teichmuller(self.reduce(z));
        let diff = self.coeffs(self.sub(z, xh));
        debug_assert!(diff.iter().all(|c| c % 2 == 0));
        let half: Vec<u32> = diff.iter().map(|c| c / 2).collect();
        let yh = self.teichmuller(self.field.from_coeffs(&half));
        (xh, yh)
    }

    /// `x̂ + 2ŷ ↦ x̂² + 2ŷ²`.
    pub fn frobenius(&self, z: GrElem) -> GrElem {
        let (xh, yh) = self.decompose(z);
        let two_y2 = self.mul(2, self.mul(yh, yh));
        self.add(self.mul(xh, xh), two_y2)
    }

    /// Galois ring trace into `Z₄`.
    pub fn trace(&self, z: GrElem) -> u32 {
        let (xh, yh) = self.decompose(z);
        let mut acc = 0;
        let (mut xp, mut yp) = (xh, yh);
        for _ in 0..self.m {
            acc = self.add(acc, self.add(xp, self.mul(2, yp)));
            xp = self.mul(xp, xp);
            yp = self.mul(yp, yp);
        }
        debug_assert!(acc < 4, "trace must land in Z4");
        acc
    }

    /// `GR(4^m)/h0,h1,…,hm`.
    pub fn descriptor(&self) -> String {
        let cs: Vec<String> = self.lift_modulus.iter().map(|c| c.to_string()).collect();
        format!("GR(4^{})/{}", self.m, cs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_case() {
        let r = gr_create(1).unwrap();
        assert_eq!(r.teichmuller_set(), &[0, 1]);
        for z in r.elements() {
            assert_eq!(r.trace(z), z);
        }
        assert_eq!(r.trace(3), 3);
    }

    #[test]
    fn gr16_lift_is_x2_x_1() {
        let r = gr_create(2).unwrap();
        assert_eq!(r.lift_modulus(), &[1, 1, 1]);
        assert_eq!(r.pow(r.xi(), 3), 1);
    }

    #[test]
    fn gr64_lift_divides() {
        let r = gr_create(3).unwrap();
        let mut u = vec![0u32; 8];
        u[0] = 3;
        u[7] = 1;
        assert!(poly::rem(&u, r.lift_modulus(), 4).is_empty());
        assert_eq!(r.teichmuller_set().len(), 8);
        // Teichmüller elements are exactly the fixed points of squaring-to-the-q.
        let mut fixed = 0;
        for z in r.elements() {
            if r.pow(z, 8) == z {
                fixed += 1;
                assert!(r.teichmuller_set().contains(&z));
            }
        }
        assert_eq!(fixed, 8);
    }

    #[test]
    fn descriptor_format() {
        assert_eq!(gr_create(2).unwrap().descriptor(), "GR(4^2)/1,1,1");
    }
}
