//! Dense polynomials over `Z_n`, little-endian coefficient vectors.
//!
//! All functions keep results trimmed (no trailing zero coefficients), so the
//! zero polynomial is the empty vector.

pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u32], b: &[u32], n: u32) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % n)
        .collect();
    trim(out)
}

pub fn sub(a: &[u32], b: &[u32], n: u32) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0) + n - b.get(i).copied().unwrap_or(0) % n) % n)
        .collect();
    trim(out)
}

pub fn scale(a: &[u32], c: u32, n: u32) -> Poly {
    trim(a.iter().map(|&x| (x as u64 * c as u64 % n as u64) as u32).collect())
}

pub fn mul(a: &[u32], b: &[u32], n: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % n as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Modular inverse of `a` in `Z_n`, if it exists.
pub fn inv_mod(a: u32, n: u32) -> Option<u32> {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (n as i64, (a % n) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i64) as u32)
}

/// Division with remainder. The leading coefficient of `b` must be a unit mod `n`.
pub fn divrem(a: &[u32], b: &[u32], n: u32) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], n).expect("leading coefficient must be a unit");
    let mut r: Vec<u32> = trim(a.to_vec());
    let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = (r[dr] as u64 * lead_inv as u64 % n as u64) as u32;
        let shift = dr - db;
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            let v = (c as u64 * bc as u64 % n as u64) as u32;
            r[i + shift] = (r[i + shift] + n - v) % n;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u32], b: &[u32], n: u32) -> Poly {
    divrem(a, b, n).1
}

pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], n: u32) -> Poly {
    rem(&mul(a, b, n), m, n)
}

pub fn powmod(a: &[u32], mut e: u64, m: &[u32], n: u32) -> Poly {
    let mut base = rem(a, m, n);
    let mut acc: Poly = rem(&[1], m, n);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, m, n);
        }
        base = mulmod(&base, &base, m, n);
        e >>= 1;
    }
    acc
}

/// Extended Euclid over the prime field `GF(p)`: returns `(g, s, t)` with
/// `s·a + t·b = g` and `g` monic.
pub fn ext_gcd(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(d) = degree(&r0) {
        let li = inv_mod(r0[d], p).expect("prime modulus");
        r0 = scale(&r0, li, p);
        s0 = scale(&s0, li, p);
        t0 = scale(&t0, li, p);
    }
    (r0, s0, t0)
}

/// Rabin-style irreducibility test over `GF(p)` for a polynomial of degree ≥ 1.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(m) = degree(f) else { return false };
    if m == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut xp = rem(&x, f, p);
    for _ in 1..=m / 2 {
        xp = powmod(&xp, p as u64, f, p);
        let diff = sub(&xp, &x, p);
        let (g, _, _) = ext_gcd(f, &diff, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let a = vec![3, 1, 4, 1, 2];
        let b = vec![1, 1, 1];
        let (q, r) = divrem(&a, &b, 5);
        assert_eq!(add(&mul(&q, &b, 5), &r, 5), trim(a));
        assert!(degree(&r).is_none_or(|d| d < 2));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = vec![1, 0, 1, 1];
        let b = vec![1, 1];
        let (g, s, t) = ext_gcd(&a, &b, 2);
        assert_eq!(add(&mul(&s, &a, 2), &mul(&t, &b, 2), 2), g);
    }

    #[test]
    fn irreducible_small() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[2, 1, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3));
    }

    #[test]
    fn inverse_mod_n() {
        assert_eq!(inv_mod(3, 4), Some(3));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(2, 7), Some(4));
    }
}
