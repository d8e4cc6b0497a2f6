//! Exact arithmetic contexts: prime-power fields `GF(p^m)`, the Galois rings
//! `GR(4^m)` with their Teichmüller sets and traces, and finite abelian groups
//! with character tables and integral group algebras.
//!
//! Contexts are immutable after construction and elements are plain integers
//! interpreted relative to a context, so several fields can coexist.

pub mod gf;
pub mod gr;
pub mod group;
pub mod poly;

pub use gf::{gf_create, GaloisField, GfElem};
pub use gr::{gr_create, hensel_lift, GaloisRing, GrElem};
pub use group::{AbelianGroup, GroupAlgebraElement};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be positive, got {0}")]
    InvalidDegree(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("element {element} is not in a field of order {order}")]
    NotInField { element: u64, order: u64 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("{0} exceeds the supported size")]
    TooLarge(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `q = p^m` decomposition by trial division.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut m) = (q, 0);
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(n: u64) -> Vec<u64> {
    gf::prime_factors(n)
}

/// Character table of `G` (row `a`, column `g`).
pub fn group_characters(g: &AbelianGroup) -> Vec<Vec<Complex64>> {
    g.character_table()
}
