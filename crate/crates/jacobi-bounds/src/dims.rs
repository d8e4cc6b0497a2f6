//! Dimensions of the polynomial spaces `Hom(k,l)` and `Harm(k,l)` on `C^d`,
//! and of their real counterparts `Hom(k)`, `Harm(k)` on `R^d`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::JacobiError;

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn check(d: i64, k: i64, l: i64) -> Result<(), JacobiError> {
    if d < 1 {
        return Err(JacobiError::InvalidDimension(d));
    }
    if k < 0 || l < 0 {
        return Err(JacobiError::NegativeDegree(k.min(l)));
    }
    Ok(())
}

fn hom_raw(d: i64, k: i64, l: i64) -> BigInt {
    if k < 0 || l < 0 {
        return BigInt::zero();
    }
    binomial(d + k - 1, d - 1) * binomial(d + l - 1, d - 1)
}

/// `dim Hom(k,l) = C(d+k−1, d−1)·C(d+l−1, d−1)`.
pub fn dim_hom(d: i64, k: i64, l: i64) -> Result<BigInt, JacobiError> {
    check(d, k, l)?;
    Ok(hom_raw(d, k, l))
}

/// `dim Harm(k,l) = dim Hom(k,l) − dim Hom(k−1,l−1)`.
pub fn dim_harm(d: i64, k: i64, l: i64) -> Result<BigInt, JacobiError> {
    check(d, k, l)?;
    Ok(hom_raw(d, k, l) - hom_raw(d, k - 1, l - 1))
}

/// Homogeneous real polynomials of degree `k` in `d` variables.
pub fn dim_hom_real(d: i64, k: i64) -> Result<BigInt, JacobiError> {
    check(d, k, 0)?;
    Ok(binomial(d + k - 1, d - 1))
}

pub fn dim_harm_real(d: i64, k: i64) -> Result<BigInt, JacobiError> {
    check(d, k, 0)?;
    Ok(binomial(d + k - 1, d - 1) - binomial(d + k - 3, d - 1))
}
