//! Exact binomial coefficients and the identities the bounds rely on.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// Both sides of a checked identity or inequality, exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactCheck {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl FactCheck {
    fn new(lhs: &BigRational, rhs: &BigRational, holds: bool) -> Self {
        FactCheck {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds,
        }
    }
}

fn ratio(x: BigUint) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `sum_{k=i..h} C(k, i) = C(h+1, i+1)`.
pub fn pascal_column_sum(h: u64, i: u64) -> Result<FactCheck> {
    if i > h {
        return Err(Error::Domain(format!("need i <= h, got i = {i}, h = {h}")));
    }
    let lhs = ratio((i..=h).map(|k| binomial(k, i)).sum());
    let rhs = ratio(binomial(h + 1, i + 1));
    Ok(FactCheck::new(&lhs, &rhs, lhs == rhs))
}

/// `C(n, k+1) = ((n - k) / (k + 1)) C(n, k)`.
pub fn pascal_ratio(n: u64, k: u64) -> Result<FactCheck> {
    if k + 1 > n {
        return Err(Error::Domain(format!("need k + 1 <= n, got n = {n}, k = {k}")));
    }
    let lhs = ratio(binomial(n, k + 1));
    let factor = BigRational::new((n - k).into(), (k + 1).into());
    let rhs = factor * ratio(binomial(n, k));
    Ok(FactCheck::new(&lhs, &rhs, lhs == rhs))
}

/// `sum_{i<=k} C(n, i) < (3/2) C(n, k)` for `k <= floor(n/4)`.
pub fn partial_row_sum(n: u64, k: u64) -> Result<FactCheck> {
    if k > n / 4 {
        return Err(Error::Domain(format!("need k <= n/4, got n = {n}, k = {k}")));
    }
    let lhs = ratio((0..=k).map(|i| binomial(n, i)).sum());
    let rhs = BigRational::new(3.into(), 2.into()) * ratio(binomial(n, k));
    Ok(FactCheck::new(&lhs, &rhs, lhs < rhs))
}
