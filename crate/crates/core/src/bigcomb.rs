//! Exact combinatorial primitives over arbitrary-precision integers.
//!
//! Binomials of the first kind accept any integer upper index (falling
//! factorial over `k!`), which is what the negative-index Vandermonde
//! specialisation needs. Binomials of the second kind are the multichoose
//! numbers `x(x+1)...(x+k-1)/k!`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer used for every combinatorial quantity.
pub type ArbInt = BigInt;

pub fn factorial(k: usize) -> ArbInt {
    (2..=k).fold(ArbInt::one(), |acc, j| acc * j)
}

/// `x (x-1) ... (x-k+1)`, and `1` for `k = 0`.
pub fn falling_factorial(x: &ArbInt, k: usize) -> ArbInt {
    let mut acc = ArbInt::one();
    let mut term = x.clone();
    for _ in 0..k {
        if term.is_zero() {
            return ArbInt::zero();
        }
        acc *= &term;
        term -= 1;
    }
    acc
}

/// `x (x+1) ... (x+k-1)`, and `1` for `k = 0`.
pub fn rising_factorial(x: &ArbInt, k: usize) -> ArbInt {
    let mut acc = ArbInt::one();
    let mut term = x.clone();
    for _ in 0..k {
        if term.is_zero() {
            return ArbInt::zero();
        }
        acc *= &term;
        term += 1;
    }
    acc
}

/// Binomial number of the first kind, `C(x, k) = falling_factorial(x, k) / k!`.
///
/// Defined for every integer `x`; returns `0` when `0 <= x < k`.
pub fn binomial_first(x: &ArbInt, k: usize) -> ArbInt {
    let (q, r) = falling_factorial(x, k).div_rem(&factorial(k));
    debug_assert!(r.is_zero(), "k! must divide the falling factorial");
    q
}

/// Binomial number of the second kind (multichoose), `x (x+1) ... (x+k-1) / k!`.
///
/// Intended for `x >= 0`; for negative `x` the same polynomial is evaluated.
pub fn binomial_second(x: &ArbInt, k: usize) -> ArbInt {
    let (q, r) = rising_factorial(x, k).div_rem(&factorial(k));
    debug_assert!(r.is_zero(), "k! must divide the rising factorial");
    q
}

/// Convenience wrapper for small signed upper indices.
pub fn choose(x: i64, k: usize) -> ArbInt {
    binomial_first(&ArbInt::from(x), k)
}

/// Convenience wrapper for small signed upper indices.
pub fn multichoose(x: i64, k: usize) -> ArbInt {
    binomial_second(&ArbInt::from(x), k)
}

/// Row `i` of the signed Stirling numbers of the first kind: entry `p` is
/// `s(i, p)`, the coefficient of `N^p` in `N (N-1) ... (N-i+1)`.
pub fn stirling_first_row(i: usize) -> Vec<ArbInt> {
    let mut row = vec![ArbInt::one()];
    for m in 0..i {
        // s(m+1, p) = s(m, p-1) - m s(m, p)
        let mut next = vec![ArbInt::zero(); m + 2];
        for (p, value) in row.iter().enumerate() {
            next[p + 1] += value;
            next[p] -= value * m;
        }
        row = next;
    }
    row
}

/// Signed Stirling number of the first kind `s(i, p)`; zero when `p > i`.
pub fn stirling_first_signed(i: usize, p: usize) -> ArbInt {
    if p > i {
        return ArbInt::zero();
    }
    stirling_first_row(i).swap_remove(p)
}

/// Multinomial coefficient `p! / (λ_1! ... λ_s!)`.
///
/// Every part must be positive and the parts must sum to `p`.
pub fn multinomial(p: usize, parts: &[usize]) -> Result<ArbInt> {
    if let Some(pos) = parts.iter().position(|&part| part == 0) {
        return Err(Error::InvalidExponentVector(format!(
            "part {} is zero",
            pos + 1
        )));
    }
    let total: usize = parts.iter().sum();
    if total != p {
        return Err(Error::InvalidExponentVector(format!(
            "parts sum to {total}, expected {p}"
        )));
    }
    let denom = parts
        .iter()
        .fold(ArbInt::one(), |acc, &part| acc * factorial(part));
    Ok(factorial(p) / denom)
}
