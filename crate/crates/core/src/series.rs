//! Integer formal power series truncated at a fixed order `T`, and the two
//! generating-function identities that pin down the sieve weights:
//!
//! ```text
//! x (1-x)^{n-i}       = Σ_k C_k (x/(1-x))^k
//! x / (1+x)^{n-i+1}   = Σ_k C_k x^k          (after x ↦ x/(1+x))
//! ```

use std::fmt;

use num_traits::Zero;

use crate::bigcomb::{choose, ArbInt};
use crate::coeffs::{coeff_closed, SieveShape};
use crate::error::{Error, Result};

/// `a_0 + a_1 x + ... + a_T x^T`, everything above `x^T` discarded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<ArbInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![ArbInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, ArbInt::from(1))
    }

    /// `c x^k`, or zero when `k > order`.
    pub fn monomial(order: usize, k: usize, c: ArbInt) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads with zeros or drops terms above `order`.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = ArbInt>) -> Self {
        let mut coeffs: Vec<ArbInt> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, ArbInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ArbInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ArbInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = Self::zero(order);
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coeffs[..=order - j].iter().enumerate() {
                out.coeffs[j + k] += a * b;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ArbInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `f(x / (1 + x))`, i.e. `Σ_k a_k x^k (1+x)^{-k}`, truncated at the same order.
    pub fn substitute_x_over_one_plus_x(&self) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // x^k (1+x)^{-k}: coefficient of x^{k+j} is C(-k, j)
            for j in 0..=order - k {
                out.coeffs[k + j] += a * choose(-(k as i64), j);
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c < &ArbInt::zero() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if wrote {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                f.write_str("-")?;
            }
            let unit = mag == ArbInt::from(1);
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomialSign {
    Plus,
    Minus,
}

/// `(1 ± x)^e` truncated at `order`; negative `e` gives the negative binomial series.
pub fn series_binomial_power(sign: BinomialSign, exponent: i64, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(
        order,
        (0..=order).map(|k| {
            let c = choose(exponent, k);
            match sign {
                BinomialSign::Minus if k % 2 == 1 => -c,
                _ => c,
            }
        }),
    )
}

/// `(x / (1-x))^k = x^k (1-x)^{-k}` truncated at `order`.
pub fn series_x_over_one_minus_x_pow(k: usize, order: usize) -> TruncatedSeries {
    let tail = series_binomial_power(BinomialSign::Minus, -(k as i64), order);
    let mut shifted = TruncatedSeries::zero(order);
    for j in 0..=order.saturating_sub(k) {
        if k + j <= order {
            shifted.coeffs[k + j] = tail.coeffs[j].clone();
        }
    }
    shifted
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMismatch {
    pub k: usize,
    pub left: ArbInt,
    pub right: ArbInt,
}

/// `x (1-x)^{n-i}` against `Σ_{k=1}^{T} C_k (x/(1-x))^k`, both to order `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UntransformedReport {
    pub shape: SieveShape,
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
    pub mismatches: Vec<CoefficientMismatch>,
}

impl UntransformedReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn mismatches(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Vec<CoefficientMismatch> {
    lhs.coeffs
        .iter()
        .zip(&rhs.coeffs)
        .enumerate()
        .filter(|(_, (l, r))| l != r)
        .map(|(k, (l, r))| CoefficientMismatch {
            k,
            left: l.clone(),
            right: r.clone(),
        })
        .collect()
}

pub fn verify_gf_untransformed(shape: SieveShape, order: usize) -> UntransformedReport {
    let x = TruncatedSeries::monomial(order, 1, ArbInt::from(1));
    let lhs = x
        .mul(&series_binomial_power(
            BinomialSign::Minus,
            shape.gap(),
            order,
        ))
        .expect("same order");
    let rhs = (1..=order).fold(TruncatedSeries::zero(order), |acc, k| {
        let term = series_x_over_one_minus_x_pow(k, order).scale(&coeff_closed(shape, k));
        acc.add(&term).expect("same order")
    });
    let mismatches = mismatches(&lhs, &rhs);
    UntransformedReport {
        shape,
        lhs,
        rhs,
        mismatches,
    }
}

/// Coefficient `k` of `x / (1+x)^{n-i+1}` next to the closed-form `C_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedRow {
    pub k: usize,
    pub series: ArbInt,
    pub closed: ArbInt,
    /// `(-1)^{k-1} C(n-i+k, k-1)`, the off-by-one indexing of the standard
    /// negative-binomial coefficient `C(n-i+k-1, k-1)`; informational only.
    pub shifted_index: ArbInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedReport {
    pub shape: SieveShape,
    pub lhs: TruncatedSeries,
    pub rows: Vec<TransformedRow>,
}

impl TransformedReport {
    pub fn passed(&self) -> bool {
        self.lhs.coeff(0).is_zero() && self.rows.iter().all(|r| r.series == r.closed)
    }

    /// Orders `k` where the shifted-index reading disagrees with the series.
    pub fn shifted_index_disagreements(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.shifted_index != r.series)
            .map(|r| r.k)
            .collect()
    }
}

pub fn verify_gf_transformed(shape: SieveShape, order: usize) -> TransformedReport {
    let x = TruncatedSeries::monomial(order, 1, ArbInt::from(1));
    let lhs = x
        .mul(&series_binomial_power(
            BinomialSign::Plus,
            -(shape.gap() + 1),
            order,
        ))
        .expect("same order");
    let rows = (1..=order)
        .map(|k| {
            let shifted = choose(shape.gap() + k as i64, k - 1);
            TransformedRow {
                k,
                series: lhs.coeff(k),
                closed: coeff_closed(shape, k),
                shifted_index: if k % 2 == 1 { shifted } else { -shifted },
            }
        })
        .collect();
    TransformedReport { shape, lhs, rows }
}
