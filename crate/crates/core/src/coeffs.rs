//! Sieve weights `C_1, C_2, ...` of the extraction formula.
//!
//! Two independent routes produce them: the degree-`h-1` recurrence
//! `C_h = 1 - Σ_{k<h} C_k C(n-i+h, h-k)` and the closed form
//! `C_h = (-1)^{h-1} ⟨⟨n-i+1, h-1⟩⟩`. The verifiers here check the complete
//! convolution `Σ_{k≤h} C_k C(n-i+h, h-k) = 1` and the negative-index
//! Vandermonde specialisation that identifies the closed form.

use num_traits::{One, Zero};

use crate::bigcomb::{choose, multichoose, ArbInt};
use crate::error::{Error, Result};

/// Validated `(n, i)` pair with `1 <= i <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SieveShape {
    n: usize,
    i: usize,
}

impl SieveShape {
    pub fn new(n: usize, i: usize) -> Result<Self> {
        if i == 0 {
            return Err(Error::ZeroOrder);
        }
        if i > n {
            return Err(Error::OrderExceedsSize { i, n });
        }
        Ok(SieveShape { n, i })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn i(self) -> usize {
        self.i
    }

    /// `n - i`, never negative.
    pub fn gap(self) -> i64 {
        (self.n - self.i) as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientRoute {
    Recurrence,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSequence {
    pub shape: SieveShape,
    /// `values[h-1]` holds `C_h`.
    pub values: Vec<ArbInt>,
    pub route: CoefficientRoute,
}

impl CoefficientSequence {
    /// `C_h` for 1-based `h`.
    pub fn get(&self, h: usize) -> Option<&ArbInt> {
        h.checked_sub(1).and_then(|idx| self.values.get(idx))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `C_h = (-1)^{h-1} ⟨⟨n-i+1, h-1⟩⟩` for `h >= 1`.
pub fn coeff_closed(shape: SieveShape, h: usize) -> ArbInt {
    assert!(h >= 1, "sieve weights are indexed from 1");
    let magnitude = multichoose(shape.gap() + 1, h - 1);
    if h % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

pub fn coeff_closed_sequence(shape: SieveShape, h_max: usize) -> CoefficientSequence {
    CoefficientSequence {
        shape,
        values: (1..=h_max).map(|h| coeff_closed(shape, h)).collect(),
        route: CoefficientRoute::ClosedForm,
    }
}

/// Solves the recurrence up to `h_max` without consulting the closed form.
pub fn coeff_recurrence(shape: SieveShape, h_max: usize) -> CoefficientSequence {
    let gap = shape.gap();
    let mut values: Vec<ArbInt> = Vec::with_capacity(h_max);
    for h in 1..=h_max {
        let upper = gap + h as i64;
        let tail = values
            .iter()
            .enumerate()
            .fold(ArbInt::zero(), |acc, (idx, c_k)| {
                acc + c_k * choose(upper, h - (idx + 1))
            });
        values.push(ArbInt::one() - tail);
    }
    CoefficientSequence {
        shape,
        values,
        route: CoefficientRoute::Recurrence,
    }
}

/// One row of the complete convolution `Σ_{k=1}^{h} C_k C(n-i+h, h-k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionRow {
    pub h: usize,
    pub sum: ArbInt,
}

impl ConvolutionRow {
    pub fn holds(&self) -> bool {
        self.sum.is_one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionReport {
    pub shape: SieveShape,
    pub route: CoefficientRoute,
    pub rows: Vec<ConvolutionRow>,
}

impl ConvolutionReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ConvolutionRow::holds)
    }
}

/// Evaluates the complete convolution for every `h = 1..=h_max`.
///
/// # Panics
/// If `seq` holds fewer than `h_max` weights.
pub fn verify_convolution(
    shape: SieveShape,
    h_max: usize,
    seq: &CoefficientSequence,
) -> ConvolutionReport {
    assert!(
        seq.len() >= h_max,
        "sequence has {} weights, need {h_max}",
        seq.len()
    );
    let rows = (1..=h_max)
        .map(|h| {
            let upper = shape.gap() + h as i64;
            let sum = seq.values[..h]
                .iter()
                .enumerate()
                .fold(ArbInt::zero(), |acc, (idx, c_k)| {
                    acc + c_k * choose(upper, h - (idx + 1))
                });
            ConvolutionRow { h, sum }
        })
        .collect();
    ConvolutionReport {
        shape,
        route: seq.route,
        rows,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VandermondeTerm {
    pub k: usize,
    /// `C(-n+i-1, k)`
    pub negative_index: ArbInt,
    /// `C(n-i+h+1, h-k)`
    pub complement: ArbInt,
    /// closed-form `C_{k+1}`
    pub closed: ArbInt,
}

impl VandermondeTerm {
    pub fn matches_closed(&self) -> bool {
        self.negative_index == self.closed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VandermondeReport {
    pub shape: SieveShape,
    pub h: usize,
    pub terms: Vec<VandermondeTerm>,
    pub sum: ArbInt,
}

impl VandermondeReport {
    pub fn passed(&self) -> bool {
        self.sum.is_one() && self.terms.iter().all(VandermondeTerm::matches_closed)
    }
}

/// Evaluates `Σ_{k=0}^{h} C(-n+i-1, k) C(n-i+h+1, h-k)`, which must be `1`,
/// and checks each `C(-n+i-1, k)` against the closed-form `C_{k+1}`.
pub fn vandermonde_degeneration_check(shape: SieveShape, h: usize) -> VandermondeReport {
    let lower = -shape.gap() - 1;
    let upper = shape.gap() + h as i64 + 1;
    let terms: Vec<VandermondeTerm> = (0..=h)
        .map(|k| VandermondeTerm {
            k,
            negative_index: choose(lower, k),
            complement: choose(upper, h - k),
            closed: coeff_closed(shape, k + 1),
        })
        .collect();
    let sum = terms.iter().fold(ArbInt::zero(), |acc, t| {
        acc + &t.negative_index * &t.complement
    });
    VandermondeReport {
        shape,
        h,
        terms,
        sum,
    }
}
