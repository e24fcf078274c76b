//! Monomial coefficients of the expanded binomial product `C(m_1 + ... + m_n, i)`.
//!
//! Writing `C(N, i) = Σ_p s(i, p) N^p / i!` and expanding each `N^p` by the
//! multinomial theorem, the monomial `Π_r m_{j_r}^{λ_r}` with `|λ| = p`
//! carries the coefficient `K = s(i, p) · p!/(λ_1! ... λ_s!) / i!`, which
//! depends on `(i, λ)` only and not on `n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bigcomb::{binomial_first, factorial, multinomial, stirling_first_row, ArbInt};
use crate::coeffs::SieveShape;
use crate::error::{Error, Result};
use crate::esp::{esp_direct, RootSet};
use crate::subsets::{k_subsets, IndexSubset};

/// Exact rational, always reduced with a positive denominator.
pub type Ratio = BigRational;

/// Exponents `λ_1, ..., λ_s`, all positive; `p = Σ λ_r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<usize>);

impl ExponentVector {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidExponentVector("no parts".into()));
        }
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidExponentVector(format!(
                "part {} is zero",
                pos + 1
            )));
        }
        Ok(ExponentVector(parts))
    }

    /// `(1, 1, ..., 1)` with `s` parts.
    pub fn ones(s: usize) -> Result<Self> {
        Self::new(vec![1; s])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn support(&self) -> usize {
        self.0.len()
    }

    pub fn power(&self) -> usize {
        self.0.iter().sum()
    }

    /// `Π_r m_{j_r}^{λ_r}` for the roots picked out by `subset`.
    pub fn evaluate(&self, roots: &RootSet, subset: &IndexSubset) -> ArbInt {
        debug_assert_eq!(subset.len(), self.support());
        subset
            .indices()
            .iter()
            .zip(&self.0)
            .fold(ArbInt::one(), |acc, (&j, &e)| {
                acc * num_traits::pow(BigInt::from(roots.get(j)), e)
            })
    }
}

/// All compositions of `p` into `s` positive parts, lexicographically.
pub fn compositions(p: usize, s: usize) -> Vec<ExponentVector> {
    fn fill(rest: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<ExponentVector>) {
        if slots == 0 {
            if rest == 0 {
                out.push(ExponentVector(prefix.clone()));
            }
            return;
        }
        // leave at least one for each later slot
        for part in 1..=rest.saturating_sub(slots - 1) {
            prefix.push(part);
            fill(rest - part, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if s >= 1 && s <= p {
        fill(p, s, &mut Vec::with_capacity(s), &mut out);
    }
    out
}

fn coefficient_from_row(row: &[ArbInt], i: usize, lambda: &ExponentVector) -> Ratio {
    let p = lambda.power();
    if p > i {
        return Ratio::zero();
    }
    let reps = multinomial(p, lambda.parts()).expect("parts are positive and sum to p");
    Ratio::new(&row[p] * reps, factorial(i))
}

/// `K_p^λ = s(i, p) · multinomial(p; λ) / i!`; zero when `p > i`.
pub fn monomial_coefficient(i: usize, lambda: &ExponentVector) -> Ratio {
    coefficient_from_row(&stirling_first_row(i), i, lambda)
}

/// Every composition `λ` of `p` into `s` parts together with its coefficient.
pub fn support_layer(i: usize, s: usize, p: usize) -> Vec<(ExponentVector, Ratio)> {
    let row = stirling_first_row(i);
    compositions(p, s)
        .into_iter()
        .map(|lambda| {
            let k = coefficient_from_row(&row, i, &lambda);
            (lambda, k)
        })
        .collect()
}

/// All layers `s <= p <= i` for a support of size `s`.
fn support_layers(i: usize, s: usize) -> Vec<(ExponentVector, Ratio)> {
    (s..=i).flat_map(|p| support_layer(i, s, p)).collect()
}

/// Sum of every expansion term whose monomial support is exactly `subset`.
pub fn layer_contribution(roots: &RootSet, subset: &IndexSubset, i: usize) -> Ratio {
    support_layers(i, subset.len())
        .iter()
        .fold(Ratio::zero(), |acc, (lambda, k)| {
            acc + k * Ratio::from_integer(lambda.evaluate(roots, subset))
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerReport {
    pub i: usize,
    /// Σ over all supports and powers.
    pub total: Ratio,
    /// `C(Σm, i)`
    pub expected_total: ArbInt,
    /// The `s = p = i` layer alone.
    pub top_layer: Ratio,
    /// `e_i` by definition.
    pub esp: ArbInt,
}

impl LayerReport {
    pub fn total_matches(&self) -> bool {
        self.total == Ratio::from_integer(self.expected_total.clone())
    }

    pub fn top_layer_matches(&self) -> bool {
        self.top_layer == Ratio::from_integer(self.esp.clone())
    }

    pub fn passed(&self) -> bool {
        self.total_matches() && self.top_layer_matches()
    }
}

/// Re-sums the full expansion of `C(Σm, i)` layer by layer and checks it,
/// and checks that the top layer is exactly `e_i`.
pub fn verify_layer_decomposition(roots: &RootSet, i: usize) -> Result<LayerReport> {
    SieveShape::new(roots.len(), i)?;
    let n = roots.len();
    let mut total = Ratio::zero();
    let mut top_layer = Ratio::zero();
    for s in 1..=i {
        let layers = support_layers(i, s);
        for subset in k_subsets(n, s) {
            for (lambda, k) in &layers {
                let term = k * Ratio::from_integer(lambda.evaluate(roots, &subset));
                if s == i && lambda.power() == i {
                    top_layer += &term;
                }
                total += term;
            }
        }
    }
    Ok(LayerReport {
        i,
        total,
        expected_total: binomial_first(&roots.sum(), i),
        top_layer,
        esp: esp_direct(roots, i),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(parts: &[usize]) -> ExponentVector {
        ExponentVector::new(parts.to_vec()).unwrap()
    }

    fn q(num: i64, den: i64) -> Ratio {
        Ratio::new(num.into(), den.into())
    }

    fn roots(values: &[u64]) -> RootSet {
        RootSet::new(values.to_vec()).unwrap()
    }

    #[test]
    fn exponent_vector_validation() {
        assert!(ExponentVector::new(vec![]).is_err());
        assert!(ExponentVector::new(vec![2, 0]).is_err());
        let l = lam(&[3, 1, 2]);
        assert_eq!((l.support(), l.power()), (3, 6));
    }

    #[test]
    fn fourth_product_coefficients() {
        assert_eq!(monomial_coefficient(4, &lam(&[1, 1])), q(22, 24));
        assert_eq!(monomial_coefficient(4, &lam(&[1, 1, 1, 1])), q(1, 1));
        assert_eq!(monomial_coefficient(4, &lam(&[2, 1])), q(-18, 24));
        assert_eq!(monomial_coefficient(4, &lam(&[3, 1])), q(4, 24));
        assert_eq!(monomial_coefficient(4, &lam(&[2, 2])), q(6, 24));
        assert_eq!(monomial_coefficient(3, &lam(&[2, 2])), q(0, 1));
    }

    #[test]
    fn compositions_in_lexicographic_order() {
        let parts: Vec<Vec<usize>> = compositions(4, 2)
            .iter()
            .map(|l| l.parts().to_vec())
            .collect();
        assert_eq!(parts, vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(5, 3).len(), 6);
        assert!(compositions(2, 3).is_empty());
        assert!(compositions(3, 0).is_empty());
    }

    #[test]
    fn support_layer_examples() {
        assert_eq!(support_layer(4, 2, 2), vec![(lam(&[1, 1]), q(22, 24))]);
        assert_eq!(
            support_layer(4, 2, 4),
            vec![
                (lam(&[1, 3]), q(4, 24)),
                (lam(&[2, 2]), q(6, 24)),
                (lam(&[3, 1]), q(4, 24))
            ]
        );
        for i in 1..=8 {
            assert_eq!(support_layer(i, i, i), vec![(lam(&vec![1; i]), q(1, 1))]);
        }
    }

    #[test]
    fn denominators_divide_factorial() {
        for i in 1..=8 {
            for s in 1..=i {
                for p in s..=i {
                    for (_, k) in support_layer(i, s, p) {
                        assert!((factorial(i) % k.denom()).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn layer_decomposition_examples() {
        let r = verify_layer_decomposition(&roots(&[2, 3, 4]), 3).unwrap();
        assert_eq!(r.expected_total, ArbInt::from(84));
        assert_eq!(r.top_layer, q(24, 1));
        assert!(r.passed());

        let r = verify_layer_decomposition(&roots(&[1, 1]), 2).unwrap();
        assert_eq!(r.total, q(1, 1));
        assert_eq!(r.top_layer, q(1, 1));

        let r = verify_layer_decomposition(&roots(&[2, 3, 4, 5]), 4).unwrap();
        assert_eq!(r.total, q(1001, 1));
        assert_eq!(r.top_layer, q(120, 1));

        assert!(verify_layer_decomposition(&roots(&[2]), 2).is_err());
    }

    #[test]
    fn contributions_ignore_roots_outside_the_support() {
        let small = roots(&[3, 1, 4]);
        let big = roots(&[3, 1, 4, 7, 2]);
        for i in 1..=3 {
            for s in 1..=i {
                for subset in k_subsets(3, s) {
                    assert_eq!(
                        layer_contribution(&small, &subset, i),
                        layer_contribution(&big, &subset, i)
                    );
                }
            }
            assert!(verify_layer_decomposition(&small, i).unwrap().passed());
            assert!(verify_layer_decomposition(&big, i).unwrap().passed());
        }
    }
}
