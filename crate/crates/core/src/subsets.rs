//! Lexicographic enumeration of k-element index subsets of `{1, ..., n}`.

use std::fmt;

use num_traits::Zero;

use crate::bigcomb::ArbInt;
use crate::esp::RootSet;
use crate::par::{map_ordered, Strategy};

/// Strictly increasing list of 1-based positions into a root set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSubset(Vec<usize>);

impl IndexSubset {
    /// Returns `None` unless the indices are strictly increasing and all `>= 1`.
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        let increasing = indices.windows(2).all(|w| w[0] < w[1]);
        let positive = indices.first().is_none_or(|&first| first >= 1);
        (increasing && positive).then_some(IndexSubset(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_all(&self, other: &IndexSubset) -> bool {
        // both sorted: merge walk
        let mut mine = self.0.iter();
        'outer: for want in &other.0 {
            for &have in mine.by_ref() {
                if have == *want {
                    continue 'outer;
                }
                if have > *want {
                    return false;
                }
            }
            return false;
        }
        true
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, idx) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{idx}")?;
        }
        f.write_str("}")
    }
}

/// Streaming iterator over the k-subsets of `{1, ..., n}` in lexicographic order.
///
/// Holds a single working buffer, so memory is `O(k)` regardless of `C(n, k)`.
#[derive(Debug, Clone)]
pub struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
    pinned_first: bool,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (1..=k).collect());
        KSubsets {
            n,
            current,
            pinned_first: false,
        }
    }

    /// Only the k-subsets whose smallest element is `first`.
    ///
    /// For `k >= 1`, concatenating these streams for `first = 1..=n` gives
    /// exactly [`KSubsets::new`] in the same order.
    pub fn with_first(n: usize, k: usize, first: usize) -> Self {
        let fits = k >= 1 && first >= 1 && first + k - 1 <= n;
        let current = fits.then(|| (first..first + k).collect());
        KSubsets {
            n,
            current,
            pinned_first: true,
        }
    }

    /// Advances `buf` to its lexicographic successor in place.
    fn advance(&mut self) {
        let Some(buf) = self.current.as_mut() else {
            return;
        };
        let k = buf.len();
        let floor = usize::from(self.pinned_first);
        // rightmost slot that can still grow; slot r (0-based) tops out at n-k+r+1
        let slot = (floor..k).rev().find(|&r| buf[r] < self.n - k + r + 1);
        match slot {
            Some(r) => {
                buf[r] += 1;
                for s in r + 1..k {
                    buf[s] = buf[s - 1] + 1;
                }
            }
            None => self.current = None,
        }
    }
}

impl Iterator for KSubsets {
    type Item = IndexSubset;

    fn next(&mut self) -> Option<IndexSubset> {
        let out = IndexSubset(self.current.clone()?);
        self.advance();
        Some(out)
    }
}

/// All k-subsets of `{1, ..., n}` in lexicographic order; empty when `k > n`.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets::new(n, k)
}

/// Sum of the roots selected by `subset`.
pub fn subset_sum(roots: &RootSet, subset: &IndexSubset) -> ArbInt {
    subset
        .indices()
        .iter()
        .fold(ArbInt::zero(), |acc, &j| acc + roots.get(j))
}

/// One `(subset, Σ_{j∈J} m_j)` entry per s-subset, lexicographically.
pub fn subset_sums(roots: &RootSet, s: usize) -> Vec<(IndexSubset, ArbInt)> {
    k_subsets(roots.len(), s)
        .map(|subset| {
            let sum = subset_sum(roots, &subset);
            (subset, sum)
        })
        .collect()
}

/// Counts, by enumeration, the s-subsets of `{1, ..., n}` containing `fixed`.
pub fn count_containing_supersets(n: usize, fixed: &IndexSubset, s: usize) -> ArbInt {
    let count = k_subsets(n, s)
        .filter(|subset| subset.contains_all(fixed))
        .count();
    ArbInt::from(count)
}

/// Maps `f` over every k-subset of `{1, ..., n}` and returns the results in
/// lexicographic order.
///
/// Work is partitioned by the smallest element; partitions are merged in
/// first-index order so the output does not depend on the worker count.
pub fn map_subsets<R, F>(n: usize, k: usize, strategy: Strategy, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&IndexSubset) -> R + Sync + Send,
{
    if k == 0 || k > n {
        return k_subsets(n, k).map(|s| f(&s)).collect();
    }
    let firsts: Vec<usize> = (1..=n - k + 1).collect();
    map_ordered(strategy, firsts, |first| {
        KSubsets::with_first(n, k, first)
            .map(|s| f(&s))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}
