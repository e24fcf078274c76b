//! Elementary symmetric polynomials of an integer root set.
//!
//! Three independent routes:
//! * [`esp_direct`] sums the products over every i-subset (definition),
//! * [`esp_all`] expands `Π (1 + m_j x)` in one pass,
//! * [`esp_extraction`] isolates `e_i` from the binomial product
//!   `C(m_1 + ... + m_n, i)` by an alternating sieve over subset-sum binomials:
//!
//! ```text
//! e_i = C(Σm, i) - Σ_{h=1}^{i-1} (-1)^{h-1} ⟨⟨n-i+1, h-1⟩⟩ Σ_{|J|=i-h} C(Σ_{j∈J} m_j, i)
//! ```

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use crate::bigcomb::{binomial_first, ArbInt};
use crate::coeffs::{coeff_closed, coeff_recurrence, CoefficientRoute, SieveShape};
use crate::error::{Error, Result};
use crate::par::Strategy;
use crate::subsets::{k_subsets, map_subsets, subset_sum, IndexSubset};

/// Ordered multiset `m_1, ..., m_n` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSet {
    elements: Vec<u64>,
}

impl RootSet {
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyRootSet);
        }
        if let Some(pos) = elements.iter().position(|&m| m == 0) {
            return Err(Error::ZeroRoot { index: pos + 1 });
        }
        Ok(RootSet { elements })
    }

    /// Skips the positivity check. Only for probing the formulas outside the
    /// proven domain (zero roots); no result obtained this way is guaranteed.
    pub fn new_allowing_zeros(elements: Vec<u64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyRootSet);
        }
        Ok(RootSet { elements })
    }

    /// `m_1 = ... = m_n = 1`
    pub fn ones(n: usize) -> Self {
        RootSet {
            elements: vec![1; n.max(1)],
        }
    }

    /// `{1, 2, ..., n}`
    pub fn first_naturals(n: usize) -> Self {
        RootSet {
            elements: (1..=n.max(1) as u64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Root `m_j` for 1-based `j`.
    pub fn get(&self, j: usize) -> u64 {
        self.elements[j - 1]
    }

    /// The accumulate `N = m_1 + ... + m_n`.
    pub fn sum(&self) -> ArbInt {
        self.elements.iter().map(|&m| ArbInt::from(m)).sum()
    }
}

impl FromStr for RootSet {
    type Err = Error;

    /// Parses a comma-separated list such as `2,3,4`.
    fn from_str(s: &str) -> Result<Self> {
        let elements = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|token| {
                token.parse::<u64>().map_err(|e| Error::InvalidRoot {
                    token: token.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RootSet::new(elements)
    }
}

impl fmt::Display for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, m) in self.elements.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// `e_i` straight from the definition; `1` for `i = 0`, `0` for `i > n`.
pub fn esp_direct(roots: &RootSet, i: usize) -> ArbInt {
    k_subsets(roots.len(), i)
        .map(|subset| {
            subset
                .indices()
                .iter()
                .fold(ArbInt::one(), |acc, &j| acc * roots.get(j))
        })
        .sum()
}

/// `[e_0, ..., e_n]` via `e_i <- e_i + m_k e_{i-1}`.
pub fn esp_all(roots: &RootSet) -> Vec<ArbInt> {
    let mut e = vec![ArbInt::zero(); roots.len() + 1];
    e[0] = ArbInt::one();
    for (k, &m) in roots.elements().iter().enumerate() {
        for i in (1..=k + 1).rev() {
            let step = &e[i - 1] * m;
            e[i] += step;
        }
    }
    e
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractionOptions {
    /// Per-subset bracket entries are kept only when `n <= explain_limit`.
    pub explain_limit: usize,
    pub strategy: Strategy,
    pub route: CoefficientRoute,
}

impl Default for ExtractionOptions {
    fn default() -> Self {
        ExtractionOptions {
            explain_limit: 12,
            strategy: Strategy::default(),
            route: CoefficientRoute::ClosedForm,
        }
    }
}

/// One `h` of the sieve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveTerm {
    pub h: usize,
    /// Signed multiplier of `bracket_total` in the total, i.e. `-C_h`.
    pub weight: ArbInt,
    /// `(J, C(Σ_{j∈J} m_j, i))` for every `(i-h)`-subset, when materialised.
    pub bracket: Option<Vec<(IndexSubset, ArbInt)>>,
    pub bracket_total: ArbInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionBreakdown {
    pub i: usize,
    /// `C(Σm, i)`
    pub head: ArbInt,
    pub terms: Vec<SieveTerm>,
    pub total: ArbInt,
}

impl ExtractionBreakdown {
    /// `head + Σ weight_h · bracket_total_h`, recomputed from the parts.
    pub fn recompute_total(&self) -> ArbInt {
        self.terms.iter().fold(self.head.clone(), |acc, t| {
            acc + &t.weight * &t.bracket_total
        })
    }
}

/// `e_i` by binomial-product extraction, with default options.
pub fn esp_extraction(roots: &RootSet, i: usize) -> Result<(ArbInt, ExtractionBreakdown)> {
    esp_extraction_with(roots, i, &ExtractionOptions::default())
}

/// `e_i` by binomial-product extraction.
///
/// `i = 0` yields `1` with an empty sieve; `i > n` is refused since the
/// sieve shape assumes `i <= n`.
pub fn esp_extraction_with(
    roots: &RootSet,
    i: usize,
    opts: &ExtractionOptions,
) -> Result<(ArbInt, ExtractionBreakdown)> {
    let n = roots.len();
    let head = binomial_first(&roots.sum(), i);
    if i == 0 {
        let breakdown = ExtractionBreakdown {
            i,
            head: head.clone(),
            terms: Vec::new(),
            total: head.clone(),
        };
        return Ok((head, breakdown));
    }
    let shape = SieveShape::new(n, i)?;
    let weights: Vec<ArbInt> = match opts.route {
        CoefficientRoute::ClosedForm => (1..i).map(|h| coeff_closed(shape, h)).collect(),
        CoefficientRoute::Recurrence => coeff_recurrence(shape, i - 1).values,
    };
    let keep_bracket = n <= opts.explain_limit;

    let terms: Vec<SieveTerm> = weights
        .into_iter()
        .enumerate()
        .map(|(idx, c_h)| {
            let h = idx + 1;
            let entries = map_subsets(n, i - h, opts.strategy, |subset| {
                binomial_first(&subset_sum(roots, subset), i)
            });
            let bracket_total: ArbInt = entries.iter().sum();
            let bracket = keep_bracket.then(|| k_subsets(n, i - h).zip(entries).collect());
            SieveTerm {
                h,
                weight: -c_h,
                bracket,
                bracket_total,
            }
        })
        .collect();

    let mut breakdown = ExtractionBreakdown {
        i,
        head,
        terms,
        total: ArbInt::zero(),
    };
    breakdown.total = breakdown.recompute_total();
    Ok((breakdown.total.clone(), breakdown))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Dp,
    Extraction,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Direct, Method::Dp, Method::Extraction];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Dp => "dp",
            Method::Extraction => "extraction",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "direct" => Ok(Method::Direct),
            "dp" => Ok(Method::Dp),
            "extraction" => Ok(Method::Extraction),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// Evaluates `e_i` with one method.
pub fn esp_by(method: Method, roots: &RootSet, i: usize, strategy: Strategy) -> Result<ArbInt> {
    match method {
        Method::Direct => Ok(esp_direct(roots, i)),
        Method::Dp => Ok(esp_all(roots)
            .into_iter()
            .nth(i)
            .unwrap_or_else(ArbInt::zero)),
        Method::Extraction => {
            let opts = ExtractionOptions {
                explain_limit: 0,
                strategy,
                ..ExtractionOptions::default()
            };
            esp_extraction_with(roots, i, &opts).map(|(v, _)| v)
        }
    }
}

/// Median wall time of `reps` (at least 3) runs of `f`, plus its last result.
pub fn time_median<T>(reps: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let reps = reps.max(3);
    let mut samples = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        let out = f();
        samples.push(start.elapsed());
        last = Some(out);
    }
    samples.sort();
    (last.expect("reps >= 3"), samples[reps / 2])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodRun {
    pub method: Method,
    pub value: ArbInt,
    pub median: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub i: usize,
    pub runs: Vec<MethodRun>,
}

impl CompareReport {
    pub fn agree(&self) -> bool {
        self.runs.windows(2).all(|w| w[0].value == w[1].value)
    }

    pub fn value(&self) -> &ArbInt {
        &self.runs[0].value
    }
}

/// Runs all three methods on `(roots, i)` and times each (median of 3).
pub fn esp_compare(roots: &RootSet, i: usize) -> Result<CompareReport> {
    SieveShape::new(roots.len(), i)?;
    let runs = Method::ALL
        .iter()
        .map(|&method| {
            let (value, median) = time_median(3, || esp_by(method, roots, i, Strategy::default()));
            Ok(MethodRun {
                method,
                value: value?,
                median,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompareReport { i, runs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// all-ones root sets: binomial rows
    Pascal,
    /// `{1, ..., n}`: unsigned Stirling numbers of the first kind
    Stirling1,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pascal" => Ok(Family::Pascal),
            "stirling1" => Ok(Family::Stirling1),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// Rows `1..=rows` of the triangle generated by a specialised root set.
///
/// Row `n` lists `e_0, ..., e_n`. Pascal rows go through the extraction
/// sieve; Stirling rows through the product expansion.
pub fn specialize(family: Family, rows: usize) -> Vec<Vec<ArbInt>> {
    (1..=rows)
        .map(|n| match family {
            Family::Pascal => {
                let roots = RootSet::ones(n);
                (0..=n)
                    .map(|i| esp_extraction(&roots, i).expect("i <= n by construction").0)
                    .collect()
            }
            Family::Stirling1 => esp_all(&RootSet::first_naturals(n)),
        })
        .collect()
}
