//! Exact elementary symmetric polynomials of integer root sets.
//!
//! The centrepiece is [`esp::esp_extraction`], which isolates `e_i(m_1..m_n)`
//! from the binomial product `C(m_1 + ... + m_n, i)` with an alternating
//! sieve over subset-sum binomials. Around it sit the definition and the
//! product-expansion baseline ([`esp::esp_direct`], [`esp::esp_all`]) and
//! verifiers for each identity the sieve relies on: the sieve weights
//! ([`coeffs`]), their generating functions ([`series`]), the monomial
//! organisation of the expanded product ([`polyexpand`]) and the subset
//! multiplicities ([`subsets`]).
//!
//! All arithmetic is exact. Loops over subsets and over verification grids
//! run on rayon when the `parallel` feature is enabled (default).

pub mod bigcomb;
pub mod coeffs;
pub mod error;
pub mod esp;
pub mod par;
pub mod polyexpand;
pub mod series;
pub mod subsets;
pub mod verify;

pub use bigcomb::ArbInt;
pub use coeffs::{CoefficientRoute, CoefficientSequence, SieveShape};
pub use error::{Error, Result};
pub use esp::{
    esp_all, esp_compare, esp_direct, esp_extraction, esp_extraction_with, specialize,
    ExtractionBreakdown, ExtractionOptions, Family, Method, RootSet,
};
pub use par::Strategy;
pub use polyexpand::{ExponentVector, Ratio};
pub use series::TruncatedSeries;
pub use subsets::IndexSubset;
