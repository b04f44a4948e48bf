//! Poincaré series and structure of fiber product rings `R ×_T S`, checked
//! against a brute-force graded resolution oracle over monomial quotient
//! algebras.
//!
//! - [`series`]: exact truncated power series and rational functions.
//! - [`fiber`]: the fiber-product and amalgamated-duplication series and the
//!   Betti-number recurrences.
//! - [`structure`]: depth rules, structural predicates, BEH/TR checks.
//! - [`oracle`]: minimal free resolutions over GF(p) for monomial data.
//! - [`cli`]: scenario files, the verification harness and reporting.

pub mod cli;
pub mod error;
pub mod fiber;
mod json;
pub mod oracle;
pub mod series;
pub mod structure;

pub use error::{Error, Result};
pub use series::{RationalFunction, TruncatedSeries};
