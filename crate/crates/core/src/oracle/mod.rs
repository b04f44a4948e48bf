//! Ground truth for small monomial quotient algebras, computed by
//! brute-force linear algebra rather than by any of the closed formulas.

pub mod gf;
pub mod monomial;
pub mod resolve;

pub use gf::{PrimeField, DEFAULT_CHARACTERISTIC};
pub use monomial::{dim_monomial, fiber_presentation, kbasis, Monomial, MonomialIdeal};
pub use resolve::{
    depth_monomial, edim_monomial, poincare_truncation, projective_dimension, resolve,
    series_from_table, GradedBettiTable, QuotientPresentation, ResolveOptions,
    DEFAULT_MAX_INTERNAL,
};
