//! Exact computation of canonical thresholds of 3-fold singularities.
//!
//! The crate computes `ct(X;S) = sup{t : the pair (X,tS) is canonical}` for
//! the classified families of 3-fold points, using weighted blow-ups modeled
//! by admissible weight vectors and exact rational arithmetic throughout.
//! On top of the per-weight calculus sit a brute-force minimization oracle,
//! window enumeration with effective parameter bounds, accumulation reports,
//! and the pair-threshold machinery with its chain-condition checks.

pub mod classify;
pub mod error;
pub mod rational;
pub mod simplex;
pub mod support;
pub mod weights;

pub mod threshold;
pub mod windows;
pub mod pair;

pub mod io;
pub mod cli;
pub mod samples;

pub use classify::{classified_weight, comparison_weights, validate, weighted_discrepancy, Presentation};
pub use error::{CtError, Severity, Violation};
pub use rational::Rational;
pub use support::{Completeness, Monomial, SeriesSupport};
pub use weights::{
    is_admissible, monomial_weight, multiplicity_comparison, semi_invariant_class,
    weighted_multiplicity, CyclicQuotient, WeightVector,
};
